#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cwgabor/amp.hpp"
#include "cwgabor/cwcode.hpp"
#include "cwgabor/gabor.hpp"

namespace cwgabor::sra {

using Message = std::vector<gf::Symbol>;

struct SraConfig {
  cw::ConstantWeightCode code;  // PPM-only (k' = n') or PPM o RS
  std::shared_ptr<const gabor::LinearDictionary> dict;  // columns() == users * code.n()
  int users = 1;                 // K configured on the block
  double activation_prob = 0.1;  // per-user prior rho
  int outer_loops = 5;
  bool siso_enabled = false;
  double siso_gamma = 0.9;
  double activity_threshold = 0.5;
  double convergence_tol = 1e-4;
  double power = 1.0;

  SraConfig(cw::ConstantWeightCode c, std::shared_ptr<const gabor::LinearDictionary> d)
      : code(std::move(c)), dict(std::move(d)) {}
  void validate() const;
  long section_size() const { return code.n(); }  // per-user columns, q * n'
  double amplitude() const;
};

Eigen::VectorXcd sra_encode(const SraConfig& config, int user, const Message& message);

// Per-section activity LLR log sum_j eps_j/(1-eps_j) - log q, summed over
// sections plus the prior logit; beliefs clamped to [1e-12, 1-1e-12].
double activity_update(const std::vector<double>& section_beliefs, int q, double rho_prior);

// One-hot-aware sharpening of a single section's beliefs given the user's
// activity posterior.
std::vector<double> sequence_belief_update(const std::vector<double>& section_beliefs,
                                           double rho_hat);

struct SraUserResult {
  bool declared_active = false;
  double rho_hat = 0.0;
  std::optional<Message> message;  // present iff declared active
};

struct SraOutput {
  std::vector<SraUserResult> users;
  int outer_loops_used = 0;
};

// Iterative loop: AMP with the current per-row prior, per-user activity and
// sequence-belief updates, optional RS SISO refresh, refreshed beliefs fed
// back as the AMP prior.
SraOutput sra_detect(const SraConfig& config, const Eigen::MatrixXcd& y, amp::AmpConfig amp_config);

amp::AmpConfig default_amp_config(const SraConfig& config);

}  // namespace cwgabor::sra
