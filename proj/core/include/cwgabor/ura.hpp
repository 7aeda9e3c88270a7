#pragma once

#include <memory>
#include <vector>

#include "cwgabor/amp.hpp"
#include "cwgabor/channel.hpp"
#include "cwgabor/cwcode.hpp"
#include "cwgabor/gabor.hpp"

namespace cwgabor::ura {

using Message = std::vector<gf::Symbol>;  // k' information symbols

struct UraConfig {
  cw::ConstantWeightCode code;
  std::shared_ptr<const gabor::LinearDictionary> dict;  // columns() == code.n()
  int k_active = 1;        // known to the decoder
  int list_limit = 0;      // 0 = k_active
  int candidate_depth = 0; // per-section candidates fed to the search, 0 = k_active
  double power = 1.0;

  UraConfig(cw::ConstantWeightCode c, std::shared_ptr<const gabor::LinearDictionary> d)
      : code(std::move(c)), dict(std::move(d)) {}
  void validate() const;
  int depth() const { return candidate_depth > 0 ? candidate_depth : k_active; }
  int limit() const { return list_limit > 0 ? list_limit : k_active; }
  // per-sequence amplitude sqrt(P N / w), so |s|^2 = P N
  double amplitude() const;
};

// s = a * Phi c, unit-norm columns scaled to meet the power constraint
Eigen::VectorXcd ura_encode(const UraConfig& config, const Message& message);

// the depth highest-LLR symbols per PPM section, descending, ties broken by
// ascending symbol value
std::vector<std::vector<gf::Symbol>> sections_from_llrs(const Eigen::VectorXd& llrs,
                                                        const cw::ConstantWeightCode& code,
                                                        int depth);
// hard-threshold variant of the support estimate
std::vector<std::vector<gf::Symbol>> sections_above_threshold(const Eigen::VectorXd& llrs,
                                                              const cw::ConstantWeightCode& code,
                                                              double threshold);

struct RankedMessage {
  Message message;
  bool exact_match = false;  // correlation with the candidate support == w
  double aggregate_llr = 0.0;
};

// Search decoder over the Cartesian product of the k' information-section
// candidate sets: re-encode each tuple, rank exact Def.-4 matches first,
// then by aggregate LLR, ties by lexicographic message order.
std::vector<RankedMessage> outer_decode_search(const std::vector<std::vector<gf::Symbol>>& sections,
                                               const Eigen::VectorXd& llrs,
                                               const cw::ConstantWeightCode& code, int list_limit);

// amp_run -> LLRs -> candidate sections -> search decoder
std::vector<Message> ura_decode(const UraConfig& config, const Eigen::MatrixXcd& y,
                                amp::AmpConfig amp_config);

// AMP configuration for this setup: uniform prior K_a/q, slab amplitude
// sqrt(P N / w) for both the AWGN unit channel and Rayleigh fading
amp::AmpConfig default_amp_config(const UraConfig& config);

}  // namespace cwgabor::ura
