#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "cwgabor/gabor.hpp"

namespace cwgabor::amp {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// Row prior: inactive w.p. 1-eps, else CN(0, amplitude^2 I). The AWGN
// unit-channel case reuses the same slab with the per-sequence amplitude,
// collisions folded into the slab.
struct FadingPrior {
  enum class Kind { Rayleigh, Deterministic } kind = Kind::Rayleigh;
  double amplitude = 1.0;

  double variance() const { return amplitude * amplitude; }
  static FadingPrior rayleigh(double amplitude = 1.0) {
    return {Kind::Rayleigh, amplitude};
  }
  static FadingPrior deterministic(double amplitude) {
    return {Kind::Deterministic, amplitude};
  }
};

struct AmpConfig {
  int max_iterations = 100;
  double damping = 0.7;            // theta in (0, 1]
  VectorXd prior_activity;         // per-row epsilon; empty = set via fill
  FadingPrior fading;
  double noise_variance = 0.0;     // N0, diagnostics only; tau comes from residuals
  double tolerance = 1e-6;         // stop when |Z_t - Z_{t-1}| / |Y| drops below
  double tau_floor = 1e-12;

  void validate(long rows) const {
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping in (0,1]");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations >= 1");
    if (prior_activity.size() != rows)
      throw std::invalid_argument("prior_activity must have one entry per dictionary column");
    for (long i = 0; i < prior_activity.size(); ++i)
      if (!(prior_activity[i] >= 0.0 && prior_activity[i] <= 1.0))
        throw std::invalid_argument("prior activity entries must lie in [0,1]");
  }
};

struct AmpOutput {
  MatrixXcd x_hat;       // columns() x T posterior-mean estimate
  MatrixXcd r;           // effective observations at the final iteration
  VectorXd tau;          // per-antenna effective noise variances
  VectorXd phi;          // per-row posterior activity probability
  double slab_variance;  // prior channel variance used by the denoiser
  int iterations = 0;
};

struct AmpDivergence : std::runtime_error {
  explicit AmpDivergence(int iteration)
      : std::runtime_error("AMP diverged (non-finite state) at iteration " +
                           std::to_string(iteration)),
        iteration(iteration) {}
  int iteration;
};

struct DenoiseResult {
  VectorXcd x_hat;
  double phi;
};

// posterior mean of x ~ (1-eps) delta + eps CN(0, v I) from r = x + z,
// z ~ CN(0, diag(tau))
DenoiseResult denoise_row(const VectorXcd& r, const VectorXd& tau, double eps, double slab_variance);

// Wirtinger Jacobian d x_hat / d r of denoise_row, T x T
MatrixXcd denoise_jacobian(const VectorXcd& r, const VectorXd& tau, double eps,
                           double slab_variance);

// pure likelihood-ratio LLR of row activity: r^H (Sigma^-1 - Sigma_tilde^-1) r - log D
double row_llr(const VectorXcd& r, const VectorXd& tau, double slab_variance);

AmpOutput amp_run(const gabor::LinearDictionary& dict, const MatrixXcd& y, const AmpConfig& config);

// per-row activity LLRs from the final AMP state
VectorXd extract_llrs(const AmpOutput& out);

}  // namespace cwgabor::amp
