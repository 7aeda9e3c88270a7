#include "cwgabor/amp.hpp"

#include <cmath>

namespace cwgabor::amp {

namespace {

struct RowKernel {
  // per-antenna weights shared by every row at a given iteration
  VectorXd wiener;  // v / (v + tau_t)
  VectorXd quad;    // v / (tau_t (v + tau_t)) = Sigma^-1 - Sigma_tilde^-1
  double log_det_ratio = 0.0;

  RowKernel(const VectorXd& tau, double v) {
    const auto T = tau.size();
    wiener.resize(T);
    quad.resize(T);
    for (Eigen::Index t = 0; t < T; ++t) {
      if (!(tau[t] > 0.0)) throw std::invalid_argument("tau entries must be positive");
      wiener[t] = v / (v + tau[t]);
      quad[t] = v / (tau[t] * (v + tau[t]));
      log_det_ratio += std::log1p(v / tau[t]);
    }
  }

  double llr(const VectorXcd& r) const {
    double q = 0.0;
    for (Eigen::Index t = 0; t < r.size(); ++t) q += quad[t] * std::norm(r[t]);
    return q - log_det_ratio;
  }

  double phi(const VectorXcd& r, double eps) const {
    if (eps <= 0.0) return 0.0;
    if (eps >= 1.0) return 1.0;
    const double logit = llr(r) + std::log(eps / (1.0 - eps));
    if (logit >= 0.0) return 1.0 / (1.0 + std::exp(-logit));
    const double e = std::exp(logit);
    return e / (1.0 + e);
  }
};

void check_inputs(const VectorXcd& r, const VectorXd& tau, double eps, double v) {
  if (r.size() != tau.size()) throw std::invalid_argument("r and tau must have equal length");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in [0,1]");
  if (!(v > 0.0)) throw std::invalid_argument("slab variance must be positive");
}

}  // namespace

DenoiseResult denoise_row(const VectorXcd& r, const VectorXd& tau, double eps,
                          double slab_variance) {
  check_inputs(r, tau, eps, slab_variance);
  const RowKernel kern(tau, slab_variance);
  const double p = kern.phi(r, eps);
  DenoiseResult out;
  out.phi = p;
  out.x_hat = p * (kern.wiener.array() * r.array()).matrix();
  return out;
}

MatrixXcd denoise_jacobian(const VectorXcd& r, const VectorXd& tau, double eps,
                           double slab_variance) {
  check_inputs(r, tau, eps, slab_variance);
  const RowKernel kern(tau, slab_variance);
  const double p = kern.phi(r, eps);
  const auto T = r.size();
  MatrixXcd jac = MatrixXcd::Zero(T, T);
  for (Eigen::Index t = 0; t < T; ++t) jac(t, t) = p * kern.wiener[t];
  if (p > 0.0 && p < 1.0) {
    const VectorXcd wr = (kern.wiener.array() * r.array()).matrix();
    const VectorXcd qr = (kern.quad.array() * r.array()).matrix();
    jac.noalias() += (p - p * p) * (wr * qr.adjoint());
  }
  return jac;
}

double row_llr(const VectorXcd& r, const VectorXd& tau, double slab_variance) {
  if (r.size() != tau.size()) throw std::invalid_argument("r and tau must have equal length");
  if (!(slab_variance > 0.0)) throw std::invalid_argument("slab variance must be positive");
  return RowKernel(tau, slab_variance).llr(r);
}

AmpOutput amp_run(const gabor::LinearDictionary& dict, const MatrixXcd& y,
                  const AmpConfig& config) {
  const long m = dict.columns();
  const int n = dict.n();
  if (y.rows() != n) throw std::invalid_argument("y must have n rows");
  config.validate(m);
  const auto T = y.cols();
  const double v = config.fading.variance();
  const double y_norm = y.norm();
  const double onsager_scale = static_cast<double>(m) / n;

  MatrixXcd x = MatrixXcd::Zero(m, T);
  MatrixXcd z = y;
  MatrixXcd r = MatrixXcd::Zero(m, T);
  VectorXd tau = VectorXd::Zero(T);
  VectorXd phi = VectorXd::Zero(m);

  int iterations = 0;
  for (int it = 1; it <= config.max_iterations; ++it) {
    const double theta = it == 1 ? 1.0 : config.damping;  // nothing to damp against yet

    for (Eigen::Index t = 0; t < T; ++t) {
      const double fresh = z.col(t).squaredNorm() / n;
      tau[t] = std::max(theta * fresh + (1.0 - theta) * tau[t], config.tau_floor);
    }

    r = theta * (dict.adjoint(z) + x) + (1.0 - theta) * r;

    const RowKernel kern(tau, v);
    MatrixXcd jac_avg = MatrixXcd::Zero(T, T);
    double phi_sum = 0.0;
    VectorXcd wr(T), qr(T);
    for (long k = 0; k < m; ++k) {
      const double eps = config.prior_activity[k];
      double q = 0.0;
      for (Eigen::Index t = 0; t < T; ++t) q += kern.quad[t] * std::norm(r(k, t));
      double p;
      if (eps <= 0.0) {
        p = 0.0;
      } else if (eps >= 1.0) {
        p = 1.0;
      } else {
        const double logit = q - kern.log_det_ratio + std::log(eps / (1.0 - eps));
        p = logit >= 0.0 ? 1.0 / (1.0 + std::exp(-logit))
                         : std::exp(logit) / (1.0 + std::exp(logit));
      }
      phi[k] = p;
      phi_sum += p;
      for (Eigen::Index t = 0; t < T; ++t) {
        wr[t] = kern.wiener[t] * r(k, t);
        qr[t] = kern.quad[t] * r(k, t);
        x(k, t) = p * wr[t];
      }
      if (p > 0.0 && p < 1.0) jac_avg.noalias() += (p - p * p) * (wr * qr.adjoint());
    }
    jac_avg /= static_cast<double>(m);
    const double mean_phi = phi_sum / static_cast<double>(m);
    for (Eigen::Index t = 0; t < T; ++t) jac_avg(t, t) += mean_phi * kern.wiener[t];

    MatrixXcd z_next = y - dict.apply(x) + onsager_scale * z * jac_avg;
    if (!z_next.allFinite() || !x.allFinite()) throw AmpDivergence(it);

    const double delta = (z_next - z).norm();
    z = std::move(z_next);
    iterations = it;
    if (delta <= config.tolerance * (y_norm > 0.0 ? y_norm : 1.0)) break;
  }

  AmpOutput out;
  out.x_hat = std::move(x);
  out.r = std::move(r);
  out.tau = std::move(tau);
  out.phi = std::move(phi);
  out.slab_variance = v;
  out.iterations = iterations;
  return out;
}

VectorXd extract_llrs(const AmpOutput& out) {
  const RowKernel kern(out.tau, out.slab_variance);
  VectorXd llrs(out.r.rows());
  for (long k = 0; k < out.r.rows(); ++k) {
    double q = 0.0;
    for (Eigen::Index t = 0; t < out.r.cols(); ++t) q += kern.quad[t] * std::norm(out.r(k, t));
    llrs[k] = q - kern.log_det_ratio;
  }
  return llrs;
}

}  // namespace cwgabor::amp
