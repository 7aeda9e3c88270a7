#include "cwgabor/sra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cwgabor::sra {

namespace {

constexpr double kClamp = 1e-12;

double clamp_prob(double p) { return std::min(1.0 - kClamp, std::max(kClamp, p)); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void SraConfig::validate() const {
  if (!dict) throw std::invalid_argument("missing dictionary");
  if (users < 1) throw std::invalid_argument("users must be >= 1");
  if (dict->columns() != static_cast<long>(users) * section_size())
    throw std::invalid_argument("dictionary must hold users * (q n') columns");
  if (!(activation_prob >= 0.0 && activation_prob <= 1.0))
    throw std::invalid_argument("activation_prob must lie in [0,1]");
  if (outer_loops < 1) throw std::invalid_argument("outer_loops must be >= 1");
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
}

double SraConfig::amplitude() const {
  return std::sqrt(power * dict->n() / static_cast<double>(code.weight()));
}

Eigen::VectorXcd sra_encode(const SraConfig& config, int user, const Message& message) {
  if (user < 0 || user >= config.users) throw std::invalid_argument("user out of range");
  const auto cw = config.code.encode(message);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(config.dict->columns(), 1);
  const long base = static_cast<long>(user) * config.section_size();
  for (int i = 0; i < cw.sections(); ++i)
    x(base + static_cast<long>(i) * cw.q + cw.section_symbols[i], 0) = config.amplitude();
  return config.dict->apply(x).col(0);
}

double activity_update(const std::vector<double>& section_beliefs, int q, double rho_prior) {
  if (q < 2 || section_beliefs.size() % q != 0)
    throw std::invalid_argument("beliefs must be n' sections of q entries");
  const int sections = static_cast<int>(section_beliefs.size()) / q;
  double llr = std::log(clamp_prob(rho_prior)) - std::log(1.0 - clamp_prob(rho_prior));
  for (int i = 0; i < sections; ++i) {
    double ratio_sum = 0.0;
    for (int j = 0; j < q; ++j) {
      const double e = clamp_prob(section_beliefs[static_cast<std::size_t>(i) * q + j]);
      ratio_sum += e / (1.0 - e);
    }
    llr += std::log(ratio_sum) - std::log(static_cast<double>(q));
  }
  return sigmoid(llr);
}

std::vector<double> sequence_belief_update(const std::vector<double>& section_beliefs,
                                           double rho_hat) {
  const double rho = clamp_prob(rho_hat);
  const double inactivity_ratio = (1.0 - rho) / rho;
  std::vector<double> ratios(section_beliefs.size());
  double ratio_sum = 0.0;
  for (std::size_t j = 0; j < section_beliefs.size(); ++j) {
    const double e = clamp_prob(section_beliefs[j]);
    ratios[j] = e / (1.0 - e);
    ratio_sum += ratios[j];
  }
  std::vector<double> out(section_beliefs.size());
  for (std::size_t j = 0; j < section_beliefs.size(); ++j) {
    const double others = ratio_sum - ratios[j];
    out[j] = ratios[j] / (ratios[j] + others + inactivity_ratio);
  }
  return out;
}

SraOutput sra_detect(const SraConfig& config, const Eigen::MatrixXcd& y,
                     amp::AmpConfig amp_config) {
  config.validate();
  const int q = config.code.q();
  const int sections = config.code.sections();
  const long per_user = config.section_size();
  const long m = config.dict->columns();

  Eigen::VectorXd eps =
      Eigen::VectorXd::Constant(m, std::min(1.0, config.activation_prob / q));
  if (amp_config.prior_activity.size() == m) eps = amp_config.prior_activity;

  SraOutput result;
  result.users.resize(config.users);
  std::vector<std::vector<double>> final_beliefs(config.users);

  for (int loop = 1; loop <= config.outer_loops; ++loop) {
    amp_config.prior_activity = eps;
    const auto out = amp::amp_run(*config.dict, y, amp_config);
    const auto llrs = amp::extract_llrs(out);

    Eigen::VectorXd next = Eigen::VectorXd::Zero(m);
    for (int l = 0; l < config.users; ++l) {
      const long base = static_cast<long>(l) * per_user;
      std::vector<double> beliefs(per_user);
      for (long j = 0; j < per_user; ++j) beliefs[j] = sigmoid(llrs[base + j]);

      const double rho_hat = activity_update(beliefs, q, config.activation_prob);
      result.users[l].rho_hat = rho_hat;

      std::vector<double> sharpened(per_user);
      for (int i = 0; i < sections; ++i) {
        std::vector<double> sec(beliefs.begin() + static_cast<long>(i) * q,
                                beliefs.begin() + static_cast<long>(i + 1) * q);
        const auto upd = sequence_belief_update(sec, rho_hat);
        std::copy(upd.begin(), upd.end(), sharpened.begin() + static_cast<long>(i) * q);
      }

      if (config.siso_enabled && config.code.rs().n() > config.code.rs().k()) {
        // SISO wants per-section distributions conditioned on activity
        std::vector<double> dist(per_user);
        for (int i = 0; i < sections; ++i) {
          double sum = 0.0;
          for (int j = 0; j < q; ++j) sum += sharpened[static_cast<std::size_t>(i) * q + j];
          for (int j = 0; j < q; ++j)
            dist[static_cast<std::size_t>(i) * q + j] =
                sum > 0.0 ? sharpened[static_cast<std::size_t>(i) * q + j] / sum : 1.0 / q;
        }
        const auto refined = config.code.rs().siso_update(dist, config.siso_gamma);
        for (long j = 0; j < per_user; ++j) sharpened[j] = rho_hat * refined[j];
      }

      final_beliefs[l] = sharpened;
      for (long j = 0; j < per_user; ++j) next[base + j] = sharpened[j];
    }

    const double change = (next - eps).cwiseAbs().maxCoeff();
    eps = next;
    result.outer_loops_used = loop;
    if (change < config.convergence_tol) break;
  }

  for (int l = 0; l < config.users; ++l) {
    auto& ur = result.users[l];
    ur.declared_active = ur.rho_hat > config.activity_threshold;
    if (!ur.declared_active) continue;
    std::vector<gf::Symbol> hard(sections);
    for (int i = 0; i < sections; ++i) {
      int arg = 0;
      double best = -1.0;
      for (int j = 0; j < q; ++j) {
        const double v = final_beliefs[l][static_cast<std::size_t>(i) * q + j];
        if (v > best) {
          best = v;
          arg = j;
        }
      }
      hard[i] = static_cast<gf::Symbol>(arg);
    }
    if (config.code.rs().n() > config.code.rs().k()) {
      if (auto msg = config.code.rs().decode(hard)) {
        ur.message = std::move(*msg);
        continue;
      }
      // decoder gave up; report the systematic positions as a best effort
    }
    ur.message = Message(hard.begin(), hard.begin() + config.code.info_sections());
  }
  return result;
}

amp::AmpConfig default_amp_config(const SraConfig& config) {
  amp::AmpConfig cfg;
  cfg.prior_activity = Eigen::VectorXd::Constant(
      config.dict->columns(), std::min(1.0, config.activation_prob / config.code.q()));
  cfg.fading = amp::FadingPrior::rayleigh(config.amplitude());
  return cfg;
}

}  // namespace cwgabor::sra
