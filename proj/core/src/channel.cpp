#include "cwgabor/channel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cwgabor::chan {

double ebn0_to_noise(double ebn0_db, double power, int block_len, int message_bits) {
  if (message_bits <= 0) throw std::invalid_argument("message_bits must be positive");
  return power * block_len / (message_bits * std::pow(10.0, ebn0_db / 10.0));
}

double noise_to_ebn0(double noise_var, double power, int block_len, int message_bits) {
  if (noise_var <= 0.0) throw std::invalid_argument("noise variance must be positive");
  return 10.0 * std::log10(power * block_len / (message_bits * noise_var));
}

MatrixXcd draw_fading(const ChannelConfig& config, int n_users, SplitRng& rng) {
  MatrixXcd h(n_users, config.antennas);
  if (config.model == FadingModel::Awgn) {
    h.setOnes();
    return h;
  }
  for (int i = 0; i < n_users; ++i)
    for (int t = 0; t < config.antennas; ++t) h(i, t) = rng.next_cgauss(1.0);
  return h;
}

MatrixXcd draw_noise(const ChannelConfig& config, SplitRng& rng) {
  if (!(config.noise_var > 0.0)) throw std::invalid_argument("noise variance must be positive");
  MatrixXcd w(config.block_len, config.antennas);
  const double s = std::sqrt(config.noise_var);
  for (int i = 0; i < config.block_len; ++i)
    for (int t = 0; t < config.antennas; ++t) w(i, t) = s * rng.next_cgauss(1.0);
  return w;
}

MatrixXcd simulate_block(const std::vector<VectorXcd>& signals, const MatrixXcd& fading,
                         const MatrixXcd& noise, const ChannelConfig& config) {
  const double target = config.power * config.block_len;
  MatrixXcd y = noise;
  if (y.rows() != config.block_len || y.cols() != config.antennas)
    throw std::invalid_argument("noise shape mismatch");
  if (fading.rows() != static_cast<long>(signals.size()) || fading.cols() != config.antennas)
    throw std::invalid_argument("fading shape mismatch");
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].size() != config.block_len) throw std::invalid_argument("signal length != N");
    if (std::abs(signals[i].squaredNorm() - target) > 1e-9 * std::max(1.0, target))
      throw std::invalid_argument("signal violates the |s|^2 = P N power constraint");
    y.noalias() += signals[i] * fading.row(i);
  }
  return y;
}

MatrixXcd simulate_block(const std::vector<VectorXcd>& signals, const ChannelConfig& config,
                         SplitRng& rng) {
  const MatrixXcd h = draw_fading(config, static_cast<int>(signals.size()), rng);
  const MatrixXcd w = draw_noise(config, rng);
  return simulate_block(signals, h, w, config);
}

std::vector<int> draw_activity(int n_users, ActivityMode mode, int k_active, double rho,
                               SplitRng& rng) {
  std::vector<int> active;
  if (mode == ActivityMode::FixedCount) {
    if (k_active < 0 || k_active > n_users)
      throw std::invalid_argument("k_active must lie in [0, n_users]");
    std::vector<int> pool(n_users);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k_active; ++i) {
      const auto j = i + static_cast<int>(rng.next_below(n_users - i));
      std::swap(pool[i], pool[j]);
      active.push_back(pool[i]);
    }
    std::sort(active.begin(), active.end());
    return active;
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0,1]");
  for (int i = 0; i < n_users; ++i)
    if (rng.next_double() < rho) active.push_back(i);
  return active;
}

}  // namespace cwgabor::chan
