#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cwgabor/rng.hpp"

namespace cwgabor::chan {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

enum class FadingModel { Awgn, RayleighBlock };

struct ChannelConfig {
  FadingModel model = FadingModel::Awgn;
  int antennas = 1;       // T
  double noise_var = 1.0; // N0 per complex dimension
  double power = 1.0;     // per-user P
  int block_len = 0;      // N
  int message_bits = 0;   // b
};

// N0 = P N / (b 10^(EbN0_dB/10))
double ebn0_to_noise(double ebn0_db, double power, int block_len, int message_bits);
double noise_to_ebn0(double noise_var, double power, int block_len, int message_bits);

// h_i per user: 1 for AWGN, CN(0,1) per antenna for Rayleigh block fading
MatrixXcd draw_fading(const ChannelConfig& config, int n_users, SplitRng& rng);

// i.i.d. CN(0, N0) entries; drawn unit-variance then scaled so matched seeds
// stay coupled across noise levels
MatrixXcd draw_noise(const ChannelConfig& config, SplitRng& rng);

// Y = sum_i s_i h_i^T + W; signals must satisfy |s|^2 = P N within 1e-9
MatrixXcd simulate_block(const std::vector<VectorXcd>& signals, const MatrixXcd& fading,
                         const MatrixXcd& noise, const ChannelConfig& config);
MatrixXcd simulate_block(const std::vector<VectorXcd>& signals, const ChannelConfig& config,
                         SplitRng& rng);

enum class ActivityMode { FixedCount, Bernoulli };

// FixedCount: exactly k_active distinct indices uniform over [0, n_users);
// Bernoulli: each user independently active with probability rho
std::vector<int> draw_activity(int n_users, ActivityMode mode, int k_active, double rho,
                               SplitRng& rng);

}  // namespace cwgabor::chan
