#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "cwgabor/rng.hpp"

namespace cwgabor::gabor {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Alltop seed g_k = exp(j 2 pi k^3 / N) / sqrt(N), N prime >= 5
VectorXcd alltop_seed(int n);

bool is_prime(long v);

// Matrix-free sensing operator: n() rows, columns() unit-norm columns.
class LinearDictionary {
 public:
  virtual ~LinearDictionary() = default;
  virtual int n() const = 0;
  virtual long columns() const = 0;
  virtual MatrixXcd apply(const MatrixXcd& x) const = 0;    // columns() x T -> n x T
  virtual MatrixXcd adjoint(const MatrixXcd& y) const = 0;  // n x T -> columns() x T
  VectorXcd column(long i) const;  // dense column, mainly for tests
};

struct CoherenceReport {
  double max_offdiag = 0.0;
  std::vector<double> values;  // distinct off-diagonal magnitudes, 1e-9 clusters
};

// Gabor frame from the Alltop seed: column t*N + f is the seed circularly
// shifted by t and modulated by the f-th DFT column, so each time-shift
// block is an orthonormal basis and the full frame obeys Phi Phi^H = N I.
// Selection keeps indices {0, stride, 2*stride, ...} (stride 1 = the first
// m_total columns). apply/adjoint run one FFT per occupied block.
class GaborDictionary final : public LinearDictionary {
 public:
  GaborDictionary(int n, long m_total, long stride = 1);
  ~GaborDictionary() override;

  GaborDictionary(const GaborDictionary&) = delete;
  GaborDictionary& operator=(const GaborDictionary&) = delete;

  int n() const override { return n_; }
  long columns() const override { return m_total_; }
  long stride() const { return stride_; }
  const VectorXcd& seed() const { return seed_; }

  // column index decomposition: selected i -> frame index stride*i = t*N + f
  int col_time_shift(long i) const;
  int col_frequency(long i) const;

  MatrixXcd apply(const MatrixXcd& x) const override;
  MatrixXcd adjoint(const MatrixXcd& y) const override;

  // exact coherence analytics via the seed's ambiguity table
  CoherenceReport coherence() const;

  // n x n Gram of the frame rows, Phi_sel Phi_sel^H (dense)
  MatrixXcd frame_operator() const;

 private:
  struct Block {
    int t;
    std::vector<long> rows;  // indices into the selection
    std::vector<int> freqs;  // matching frequency bins
  };

  int n_;
  long m_total_;
  long stride_;
  VectorXcd seed_;
  std::vector<Block> blocks_;
  void* plan_fwd_ = nullptr;  // fftw_plan, opaque here
  void* plan_bwd_ = nullptr;
};

// i.i.d. CN(0,1) entries with columns normalized to unit norm; the phase-
// transition comparison baseline.
class GaussianDictionary final : public LinearDictionary {
 public:
  GaussianDictionary(int n, long m_total, std::uint64_t seed);

  int n() const override { return static_cast<int>(mat_.rows()); }
  long columns() const override { return mat_.cols(); }
  MatrixXcd apply(const MatrixXcd& x) const override { return mat_ * x; }
  MatrixXcd adjoint(const MatrixXcd& y) const override { return mat_.adjoint() * y; }
  const MatrixXcd& matrix() const { return mat_; }

 private:
  MatrixXcd mat_;
};

}  // namespace cwgabor::gabor
