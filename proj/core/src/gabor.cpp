#include "cwgabor/gabor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>

namespace cwgabor::gabor {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;  // FFTW plan creation is not thread-safe
  return m;
}

}  // namespace

bool is_prime(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

VectorXcd alltop_seed(int n) {
  if (n < 5 || !is_prime(n)) throw std::invalid_argument("Alltop seed needs a prime N >= 5");
  VectorXcd g(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    // k^3 mod N, kept in integer arithmetic
    const long k3 = ((static_cast<long>(k) * k) % n * k) % n;
    const double phase = 2.0 * M_PI * static_cast<double>(k3) / n;
    g[k] = std::polar(scale, phase);
  }
  return g;
}

VectorXcd LinearDictionary::column(long i) const {
  MatrixXcd e = MatrixXcd::Zero(columns(), 1);
  e(i, 0) = 1.0;
  return apply(e).col(0);
}

GaborDictionary::GaborDictionary(int n, long m_total, long stride)
    : n_(n), m_total_(m_total), stride_(stride), seed_(alltop_seed(n)) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (m_total < 1) throw std::invalid_argument("m_total must be >= 1");
  if (stride * (m_total - 1) >= static_cast<long>(n) * n)
    throw std::invalid_argument("selection exceeds the N^2 frame columns");

  for (long i = 0; i < m_total_; ++i) {
    const long c = stride_ * i;
    const int t = static_cast<int>(c / n_);
    const int f = static_cast<int>(c % n_);
    if (blocks_.empty() || blocks_.back().t != t) blocks_.push_back(Block{t, {}, {}});
    blocks_.back().rows.push_back(i);
    blocks_.back().freqs.push_back(f);
  }

  std::scoped_lock lock(fftw_planner_mutex());
  std::vector<std::complex<double>> tmp(n_);
  auto* buf = reinterpret_cast<fftw_complex*>(tmp.data());
  plan_fwd_ = fftw_plan_dft_1d(n_, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_bwd_ = fftw_plan_dft_1d(n_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_fwd_ == nullptr || plan_bwd_ == nullptr) throw std::runtime_error("fftw planning failed");
}

GaborDictionary::~GaborDictionary() {
  std::scoped_lock lock(fftw_planner_mutex());
  if (plan_fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_bwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

int GaborDictionary::col_time_shift(long i) const {
  return static_cast<int>((stride_ * i) / n_);
}

int GaborDictionary::col_frequency(long i) const {
  return static_cast<int>((stride_ * i) % n_);
}

MatrixXcd GaborDictionary::apply(const MatrixXcd& x) const {
  if (x.rows() != m_total_) throw std::invalid_argument("apply: x must have columns() rows");
  const auto T = x.cols();
  MatrixXcd y = MatrixXcd::Zero(n_, T);
  std::vector<std::complex<double>> buf(n_);
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  for (Eigen::Index a = 0; a < T; ++a) {
    for (const Block& blk : blocks_) {
      std::fill(buf.begin(), buf.end(), std::complex<double>{0.0, 0.0});
      bool any = false;
      for (std::size_t j = 0; j < blk.rows.size(); ++j) {
        const std::complex<double> v = x(blk.rows[j], a);
        if (v != 0.0) {
          buf[blk.freqs[j]] = v;
          any = true;
        }
      }
      if (!any) continue;
      fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), raw, raw);
      for (int k = 0; k < n_; ++k) {
        const int src = k - blk.t < 0 ? k - blk.t + n_ : k - blk.t;
        y(k, a) += seed_[src] * buf[k];
      }
    }
  }
  return y;
}

MatrixXcd GaborDictionary::adjoint(const MatrixXcd& y) const {
  if (y.rows() != n_) throw std::invalid_argument("adjoint: y must have n rows");
  const auto T = y.cols();
  MatrixXcd r = MatrixXcd::Zero(m_total_, T);
  std::vector<std::complex<double>> buf(n_);
  auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
  for (Eigen::Index a = 0; a < T; ++a) {
    for (const Block& blk : blocks_) {
      for (int k = 0; k < n_; ++k) {
        const int src = k - blk.t < 0 ? k - blk.t + n_ : k - blk.t;
        buf[k] = std::conj(seed_[src]) * y(k, a);
      }
      fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), raw, raw);
      for (std::size_t j = 0; j < blk.rows.size(); ++j) r(blk.rows[j], a) = buf[blk.freqs[j]];
    }
  }
  return r;
}

MatrixXcd GaborDictionary::frame_operator() const {
  MatrixXcd gram = MatrixXcd::Zero(n_, n_);
  // sum of phi phi^H over selected columns, one block at a time
  for (const Block& blk : blocks_) {
    for (std::size_t j = 0; j < blk.freqs.size(); ++j) {
      VectorXcd col(n_);
      const int f = blk.freqs[j];
      for (int k = 0; k < n_; ++k) {
        const int src = k - blk.t < 0 ? k - blk.t + n_ : k - blk.t;
        const double phase = -2.0 * M_PI * static_cast<double>(k) * f / n_;
        col[k] = seed_[src] * std::polar(1.0, phase);
      }
      gram.noalias() += col * col.adjoint();
    }
  }
  return gram;
}

CoherenceReport GaborDictionary::coherence() const {
  CoherenceReport report;
  if (m_total_ < 2) return report;
  if (n_ > 1009) throw std::invalid_argument("coherence analytics capped at N <= 1009");

  // |<phi_{t,f}, phi_{t',f'}>| depends only on (dt, df) = (t'-t, f'-f) mod N:
  // it is |FFT(conj(g) .* shift(g, dt))[df]|. Tabulate all N^2 values.
  std::vector<std::vector<double>> ambiguity(n_, std::vector<double>(n_));
  {
    std::vector<std::complex<double>> buf(n_);
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    for (int dt = 0; dt < n_; ++dt) {
      for (int k = 0; k < n_; ++k) {
        const int src = k - dt < 0 ? k - dt + n_ : k - dt;
        buf[k] = std::conj(seed_[k]) * seed_[src];
      }
      fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), raw, raw);
      for (int df = 0; df < n_; ++df) ambiguity[dt][df] = std::abs(buf[df]);
    }
  }

  // which (dt, df) differences occur among selected column pairs
  std::vector<std::vector<bool>> realizable(n_, std::vector<bool>(n_, false));
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    for (std::size_t bj = bi; bj < blocks_.size(); ++bj) {
      const Block& a = blocks_[bi];
      const Block& b = blocks_[bj];
      const int dt = b.t - a.t;
      auto& row = realizable[dt];
      const bool full_a = static_cast<int>(a.freqs.size()) == n_;
      const bool full_b = static_cast<int>(b.freqs.size()) == n_;
      if (full_a || full_b) {
        for (int df = 0; df < n_; ++df) row[df] = true;
        if (dt == 0) row[0] = false;  // same column is not a pair
        continue;
      }
      for (int fa : a.freqs)
        for (int fb : b.freqs) {
          if (bi == bj && fa == fb) continue;
          const int df = fb - fa < 0 ? fb - fa + n_ : fb - fa;
          row[df] = true;
        }
    }
  }

  std::set<long> clusters;  // magnitudes clustered at 1e-9 resolution
  for (int dt = 0; dt < n_; ++dt)
    for (int df = 0; df < n_; ++df) {
      if (!realizable[dt][df]) continue;
      const double v = ambiguity[dt][df];
      report.max_offdiag = std::max(report.max_offdiag, v);
      clusters.insert(std::lround(v * 1e9));
    }
  report.values.reserve(clusters.size());
  for (long c : clusters) report.values.push_back(static_cast<double>(c) * 1e-9);
  return report;
}

GaussianDictionary::GaussianDictionary(int n, long m_total, std::uint64_t seed) {
  if (n < 1 || m_total < 1) throw std::invalid_argument("bad Gaussian dictionary shape");
  SplitRng rng(seed, 0x6761757373ull);
  mat_.resize(n, m_total);
  for (long j = 0; j < m_total; ++j) {
    for (int i = 0; i < n; ++i) mat_(i, j) = rng.next_cgauss(1.0);
    mat_.col(j).normalize();
  }
}

}  // namespace cwgabor::gabor
