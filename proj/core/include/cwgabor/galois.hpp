#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cwgabor::gf {

using Symbol = std::uint16_t;

/// Returns the smallest-bitmask primitive polynomial of the given degree
/// over GF(2) (mask includes the x^degree term and the constant term).
std::uint32_t smallest_primitive_poly(int degree);

// GF(2^m) with log/antilog tables, m <= 14. Addition is XOR.
class GaloisField {
 public:
  explicit GaloisField(int degree);
  GaloisField(int degree, std::uint32_t primitive_poly);

  int degree() const { return degree_; }
  std::uint32_t order() const { return order_; }  // q = 2^m
  std::uint32_t primitive_poly() const { return poly_; }

  Symbol add(Symbol a, Symbol b) const { return a ^ b; }
  Symbol mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Symbol inv(Symbol a) const;
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, std::int64_t e) const;

  // discrete log / antilog, alpha = smallest primitive element (x)
  int log(Symbol a) const;
  Symbol exp(std::int64_t i) const;

  bool operator==(const GaloisField& other) const {
    return degree_ == other.degree_ && poly_ == other.poly_;
  }

 private:
  void build_tables();

  int degree_;
  std::uint32_t order_;
  std::uint32_t poly_;
  std::vector<Symbol> exp_;  // 2(q-1) entries, wrap-free products
  std::vector<int> log_;
};

// Systematic RS(n', k') over GF(q), shortened from the length q-1 cyclic
// code with generator-polynomial roots alpha^1..alpha^(n'-k'). The first
// k' codeword symbols are the message; d' = n'-k'+1 (MDS). k' == n'
// degenerates to the uncoded identity map.
class ReedSolomonCode {
 public:
  ReedSolomonCode(GaloisField field, int block_len, int dim);

  // code defined by an explicit systematic generator matrix (row-major
  // k' x n'), e.g. a generator quoted from external material. Decoding in
  // this mode falls back to exhaustive search and requires q^k' small.
  static ReedSolomonCode from_generator(GaloisField field, int block_len, int dim,
                                        std::vector<Symbol> generator);

  int n() const { return n_; }
  int k() const { return k_; }
  int min_distance() const { return n_ - k_ + 1; }
  const GaloisField& field() const { return field_; }

  // row-major k' x n' systematic generator
  const std::vector<Symbol>& generator() const { return generator_; }

  std::vector<Symbol> encode(std::span<const Symbol> message) const;

  // errors-and-erasures decoding: succeeds when 2e + f < d' with e symbol
  // errors outside the erasure set and f = |erasures|. Failure is a normal
  // return. Erasure positions outside [0, n') are rejected.
  std::optional<std::vector<Symbol>> decode(std::span<const Symbol> received,
                                            std::span<const int> erasures = {}) const;

  // GMD-style soft-input soft-output pass: hard-decide each position from
  // the belief rows, erase 0, 2, 4, ... least-reliable positions until an
  // errors-and-erasures decode succeeds, then mix the beliefs toward the
  // decoded codeword's one-hot rows with weight gamma. On failure the
  // input is returned unchanged. beliefs is row-major n' x q, each row a
  // distribution (sum 1 within 1e-9).
  std::vector<double> siso_update(std::span<const double> beliefs, double gamma) const;

 private:
  ReedSolomonCode(GaloisField field, int block_len, int dim, std::vector<Symbol> generator,
                  bool explicit_generator);

  std::optional<std::vector<Symbol>> decode_bm(std::span<const Symbol> received,
                                               std::span<const int> erasures) const;
  std::optional<std::vector<Symbol>> decode_exhaustive(std::span<const Symbol> received,
                                                       std::span<const int> erasures) const;

  GaloisField field_;
  int n_;
  int k_;
  bool explicit_generator_;
  std::vector<Symbol> generator_;      // k' x n' row-major
  std::vector<Symbol> generator_poly_; // degree n'-k', native mode only
};

}  // namespace cwgabor::gf
