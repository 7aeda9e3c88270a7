#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cwgabor/galois.hpp"
#include "cwgabor/rng.hpp"

namespace cwgabor::cw {

using gf::Symbol;

// PPM(q) o RS(n', k'): one 1 per length-q section, codewords stored as per-
// section symbol indices rather than dense bit vectors (q goes up to 2^14).
struct BinaryCodeword {
  int q = 0;
  std::vector<Symbol> section_symbols;  // size n'

  int sections() const { return static_cast<int>(section_symbols.size()); }
  long length() const { return static_cast<long>(q) * sections(); }
  std::vector<std::uint8_t> to_dense() const;
};

struct CwParams {
  long n;         // binary blocklength n' * q
  double log2_m;  // log2 of code size q^k'
  int w;          // weight n'
  int d;          // max pairwise overlap k' - 1
  long p;         // guaranteed disjunctive order ceil(w/d) - 1
  int b;          // message bits k' * log2(q)
};

CwParams cw_params(int q, int n_prime, int k_prime);

class ConstantWeightCode {
 public:
  // ppm_order must equal the RS field order
  explicit ConstantWeightCode(gf::ReedSolomonCode rs);

  const gf::ReedSolomonCode& rs() const { return rs_; }
  int q() const { return static_cast<int>(rs_.field().order()); }
  int sections() const { return rs_.n(); }  // n'
  int info_sections() const { return rs_.k(); }
  long n() const { return static_cast<long>(q()) * sections(); }
  int weight() const { return rs_.n(); }
  int max_overlap() const { return rs_.k() - 1; }
  long disjunctive_order() const;  // ceil(w/d) - 1
  int message_bits() const { return rs_.k() * rs_.field().degree(); }

  BinaryCodeword encode(std::span<const Symbol> message_symbols) const;
  BinaryCodeword encode_bits(std::span<const std::uint8_t> bits) const;

  // big-endian within each log2(q)-bit chunk, chunk i -> RS symbol i
  std::vector<Symbol> bits_to_symbols(std::span<const std::uint8_t> bits) const;
  std::vector<std::uint8_t> symbols_to_bits(std::span<const Symbol> symbols) const;

 private:
  gf::ReedSolomonCode rs_;
};

std::vector<std::uint8_t> superpose(std::span<const BinaryCodeword> codewords);
std::vector<std::uint8_t> superpose(std::span<const std::vector<std::uint8_t>> vectors);

int correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
int correlation(const BinaryCodeword& cw, std::span<const std::uint8_t> dense);

struct DisjunctiveReport {
  bool pass = true;
  long subsets_tested = 0;
  std::string counterexample;  // empty when pass
  bool protocol_property_pass = true;
};

// Checks Def. 4 (zero-false-drop) and Def. 5 (protocol sequences) on
// subsets of distinct codewords of size <= order. Exhaustive mode walks
// every subset and refuses when C(m, order) exceeds max_exhaustive.
DisjunctiveReport verify_disjunctive(const ConstantWeightCode& code, int order, bool exhaustive,
                                     long trials, SplitRng& rng, long max_exhaustive = 2'000'000);

}  // namespace cwgabor::cw
