#include "cwgabor/cwcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cwgabor::cw {

namespace {

bool is_power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

long disjunctive_order_from(int w, int d) {
  if (d == 0) return std::numeric_limits<long>::max();  // disjoint supports
  return (w + d - 1) / d - 1;
}

}  // namespace

std::vector<std::uint8_t> BinaryCodeword::to_dense() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(length()), 0);
  for (int i = 0; i < sections(); ++i)
    out[static_cast<std::size_t>(i) * q + section_symbols[i]] = 1;
  return out;
}

CwParams cw_params(int q, int n_prime, int k_prime) {
  if (!is_power_of_two(q) || q < 2 || q > (1 << 14))
    throw std::invalid_argument("PPM order must be a power of two in [2, 2^14]");
  if (!(k_prime >= 1 && k_prime <= n_prime && n_prime <= q))
    throw std::invalid_argument("need 1 <= k' <= n' <= q");
  const int m_bits = static_cast<int>(std::lround(std::log2(q)));
  CwParams p;
  p.n = static_cast<long>(q) * n_prime;
  p.log2_m = static_cast<double>(k_prime) * m_bits;
  p.w = n_prime;
  p.d = k_prime - 1;
  p.p = disjunctive_order_from(p.w, p.d);
  p.b = k_prime * m_bits;
  return p;
}

ConstantWeightCode::ConstantWeightCode(gf::ReedSolomonCode rs) : rs_(std::move(rs)) {
  if (!is_power_of_two(rs_.field().order()))
    throw std::invalid_argument("PPM order must be a power of two");
}

long ConstantWeightCode::disjunctive_order() const {
  return disjunctive_order_from(weight(), max_overlap());
}

BinaryCodeword ConstantWeightCode::encode(std::span<const Symbol> message_symbols) const {
  return BinaryCodeword{q(), rs_.encode(message_symbols)};
}

BinaryCodeword ConstantWeightCode::encode_bits(std::span<const std::uint8_t> bits) const {
  const auto symbols = bits_to_symbols(bits);
  return encode(symbols);
}

std::vector<Symbol> ConstantWeightCode::bits_to_symbols(std::span<const std::uint8_t> bits) const {
  const int m = rs_.field().degree();
  if (bits.size() != static_cast<std::size_t>(message_bits()))
    throw std::invalid_argument("message must be exactly b bits");
  std::vector<Symbol> symbols(rs_.k(), 0);
  for (int i = 0; i < rs_.k(); ++i) {
    Symbol s = 0;
    for (int j = 0; j < m; ++j) {
      const std::uint8_t bit = bits[static_cast<std::size_t>(i) * m + j];
      if (bit > 1) throw std::invalid_argument("bits must be 0/1");
      s = static_cast<Symbol>((s << 1) | bit);
    }
    symbols[i] = s;
  }
  return symbols;
}

std::vector<std::uint8_t> ConstantWeightCode::symbols_to_bits(
    std::span<const Symbol> symbols) const {
  const int m = rs_.field().degree();
  if (symbols.size() != static_cast<std::size_t>(rs_.k()))
    throw std::invalid_argument("expected k' symbols");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(rs_.k()) * m);
  for (int i = 0; i < rs_.k(); ++i)
    for (int j = 0; j < m; ++j)
      bits[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint8_t>((symbols[i] >> (m - 1 - j)) & 1);
  return bits;
}

std::vector<std::uint8_t> superpose(std::span<const BinaryCodeword> codewords) {
  if (codewords.empty()) throw std::invalid_argument("empty superposition");
  std::vector<std::uint8_t> out(static_cast<std::size_t>(codewords[0].length()), 0);
  for (const auto& cw : codewords) {
    if (cw.length() != codewords[0].length() || cw.q != codewords[0].q)
      throw std::invalid_argument("codeword length mismatch");
    for (int i = 0; i < cw.sections(); ++i)
      out[static_cast<std::size_t>(i) * cw.q + cw.section_symbols[i]] = 1;
  }
  return out;
}

std::vector<std::uint8_t> superpose(std::span<const std::vector<std::uint8_t>> vectors) {
  if (vectors.empty()) throw std::invalid_argument("empty superposition");
  std::vector<std::uint8_t> out(vectors[0].size(), 0);
  for (const auto& v : vectors) {
    if (v.size() != out.size()) throw std::invalid_argument("vector length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) out[i] |= (v[i] != 0);
  }
  return out;
}

int correlation(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += (a[i] != 0 && b[i] != 0);
  return c;
}

int correlation(const BinaryCodeword& cw, std::span<const std::uint8_t> dense) {
  if (dense.size() != static_cast<std::size_t>(cw.length()))
    throw std::invalid_argument("vector length mismatch");
  int c = 0;
  for (int i = 0; i < cw.sections(); ++i)
    c += dense[static_cast<std::size_t>(i) * cw.q + cw.section_symbols[i]] != 0;
  return c;
}

namespace {

std::vector<Symbol> message_from_index(const ConstantWeightCode& code, std::uint64_t idx) {
  const int m = code.rs().field().degree();
  std::vector<Symbol> msg(code.info_sections());
  for (int i = 0; i < code.info_sections(); ++i) {
    msg[i] = static_cast<Symbol>(idx & ((1u << m) - 1));
    idx >>= m;
  }
  return msg;
}

struct SubsetChecker {
  const ConstantWeightCode& code;
  const std::vector<BinaryCodeword>* universe;  // null when too large to enumerate
  SplitRng* rng;
  DisjunctiveReport report;

  bool check(const std::vector<BinaryCodeword>& subset,
             const std::vector<std::uint64_t>& subset_ids) {
    const auto sup = superpose(std::span<const BinaryCodeword>(subset));
    const int w = code.weight();
    ++report.subsets_tested;

    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (correlation(subset[i], sup) != w) {
        fail(subset_ids, "member codeword lost full correlation");
        return false;
      }
      // Def. 5: some position where every other member is 0
      bool has_private = false;
      for (int sec = 0; sec < subset[i].sections() && !has_private; ++sec) {
        bool shared = false;
        for (std::size_t j = 0; j < subset.size(); ++j)
          if (j != i && subset[j].section_symbols[sec] == subset[i].section_symbols[sec]) {
            shared = true;
            break;
          }
        has_private = !shared;
      }
      if (!has_private) {
        report.protocol_property_pass = false;
        fail(subset_ids, "member has no private position (protocol property)");
        return false;
      }
    }

    if (universe != nullptr) {
      for (std::uint64_t id = 0; id < universe->size(); ++id) {
        if (std::find(subset_ids.begin(), subset_ids.end(), id) != subset_ids.end()) continue;
        if (correlation((*universe)[id], sup) >= w) {
          fail(subset_ids, "non-member codeword reached full correlation (false drop)");
          return false;
        }
      }
    } else {
      // code too large to sweep: spot-check random non-members
      for (int t = 0; t < 50; ++t) {
        const auto msg = random_message();
        const auto cand = code.encode(msg);
        if (std::find_if(subset.begin(), subset.end(), [&](const BinaryCodeword& c) {
              return c.section_symbols == cand.section_symbols;
            }) != subset.end())
          continue;
        if (correlation(cand, sup) >= w) {
          fail(subset_ids, "sampled non-member reached full correlation (false drop)");
          return false;
        }
      }
    }
    return true;
  }

  std::vector<Symbol> random_message() {
    std::vector<Symbol> msg(code.info_sections());
    for (auto& s : msg) s = static_cast<Symbol>(rng->next_below(code.q()));
    return msg;
  }

  void fail(const std::vector<std::uint64_t>& ids, const char* why) {
    report.pass = false;
    std::ostringstream os;
    os << why << "; subset message indices:";
    for (auto id : ids) os << ' ' << id;
    report.counterexample = os.str();
  }
};

}  // namespace

DisjunctiveReport verify_disjunctive(const ConstantWeightCode& code, int order, bool exhaustive,
                                     long trials, SplitRng& rng, long max_exhaustive) {
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  const double log2_m = static_cast<double>(code.info_sections()) * code.rs().field().degree();

  std::vector<BinaryCodeword> universe;
  const std::vector<BinaryCodeword>* universe_ptr = nullptr;
  if (log2_m <= 20) {
    const std::uint64_t m = 1ull << static_cast<int>(log2_m);
    universe.reserve(m);
    for (std::uint64_t id = 0; id < m; ++id)
      universe.push_back(code.encode(message_from_index(code, id)));
    universe_ptr = &universe;
  }

  SubsetChecker checker{code, universe_ptr, &rng, {}};

  if (exhaustive) {
    if (universe_ptr == nullptr)
      throw std::invalid_argument("exhaustive mode requires an enumerable code");
    if (order * log2_m > 62 ||
        std::pow(static_cast<double>(universe.size()), order) > static_cast<double>(max_exhaustive))
      throw std::invalid_argument("exhaustive subset budget exceeded (m^order too large)");
    const std::uint64_t m = universe.size();
    std::vector<std::uint64_t> ids;
    std::vector<BinaryCodeword> subset;
    // all subsets of size 1..order, lexicographic
    auto recurse = [&](auto&& self, std::uint64_t start) -> bool {
      if (!ids.empty() && !checker.check(subset, ids)) return false;
      if (static_cast<int>(ids.size()) == order) return true;
      for (std::uint64_t id = start; id < m; ++id) {
        ids.push_back(id);
        subset.push_back(universe[id]);
        if (!self(self, id + 1)) return false;
        ids.pop_back();
        subset.pop_back();
      }
      return true;
    };
    recurse(recurse, 0);
    return checker.report;
  }

  for (long t = 0; t < trials && checker.report.pass; ++t) {
    const int size = 1 + static_cast<int>(rng.next_below(order));
    std::vector<std::uint64_t> ids;
    std::vector<BinaryCodeword> subset;
    int guard = 0;
    while (static_cast<int>(subset.size()) < size && guard++ < 1000) {
      const auto msg = checker.random_message();
      const auto cand = code.encode(msg);
      if (std::find_if(subset.begin(), subset.end(), [&](const BinaryCodeword& c) {
            return c.section_symbols == cand.section_symbols;
          }) != subset.end())
        continue;
      std::uint64_t id = 0;
      for (int i = code.info_sections() - 1; i >= 0; --i)
        id = (id << code.rs().field().degree()) | msg[i];
      ids.push_back(id);
      subset.push_back(cand);
    }
    checker.check(subset, ids);
  }
  return checker.report;
}

}  // namespace cwgabor::cw
