#include "cwgabor/galois.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cwgabor::gf {

namespace {

// multiply by x modulo poly, degree-m arithmetic on bitmasks
std::uint32_t mulx_mod(std::uint32_t a, std::uint32_t poly, int degree) {
  a <<= 1;
  if (a & (1u << degree)) a ^= poly;
  return a;
}

bool is_primitive(std::uint32_t poly, int degree) {
  if ((poly & 1u) == 0) return false;  // x divides poly
  const std::uint32_t group_order = (1u << degree) - 1;
  std::uint32_t t = 2;  // the element x
  std::uint32_t steps = 1;
  if (degree == 1) t = poly ^ 2;  // x = 1 mod (x+1)
  while (t != 1) {
    t = mulx_mod(t, poly, degree);
    if (++steps > group_order) return false;  // x not invertible
  }
  // x generates the full multiplicative group iff its order is 2^m - 1,
  // which also forces poly irreducible.
  return steps == group_order;
}

}  // namespace

std::uint32_t smallest_primitive_poly(int degree) {
  if (degree < 1 || degree > 14) throw std::invalid_argument("field degree must be in [1, 14]");
  for (std::uint32_t poly = (1u << degree) + 1; poly < (2u << degree); poly += 2) {
    if (is_primitive(poly, degree)) return poly;
  }
  throw std::logic_error("no primitive polynomial found");  // unreachable
}

GaloisField::GaloisField(int degree) : GaloisField(degree, smallest_primitive_poly(degree)) {}

GaloisField::GaloisField(int degree, std::uint32_t primitive_poly)
    : degree_(degree), order_(1u << degree), poly_(primitive_poly) {
  if (degree < 1 || degree > 14) throw std::invalid_argument("field degree must be in [1, 14]");
  if (!is_primitive(poly_, degree_))
    throw std::invalid_argument("polynomial is not primitive of the requested degree");
  build_tables();
}

void GaloisField::build_tables() {
  const std::uint32_t q1 = order_ - 1;
  exp_.assign(2 * q1, 0);
  log_.assign(order_, -1);
  std::uint32_t v = 1;
  for (std::uint32_t i = 0; i < q1; ++i) {
    exp_[i] = static_cast<Symbol>(v);
    exp_[i + q1] = static_cast<Symbol>(v);
    log_[v] = static_cast<int>(i);
    v = mulx_mod(v, poly_, degree_);
  }
}

Symbol GaloisField::inv(Symbol a) const {
  if (a == 0) throw std::invalid_argument("zero has no inverse");
  return exp_[order_ - 1 - static_cast<std::uint32_t>(log_[a])];
}

Symbol GaloisField::pow(Symbol a, std::int64_t e) const {
  if (a == 0) {
    if (e < 0) throw std::invalid_argument("zero has no inverse");
    return e == 0 ? Symbol{1} : Symbol{0};
  }
  const std::int64_t q1 = order_ - 1;
  std::int64_t le = (static_cast<std::int64_t>(log_[a]) * e) % q1;
  if (le < 0) le += q1;
  return exp_[le];
}

int GaloisField::log(Symbol a) const {
  if (a == 0) throw std::invalid_argument("log of zero");
  return log_[a];
}

Symbol GaloisField::exp(std::int64_t i) const {
  const std::int64_t q1 = order_ - 1;
  std::int64_t r = i % q1;
  if (r < 0) r += q1;
  return exp_[r];
}

ReedSolomonCode::ReedSolomonCode(GaloisField field, int block_len, int dim)
    : ReedSolomonCode(std::move(field), block_len, dim, {}, false) {}

ReedSolomonCode::ReedSolomonCode(GaloisField field, int block_len, int dim,
                                 std::vector<Symbol> generator, bool explicit_generator)
    : field_(std::move(field)),
      n_(block_len),
      k_(dim),
      explicit_generator_(explicit_generator),
      generator_(std::move(generator)) {
  if (k_ < 1 || k_ > n_) throw std::invalid_argument("need 1 <= k' <= n'");
  if (static_cast<std::uint32_t>(n_) > field_.order() - 1)
    throw std::invalid_argument("cyclic construction needs n' < q");

  if (!explicit_generator_) {
    // g(x) = prod_{j=1..n-k} (x - alpha^j)
    generator_poly_.assign(1, 1);
    for (int j = 1; j <= n_ - k_; ++j) {
      const Symbol root = field_.exp(j);
      std::vector<Symbol> next(generator_poly_.size() + 1, 0);
      for (std::size_t i = 0; i < generator_poly_.size(); ++i) {
        next[i] ^= field_.mul(generator_poly_[i], root);
        next[i + 1] ^= generator_poly_[i];
      }
      generator_poly_ = std::move(next);
    }
    generator_.assign(static_cast<std::size_t>(k_) * n_, 0);
    std::vector<Symbol> unit(k_, 0);
    for (int i = 0; i < k_; ++i) {
      unit[i] = 1;
      auto row = encode(unit);
      std::copy(row.begin(), row.end(), generator_.begin() + static_cast<std::size_t>(i) * n_);
      unit[i] = 0;
    }
  } else {
    if (generator_.size() != static_cast<std::size_t>(k_) * n_)
      throw std::invalid_argument("generator matrix has wrong shape");
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < n_; ++j) {
        const Symbol g = generator_[static_cast<std::size_t>(i) * n_ + j];
        if (g >= field_.order()) throw std::invalid_argument("generator entry out of field range");
        if (j < k_ && g != (i == j ? 1 : 0))
          throw std::invalid_argument("generator is not in systematic form");
      }
  }
}

ReedSolomonCode ReedSolomonCode::from_generator(GaloisField field, int block_len, int dim,
                                                std::vector<Symbol> generator) {
  return ReedSolomonCode(std::move(field), block_len, dim, std::move(generator), true);
}

std::vector<Symbol> ReedSolomonCode::encode(std::span<const Symbol> message) const {
  if (static_cast<int>(message.size()) != k_) throw std::invalid_argument("message length != k'");
  for (Symbol s : message)
    if (s >= field_.order()) throw std::invalid_argument("message symbol out of field range");

  std::vector<Symbol> codeword(n_, 0);
  std::copy(message.begin(), message.end(), codeword.begin());

  if (explicit_generator_) {
    for (int j = k_; j < n_; ++j) {
      Symbol acc = 0;
      for (int i = 0; i < k_; ++i)
        acc ^= field_.mul(message[i], generator_[static_cast<std::size_t>(i) * n_ + j]);
      codeword[j] = acc;
    }
    return codeword;
  }

  // parity = (message(x) * x^(n-k)) mod g(x); vector position i holds the
  // coefficient of x^(n-1-i)
  const int parity_len = n_ - k_;
  if (parity_len == 0) return codeword;
  std::vector<Symbol> rem(parity_len, 0);
  for (int i = 0; i < k_; ++i) {
    const Symbol feedback = message[i] ^ rem[0];
    std::copy(rem.begin() + 1, rem.end(), rem.begin());
    rem[parity_len - 1] = 0;
    if (feedback != 0) {
      for (int j = 0; j < parity_len; ++j)
        rem[j] ^= field_.mul(feedback, generator_poly_[parity_len - 1 - j]);
    }
  }
  std::copy(rem.begin(), rem.end(), codeword.begin() + k_);
  return codeword;
}

std::optional<std::vector<Symbol>> ReedSolomonCode::decode(std::span<const Symbol> received,
                                                           std::span<const int> erasures) const {
  if (static_cast<int>(received.size()) != n_) throw std::invalid_argument("received length != n'");
  for (Symbol s : received)
    if (s >= field_.order()) throw std::invalid_argument("received symbol out of field range");
  for (int e : erasures)
    if (e < 0 || e >= n_) throw std::invalid_argument("erasure position out of range");

  if (explicit_generator_) return decode_exhaustive(received, erasures);
  return decode_bm(received, erasures);
}

std::optional<std::vector<Symbol>> ReedSolomonCode::decode_bm(std::span<const Symbol> received,
                                                              std::span<const int> erasures) const {
  const int nroots = n_ - k_;
  std::vector<int> eras(erasures.begin(), erasures.end());
  std::sort(eras.begin(), eras.end());
  eras.erase(std::unique(eras.begin(), eras.end()), eras.end());
  const int f = static_cast<int>(eras.size());
  if (f > nroots) return std::nullopt;

  std::vector<Symbol> r(received.begin(), received.end());
  for (int pos : eras) r[pos] = 0;

  if (nroots == 0) {
    if (f > 0) return std::nullopt;  // uncoded, nothing to fill erasures from
    return std::vector<Symbol>(r.begin(), r.begin() + k_);
  }

  // syndromes S_j = r(alpha^j), vector position i <-> degree n-1-i
  std::vector<Symbol> synd(nroots, 0);
  bool clean = true;
  for (int j = 1; j <= nroots; ++j) {
    Symbol s = 0;
    for (int i = 0; i < n_; ++i) {
      if (r[i] == 0) continue;
      s ^= field_.mul(r[i], field_.exp(static_cast<std::int64_t>(j) * (n_ - 1 - i)));
    }
    synd[j - 1] = s;
    clean = clean && s == 0;
  }
  if (clean) return std::vector<Symbol>(r.begin(), r.begin() + k_);

  // erasure locator, then Berlekamp-Massey over the remaining steps
  std::vector<Symbol> lambda(nroots + 1, 0);
  lambda[0] = 1;
  for (int pos : eras) {
    const Symbol x = field_.exp(n_ - 1 - pos);
    for (int i = static_cast<int>(lambda.size()) - 1; i >= 1; --i)
      lambda[i] ^= field_.mul(lambda[i - 1], x);
  }
  std::vector<Symbol> b = lambda;
  int el = f;
  for (int step = f + 1; step <= nroots; ++step) {
    Symbol discrepancy = 0;
    for (int i = 0; i < step; ++i) {
      if (i < static_cast<int>(lambda.size()) && lambda[i] != 0)
        discrepancy ^= field_.mul(lambda[i], synd[step - 1 - i]);
    }
    if (discrepancy == 0) {
      b.insert(b.begin(), 0);
      b.resize(lambda.size());
      continue;
    }
    std::vector<Symbol> t(lambda.size(), 0);
    t[0] = lambda[0];
    for (std::size_t i = 0; i + 1 < lambda.size(); ++i)
      t[i + 1] = lambda[i + 1] ^ field_.mul(discrepancy, b[i]);
    if (2 * el <= step + f - 1) {
      el = step + f - el;
      const Symbol inv_d = field_.inv(discrepancy);
      for (std::size_t i = 0; i < lambda.size(); ++i) b[i] = field_.mul(lambda[i], inv_d);
    }
    b.insert(b.begin(), 0);
    b.resize(lambda.size());
    lambda = std::move(t);
  }

  int deg_lambda = 0;
  for (int i = nroots; i >= 0; --i)
    if (lambda[i] != 0) {
      deg_lambda = i;
      break;
    }
  if (2 * (deg_lambda - f) + f > nroots) return std::nullopt;

  // Chien search restricted to valid positions
  std::vector<int> err_pos;
  for (int i = 0; i < n_; ++i) {
    const int p = n_ - 1 - i;
    Symbol v = 0;
    for (int d = 0; d <= deg_lambda; ++d)
      if (lambda[d] != 0) v ^= field_.mul(lambda[d], field_.exp(-static_cast<std::int64_t>(p) * d));
    if (v == 0) err_pos.push_back(i);
  }
  if (static_cast<int>(err_pos.size()) != deg_lambda) return std::nullopt;

  // Forney: omega = S * lambda mod x^nroots, e = omega(Xinv)/lambda'(Xinv)
  std::vector<Symbol> omega(nroots, 0);
  for (int i = 0; i < nroots; ++i) {
    Symbol acc = 0;
    for (int j = 0; j <= i && j <= deg_lambda; ++j)
      if (lambda[j] != 0) acc ^= field_.mul(lambda[j], synd[i - j]);
    omega[i] = acc;
  }
  for (int pos : err_pos) {
    const int p = n_ - 1 - pos;
    Symbol num = 0;
    for (int d = 0; d < nroots; ++d)
      if (omega[d] != 0) num ^= field_.mul(omega[d], field_.exp(-static_cast<std::int64_t>(p) * d));
    Symbol den = 0;
    for (int d = 1; d <= deg_lambda; d += 2)
      if (lambda[d] != 0)
        den ^= field_.mul(lambda[d], field_.exp(-static_cast<std::int64_t>(p) * (d - 1)));
    if (den == 0) return std::nullopt;
    r[pos] ^= field_.div(num, den);
  }

  // reject if the corrected word is not a codeword
  for (int j = 1; j <= nroots; ++j) {
    Symbol s = 0;
    for (int i = 0; i < n_; ++i)
      if (r[i] != 0) s ^= field_.mul(r[i], field_.exp(static_cast<std::int64_t>(j) * (n_ - 1 - i)));
    if (s != 0) return std::nullopt;
  }
  return std::vector<Symbol>(r.begin(), r.begin() + k_);
}

std::optional<std::vector<Symbol>> ReedSolomonCode::decode_exhaustive(
    std::span<const Symbol> received, std::span<const int> erasures) const {
  const double log2_count = static_cast<double>(k_) * field_.degree();
  if (log2_count > 20)
    throw std::invalid_argument("explicit-generator decoding requires q^k' <= 2^20");

  std::vector<bool> erased(n_, false);
  for (int e : erasures) erased[e] = true;
  const int f = static_cast<int>(std::count(erased.begin(), erased.end(), true));

  const std::uint64_t count = 1ull << static_cast<int>(log2_count);
  std::vector<Symbol> msg(k_, 0);
  std::optional<std::vector<Symbol>> best;
  int best_err = n_ + 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t v = idx;
    for (int i = 0; i < k_; ++i) {
      msg[i] = static_cast<Symbol>(v & (field_.order() - 1));
      v >>= field_.degree();
    }
    const auto cw = encode(msg);
    int err = 0;
    for (int i = 0; i < n_; ++i)
      if (!erased[i] && cw[i] != received[i]) ++err;
    if (err < best_err) {
      best_err = err;
      best = msg;
    }
  }
  if (best && 2 * best_err + f < min_distance()) return best;
  return std::nullopt;
}

std::vector<double> ReedSolomonCode::siso_update(std::span<const double> beliefs,
                                                 double gamma) const {
  const int q = static_cast<int>(field_.order());
  if (beliefs.size() != static_cast<std::size_t>(n_) * q)
    throw std::invalid_argument("beliefs must be n' x q");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must be in (0, 1]");

  std::vector<Symbol> hard(n_);
  std::vector<double> reliability(n_);
  for (int i = 0; i < n_; ++i) {
    double sum = 0.0, best = -1.0;
    int arg = 0;
    for (int s = 0; s < q; ++s) {
      const double p = beliefs[static_cast<std::size_t>(i) * q + s];
      if (p < 0.0) throw std::invalid_argument("belief entries must be nonnegative");
      sum += p;
      if (p > best) {
        best = p;
        arg = s;
      }
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("belief rows must sum to 1");
    hard[i] = static_cast<Symbol>(arg);
    reliability[i] = best;
  }

  std::vector<int> order(n_);
  for (int i = 0; i < n_; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return reliability[a] < reliability[b]; });

  // GMD schedule: erase 0, 2, 4, ... least-reliable positions
  for (int f = 0; f < min_distance() && f <= n_; f += 2) {
    std::vector<int> eras(order.begin(), order.begin() + f);
    if (auto msg = decode(hard, eras)) {
      const auto cw = encode(*msg);
      std::vector<double> out(beliefs.begin(), beliefs.end());
      for (int i = 0; i < n_; ++i)
        for (int s = 0; s < q; ++s) {
          const std::size_t at = static_cast<std::size_t>(i) * q + s;
          out[at] = (1.0 - gamma) * beliefs[at] + (s == cw[i] ? gamma : 0.0);
        }
      return out;
    }
  }
  return std::vector<double>(beliefs.begin(), beliefs.end());
}

}  // namespace cwgabor::gf
