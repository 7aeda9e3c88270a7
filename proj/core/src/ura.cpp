#include "cwgabor/ura.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace cwgabor::ura {

void UraConfig::validate() const {
  if (!dict) throw std::invalid_argument("missing dictionary");
  if (dict->columns() != code.n())
    throw std::invalid_argument("dictionary column count must equal the CW blocklength");
  if (k_active < 1) throw std::invalid_argument("k_active must be >= 1");
  if (limit() > k_active) throw std::invalid_argument("list_limit must be <= k_active");
  if (!(power > 0.0)) throw std::invalid_argument("power must be positive");
}

double UraConfig::amplitude() const {
  return std::sqrt(power * dict->n() / static_cast<double>(code.weight()));
}

Eigen::VectorXcd ura_encode(const UraConfig& config, const Message& message) {
  const auto cw = config.code.encode(message);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(config.dict->columns(), 1);
  for (int i = 0; i < cw.sections(); ++i)
    x(static_cast<long>(i) * cw.q + cw.section_symbols[i], 0) = config.amplitude();
  return config.dict->apply(x).col(0);
}

namespace {

std::vector<std::vector<gf::Symbol>> sections_by(const Eigen::VectorXd& llrs,
                                                 const cw::ConstantWeightCode& code, int depth,
                                                 double threshold, bool use_threshold) {
  if (llrs.size() != code.n()) throw std::invalid_argument("LLR vector length != n");
  const int q = code.q();
  std::vector<std::vector<gf::Symbol>> sections(code.sections());
  std::vector<int> idx(q);
  for (int sec = 0; sec < code.sections(); ++sec) {
    const long base = static_cast<long>(sec) * q;
    if (use_threshold) {
      for (int s = 0; s < q; ++s)
        if (llrs[base + s] > threshold) sections[sec].push_back(static_cast<gf::Symbol>(s));
      continue;
    }
    for (int s = 0; s < q; ++s) idx[s] = s;
    const int take = std::min(depth, q);
    std::partial_sort(idx.begin(), idx.begin() + take, idx.end(), [&](int a, int b) {
      if (llrs[base + a] != llrs[base + b]) return llrs[base + a] > llrs[base + b];
      return a < b;  // deterministic tie-break by ascending symbol
    });
    for (int s = 0; s < take; ++s) sections[sec].push_back(static_cast<gf::Symbol>(idx[s]));
  }
  return sections;
}

}  // namespace

std::vector<std::vector<gf::Symbol>> sections_from_llrs(const Eigen::VectorXd& llrs,
                                                        const cw::ConstantWeightCode& code,
                                                        int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  return sections_by(llrs, code, depth, 0.0, false);
}

std::vector<std::vector<gf::Symbol>> sections_above_threshold(const Eigen::VectorXd& llrs,
                                                              const cw::ConstantWeightCode& code,
                                                              double threshold) {
  return sections_by(llrs, code, 0, threshold, true);
}

std::vector<RankedMessage> outer_decode_search(const std::vector<std::vector<gf::Symbol>>& sections,
                                               const Eigen::VectorXd& llrs,
                                               const cw::ConstantWeightCode& code, int list_limit) {
  if (static_cast<int>(sections.size()) != code.sections())
    throw std::invalid_argument("need one candidate set per section");
  if (llrs.size() != code.n()) throw std::invalid_argument("LLR vector length != n");
  const int k = code.info_sections();
  const int q = code.q();

  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos *= std::max<std::size_t>(sections[i].size(), 1);
  if (combos > 2e7) throw std::invalid_argument("candidate product too large to search");

  // membership masks of the candidate support, all n' sections
  std::vector<std::vector<bool>> in_support(code.sections(), std::vector<bool>(q, false));
  for (int sec = 0; sec < code.sections(); ++sec)
    for (gf::Symbol s : sections[sec]) in_support[sec][s] = true;

  std::vector<RankedMessage> found;
  std::set<Message> seen;
  std::vector<gf::Symbol> msg(k);

  auto visit = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      if (!seen.insert(msg).second) return;
      const auto cw = code.rs().encode(msg);
      int corr = 0;
      double agg = 0.0;
      for (int sec = 0; sec < code.sections(); ++sec) {
        corr += in_support[sec][cw[sec]];
        agg += llrs[static_cast<long>(sec) * q + cw[sec]];
      }
      found.push_back(RankedMessage{msg, corr == code.weight(), agg});
      return;
    }
    for (gf::Symbol s : sections[pos]) {
      msg[pos] = s;
      self(self, pos + 1);
    }
  };
  for (int i = 0; i < k; ++i)
    if (sections[i].empty()) return {};  // an empty information section kills the search
  visit(visit, 0);

  std::sort(found.begin(), found.end(), [](const RankedMessage& a, const RankedMessage& b) {
    if (a.exact_match != b.exact_match) return a.exact_match;
    if (a.aggregate_llr != b.aggregate_llr) return a.aggregate_llr > b.aggregate_llr;
    return a.message < b.message;
  });
  if (static_cast<int>(found.size()) > list_limit) found.resize(list_limit);
  return found;
}

std::vector<Message> ura_decode(const UraConfig& config, const Eigen::MatrixXcd& y,
                                amp::AmpConfig amp_config) {
  config.validate();
  if (amp_config.prior_activity.size() == 0)
    amp_config.prior_activity =
        Eigen::VectorXd::Constant(config.dict->columns(),
                                  std::min(1.0, static_cast<double>(config.k_active) / config.code.q()));
  const auto out = amp::amp_run(*config.dict, y, amp_config);
  const auto llrs = amp::extract_llrs(out);
  const auto sections = sections_from_llrs(llrs, config.code, config.depth());
  auto ranked = outer_decode_search(sections, llrs, config.code, config.limit());
  std::vector<Message> list;
  list.reserve(ranked.size());
  for (auto& rm : ranked) list.push_back(std::move(rm.message));
  return list;
}

amp::AmpConfig default_amp_config(const UraConfig& config) {
  amp::AmpConfig cfg;
  cfg.prior_activity = Eigen::VectorXd::Constant(
      config.dict->columns(), std::min(1.0, static_cast<double>(config.k_active) / config.code.q()));
  cfg.fading = amp::FadingPrior::rayleigh(config.amplitude());
  return cfg;
}

}  // namespace cwgabor::ura
