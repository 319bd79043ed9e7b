#include "ssi/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ssi/syntax.hpp"

namespace ssi {

namespace {

void check_bound(std::size_t n) {
  if (n < 1 || n > max_enumerated_worlds)
    throw std::invalid_argument("frame size must be between 1 and " + std::to_string(max_enumerated_worlds));
}

std::vector<WorldSet> decode_relation(std::uint64_t code, std::size_t n) {
  std::vector<WorldSet> succ(n);
  const std::uint64_t row = WorldSet::first(n).bits();
  for (std::size_t w = 0; w < n; ++w) succ[w] = WorldSet((code >> (w * n)) & row);
  return succ;
}

/// Frames sharing one relation code, in canonical order; empty if the
/// relation violates the class.
std::vector<Frame> frames_for_relation(std::uint64_t code, std::size_t n, const FrameClass& cls) {
  std::vector<Frame> out;
  FrameClass relation_only = cls;
  relation_only.all_normal = false;
  Frame full(n, decode_relation(code, n), WorldSet::first(n));
  if (!satisfies_class(full, relation_only)) return out;
  if (cls.all_normal) {
    out.push_back(std::move(full));
    return out;
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  out.reserve(subsets);
  for (std::uint64_t nor = 0; nor < subsets; ++nor) out.emplace_back(n, decode_relation(code, n), WorldSet(nor));
  return out;
}

/// First frame (canonical order) on exactly n worlds for which `probe`
/// returns a value. Workers split relation codes; the smallest hit wins, so
/// the result is independent of the thread count.
template <typename T, typename Probe>
std::optional<T> first_hit(std::size_t n, const FrameClass& cls, unsigned threads, const Probe& probe) {
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  constexpr auto none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};

  auto scan = [&](std::uint64_t start, std::uint64_t stride) -> std::optional<T> {
    for (std::uint64_t code = start; code < total; code += stride) {
      if (code > best.load(std::memory_order_relaxed)) break;
      for (const Frame& fr : frames_for_relation(code, n, cls)) {
        if (auto hit = probe(fr)) {
          std::uint64_t cur = best.load();
          while (code < cur && !best.compare_exchange_weak(cur, code)) {
          }
          return hit;
        }
      }
    }
    return std::nullopt;
  };

  threads = std::max(1U, threads);
  if (threads == 1) return scan(0, 1);

  std::vector<std::optional<T>> hits(threads);
  std::vector<std::uint64_t> hit_codes(threads, none);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          hits[t] = scan(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  // Each worker returns its own first hit; its relation code is recoverable
  // from the frame, and the global minimum is the canonical answer.
  std::optional<T> out;
  std::uint64_t out_code = none;
  for (unsigned t = 0; t < threads; ++t) {
    if (!hits[t]) continue;
    const std::uint64_t code = hits[t]->frame_code();
    if (code < out_code) {
      out_code = code;
      out = std::move(hits[t]);
    }
  }
  return out;
}

/// Positions of `sub` variables inside the sorted union list `all`.
std::vector<std::size_t> variable_map(const std::vector<std::string>& sub, const std::vector<std::string>& all) {
  std::vector<std::size_t> out;
  for (const auto& v : sub) out.push_back(static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), v) - all.begin()));
  return out;
}

Model::Valuation named_valuation(const std::vector<std::string>& vars, std::span<const WorldSet> vals) {
  Model::Valuation out;
  for (std::size_t i = 0; i < vars.size(); ++i) out[vars[i]] = vals[i];
  return out;
}

struct CountermodelHit {
  CountermodelReport report;
  std::uint64_t frame_code() const { return report.model.frame().relation_code(); }
};

struct RuleHit {
  RuleFailure failure;
  std::uint64_t frame_code() const { return failure.frame.relation_code(); }
};

struct DivergenceHit {
  Divergence divergence;
  std::uint64_t frame_code() const { return divergence.model.frame().relation_code(); }
};

/// First valuation and normal world of `frame` falsifying `prog`.
std::optional<std::pair<std::vector<WorldSet>, World>> falsify_on_frame(const Frame& frame, const Program& prog) {
  if (frame.normals().empty()) return std::nullopt;
  const std::size_t k = prog.variables().size();
  const std::uint64_t total = valuation_count(frame.size(), k);
  std::vector<WorldSet> vals(k);
  std::vector<WorldSet> scratch(prog.slots());
  for (std::uint64_t code = 0; code < total; ++code) {
    decode_valuation(code, frame.size(), vals);
    const WorldSet failing = frame.normals() - prog.run(frame, vals, scratch);
    if (!failing.empty()) return std::make_pair(vals, failing.lowest());
  }
  return std::nullopt;
}

}  // namespace

void for_each_frame(std::size_t n, const FrameClass& cls, const std::function<bool(const Frame&)>& visit) {
  check_bound(n);
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t code = 0; code < total; ++code)
    for (const Frame& fr : frames_for_relation(code, n, cls))
      if (!visit(fr)) return;
}

std::vector<Frame> enumerate_frames(std::size_t n, const FrameClass& cls) {
  std::vector<Frame> out;
  for_each_frame(n, cls, [&](const Frame& fr) {
    out.push_back(fr);
    return true;
  });
  return out;
}

std::optional<CountermodelReport> find_countermodel(const Formula& f, const FrameClass& cls, std::size_t max_n,
                                                    const SearchOptions& opts) {
  check_bound(max_n);
  const Program prog(f);
  for (std::size_t n = 1; n <= max_n; ++n) {
    auto hit = first_hit<CountermodelHit>(n, cls, opts.threads, [&](const Frame& fr) -> std::optional<CountermodelHit> {
      auto found = falsify_on_frame(fr, prog);
      if (!found) return std::nullopt;
      return CountermodelHit{{Model(fr, named_valuation(prog.variables(), found->first)), found->second, n, cls}};
    });
    if (hit) {
      const CountermodelReport& r = hit->report;
      if (eval(r.model, r.world, f) || !r.model.frame().is_normal(r.world) || !satisfies_class(r.model.frame(), cls))
        throw std::logic_error("countermodel failed its re-check");
      return std::move(hit->report);
    }
  }
  return std::nullopt;
}

bool valid_up_to(const Formula& f, const FrameClass& cls, std::size_t max_n, const SearchOptions& opts) {
  return !find_countermodel(f, cls, max_n, opts).has_value();
}

std::optional<RuleFailure> rule_preservation_probe(const std::vector<Formula>& premises, const Formula& conclusion,
                                                   const FrameClass& cls, std::size_t max_n, Preservation mode,
                                                   const SearchOptions& opts) {
  check_bound(max_n);
  std::vector<Program> prem;
  prem.reserve(premises.size());
  for (const auto& p : premises) prem.emplace_back(p);
  const Program concl(conclusion);

  std::set<std::string> names = variables(conclusion);
  for (const auto& p : premises) names.merge(variables(p));
  const std::vector<std::string> all(names.begin(), names.end());
  std::vector<std::vector<std::size_t>> prem_vars;
  for (const auto& p : prem) prem_vars.push_back(variable_map(p.variables(), all));
  const auto concl_vars = variable_map(concl.variables(), all);

  auto model_probe = [&](const Frame& fr) -> std::optional<RuleHit> {
    if (fr.normals().empty()) return std::nullopt;
    const std::uint64_t total = valuation_count(fr.size(), all.size());
    std::vector<WorldSet> vals(all.size());
    std::vector<WorldSet> sub;
    for (std::uint64_t code = 0; code < total; ++code) {
      decode_valuation(code, fr.size(), vals);
      auto run = [&](const Program& prog, const std::vector<std::size_t>& map) {
        sub.clear();
        for (std::size_t i : map) sub.push_back(vals[i]);
        return prog.run(fr, sub);
      };
      bool premises_hold = true;
      for (std::size_t i = 0; i < prem.size() && premises_hold; ++i)
        premises_hold = fr.normals().subset_of(run(prem[i], prem_vars[i]));
      if (!premises_hold) continue;
      const WorldSet failing = fr.normals() - run(concl, concl_vars);
      if (!failing.empty())
        return RuleHit{{fr, Model(fr, named_valuation(all, vals)), failing.lowest()}};
    }
    return std::nullopt;
  };

  auto frame_probe = [&](const Frame& fr) -> std::optional<RuleHit> {
    for (const auto& p : premises)
      if (!valid_on_frame(fr, p)) return std::nullopt;
    auto found = falsify_on_frame(fr, concl);
    if (!found) return std::nullopt;
    return RuleHit{{fr, Model(fr, named_valuation(concl.variables(), found->first)), found->second}};
  };

  for (std::size_t n = 1; n <= max_n; ++n) {
    auto hit = mode == Preservation::model ? first_hit<RuleHit>(n, cls, opts.threads, model_probe)
                                           : first_hit<RuleHit>(n, cls, opts.threads, frame_probe);
    if (hit) {
      const RuleFailure& r = hit->failure;
      if (eval(r.model, r.world, conclusion)) throw std::logic_error("rule witness failed its re-check");
      return std::move(hit->failure);
    }
  }
  return std::nullopt;
}

std::optional<Divergence> definability_probe(const Formula& f, const FrameClass& cls, std::size_t max_n,
                                             Points points, const SearchOptions& opts) {
  check_bound(max_n);
  const Formula expanded = desugar(f);
  const Program prim(f);
  const Program defn(expanded);
  // Desugaring introduces no variables, so both programs share one list.
  const auto& vars = prim.variables();

  for (std::size_t n = 1; n <= max_n; ++n) {
    auto hit = first_hit<DivergenceHit>(n, cls, opts.threads, [&](const Frame& fr) -> std::optional<DivergenceHit> {
      const WorldSet scope = points == Points::all ? fr.worlds() : fr.normals();
      if (scope.empty()) return std::nullopt;
      const std::uint64_t total = valuation_count(fr.size(), vars.size());
      std::vector<WorldSet> vals(vars.size());
      std::vector<WorldSet> s1(prim.slots());
      std::vector<WorldSet> s2(defn.slots());
      for (std::uint64_t code = 0; code < total; ++code) {
        decode_valuation(code, fr.size(), vals);
        const WorldSet a = prim.run(fr, vals, s1);
        const WorldSet b = defn.run(fr, vals, s2);
        const WorldSet diff = ((a - b) | (b - a)) & scope;
        if (!diff.empty()) {
          const World w = diff.lowest();
          return DivergenceHit{{Model(fr, named_valuation(vars, vals)), w, a.contains(w), b.contains(w)}};
        }
      }
      return std::nullopt;
    });
    if (hit) {
      const Divergence& d = hit->divergence;
      if (eval(d.model, d.world, f) != d.primitive || eval(d.model, d.world, expanded) != d.desugared ||
          d.primitive == d.desugared)
        throw std::logic_error("divergence witness failed its re-check");
      return std::move(hit->divergence);
    }
  }
  return std::nullopt;
}

}  // namespace ssi
