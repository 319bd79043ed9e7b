#include "oracle.hpp"

#include <set>

namespace oracle {

using ssi::Formula;
using ssi::Op;

namespace {

bool atom(const Model& m, int w, const Formula& f) {
  auto it = m.val.find(f.name());
  return it != m.val.end() && it->second[static_cast<std::size_t>(w)];
}

template <typename Holds>
bool modal(const Model& m, int w, const Formula& f, bool normal, Holds&& at) {
  const auto& row = m.frame.rel[static_cast<std::size_t>(w)];
  bool all_a_to_b = true;
  bool some_a = false;
  bool some_not_b = false;
  bool all_a = true;
  bool some_a_only = false;  // for dia: some successor with A
  for (int v = 0; v < m.frame.n; ++v) {
    if (!row[static_cast<std::size_t>(v)]) continue;
    const bool a = at(v, f.lhs());
    if (f.op() == Op::box) {
      if (!a) all_a = false;
      continue;
    }
    if (f.op() == Op::dia) {
      if (a) some_a_only = true;
      continue;
    }
    const bool b = at(v, f.rhs());
    if (a && !b) all_a_to_b = false;
    if (a) some_a = true;
    if (!b) some_not_b = true;
  }
  switch (f.op()) {
    case Op::box: return normal && all_a;
    case Op::dia: return !normal || some_a_only;
    case Op::strict: return normal && all_a_to_b;
    case Op::ssi: return normal && all_a_to_b && some_a;
    case Op::sssi: return normal && all_a_to_b && some_a && some_not_b;
    default: return false;
  }
}

}  // namespace

bool holds_normal(const Model& m, int w, const Formula& f) {
  switch (f.op()) {
    case Op::var: return atom(m, w, f);
    case Op::bot: return false;
    case Op::conj: return holds_normal(m, w, f.lhs()) && holds_normal(m, w, f.rhs());
    case Op::disj: return holds_normal(m, w, f.lhs()) || holds_normal(m, w, f.rhs());
    case Op::imp: return !holds_normal(m, w, f.lhs()) || holds_normal(m, w, f.rhs());
    default: break;
  }
  // Classical clauses: for all successors / some successor.
  const auto& row = m.frame.rel[static_cast<std::size_t>(w)];
  auto succ = [&](auto pred) {
    std::vector<bool> out;
    for (int v = 0; v < m.frame.n; ++v)
      if (row[static_cast<std::size_t>(v)]) out.push_back(pred(v));
    return out;
  };
  auto all = [](const std::vector<bool>& xs) {
    for (bool x : xs)
      if (!x) return false;
    return true;
  };
  auto any = [](const std::vector<bool>& xs) {
    for (bool x : xs)
      if (x) return true;
    return false;
  };
  auto A = [&](int v) { return holds_normal(m, v, f.lhs()); };
  switch (f.op()) {
    case Op::box: return all(succ(A));
    case Op::dia: return any(succ(A));
    default: break;
  }
  auto B = [&](int v) { return holds_normal(m, v, f.rhs()); };
  const bool strict = all(succ([&](int v) { return !A(v) || B(v); }));
  const bool possible = any(succ(A));
  switch (f.op()) {
    case Op::strict: return strict;
    case Op::ssi: return strict && possible;
    case Op::sssi: return strict && possible && any(succ([&](int v) { return !B(v); }));
    default: return false;
  }
}

bool holds(const Model& m, int w, const Formula& f) {
  switch (f.op()) {
    case Op::var: return atom(m, w, f);
    case Op::bot: return false;
    case Op::conj: return holds(m, w, f.lhs()) && holds(m, w, f.rhs());
    case Op::disj: return holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    case Op::imp: return !holds(m, w, f.lhs()) || holds(m, w, f.rhs());
    default: break;
  }
  return modal(m, w, f, m.frame.normal[static_cast<std::size_t>(w)],
               [&](int v, const Formula& g) { return holds(m, v, g); });
}

bool reflexive(const Frame& f) {
  for (int w = 0; w < f.n; ++w)
    if (!f.rel[w][w]) return false;
  return true;
}

bool transitive(const Frame& f) {
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b)
      for (int c = 0; c < f.n; ++c)
        if (f.rel[a][b] && f.rel[b][c] && !f.rel[a][c]) return false;
  return true;
}

bool serial(const Frame& f) {
  for (int w = 0; w < f.n; ++w) {
    bool any = false;
    for (int v = 0; v < f.n; ++v) any = any || f.rel[w][v];
    if (!any) return false;
  }
  return true;
}

bool symmetric(const Frame& f) {
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b)
      if (f.rel[a][b] && !f.rel[b][a]) return false;
  return true;
}

bool euclidean(const Frame& f) {
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b)
      for (int c = 0; c < f.n; ++c)
        if (f.rel[a][b] && f.rel[a][c] && !f.rel[b][c]) return false;
  return true;
}

void all_frames(int n, const std::function<void(const Frame&)>& visit) {
  const int pairs = n * n;
  Frame fr;
  fr.n = n;
  for (long rel = 0; rel < (1L << pairs); ++rel) {
    fr.rel.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < pairs; ++i) fr.rel[i / n][i % n] = (rel >> i) & 1;
    for (long nor = 0; nor < (1L << n); ++nor) {
      fr.normal.assign(static_cast<std::size_t>(n), false);
      for (int w = 0; w < n; ++w) fr.normal[w] = (nor >> w) & 1;
      visit(fr);
    }
  }
}

namespace {

/// Calls visit(model) for every valuation of `vars` on `fr`; stops when it
/// returns true.
bool any_valuation(const Frame& fr, const std::vector<std::string>& vars, const std::function<bool(const Model&)>& visit) {
  const int bits = fr.n * static_cast<int>(vars.size());
  Model m;
  m.frame = fr;
  for (long code = 0; code < (1L << bits); ++code) {
    m.val.clear();
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::vector<bool> ext(static_cast<std::size_t>(fr.n));
      for (int w = 0; w < fr.n; ++w) ext[w] = (code >> (static_cast<int>(i) * fr.n + w)) & 1;
      m.val[vars[i]] = ext;
    }
    if (visit(m)) return true;
  }
  return false;
}

bool true_everywhere_normal(const Model& m, const Formula& f) {
  for (int w = 0; w < m.frame.n; ++w)
    if (m.frame.normal[w] && !holds(m, w, f)) return false;
  return true;
}

}  // namespace

bool has_countermodel(const Formula& f, const FramePredicate& pred, int max_n) {
  const auto vs = ssi::variables(f);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  bool found = false;
  for (int n = 1; n <= max_n && !found; ++n) {
    all_frames(n, [&](const Frame& fr) {
      if (found || !pred(fr)) return;
      found = any_valuation(fr, vars, [&](const Model& m) { return !true_everywhere_normal(m, f); });
    });
  }
  return found;
}

long count_frames(int n, const FramePredicate& pred) {
  long count = 0;
  all_frames(n, [&](const Frame& fr) { count += pred(fr) ? 1 : 0; });
  return count;
}

bool breaks_truth_preservation(const std::vector<Formula>& premises, const Formula& conclusion,
                               const FramePredicate& pred, int max_n) {
  std::set<std::string> vs = ssi::variables(conclusion);
  for (const auto& p : premises) vs.merge(ssi::variables(p));
  const std::vector<std::string> vars(vs.begin(), vs.end());
  bool found = false;
  for (int n = 1; n <= max_n && !found; ++n) {
    all_frames(n, [&](const Frame& fr) {
      if (found || !pred(fr)) return;
      found = any_valuation(fr, vars, [&](const Model& m) {
        for (const auto& p : premises)
          if (!true_everywhere_normal(m, p)) return false;
        return !true_everywhere_normal(m, conclusion);
      });
    });
  }
  return found;
}

Model random_model(std::mt19937& rng, int n, const std::vector<std::string>& vars, bool all_normal) {
  std::bernoulli_distribution coin(0.5);
  Model m;
  m.frame.n = n;
  m.frame.rel.assign(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  m.frame.normal.assign(static_cast<std::size_t>(n), true);
  for (int w = 0; w < n; ++w) {
    for (int v = 0; v < n; ++v) m.frame.rel[w][v] = coin(rng);
    if (!all_normal) m.frame.normal[w] = coin(rng);
  }
  for (const auto& v : vars) {
    std::vector<bool> ext(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) ext[w] = coin(rng);
    m.val[v] = ext;
  }
  return m;
}

ssi::Model to_library(const Model& m) {
  std::vector<ssi::WorldSet> succ(static_cast<std::size_t>(m.frame.n));
  ssi::WorldSet normals;
  for (int w = 0; w < m.frame.n; ++w) {
    for (int v = 0; v < m.frame.n; ++v)
      if (m.frame.rel[w][v]) succ[w].insert(static_cast<ssi::World>(v));
    if (m.frame.normal[w]) normals.insert(static_cast<ssi::World>(w));
  }
  ssi::Model::Valuation val;
  for (const auto& [name, ext] : m.val) {
    ssi::WorldSet s;
    for (int w = 0; w < m.frame.n; ++w)
      if (ext[w]) s.insert(static_cast<ssi::World>(w));
    val[name] = s;
  }
  return ssi::Model(ssi::Frame(static_cast<std::size_t>(m.frame.n), std::move(succ), normals), std::move(val));
}

ssi::Formula random_formula(std::mt19937& rng, int max_weight, const std::vector<std::string>& vars,
                            const std::vector<Op>& modal_ops) {
  std::uniform_int_distribution<int> pick_weight(0, max_weight);
  std::function<Formula(int)> gen = [&](int weight) -> Formula {
    std::uniform_int_distribution<int> roll(0, 9);
    if (weight == 0) {
      // Leaves, optionally wrapped in unary modalities.
      const int r = roll(rng);
      Formula leaf = r == 0 ? Formula::bot()
                            : Formula::var(vars[std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng)]);
      std::vector<Op> unary;
      for (Op op : modal_ops)
        if (ssi::arity(op) == 1) unary.push_back(op);
      if (!unary.empty() && roll(rng) < 3)
        leaf = Formula::make(unary[std::uniform_int_distribution<std::size_t>(0, unary.size() - 1)(rng)], leaf);
      return leaf;
    }
    std::vector<Op> binary{Op::conj, Op::disj, Op::imp};
    for (Op op : modal_ops)
      if (ssi::arity(op) == 2) binary.push_back(op);
    const Op op = binary[std::uniform_int_distribution<std::size_t>(0, binary.size() - 1)(rng)];
    const int left = std::uniform_int_distribution<int>(0, weight - 1)(rng);
    Formula f = Formula::make(op, gen(left), gen(weight - 1 - left));
    std::vector<Op> unary;
    for (Op u : modal_ops)
      if (ssi::arity(u) == 1) unary.push_back(u);
    if (!unary.empty() && roll(rng) < 2)
      f = Formula::make(unary[std::uniform_int_distribution<std::size_t>(0, unary.size() - 1)(rng)], f);
    return f;
  };
  return gen(pick_weight(rng));
}

}  // namespace oracle
