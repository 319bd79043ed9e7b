#include <doctest.h>

#include "oracle.hpp"
#include "ssi/catalog.hpp"
#include "ssi/search.hpp"
#include "ssi/syntax.hpp"
#include "ssi/text.hpp"

using namespace ssi;

namespace {

oracle::FramePredicate predicate(const FrameClass& c) {
  return [c](const oracle::Frame& f) {
    if (c.reflexive && !oracle::reflexive(f)) return false;
    if (c.transitive && !oracle::transitive(f)) return false;
    if (c.serial && !oracle::serial(f)) return false;
    if (c.symmetric && !oracle::symmetric(f)) return false;
    if (c.euclidean && !oracle::euclidean(f)) return false;
    if (c.all_normal)
      for (bool b : f.normal)
        if (!b) return false;
    return true;
  };
}

struct Expected {
  int n;
  std::uint64_t rel;
  std::uint64_t normals;
  std::uint64_t val;
  int world;
};

/// First countermodel in canonical order, found by plain nested loops over
/// codes and the oracle's truth clauses.
std::optional<Expected> canonical_first(const Formula& f, const FrameClass& c, int max_n) {
  const auto vs = variables(f);
  const std::vector<std::string> vars(vs.begin(), vs.end());
  const auto ok = predicate(c);
  for (int n = 1; n <= max_n; ++n) {
    for (std::uint64_t rel = 0; rel < (1ULL << (n * n)); ++rel) {
      for (std::uint64_t nor = 0; nor < (1ULL << n); ++nor) {
        oracle::Model m;
        m.frame.n = n;
        m.frame.rel.assign(n, std::vector<bool>(n));
        m.frame.normal.assign(n, false);
        for (int i = 0; i < n * n; ++i) m.frame.rel[i / n][i % n] = (rel >> i) & 1;
        for (int w = 0; w < n; ++w) m.frame.normal[w] = (nor >> w) & 1;
        if (!ok(m.frame)) continue;
        const int k = static_cast<int>(vars.size());
        for (std::uint64_t val = 0; val < (1ULL << (n * k)); ++val) {
          for (int i = 0; i < k; ++i) {
            // First variable occupies the most significant n bits.
            const std::uint64_t ext = (val >> ((k - 1 - i) * n)) & ((1ULL << n) - 1);
            std::vector<bool> e(n);
            for (int w = 0; w < n; ++w) e[w] = (ext >> w) & 1;
            m.val[vars[i]] = e;
          }
          for (int w = 0; w < n; ++w)
            if (m.frame.normal[w] && !oracle::holds(m, w, f)) return Expected{n, rel, nor, val, w};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("frame counts") {
  CHECK(enumerate_frames(1, FrameClass::s2_0()).size() == 4);
  CHECK(enumerate_frames(1, FrameClass::s2()).size() == 2);
  CHECK(enumerate_frames(2, FrameClass::s2_0()).size() == 64);
  for (const auto& name : frame_class_names()) {
    const FrameClass c = *frame_class_by_name(name);
    for (std::size_t n = 1; n <= 3; ++n)
      CHECK_MESSAGE(enumerate_frames(n, c).size() == static_cast<std::size_t>(oracle::count_frames(n, predicate(c))),
                    name << " n=" << n);
  }
  CHECK_THROWS_AS(enumerate_frames(0, FrameClass::s2_0()), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_frames(6, FrameClass::s2_0()), std::invalid_argument);
}

TEST_CASE("frames come in canonical order") {
  const auto frames = enumerate_frames(2, FrameClass::s2_0());
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const auto a = std::pair{frames[i - 1].relation_code(), frames[i - 1].normals().bits()};
    const auto b = std::pair{frames[i].relation_code(), frames[i].normals().bits()};
    CHECK(a < b);
  }
  std::size_t seen = 0;
  for_each_frame(3, FrameClass::s2_0(), [&](const Frame&) { return ++seen < 10; });
  CHECK(seen == 10);
}

TEST_CASE("find_countermodel examples") {
  const auto refl = find_countermodel(parse("p |> p"), FrameClass::s2(), 1);
  REQUIRE(refl);
  CHECK(refl->frame_size == 1);
  CHECK(refl->model.value("p").empty());

  const auto ax2 = find_countermodel(parse("(p & q) |> p"), FrameClass::s2(), 1);
  REQUIRE(ax2);
  CHECK(ax2->model.value("p").empty());
  CHECK(ax2->model.value("q").empty());
  CHECK(ax2->cls == FrameClass::s2());

  CHECK_FALSE(find_countermodel(parse("~(p |> ~p)"), FrameClass::s2_0(), 3));
  CHECK_FALSE(oracle::has_countermodel(parse("~(p |> ~p)"), predicate(FrameClass::s2_0()), 3));
  CHECK_THROWS_AS(find_countermodel(parse("p"), FrameClass::s2_0(), 0), std::invalid_argument);
}

TEST_CASE("first countermodel matches the canonical brute force") {
  const char* formulas[] = {"p |> p", "(p |> q) -> (~q |> ~p)", "box p -> p", "(p |> q) |> ~(p |> ~q)",
                            "dia p -> box p", "p ||> q", "box box top", "q |> (p |> q)"};
  for (const char* text : formulas) {
    const Formula f = parse(text);
    for (const FrameClass& c : {FrameClass::s2_0(), FrameClass::s2(), FrameClass::k()}) {
      const auto got = find_countermodel(f, c, 2);
      const auto want = canonical_first(f, c, 2);
      REQUIRE_MESSAGE(got.has_value() == want.has_value(), text << " on " << c.name());
      if (!got) continue;
      CHECK_MESSAGE(got->frame_size == static_cast<std::size_t>(want->n), text);
      CHECK_MESSAGE(got->model.frame().relation_code() == want->rel, text);
      CHECK_MESSAGE(got->model.frame().normals().bits() == want->normals, text);
      CHECK_MESSAGE(got->world == static_cast<World>(want->world), text);
      const auto vs = variables(f);
      std::uint64_t code = 0;
      for (const auto& v : vs) code = (code << got->frame_size) | got->model.value(v).bits();
      CHECK_MESSAGE(code == want->val, text);
    }
  }
}

TEST_CASE("valid_up_to examples") {
  CHECK(valid_up_to(parse("((p |> q) & (q |> r)) -> (p |> r)"), FrameClass::s2_0(), 3));
  CHECK(valid_up_to(parse("dia p -> (p |> p)"), FrameClass::s2(), 3));
  CHECK_FALSE(valid_up_to(parse("~dia p -> (p |> p)"), FrameClass::s2(), 1));
  CHECK(oracle::has_countermodel(parse("~dia p -> (p |> p)"), predicate(FrameClass::s2()), 1));
  CHECK_FALSE(oracle::has_countermodel(parse("dia p -> (p |> p)"), predicate(FrameClass::s2()), 3));
}

TEST_CASE("rule_preservation_probe") {
  const std::vector<Formula> mp{parse("p |> q"), parse("p")};
  CHECK_FALSE(rule_preservation_probe(mp, parse("q"), FrameClass::s2(), 3));
  CHECK_FALSE(oracle::breaks_truth_preservation(mp, parse("q"), predicate(FrameClass::s2()), 3));

  const auto hit = rule_preservation_probe(mp, parse("q"), FrameClass::s2_0(), 2);
  REQUIRE(hit);
  CHECK(hit->frame.size() <= 2);
  CHECK(oracle::breaks_truth_preservation(mp, parse("q"), predicate(FrameClass::s2_0()), 2));
  for (const auto& p : mp) CHECK(true_in_model(hit->model, p));
  CHECK(hit->model.frame().is_normal(hit->world));
  CHECK_FALSE(eval(hit->model, hit->world, parse("q")));

  CHECK_FALSE(rule_preservation_probe({Formula::top()}, Formula::top(), FrameClass::s2_0(), 3));
  // Frame-level reading: an atom premise is never frame-valid.
  CHECK_FALSE(rule_preservation_probe(mp, parse("q"), FrameClass::s2_0(), 2, Preservation::frame));
  // Necessitation fails to preserve frame validity once box box top is in play.
  const auto nec = rule_preservation_probe({parse("box top")}, parse("box box top"), FrameClass::s2_0(), 2,
                                           Preservation::frame);
  REQUIRE(nec);
  CHECK(valid_on_frame(nec->frame, parse("box top")));
  CHECK_FALSE(valid_on_frame(nec->frame, parse("box box top")));
}

TEST_CASE("definability_probe") {
  const Formula bbt = parse("box box top");
  const auto any = definability_probe(bbt, FrameClass::s2_0(), 2);
  REQUIRE(any);
  CHECK(any->primitive != any->desugared);
  CHECK(eval(any->model, any->world, bbt) == any->primitive);
  CHECK(eval(any->model, any->world, desugar(bbt)) == any->desugared);

  const auto at_normal = definability_probe(bbt, FrameClass::s2_0(), 2, Points::normal);
  REQUIRE(at_normal);
  CHECK(at_normal->model.frame().size() == 2);
  CHECK(at_normal->model.frame().is_normal(at_normal->world));
  CHECK_FALSE(at_normal->primitive);
  CHECK(at_normal->desugared);

  // The two-point frame from the necessitation example diverges at world 0.
  const Model two(two_point_frame(), {});
  CHECK_FALSE(eval(two, 0, bbt));
  CHECK(eval(two, 0, desugar(bbt)));

  CHECK_FALSE(definability_probe(parse("p |> q"), FrameClass::s2_0(), 3));
  CHECK_FALSE(definability_probe(parse("dia p"), FrameClass::k(), 3));
  CHECK_FALSE(definability_probe(parse("p ||> q"), FrameClass::s2_0(), 3));
}

TEST_CASE("thread count does not change results") {
  const char* formulas[] = {"(p |> q) |> ~(p |> ~q)", "box p -> p", "~(p |> ~p)", "(p |> q) -> (~q |> ~p)"};
  for (const char* text : formulas) {
    const Formula f = parse(text);
    for (const FrameClass& c : {FrameClass::s2_0(), FrameClass::s2()}) {
      const auto a = find_countermodel(f, c, 3, {1});
      for (unsigned t : {2U, 3U, 8U}) {
        const auto b = find_countermodel(f, c, 3, {t});
        REQUIRE(a.has_value() == b.has_value());
        if (a) {
          CHECK(a->model == b->model);
          CHECK(a->world == b->world);
        }
      }
    }
  }
  const auto d1 = definability_probe(parse("box box top"), FrameClass::s2_0(), 2, Points::normal, {1});
  const auto d4 = definability_probe(parse("box box top"), FrameClass::s2_0(), 2, Points::normal, {4});
  REQUIRE(d1);
  REQUIRE(d4);
  CHECK(d1->model == d4->model);
}
