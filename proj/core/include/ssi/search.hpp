#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ssi/formula.hpp"
#include "ssi/semantics.hpp"

namespace ssi {

// Bounded search over finite frames.
//
// Frames on n worlds are visited in canonical order: by relation_code(),
// then by the normal-world set read as an n-bit number. Within a frame,
// valuations follow decode_valuation() order and worlds ascend. "First"
// always refers to this order with smaller frames before larger ones.

/// Frame sizes the enumerators accept.
inline constexpr std::size_t max_enumerated_worlds = 5;

struct SearchOptions {
  /// Worker threads for frame enumeration; results do not depend on it.
  unsigned threads = 1;
};

/// Calls `visit` on every frame with exactly n worlds in `cls`, in canonical
/// order, until it returns false. Throws std::invalid_argument unless
/// 1 <= n <= max_enumerated_worlds.
void for_each_frame(std::size_t n, const FrameClass& cls, const std::function<bool(const Frame&)>& visit);

std::vector<Frame> enumerate_frames(std::size_t n, const FrameClass& cls);

/// A normal world of a class frame where the formula is false.
struct CountermodelReport {
  Model model;
  World world;
  std::size_t frame_size;
  FrameClass cls;
};

/// First countermodel on frames of `cls` with at most `max_n` worlds.
/// Every report is re-checked with eval() before it is returned.
std::optional<CountermodelReport> find_countermodel(const Formula& f, const FrameClass& cls, std::size_t max_n,
                                                    const SearchOptions& opts = {});

/// No countermodel up to `max_n` worlds. This is bounded evidence only.
bool valid_up_to(const Formula& f, const FrameClass& cls, std::size_t max_n, const SearchOptions& opts = {});

enum class Preservation {
  /// Premises true in a model while the conclusion is false at one of its
  /// normal worlds.
  model,
  /// Premises valid on the frame while the conclusion is not.
  frame,
};

struct RuleFailure {
  Frame frame;
  /// Model on `frame` falsifying the conclusion at `world`.
  Model model;
  World world;
};

/// First class frame showing that premises-to-conclusion fails to preserve
/// truth (Preservation::model) or validity (Preservation::frame).
std::optional<RuleFailure> rule_preservation_probe(const std::vector<Formula>& premises, const Formula& conclusion,
                                                   const FrameClass& cls, std::size_t max_n,
                                                   Preservation mode = Preservation::model,
                                                   const SearchOptions& opts = {});

enum class Points { all, normal };

struct Divergence {
  Model model;
  World world;
  /// Truth value under the connectives' own clauses.
  bool primitive;
  /// Truth value of desugar(f).
  bool desugared;
};

/// First model and world where `f` and `desugar(f)` disagree.
std::optional<Divergence> definability_probe(const Formula& f, const FrameClass& cls, std::size_t max_n,
                                             Points points = Points::all, const SearchOptions& opts = {});

}  // namespace ssi
