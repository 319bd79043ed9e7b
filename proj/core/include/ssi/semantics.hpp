#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssi/formula.hpp"

namespace ssi {

using World = std::size_t;

/// Set of worlds 0..63 as a bitmask.
class WorldSet {
 public:
  constexpr WorldSet() = default;
  constexpr explicit WorldSet(std::uint64_t bits) : bits_(bits) {}

  /// {0, ..., n-1}
  static constexpr WorldSet first(std::size_t n) {
    return WorldSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr WorldSet single(World w) { return WorldSet(std::uint64_t{1} << w); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(World w) const { return (bits_ >> w) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  /// Smallest member. Precondition: !empty().
  constexpr World lowest() const { return static_cast<World>(std::countr_zero(bits_)); }
  constexpr void insert(World w) { bits_ |= std::uint64_t{1} << w; }
  constexpr bool subset_of(WorldSet o) const { return (bits_ & ~o.bits_) == 0; }

  /// Members in increasing order.
  std::vector<World> members() const;

  friend constexpr WorldSet operator&(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & b.bits_); }
  friend constexpr WorldSet operator|(WorldSet a, WorldSet b) { return WorldSet(a.bits_ | b.bits_); }
  /// Relative complement a \ b.
  friend constexpr WorldSet operator-(WorldSet a, WorldSet b) { return WorldSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(WorldSet, WorldSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Kripke frame with distinguished normal worlds. A frame whose every world
/// is normal is an ordinary (normal) Kripke frame.
class Frame {
 public:
  static constexpr std::size_t max_worlds = 64;

  /// Throws std::invalid_argument unless 1 <= n <= max_worlds, there is one
  /// successor set per world and every set stays inside the world range.
  Frame(std::size_t n, std::vector<WorldSet> successors, WorldSet normals);

  /// Convenience builder from an edge list.
  static Frame from_edges(std::size_t n, std::span<const std::pair<World, World>> edges,
                          std::span<const World> normals);

  std::size_t size() const noexcept { return successors_.size(); }
  WorldSet worlds() const noexcept { return WorldSet::first(size()); }
  WorldSet successors(World w) const { return successors_.at(w); }
  WorldSet normals() const noexcept { return normals_; }
  bool is_normal(World w) const noexcept { return normals_.contains(w); }
  bool related(World w, World v) const { return successors_.at(w).contains(v); }

  /// Row-major relation bits: bit w*n+v is set iff w R v. Needs n <= 8.
  std::uint64_t relation_code() const;

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::vector<WorldSet> successors_;
  WorldSet normals_;
};

/// Constraint bundle on frames.
struct FrameClass {
  bool serial = false;
  bool reflexive = false;
  bool transitive = false;
  bool symmetric = false;
  bool euclidean = false;
  bool all_normal = false;

  static FrameClass s2_0() { return {}; }
  static FrameClass s2() { return {.reflexive = true}; }
  static FrameClass s3() { return {.reflexive = true, .transitive = true}; }
  static FrameClass k() { return {.all_normal = true}; }

  /// Canonical short name: a preset name (`s2_0`, `s2`, `s3`, `k`, `kt`,
  /// `s4`, ...) when one matches exactly, otherwise a `+`-joined flag list.
  std::string name() const;

  friend bool operator==(const FrameClass&, const FrameClass&) = default;
};

/// Looks up `s2_0`, `s2`, `s3` and the normal-cube names (k, kd, kt, t, kb,
/// k4, k5, kd4, kd5, k45, kd45, kb4, kdb, ktb, b, s4, kt4, s5).
std::optional<FrameClass> frame_class_by_name(std::string_view name);

/// All recognised class names, in the order they are listed in help text.
std::vector<std::string> frame_class_names();

bool satisfies_class(const Frame& frame, const FrameClass& cls);

/// Frame plus valuation. Variables missing from the valuation are false
/// everywhere.
class Model {
 public:
  using Valuation = std::map<std::string, WorldSet>;

  /// Throws std::invalid_argument if a valuation set leaves the world range.
  Model(Frame frame, Valuation valuation);

  const Frame& frame() const noexcept { return frame_; }
  const Valuation& valuation() const noexcept { return valuation_; }
  WorldSet value(const std::string& var) const;

  friend bool operator==(const Model&, const Model&) = default;

 private:
  Frame frame_;
  Valuation valuation_;
};

/// A formula compiled into a flat program over world sets.
///
/// Identical subformulas share one slot. Running the program computes the
/// truth set of the formula on a frame under a valuation given positionally
/// for variables() (sorted by name).
class Program {
 public:
  explicit Program(const Formula& f);

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  std::size_t slots() const noexcept { return code_.size(); }

  /// `scratch` must hold at least slots() entries.
  WorldSet run(const Frame& frame, std::span<const WorldSet> valuation, std::span<WorldSet> scratch) const;
  WorldSet run(const Frame& frame, std::span<const WorldSet> valuation) const;

  /// One step: `a`/`b` are operand slots, or the variable index for Op::var.
  struct Instr {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
  };

 private:
  std::vector<Instr> code_;
  std::vector<std::string> vars_;
};

/// Worlds where `f` is true.
WorldSet extension(const Model& m, const Formula& f);

/// Truth of `f` at `w`. Throws std::out_of_range if `w` is not a world.
bool eval(const Model& m, World w, const Formula& f);

/// Truth at every normal world (vacuous when there are none).
bool true_in_model(const Model& m, const Formula& f);

/// Number of valuations of `vars` variables over `n` worlds; throws
/// std::length_error past 2^62.
std::uint64_t valuation_count(std::size_t n, std::size_t vars);

/// Valuation number `code` in canonical order: the first variable varies
/// slowest, each variable's set read as an n-bit number.
void decode_valuation(std::uint64_t code, std::size_t n, std::span<WorldSet> out);

/// Truth in every model on the frame. Only the variables of `f` are
/// quantified; others cannot affect truth.
bool valid_on_frame(const Frame& frame, const Formula& f);

/// Model JSON: {"worlds": n, "rel": [[...], ...], "normals": [...],
/// "val": {"p": [...]}}. Output is compact with keys in that order.
std::string model_to_json(const Model& m);
Model model_from_json(std::string_view text);

}  // namespace ssi
