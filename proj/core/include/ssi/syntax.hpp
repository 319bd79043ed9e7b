#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssi/formula.hpp"

namespace ssi {

/// Fragments of the full connective set.
enum class Language {
  core,    ///< bot, &, |, ->, |>
  strict,  ///< bot, &, |, ->, =>
  box,     ///< bot, &, |, ->, box, dia
  full,    ///< everything
};

bool in_language(const Formula& f, Language lang);

/// Number of binary connective nodes; box and dia count zero.
std::size_t weight(const Formula& f);

/// Maximal nesting of |>, ||>, box, dia and =>.
std::size_t modal_depth(const Formula& f);

/// Address of a subformula occurrence: child indices from the root
/// (0 = left or only child, 1 = right child). The empty path is the root.
using Path = std::vector<unsigned>;

/// Parses "0.1.1" style paths; "." is the root.
Path parse_path(const std::string& text);
std::string format_path(const Path& path);

class PathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Subformula at `path`. Throws PathError if the path leaves the tree.
const Formula& subformula_at(const Formula& f, const Path& path);

/// Every path whose subformula equals `target`, in preorder.
std::vector<Path> occurrences(const Formula& f, const Formula& target);

/// f[b/p]: every occurrence of variable `p` replaced by `b`.
Formula substitute(const Formula& f, const std::string& p, const Formula& b);

/// Simultaneous substitution; unmapped variables are left alone.
Formula substitute(const Formula& f, const std::map<std::string, Formula>& sigma);

/// Replaces exactly the addressed occurrences by `b`.
///
/// All addressed subformulas must be the same formula (so no path is a
/// prefix of another); throws PathError otherwise or when a path is invalid.
Formula replace_at(const Formula& f, const std::set<Path>& positions, const Formula& b);

/// Rewrites ||>, dia, box and => through their |> definitions:
///
///   A ||> B  ~>  (A |> B) & (~B |> top)
///   dia A    ~>  A |> top
///   box A    ~>  ~(~A |> top)
///   A => B   ~>  ~((A & ~B) |> top)
///
/// The result is in Language::core.
Formula desugar(const Formula& f);

/// |> as `dia A & box (A -> B)`, => as `box (A -> B)`, ||> through its
/// |> definition first. The result is in Language::box.
Formula to_box_language(const Formula& f);

/// box A as `top => A`, dia A as `~(top => ~A)`, A |> B as
/// `dia A & (A => B)` with dia then expanded. The result is in
/// Language::strict.
Formula to_strict_language(const Formula& f);

}  // namespace ssi
