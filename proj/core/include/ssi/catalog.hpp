#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ssi/formula.hpp"
#include "ssi/search.hpp"
#include "ssi/semantics.hpp"

namespace ssi {

enum class Expected { valid, invalid, unknown };

std::string_view expected_name(Expected e);

/// A formula with the bounded verdict it should get on a frame class.
struct NamedFormula {
  std::string name;
  /// Which family of principles the entry belongs to.
  std::string ref;
  Formula formula;
  Expected expected;
  FrameClass cls;
};

/// The built-in catalog, in report order.
const std::vector<NamedFormula>& catalog();

/// Normal world 0 sees non-normal world 1, which sees itself. box top is
/// valid on it, box box top is not.
Frame two_point_frame();

/// Catalog entry by name, or nullptr.
const NamedFormula* find_in_catalog(std::string_view name);

struct SuiteEntry {
  const NamedFormula* item;
  std::size_t bound;
  std::optional<CountermodelReport> countermodel;

  bool valid_up_to_bound() const { return !countermodel.has_value(); }
  /// Unknown entries always pass; they only record bounded evidence.
  bool passed() const;
};

struct SuiteReport {
  std::size_t max_n;
  std::vector<SuiteEntry> entries;

  bool all_passed() const;
};

/// Checks every catalog entry for countermodels up to `max_n` worlds.
SuiteReport run_suite(std::size_t max_n = 3, const SearchOptions& opts = {});

/// Byte-stable JSON report (two-space indent, trailing newline).
std::string suite_to_json(const SuiteReport& report);

/// Fixed-width text table, one line per entry plus a summary line.
std::string suite_table(const SuiteReport& report);

}  // namespace ssi
