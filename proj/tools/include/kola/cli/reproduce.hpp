#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kola/budget.hpp"
#include "kola/cli/golden.hpp"

namespace kola::cli {

enum class CellStatus { pass, fail, incomplete };
std::string to_string(CellStatus s);

struct CellResult {
  GoldenCell cell;
  std::string got;
  CellStatus status = CellStatus::fail;
};

struct ReproduceReport {
  std::string target;
  std::vector<CellResult> cells;
  /// Extended cells left out of this run.
  std::size_t skipped = 0;
  double seconds = 0;

  std::size_t count(CellStatus s) const;
  bool all_passed() const { return count(CellStatus::pass) == cells.size(); }
};

struct ReproduceOptions {
  bool extended = false;
  Caps caps;
  /// fig1-data only: where to write the (ln n, ln γ) table. Empty: nowhere.
  std::string loglog_path;
};

const std::vector<std::string>& reproduce_targets();

/// Recomputes every cell of the target and compares it with the embedded
/// expected value. Throws DomainError for an unknown target.
ReproduceReport reproduce(const std::string& target, const ReproduceOptions& opts = {});

}  // namespace kola::cli
