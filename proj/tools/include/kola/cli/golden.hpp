#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kola::cli {

/// One published value from tools/data/expected_values.csv.
struct GoldenCell {
  std::string target;
  std::string key;
  std::string expected;
  bool extended = false;
  std::string source;
};

/// Parses the CSV layout used by expected_values.csv: '#' lines are
/// comments, the first other line is the header. Throws std::runtime_error on
/// a malformed row.
std::vector<GoldenCell> parse_golden(std::string_view csv);

/// The embedded table, parsed once.
const std::vector<GoldenCell>& golden_cells();

/// Cells of one target, in file order. Extended cells are included only if
/// asked for.
std::vector<GoldenCell> golden_for(const std::string& target, bool extended);

/// Throws std::out_of_range if the cell does not exist.
const GoldenCell& golden(const std::string& target, const std::string& key);

}  // namespace kola::cli
