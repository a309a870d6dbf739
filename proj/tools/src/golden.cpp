#include "kola/cli/golden.hpp"

#include <sstream>
#include <stdexcept>

namespace kola::cli {

namespace detail {
extern const char* const golden_csv;
}

std::vector<GoldenCell> parse_golden(std::string_view csv) {
  std::vector<GoldenCell> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 5 || (fields[3] != "0" && fields[3] != "1")) {
      throw std::runtime_error("expected values, line " + std::to_string(lineno) + ": malformed row '" + line + "'");
    }
    out.push_back(GoldenCell{fields[0], fields[1], fields[2], fields[3] == "1", fields[4]});
  }
  return out;
}

const std::vector<GoldenCell>& golden_cells() {
  static const std::vector<GoldenCell> cells = parse_golden(detail::golden_csv);
  return cells;
}

std::vector<GoldenCell> golden_for(const std::string& target, bool extended) {
  std::vector<GoldenCell> out;
  for (const GoldenCell& c : golden_cells())
    if (c.target == target && (extended || !c.extended)) out.push_back(c);
  return out;
}

const GoldenCell& golden(const std::string& target, const std::string& key) {
  for (const GoldenCell& c : golden_cells())
    if (c.target == target && c.key == key) return c;
  throw std::out_of_range("no expected value " + target + "/" + key);
}

}  // namespace kola::cli
