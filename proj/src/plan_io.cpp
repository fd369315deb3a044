#include "rrm/plan_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rrm/error.hpp"

namespace rrm {

std::string format_plan_csv(const Plan& plan) {
  std::string out = "# i,pi_i\n";
  for (std::size_t i = 0; i < plan.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += plan[i] == Plan::kUnassigned ? std::string("-1") : std::to_string(plan[i]);
    out += '\n';
  }
  return out;
}

std::vector<std::size_t> parse_plan_csv(std::string_view text) {
  std::vector<std::size_t> targets;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) throw DataError("line " + std::to_string(line_no) + ": expected i,pi_i");
    std::size_t i = 0;
    const std::string_view lhs = line.substr(0, comma);
    const std::string_view rhs = line.substr(comma + 1);
    auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), i);
    if (r1.ec != std::errc{} || r1.ptr != lhs.data() + lhs.size()) {
      throw DataError("line " + std::to_string(line_no) + ": bad source index");
    }
    if (i != targets.size()) throw DataError("line " + std::to_string(line_no) + ": rows out of order");
    if (rhs == "-1") {
      targets.push_back(Plan::kUnassigned);
      continue;
    }
    std::size_t j = 0;
    auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), j);
    if (r2.ec != std::errc{} || r2.ptr != rhs.data() + rhs.size()) {
      throw DataError("line " + std::to_string(line_no) + ": bad target index");
    }
    targets.push_back(j);
  }
  return targets;
}

std::vector<std::size_t> load_plan_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_plan_csv(ss.str());
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace rrm
