#include "robustmean/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace robustmean {
namespace {

// std::from_chars is locale-independent; trailing junk on the field is an error.
double parse_field(std::string_view field, const std::string& path, long line_no) {
  std::size_t begin = field.find_first_not_of(" \t\r");
  std::size_t end = field.find_last_not_of(" \t\r");
  if (begin == std::string_view::npos) {
    throw std::domain_error(path + ":" + std::to_string(line_no) + ": empty field");
  }
  field = field.substr(begin, end - begin + 1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::domain_error(path + ":" + std::to_string(line_no) +
                             ": cannot parse '" + std::string(field) + "' as a number");
  }
  return value;
}

}  // namespace

std::vector<double> ingest(const std::string& path, std::optional<int> column) {
  if (column && *column < 0) throw std::domain_error("ingest: column must be >= 0");
  std::ifstream in(path);
  if (!in) throw std::domain_error("ingest: cannot open " + path);
  std::vector<double> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string_view sv(line);
    if (column) {
      int field = 0;
      std::size_t pos = 0;
      while (field < *column) {
        pos = line.find(',', pos);
        if (pos == std::string::npos) {
          throw std::domain_error(path + ":" + std::to_string(line_no) +
                                   ": fewer than " + std::to_string(*column + 1) +
                                   " comma-separated fields");
        }
        ++pos;
        ++field;
      }
      const std::size_t stop = line.find(',', pos);
      sv = sv.substr(pos, stop == std::string::npos ? std::string::npos : stop - pos);
    }
    out.push_back(parse_field(sv, path, line_no));
  }
  if (out.empty()) throw std::domain_error("ingest: no data in " + path);
  return out;
}

DistributionSpec load_empirical(const std::string& path, std::optional<int> column) {
  return DistributionSpec::empirical(ingest(path, column));
}

}  // namespace robustmean
