#include "seqbias/csv.hpp"

#include <charconv>
#include <fstream>

namespace seqbias::csv {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

bool is_number(std::string_view field) {
  field = trim(field);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  return !field.empty() && ec == std::errc{} && ptr == field.data() + field.size();
}

} // namespace

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataError("missing column '" + std::string(name) + "'");
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = line.find(sep);
    out.emplace_back(trim(line.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

Table read(const std::filesystem::path& path) {
  auto in = open(path);
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    auto fields = split(line);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw DataError("'" + path.string() + "': row has " + std::to_string(fields.size()) +
                      " fields, header has " + std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (!have_header) throw DataError("'" + path.string() + "': no header row");
  return table;
}

std::vector<double> read_values(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    auto fields = split(line);
    if (first && !is_number(fields.front())) {
      first = false;
      continue;
    }
    first = false;
    for (const auto& f : fields) {
      if (f.empty()) continue;
      values.push_back(parse_double(f));
    }
  }
  if (values.empty()) throw DataError("'" + path.string() + "': no values");
  return values;
}

double parse_double(std::string_view field) {
  field = trim(field);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError("not a number: '" + std::string(field) + "'");
  }
  return v;
}

long long parse_integer(std::string_view field) {
  field = trim(field);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw DataError("not an integer: '" + std::string(field) + "'");
  }
  return v;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

} // namespace seqbias::csv
