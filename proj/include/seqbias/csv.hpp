#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqbias {

/// Malformed input file contents.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws DataError naming the column if absent.
  std::size_t column(std::string_view name) const;
};

/// Comma-separated file with a header row. Blank lines and lines starting with '#' are skipped.
Table read(const std::filesystem::path& path);

/// A list of reals: one per line, or comma separated on one or more lines.
/// A non-numeric first line is treated as a header and skipped.
std::vector<double> read_values(const std::filesystem::path& path);

double parse_double(std::string_view field);
long long parse_integer(std::string_view field);

/// Shortest representation that round-trips.
std::string format_double(double value);

std::vector<std::string> split(std::string_view line, char sep = ',');

} // namespace csv
} // namespace seqbias
