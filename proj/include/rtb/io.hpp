#pragma once

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rtb {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

/// RFC-4180 field quoting (only when the field needs it).
std::string csv_field(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void row(const std::vector<std::string>& fields);
  void row(std::initializer_list<std::string_view> fields);

 private:
  std::ostream& out_;
};

/// Writes the whole string to path; throws IOFailure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

/// Pretty JSON with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace rtb
