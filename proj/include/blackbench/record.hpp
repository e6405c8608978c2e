#pragma once

// Line-record encoding shared by experiment logs, timing reports and the
// wire protocol: one JSON object per line, keys in the order they are
// written, reals in shortest round-trip decimal. Non-finite reals are
// written as the strings "inf", "-inf" and "nan".

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace blackbench {

/// Shortest decimal that parses back to exactly `value`.
std::string format_real(double value);

class RecordWriter {
 public:
  explicit RecordWriter(std::string_view kind);

  RecordWriter& field(std::string_view key, std::string_view value);
  RecordWriter& field(std::string_view key, const char* value) {
    return field(key, std::string_view(value));
  }
  RecordWriter& field(std::string_view key, double value);
  RecordWriter& field(std::string_view key, std::uint64_t value);
  RecordWriter& field(std::string_view key, std::int64_t value);
  RecordWriter& field(std::string_view key, int value) {
    return field(key, static_cast<std::int64_t>(value));
  }
  RecordWriter& field(std::string_view key, bool value);
  RecordWriter& field(std::string_view key, std::span<const double> values);
  RecordWriter& field(std::string_view key, std::span<const int> values);
  /// Nested object of string values, keys in the given order.
  RecordWriter& field(std::string_view key,
                      std::span<const std::pair<std::string, std::string>> values);

  /// The finished line, without a trailing newline.
  std::string str() const { return buffer_ + "}"; }

 private:
  void key(std::string_view k);

  std::string buffer_;
};

using Record = nlohmann::ordered_json;

/// Parses one line. Throws ParseError carrying `line_number`.
Record parse_record(std::string_view line, std::size_t line_number);

// Typed accessors; all throw ParseError(line_number, ...) on a missing key
// or wrong type.
std::string record_kind(const Record& r, std::size_t line_number);
double read_real(const Record& r, std::string_view key, std::size_t line_number);
std::uint64_t read_uint(const Record& r, std::string_view key, std::size_t line_number);
std::int64_t read_int(const Record& r, std::string_view key, std::size_t line_number);
bool read_bool(const Record& r, std::string_view key, std::size_t line_number);
std::string read_string(const Record& r, std::string_view key, std::size_t line_number);
std::vector<double> read_reals(const Record& r, std::string_view key, std::size_t line_number);
std::vector<int> read_ints(const Record& r, std::string_view key, std::size_t line_number);
std::vector<std::pair<std::string, std::string>> read_string_map(const Record& r,
                                                                 std::string_view key,
                                                                 std::size_t line_number);

}  // namespace blackbench
