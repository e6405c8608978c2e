#include "blackbench/record.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "blackbench/errors.hpp"

namespace blackbench {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

namespace {

std::string quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

std::string real_token(double value) {
  return std::isfinite(value) ? format_real(value) : quote(format_real(value));
}

}  // namespace

RecordWriter::RecordWriter(std::string_view kind) : buffer_("{\"kind\":") {
  buffer_ += quote(kind);
}

void RecordWriter::key(std::string_view k) {
  buffer_ += ',';
  buffer_ += quote(k);
  buffer_ += ':';
}

RecordWriter& RecordWriter::field(std::string_view k, std::string_view value) {
  key(k);
  buffer_ += quote(value);
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, double value) {
  key(k);
  buffer_ += real_token(value);
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, std::uint64_t value) {
  key(k);
  buffer_ += std::to_string(value);
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, std::int64_t value) {
  key(k);
  buffer_ += std::to_string(value);
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, bool value) {
  key(k);
  buffer_ += value ? "true" : "false";
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, std::span<const double> values) {
  key(k);
  buffer_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += real_token(values[i]);
  }
  buffer_ += ']';
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k, std::span<const int> values) {
  key(k);
  buffer_ += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += std::to_string(values[i]);
  }
  buffer_ += ']';
  return *this;
}

RecordWriter& RecordWriter::field(std::string_view k,
                                  std::span<const std::pair<std::string, std::string>> values) {
  key(k);
  buffer_ += '{';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += quote(values[i].first);
    buffer_ += ':';
    buffer_ += quote(values[i].second);
  }
  buffer_ += '}';
  return *this;
}

Record parse_record(std::string_view line, std::size_t line_number) {
  Record r = Record::parse(line, nullptr, false);
  if (r.is_discarded()) throw ParseError(line_number, "not a valid record");
  if (!r.is_object()) throw ParseError(line_number, "record is not an object");
  return r;
}

namespace {

const Record& member(const Record& r, std::string_view key, std::size_t line) {
  const auto it = r.find(key);
  if (it == r.end()) throw ParseError(line, "missing field '" + std::string(key) + "'");
  return *it;
}

double real_value(const Record& v, std::string_view key, std::size_t line) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ParseError(line, "field '" + std::string(key) + "' is not a real");
}

}  // namespace

std::string record_kind(const Record& r, std::size_t line) { return read_string(r, "kind", line); }

double read_real(const Record& r, std::string_view key, std::size_t line) {
  return real_value(member(r, key, line), key, line);
}

std::uint64_t read_uint(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_number_unsigned())
    throw ParseError(line, "field '" + std::string(key) + "' is not a non-negative integer");
  return v.get<std::uint64_t>();
}

std::int64_t read_int(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_number_integer())
    throw ParseError(line, "field '" + std::string(key) + "' is not an integer");
  return v.get<std::int64_t>();
}

bool read_bool(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_boolean()) throw ParseError(line, "field '" + std::string(key) + "' is not a boolean");
  return v.get<bool>();
}

std::string read_string(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_string()) throw ParseError(line, "field '" + std::string(key) + "' is not a string");
  return v.get<std::string>();
}

std::vector<double> read_reals(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_array()) throw ParseError(line, "field '" + std::string(key) + "' is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(real_value(e, key, line));
  return out;
}

std::vector<int> read_ints(const Record& r, std::string_view key, std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_array()) throw ParseError(line, "field '" + std::string(key) + "' is not an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw ParseError(line, "field '" + std::string(key) + "' holds a non-integer");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_string_map(const Record& r,
                                                                 std::string_view key,
                                                                 std::size_t line) {
  const auto& v = member(r, key, line);
  if (!v.is_object()) throw ParseError(line, "field '" + std::string(key) + "' is not an object");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, value] : v.items()) {
    if (!value.is_string())
      throw ParseError(line, "field '" + std::string(key) + "." + k + "' is not a string");
    out.emplace_back(k, value.get<std::string>());
  }
  return out;
}

}  // namespace blackbench
