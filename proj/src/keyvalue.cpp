#include "upcint/keyvalue.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

#include "upcint/errors.hpp"

namespace upcint {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<KeyValueBlock> parse_key_value_blocks(std::istream& in, const std::string& source) {
  std::vector<KeyValueBlock> blocks;
  KeyValueBlock current;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source, line_no, line, "expected 'key = value'");
    KeyValueEntry e{trim(std::string_view(line).substr(0, eq)),
                    trim(std::string_view(line).substr(eq + 1)), line_no};
    if (e.key.empty()) throw ConfigError(source, line_no, "", "empty key");
    current.push_back(std::move(e));
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

double parse_double(const KeyValueEntry& e, const std::string& source) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE || std::isnan(v))
    throw ConfigError(source, e.line, e.key, "'" + e.value + "' is not a number");
  return v;
}

long long parse_integer(const KeyValueEntry& e, const std::string& source) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE)
    throw ConfigError(source, e.line, e.key, "'" + e.value + "' is not an integer");
  return v;
}

bool parse_bool(const KeyValueEntry& e, const std::string& source) {
  if (e.value == "true" || e.value == "on" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "off" || e.value == "0" || e.value == "no") return false;
  throw ConfigError(source, e.line, e.key, "'" + e.value + "' is not a boolean");
}

}  // namespace upcint
