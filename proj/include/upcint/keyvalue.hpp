#pragma once

#include <istream>
#include <string>
#include <vector>

namespace upcint {

// Flat "key = value" text. '#' starts a comment, blank lines separate blocks,
// keys may repeat inside a block.
struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

using KeyValueBlock = std::vector<KeyValueEntry>;

std::vector<KeyValueBlock> parse_key_value_blocks(std::istream& in, const std::string& source);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

double parse_double(const KeyValueEntry& e, const std::string& source);
long long parse_integer(const KeyValueEntry& e, const std::string& source);
bool parse_bool(const KeyValueEntry& e, const std::string& source);

}  // namespace upcint
