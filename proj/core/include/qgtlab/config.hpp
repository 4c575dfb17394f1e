#pragma once

#include <map>
#include <string>
#include <vector>

namespace qgt {

// Flat key-value config text: one `key = value` per line, '#' starts a comment.
std::map<std::string, std::string> parse_key_value_file(const std::string& path);
std::map<std::string, std::string> parse_key_value_text(const std::string& text);

// "8:20:2" (inclusive range), "8,12,16", or a single value.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace qgt
