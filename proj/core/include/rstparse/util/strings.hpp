#pragma once

#include <map>
#include <string>
#include <vector>

namespace rstparse::util {

std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::vector<std::string> split_lines(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);
std::string trim(const std::string& s);

// Flat "key = value" configuration files; '#' starts a comment.
std::map<std::string, std::string> read_kv_file(const std::string& path);

}  // namespace rstparse::util
