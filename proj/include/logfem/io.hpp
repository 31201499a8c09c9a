#pragma once

#include <map>
#include <string>

namespace logfem {

// real formatted with 17 significant digits (round-trip exact)
std::string format_real(double v);

// Flat "key = value" configuration text; '#' starts a comment, blank lines
// are skipped. Later keys override earlier ones.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace logfem
