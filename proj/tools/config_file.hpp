#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sessrank::cli {

// Line-oriented `key = value` file; '#' starts a comment line. Keys are long
// flag names without the leading dashes. Throws sessrank::Error.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

}  // namespace sessrank::cli
