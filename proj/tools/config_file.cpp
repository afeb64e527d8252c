#include "config_file.hpp"

#include <fstream>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank::cli {

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open config " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::malformed_line, "expected key = value", line_no, path);
    }
    std::string key(trim(view.substr(0, eq)));
    std::string value(trim(view.substr(eq + 1)));
    if (key.empty()) throw Error(Errc::malformed_line, "empty key", line_no, path);
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

}  // namespace sessrank::cli
