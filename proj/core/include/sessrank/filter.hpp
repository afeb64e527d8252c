#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "sessrank/document.hpp"

namespace sessrank {

// Rules that mark a candidate document as junk (soft-404 pages, error stubs,
// placeholder text).
struct FilterRules {
  std::size_t min_token_length = 0;
  std::set<std::string, std::less<>> banned_exact;  // whole trimmed raw_text
  std::vector<std::string> banned_phrases;          // case-sensitive substrings

  static FilterRules defaults();
};

struct MatchedRule {
  enum class Kind { exact, phrase, min_length };
  Kind kind;
  std::string detail;  // the matched text, or the length threshold

  std::string to_string() const;
  friend bool operator==(const MatchedRule&, const MatchedRule&) = default;
};

struct Removal {
  std::string doc_id;
  MatchedRule rule;
};

struct FilterReport {
  std::size_t kept = 0;
  std::size_t removed = 0;
  std::vector<Removal> removals;  // doc_id order
};

struct FilterResult {
  Corpus kept;
  FilterReport report;
};

// First rule that fires, checked in the order exact, phrase, length.
std::optional<MatchedRule> is_filtered(const Document& doc, const FilterRules& rules);

FilterResult filter_corpus(const Corpus& corpus, const FilterRules& rules);

// Line directives: `phrase <text>`, `exact <text>`, `minlen <int>`. Lines
// starting with '#' and blank lines are ignored. Throws Error(malformed_line).
FilterRules parse_filter_rules(std::istream& in);
FilterRules load_filter_rules(const std::string& path);

void write_filter_report(const FilterReport& report, std::ostream& out);

}  // namespace sessrank
