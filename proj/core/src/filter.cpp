#include "sessrank/filter.hpp"

#include <fstream>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank {

FilterRules FilterRules::defaults() {
  FilterRules rules;
  rules.min_token_length = 5;
  rules.banned_exact = {"<unk>", "搜到搜索结果"};
  rules.banned_phrases = {
      "404 Not Found",
      "页面不存在",
      "访问的页面丢失",
      "requested resource is not found",
      "Page Not Found",
      "403 Forbidden",
      "页面未找到",
      "找不到页面",
  };
  return rules;
}

std::string MatchedRule::to_string() const {
  switch (kind) {
    case Kind::exact: return "exact " + detail;
    case Kind::phrase: return "phrase " + detail;
    case Kind::min_length: return "minlen " + detail;
  }
  return detail;
}

std::optional<MatchedRule> is_filtered(const Document& doc, const FilterRules& rules) {
  std::string_view body = trim(doc.raw_text);
  if (auto it = rules.banned_exact.find(body); it != rules.banned_exact.end()) {
    return MatchedRule{MatchedRule::Kind::exact, *it};
  }
  for (const auto& phrase : rules.banned_phrases) {
    if (doc.raw_text.find(phrase) != std::string::npos) {
      return MatchedRule{MatchedRule::Kind::phrase, phrase};
    }
  }
  if (doc.token_length() < rules.min_token_length) {
    return MatchedRule{MatchedRule::Kind::min_length,
                       std::to_string(rules.min_token_length)};
  }
  return std::nullopt;
}

FilterResult filter_corpus(const Corpus& corpus, const FilterRules& rules) {
  FilterResult result;
  for (const auto& [id, doc] : corpus) {
    if (auto rule = is_filtered(doc, rules)) {
      result.report.removals.push_back({id, std::move(*rule)});
      ++result.report.removed;
    } else {
      result.kept.add(doc);
      ++result.report.kept;
    }
  }
  return result;
}

FilterRules parse_filter_rules(std::istream& in) {
  FilterRules rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    auto space = view.find_first_of(" \t");
    std::string_view directive = view.substr(0, space);
    std::string_view arg = space == std::string_view::npos ? std::string_view{}
                                                           : trim(view.substr(space));
    if (arg.empty()) throw Error(Errc::malformed_line, "missing argument", line_no);

    if (directive == "phrase") {
      rules.banned_phrases.emplace_back(arg);
    } else if (directive == "exact") {
      rules.banned_exact.emplace(arg);
    } else if (directive == "minlen") {
      auto n = parse_int(arg);
      if (!n || *n < 0) throw Error(Errc::malformed_line, "bad minlen", line_no);
      rules.min_token_length = static_cast<std::size_t>(*n);
    } else {
      throw Error(Errc::malformed_line,
                  "unknown directive '" + std::string(directive) + "'", line_no);
    }
  }
  return rules;
}

FilterRules load_filter_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return parse_filter_rules(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

void write_filter_report(const FilterReport& report, std::ostream& out) {
  out << "# kept=" << report.kept << " removed=" << report.removed << '\n';
  for (const auto& r : report.removals) {
    out << r.doc_id << '\t' << r.rule.to_string() << '\n';
  }
}

}  // namespace sessrank
