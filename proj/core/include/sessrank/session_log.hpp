#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sessrank/document.hpp"
#include "sessrank/text.hpp"

namespace sessrank {

// Decimal seconds as written in the log. The literal is kept so that
// re-serialization reproduces the input exactly; only `seconds` is compared.
struct Timestamp {
  double seconds = 0.0;
  std::string literal;

  static Timestamp from_literal(std::string_view text);
  static Timestamp from_seconds(double seconds);

  friend bool operator==(const Timestamp& a, const Timestamp& b) {
    return a.seconds == b.seconds;
  }
  friend auto operator<=>(const Timestamp& a, const Timestamp& b) {
    return a.seconds <=> b.seconds;
  }
};

struct Query {
  std::string qid;
  Tokens text;

  std::size_t token_length() const noexcept { return text.size(); }
  std::string joined() const { return join(text); }

  friend bool operator==(const Query&, const Query&) = default;
};

struct Impression {
  int rank = 1;
  std::string url;
  std::string doc_id;
  std::string title;
  bool clicked = false;
  std::optional<Timestamp> click_time;

  friend bool operator==(const Impression&, const Impression&) = default;
};

struct QueryTurn {
  Query query;
  Timestamp issue_time;
  std::vector<Impression> impressions;

  friend bool operator==(const QueryTurn&, const QueryTurn&) = default;
};

struct Session {
  std::string session_id;
  std::vector<QueryTurn> turns;

  friend bool operator==(const Session&, const Session&) = default;
};

// Parses the click-log format:
//
//   SessionID <id>
//   -----
//   <query text...> <qid> <issue_time>
//   <rank> <url> <doc_id> <title...> <clicked 0|1> <click_time|-1>
//   ...
//   -----
//   <next turn>
//
// Blank lines are ignored. Throws Error(malformed_line) with the 1-based line
// number, or Error(duplicate_session_id).
std::vector<Session> parse_session_log(std::string_view text);
std::vector<Session> load_session_log(const std::string& path);

std::string serialize_session_log(const std::vector<Session>& sessions);

struct ValidationIssue {
  std::string session_id;
  std::size_t turn_index = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> unresolved_docs;
  std::vector<ValidationIssue> out_of_order_turns;

  bool clean() const { return unresolved_docs.empty() && out_of_order_turns.empty(); }
};

// Read-only consistency pass: doc ids missing from the corpus and turns whose
// issue time goes backwards.
ValidationReport validate(const std::vector<Session>& sessions, const Corpus& corpus);

}  // namespace sessrank
