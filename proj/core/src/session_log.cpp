#include "sessrank/session_log.hpp"

#include <set>

#include "sessrank/error.hpp"

namespace sessrank {

namespace {

constexpr std::string_view kSeparator = "-----";
constexpr std::string_view kSessionHeader = "SessionID";

[[noreturn]] void malformed(std::size_t line_no, const std::string& reason) {
  throw Error(Errc::malformed_line, reason, line_no);
}

Timestamp parse_timestamp(std::string_view field, std::size_t line_no) {
  auto secs = parse_double(field);
  if (!secs) malformed(line_no, "bad timestamp '" + std::string(field) + "'");
  return Timestamp{*secs, std::string(field)};
}

QueryTurn parse_turn_header(const Tokens& fields, std::size_t line_no) {
  if (fields.size() < 3) malformed(line_no, "turn header needs <query> <qid> <time>");
  QueryTurn turn;
  turn.issue_time = parse_timestamp(fields.back(), line_no);
  turn.query.qid = fields[fields.size() - 2];
  turn.query.text.assign(fields.begin(), fields.end() - 2);
  return turn;
}

Impression parse_impression(const Tokens& fields, std::size_t line_no) {
  // rank url doc_id [title...] clicked click_time
  if (fields.size() < 6) {
    malformed(line_no, "impression needs <rank> <url> <doc_id> <title> <clicked> <time>");
  }
  Impression imp;
  auto rank = parse_int(fields[0]);
  if (!rank || *rank < 1) malformed(line_no, "bad rank '" + fields[0] + "'");
  imp.rank = static_cast<int>(*rank);
  imp.url = fields[1];
  imp.doc_id = fields[2];
  Tokens title(fields.begin() + 3, fields.end() - 2);
  imp.title = join(title);

  const std::string& clicked = fields[fields.size() - 2];
  if (clicked == "1") {
    imp.clicked = true;
  } else if (clicked != "0") {
    malformed(line_no, "clicked flag must be 0 or 1, got '" + clicked + "'");
  }
  const std::string& time = fields.back();
  if (time != "-1") {
    if (!imp.clicked) malformed(line_no, "unclicked impression with click time");
    imp.click_time = parse_timestamp(time, line_no);
  }
  return imp;
}

}  // namespace

Timestamp Timestamp::from_literal(std::string_view text) {
  auto secs = parse_double(text);
  if (!secs) throw Error(Errc::invalid_argument, "bad timestamp " + std::string(text));
  return Timestamp{*secs, std::string(text)};
}

Timestamp Timestamp::from_seconds(double seconds) {
  return Timestamp{seconds, format_double(seconds)};
}

std::vector<Session> parse_session_log(std::string_view text) {
  std::vector<Session> sessions;
  std::set<std::string, std::less<>> seen_ids;

  enum class Expect { session_header, separator, turn_header, impression_or_separator };
  Expect state = Expect::session_header;

  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    Tokens fields = tokenize(line);
    if (fields.front() == kSessionHeader) {
      if (state == Expect::turn_header) malformed(line_no, "separator without a turn");
      if (fields.size() != 2) malformed(line_no, "expected 'SessionID <id>'");
      if (!seen_ids.insert(fields[1]).second) {
        throw Error(Errc::duplicate_session_id, fields[1], line_no);
      }
      sessions.push_back(Session{fields[1], {}});
      state = Expect::separator;
      continue;
    }

    switch (state) {
      case Expect::session_header:
        malformed(line_no, "expected 'SessionID <id>'");
      case Expect::separator:
        if (line != kSeparator) malformed(line_no, "expected '-----'");
        state = Expect::turn_header;
        break;
      case Expect::turn_header:
        if (line == kSeparator) malformed(line_no, "empty turn");
        sessions.back().turns.push_back(parse_turn_header(fields, line_no));
        state = Expect::impression_or_separator;
        break;
      case Expect::impression_or_separator: {
        if (line == kSeparator) {
          state = Expect::turn_header;
          break;
        }
        auto& impressions = sessions.back().turns.back().impressions;
        Impression imp = parse_impression(fields, line_no);
        int expected = static_cast<int>(impressions.size()) + 1;
        if (imp.rank != expected) {
          malformed(line_no, "rank " + std::to_string(imp.rank) + " out of sequence, expected " +
                                 std::to_string(expected));
        }
        impressions.push_back(std::move(imp));
        break;
      }
    }
  }
  if (state == Expect::turn_header) malformed(line_no, "trailing separator without a turn");
  return sessions;
}

std::vector<Session> load_session_log(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_session_log(text);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

std::string serialize_session_log(const std::vector<Session>& sessions) {
  std::string out;
  for (const auto& session : sessions) {
    out += kSessionHeader;
    out += ' ';
    out += session.session_id;
    out += '\n';
    for (const auto& turn : session.turns) {
      out += kSeparator;
      out += '\n';
      for (const auto& tok : turn.query.text) {
        out += tok;
        out += ' ';
      }
      out += turn.query.qid + ' ' + turn.issue_time.literal + '\n';
      for (const auto& imp : turn.impressions) {
        out += std::to_string(imp.rank) + ' ' + imp.url + ' ' + imp.doc_id + ' ';
        if (!imp.title.empty()) out += imp.title + ' ';
        out += imp.clicked ? "1 " : "0 ";
        out += imp.click_time ? imp.click_time->literal : std::string("-1");
        out += '\n';
      }
    }
  }
  return out;
}

ValidationReport validate(const std::vector<Session>& sessions, const Corpus& corpus) {
  ValidationReport report;
  for (const auto& session : sessions) {
    for (std::size_t t = 0; t < session.turns.size(); ++t) {
      const auto& turn = session.turns[t];
      if (t > 0 && turn.issue_time < session.turns[t - 1].issue_time) {
        report.out_of_order_turns.push_back(
            {session.session_id, t, "issue time earlier than previous turn"});
      }
      for (const auto& imp : turn.impressions) {
        if (!corpus.contains(imp.doc_id)) {
          report.unresolved_docs.push_back(
              {session.session_id, t, "doc_id " + imp.doc_id + " not in corpus"});
        }
      }
    }
  }
  return report;
}

}  // namespace sessrank
