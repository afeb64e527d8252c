#include "sessrank/asq.hpp"

#include <algorithm>

#include "sessrank/error.hpp"

namespace sessrank {

namespace {

std::string join_last(const std::vector<std::string>& items, std::size_t cap) {
  std::size_t first = items.size() > cap ? items.size() - cap : 0;
  std::string out;
  for (std::size_t i = first; i < items.size(); ++i) {
    if (i > first) out += ' ';
    out += items[i];
  }
  return out;
}

}  // namespace

std::string assemble_session_query(const Session& session, std::size_t turn_index,
                                   const AsqCaps& caps) {
  if (turn_index >= session.turns.size()) {
    throw Error(Errc::index_out_of_range,
                "turn " + std::to_string(turn_index) + " of session " + session.session_id +
                    " with " + std::to_string(session.turns.size()) + " turns");
  }

  std::vector<std::string> previous_queries;
  std::vector<std::string> clicked_titles;
  for (std::size_t t = 0; t < turn_index; ++t) {
    const QueryTurn& turn = session.turns[t];
    previous_queries.push_back(turn.query.joined());

    // Clicks within a turn are taken in click-time order; untimed clicks
    // follow timed ones in rank order.
    std::vector<const Impression*> clicks;
    for (const auto& imp : turn.impressions) {
      if (imp.clicked) clicks.push_back(&imp);
    }
    std::stable_sort(clicks.begin(), clicks.end(),
                     [](const Impression* a, const Impression* b) {
                       if (a->click_time && b->click_time) return *a->click_time < *b->click_time;
                       return a->click_time.has_value() && !b->click_time.has_value();
                     });
    for (const auto* imp : clicks) clicked_titles.push_back(imp->title);
  }

  std::string out;
  out += kClsToken;
  out += session.turns[turn_index].query.joined();
  out += kSepToken;
  out += join_last(previous_queries, caps.max_queries);
  out += kSepToken;
  out += join_last(clicked_titles, caps.max_titles);
  return out;
}

std::string turn_key(const Session& session, std::size_t turn_index) {
  return session.session_id + ":" + std::to_string(turn_index + 1);
}

std::vector<AsqRow> assemble_all(const std::vector<Session>& sessions, const AsqCaps& caps) {
  std::vector<AsqRow> rows;
  for (const auto& session : sessions) {
    for (std::size_t t = 0; t < session.turns.size(); ++t) {
      rows.push_back({turn_key(session, t), assemble_session_query(session, t, caps)});
    }
  }
  return rows;
}

void write_asq_tsv(const std::vector<AsqRow>& rows, std::ostream& out) {
  for (const auto& row : rows) out << row.key << '\t' << row.asq << '\n';
}

}  // namespace sessrank
