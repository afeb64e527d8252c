#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "sessrank/session_log.hpp"

namespace sessrank {

inline constexpr std::string_view kClsToken = "[CLS]";
inline constexpr std::string_view kSepToken = "[SEP]";

struct AsqCaps {
  std::size_t max_queries = 5;  // most recent previous queries kept
  std::size_t max_titles = 5;   // most recent clicked titles kept
};

// "[CLS]" + current query + "[SEP]" + previous queries + "[SEP]" + titles of
// documents clicked in earlier turns. Items within a segment are joined with a
// single space, oldest first. Throws Error(index_out_of_range).
std::string assemble_session_query(const Session& session, std::size_t turn_index,
                                   const AsqCaps& caps = {});

// Key used for one turn of one session in feature, score and run files:
// "<session_id>:<turn number, 1-based>".
std::string turn_key(const Session& session, std::size_t turn_index);

struct AsqRow {
  std::string key;
  std::string asq;
};

std::vector<AsqRow> assemble_all(const std::vector<Session>& sessions,
                                 const AsqCaps& caps = {});

// `key<TAB>asq` per row.
void write_asq_tsv(const std::vector<AsqRow>& rows, std::ostream& out);

}  // namespace sessrank
