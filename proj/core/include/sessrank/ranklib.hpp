#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "sessrank/features.hpp"

namespace sessrank {

// RankLib/SVMlight-style feature files:
//
//   #schema atm
//   1 qid:11:1 1:3.25 2:1 ... 8:1 # d209
//
// Values are written in shortest round-trip form, so reading back yields the
// identical doubles. A missing `#schema` header is inferred from the width of
// the first row.
void write_ranklib(const FeatureSet& features, std::ostream& out);
void save_ranklib(const FeatureSet& features, const std::string& path);

// Throws Error(malformed_feature_line) or Error(schema_mismatch).
FeatureSet read_ranklib(std::istream& in);
FeatureSet load_ranklib(const std::string& path);

}  // namespace sessrank
