#include "sessrank/ranklib.hpp"

#include <fstream>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank {

namespace {

constexpr std::string_view kSchemaPrefix = "#schema ";

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
  throw Error(Errc::malformed_feature_line, why, line_no);
}

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\r\n") != std::string_view::npos;
}

}  // namespace

void write_ranklib(const FeatureSet& features, std::ostream& out) {
  features.check();
  out << kSchemaPrefix << to_string(features.schema) << '\n';
  for (const auto& v : features.vectors) {
    if (v.group_key.empty() || has_space(v.group_key) || v.doc_id.empty() ||
        has_space(v.doc_id)) {
      throw Error(Errc::invalid_argument,
                  "group key and doc id must be non-empty and whitespace-free");
    }
    out << v.label << " qid:" << v.group_key;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
      out << ' ' << (i + 1) << ':' << format_double(v.values[i]);
    }
    out << " # " << v.doc_id << '\n';
  }
}

void save_ranklib(const FeatureSet& features, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::unreadable_source, "cannot write " + path);
  write_ranklib(features, out);
}

FeatureSet read_ranklib(std::istream& in) {
  FeatureSet set;
  std::optional<Schema> schema;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.starts_with(kSchemaPrefix)) {
      auto parsed = parse_schema(trim(view.substr(kSchemaPrefix.size())));
      if (!parsed) bad_line(line_no, "unknown schema");
      if (!set.vectors.empty() || schema) bad_line(line_no, "schema header must come first");
      schema = parsed;
      continue;
    }
    if (view.front() == '#') continue;

    auto hash = view.find('#');
    if (hash == std::string_view::npos) bad_line(line_no, "missing '# <doc_id>' comment");
    Tokens comment = tokenize(view.substr(hash + 1));
    if (comment.size() != 1) bad_line(line_no, "comment must hold exactly the doc_id");
    Tokens fields = tokenize(view.substr(0, hash));
    if (fields.size() < 2) bad_line(line_no, "expected '<label> qid:<key> ...'");

    FeatureVector v;
    v.doc_id = comment.front();
    auto label = parse_int(fields[0]);
    if (!label || *label < 0) bad_line(line_no, "bad label '" + fields[0] + "'");
    v.label = static_cast<int>(*label);
    if (!fields[1].starts_with("qid:") || fields[1].size() == 4) {
      bad_line(line_no, "missing qid:");
    }
    v.group_key = fields[1].substr(4);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      const std::string& f = fields[i];
      auto colon = f.find(':');
      if (colon == std::string::npos) bad_line(line_no, "bad feature '" + f + "'");
      auto index = parse_int(std::string_view(f).substr(0, colon));
      auto value = parse_double(std::string_view(f).substr(colon + 1));
      if (!index || !value) bad_line(line_no, "bad feature '" + f + "'");
      if (*index != static_cast<long long>(i - 1)) {
        bad_line(line_no, "feature indices must be contiguous from 1");
      }
      v.values.push_back(*value);
    }

    if (!schema) {
      if (v.values.size() == feature_count(Schema::atm)) {
        schema = Schema::atm;
      } else if (v.values.size() == feature_count(Schema::pmtm)) {
        schema = Schema::pmtm;
      } else {
        bad_line(line_no, "cannot infer schema from " + std::to_string(v.values.size()) +
                              " features");
      }
    }
    if (v.values.size() != feature_count(*schema)) {
      throw Error(Errc::schema_mismatch,
                  "expected " + std::to_string(feature_count(*schema)) + " features", line_no);
    }
    set.vectors.push_back(std::move(v));
  }
  set.schema = schema.value_or(Schema::atm);
  return set;
}

FeatureSet load_ranklib(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return read_ranklib(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

}  // namespace sessrank
