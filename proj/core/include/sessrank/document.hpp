#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "sessrank/text.hpp"

namespace sessrank {

struct Document {
  std::string doc_id;
  Tokens text;
  std::string raw_text;
  std::size_t char_length = 0;  // code points of raw_text

  std::size_t token_length() const noexcept { return text.size(); }

  static Document from_raw(std::string doc_id, std::string raw_text);
};

// Documents keyed by doc_id. Iteration is in doc_id order, which every
// downstream report relies on for determinism.
class Corpus {
 public:
  using Map = std::map<std::string, Document, std::less<>>;

  Corpus() = default;

  // Throws Error(duplicate_doc_id).
  void add(Document doc);

  const Document* find(std::string_view doc_id) const;
  bool contains(std::string_view doc_id) const { return find(doc_id) != nullptr; }
  const Document& at(std::string_view doc_id) const;

  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }

  Map::const_iterator begin() const { return docs_.begin(); }
  Map::const_iterator end() const { return docs_.end(); }

 private:
  Map docs_;
};

// `doc_id<TAB>raw_text` per line; blank lines are skipped.
Corpus read_corpus_tsv(std::istream& in);
void write_corpus_tsv(const Corpus& corpus, std::ostream& out);

// Every `<doc_id>.txt` regular file in `dir`; other files are ignored.
Corpus load_corpus_dir(const std::string& dir);

// Dispatches on the path: directory of files, otherwise a TSV file.
Corpus load_corpus(const std::string& path);

}  // namespace sessrank
