#include "sessrank/document.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "sessrank/error.hpp"

namespace sessrank {

namespace fs = std::filesystem;

Document Document::from_raw(std::string doc_id, std::string raw_text) {
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = tokenize(raw_text);
  doc.char_length = utf8_length(raw_text);
  doc.raw_text = std::move(raw_text);
  return doc;
}

void Corpus::add(Document doc) {
  if (doc.doc_id.empty()) {
    throw Error(Errc::invalid_argument, "document with empty doc_id");
  }
  auto key = doc.doc_id;
  auto [it, inserted] = docs_.try_emplace(std::move(key), std::move(doc));
  if (!inserted) throw Error(Errc::duplicate_doc_id, it->first);
}

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = docs_.find(doc_id);
  return it == docs_.end() ? nullptr : &it->second;
}

const Document& Corpus::at(std::string_view doc_id) const {
  const Document* doc = find(doc_id);
  if (!doc) {
    throw Error(Errc::invalid_argument,
                "unknown doc_id " + std::string(doc_id));
  }
  return *doc;
}

Corpus read_corpus_tsv(std::istream& in) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(Errc::malformed_line, "expected doc_id<TAB>text", line_no);
    }
    try {
      corpus.add(Document::from_raw(line.substr(0, tab), line.substr(tab + 1)));
    } catch (const Error& e) {
      throw Error(e.code(), line.substr(0, tab), line_no);
    }
  }
  if (in.bad()) throw Error(Errc::unreadable_source, "stream read failed");
  return corpus;
}

void write_corpus_tsv(const Corpus& corpus, std::ostream& out) {
  for (const auto& [id, doc] : corpus) {
    std::string text = doc.raw_text;
    // One document per line: embedded line breaks become spaces.
    std::replace(text.begin(), text.end(), '\n', ' ');
    std::replace(text.begin(), text.end(), '\r', ' ');
    std::replace(text.begin(), text.end(), '\t', ' ');
    out << id << '\t' << text << '\n';
  }
}

Corpus load_corpus_dir(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(Errc::unreadable_source, "not a directory: " + dir);
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  if (ec) throw Error(Errc::unreadable_source, ec.message() + ": " + dir);
  std::sort(files.begin(), files.end());

  Corpus corpus;
  for (const auto& path : files) {
    std::string raw = read_file(path.string());
    while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r')) {
      raw.pop_back();
    }
    corpus.add(Document::from_raw(path.stem().string(), std::move(raw)));
  }
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return load_corpus_dir(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return read_corpus_tsv(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

}  // namespace sessrank
