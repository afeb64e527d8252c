#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sessrank {

enum class Errc {
  malformed_line,
  duplicate_session_id,
  duplicate_doc_id,
  unreadable_source,
  empty_corpus,
  empty_candidate_set,
  unparseable_doc_id,
  malformed_feature_line,
  index_out_of_range,
  length_mismatch,
  degenerate_input,
  schema_mismatch,
  no_trainable_pairs,
  unsupported_version,
  corrupt_model,
  empty_run,
  invalid_argument,
  invariant_violation,
};

std::string_view to_string(Errc code);

// Every recoverable failure in the library is reported through this type.
// `line` is 1-based when present.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt,
        std::string source = {});

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

  // Copy of this error with `source` attached, used when a stream parser is
  // driven from a named file.
  Error with_source(std::string source) const;

  // True for errors caused by bad input data (as opposed to internal
  // invariant violations).
  bool is_data_error() const noexcept;

 private:
  Errc code_;
  std::optional<std::size_t> line_;
  std::string source_;
  std::string message_;
};

}  // namespace sessrank
