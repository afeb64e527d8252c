#include "sessrank/error.hpp"

namespace sessrank {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::malformed_line: return "MalformedLine";
    case Errc::duplicate_session_id: return "DuplicateSessionId";
    case Errc::duplicate_doc_id: return "DuplicateDocId";
    case Errc::unreadable_source: return "UnreadableSource";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::empty_candidate_set: return "EmptyCandidateSet";
    case Errc::unparseable_doc_id: return "UnparseableDocId";
    case Errc::malformed_feature_line: return "MalformedFeatureLine";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::degenerate_input: return "DegenerateInput";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::no_trainable_pairs: return "NoTrainablePairs";
    case Errc::unsupported_version: return "UnsupportedVersion";
    case Errc::corrupt_model: return "CorruptModel";
    case Errc::empty_run: return "EmptyRun";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::invariant_violation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& message,
                    std::optional<std::size_t> line, const std::string& source) {
  std::string out(to_string(code));
  if (!source.empty() || line) {
    out += " (";
    out += source.empty() ? "<input>" : source;
    if (line) out += ":" + std::to_string(*line);
    out += ")";
  }
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message,
             std::optional<std::size_t> line, std::string source)
    : std::runtime_error(compose(code, message, line, source)),
      code_(code),
      line_(line),
      source_(std::move(source)),
      message_(message) {}

Error Error::with_source(std::string source) const {
  return Error(code_, message_, line_, std::move(source));
}

bool Error::is_data_error() const noexcept {
  return code_ != Errc::invariant_violation;
}

}  // namespace sessrank
