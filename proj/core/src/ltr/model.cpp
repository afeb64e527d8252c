#include "sessrank/ltr/model.hpp"

#include <fstream>
#include <sstream>

#include "sessrank/error.hpp"
#include "sessrank/text.hpp"

namespace sessrank::ltr {

namespace {

constexpr std::string_view kMagic = "lambdamart";
constexpr std::string_view kVersion = "v1";

void write_node(const std::vector<TreeNode>& nodes, std::size_t i, std::string& out) {
  const auto& n = nodes[i];
  if (n.is_leaf()) {
    out += "(leaf ";
    out += format_double(n.value);
    out += ')';
    return;
  }
  out += "(split ";
  out += std::to_string(n.feature);
  out += ' ';
  out += format_double(n.threshold);
  out += ' ';
  write_node(nodes, static_cast<std::size_t>(n.left), out);
  out += ' ';
  write_node(nodes, static_cast<std::size_t>(n.right), out);
  out += ')';
}

// Recursive-descent reader for one tree line. Nodes are emitted in pre-order
// with children after their parent, matching the layout the fitter produces
// only up to renumbering; predictions are unaffected.
class TreeReader {
 public:
  TreeReader(std::string_view text, std::size_t line_no) : text_(text), line_no_(line_no) {}

  RegressionTree read() {
    std::vector<TreeNode> nodes;
    read_node(nodes);
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after tree");
    return RegressionTree(std::move(nodes));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::corrupt_model, why, line_no_);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view atom() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != '\t') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  double number() {
    auto tok = atom();
    auto v = parse_double(tok);
    if (!v) fail("bad number '" + std::string(tok) + "'");
    return *v;
  }

  std::size_t read_node(std::vector<TreeNode>& nodes) {
    if (++depth_ > 4096) fail("tree nesting too deep");
    expect('(');
    auto kind = atom();
    std::size_t index = nodes.size();
    nodes.emplace_back();
    if (kind == "leaf") {
      nodes[index].value = number();
    } else if (kind == "split") {
      auto feature = parse_int(atom());
      if (!feature || *feature < 0) fail("bad feature index");
      double threshold = number();
      std::size_t left = read_node(nodes);
      std::size_t right = read_node(nodes);
      auto& n = nodes[index];
      n.feature = static_cast<int>(*feature);
      n.threshold = threshold;
      n.left = static_cast<int>(left);
      n.right = static_cast<int>(right);
    } else {
      fail("unknown node kind '" + std::string(kind) + "'");
    }
    expect(')');
    --depth_;
    return index;
  }

  std::string_view text_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

std::string header_value(const Tokens& fields, std::string_view key, std::size_t line_no) {
  for (const auto& f : fields) {
    if (f.size() > key.size() && f.compare(0, key.size(), key) == 0 && f[key.size()] == '=') {
      return f.substr(key.size() + 1);
    }
  }
  throw Error(Errc::corrupt_model, "header lacks " + std::string(key), line_no);
}

}  // namespace

double predict(const LtrModel& model, std::span<const double> values) {
  if (values.size() != model.feature_count) {
    throw Error(Errc::schema_mismatch,
                "model expects " + std::to_string(model.feature_count) + " features, got " +
                    std::to_string(values.size()));
  }
  double score = 0.0;
  for (const auto& tree : model.trees) score += model.shrinkage * tree.evaluate(values);
  return score;
}

double predict(const LtrModel& model, const FeatureVector& vector) {
  return predict(model, std::span<const double>(vector.values));
}

void save_model(const LtrModel& model, std::ostream& out) {
  out << kMagic << ' ' << kVersion << " features=" << model.feature_count
      << " trees=" << model.trees.size() << " shrinkage=" << format_double(model.shrinkage)
      << '\n';
  out << "schema " << to_string(model.schema) << '\n';
  std::string line;
  for (const auto& tree : model.trees) {
    line.clear();
    write_node(tree.nodes(), 0, line);
    out << line << '\n';
  }
}

void save_model(const LtrModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::unreadable_source, "cannot write " + path);
  save_model(model, out);
}

LtrModel load_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw Error(Errc::corrupt_model, "empty model file");
  Tokens header = tokenize(line);
  if (header.size() < 2 || header[0] != kMagic) {
    throw Error(Errc::corrupt_model, "not a lambdamart model", line_no);
  }
  if (header[1] != kVersion) {
    throw Error(Errc::unsupported_version, "model version " + header[1], line_no);
  }
  auto features = parse_int(header_value(header, "features", line_no));
  auto trees = parse_int(header_value(header, "trees", line_no));
  auto shrinkage = parse_double(header_value(header, "shrinkage", line_no));
  if (!features || *features < 0 || !trees || *trees < 0 || !shrinkage) {
    throw Error(Errc::corrupt_model, "bad header values", line_no);
  }

  LtrModel model;
  model.feature_count = static_cast<std::size_t>(*features);
  model.shrinkage = *shrinkage;

  if (!next_line()) throw Error(Errc::corrupt_model, "missing schema line", line_no);
  Tokens schema_line = tokenize(line);
  std::optional<Schema> schema =
      schema_line.size() == 2 && schema_line[0] == "schema" ? parse_schema(schema_line[1])
                                                            : std::nullopt;
  if (!schema) throw Error(Errc::corrupt_model, "bad schema line", line_no);
  model.schema = *schema;

  for (long long t = 0; t < *trees; ++t) {
    if (!next_line()) {
      throw Error(Errc::corrupt_model,
                  "expected " + std::to_string(*trees) + " trees, found " + std::to_string(t),
                  line_no);
    }
    RegressionTree tree = TreeReader(line, line_no).read();
    if (tree.max_feature() >= static_cast<int>(model.feature_count)) {
      throw Error(Errc::corrupt_model, "tree references feature beyond model width", line_no);
    }
    model.trees.push_back(std::move(tree));
  }
  if (next_line()) throw Error(Errc::corrupt_model, "unexpected content after trees", line_no);
  return model;
}

LtrModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::unreadable_source, "cannot open " + path);
  try {
    return load_model(in);
  } catch (const Error& e) {
    throw e.with_source(path);
  }
}

}  // namespace sessrank::ltr
