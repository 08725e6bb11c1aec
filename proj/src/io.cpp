#include "antitai/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>

#include "antitai/error.hpp"

namespace antitai {

namespace {

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : text_(text) {}

  RootedTree parse() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty Newick input", pos_);
    std::vector<NodeId> open;
    bool expect_element = true;
    bool done_root = false;
    while (true) {
      skip();
      if (pos_ >= text_.size()) throw ParseError("missing ';' terminator", pos_);
      const char c = text_[pos_];
      if (expect_element) {
        if (done_root) throw ParseError("text after the root subtree", pos_);
        const NodeId id = new_node(open.empty() ? std::nullopt : std::optional(open.back()));
        if (c == '(') {
          ++pos_;
          open.push_back(id);
          continue;
        }
        read_label(id);
        read_length();
        expect_element = false;
        done_root = open.empty();
        continue;
      }
      if (c == ',') {
        if (open.empty()) throw ParseError("',' outside parentheses", pos_);
        ++pos_;
        expect_element = true;
      } else if (c == ')') {
        if (open.empty()) throw ParseError("unbalanced ')'", pos_);
        const NodeId id = open.back();
        open.pop_back();
        ++pos_;
        read_label(id);
        read_length();
        done_root = open.empty();
      } else if (c == ';') {
        if (!open.empty()) throw ParseError("unbalanced '(' before ';'", pos_);
        ++pos_;
        skip();
        if (pos_ != text_.size()) throw ParseError("text after ';'", pos_);
        break;
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
    }
    for (NodeId x = 0; x < labels_.size(); ++x) {
      if (labels_[x].empty()) labels_[x] = "_" + std::to_string(x);
    }
    return RootedTree(std::move(labels_), parents_);
  }

 private:
  static bool is_delimiter(char c) {
    return c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' ||
           c == ']' || c == '\'' || std::isspace(static_cast<unsigned char>(c));
  }

  NodeId new_node(std::optional<NodeId> parent) {
    labels_.emplace_back();
    parents_.push_back(parent);
    return labels_.size() - 1;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '[') {
        const auto end = text_.find(']', pos_);
        if (end == std::string_view::npos) throw ParseError("unterminated comment", pos_);
        pos_ = end + 1;
      } else {
        break;
      }
    }
  }

  void read_label(NodeId id) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      const std::size_t start = pos_++;
      std::string label;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated quoted label", start);
        if (text_[pos_] == '\'') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\'') {
            label += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        label += text_[pos_++];
      }
      labels_[id] = std::move(label);
      return;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    labels_[id] = std::string(text_.substr(start, pos_ - start));
  }

  void read_length() {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ':') return;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError("empty branch length", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::optional<NodeId>> parents_;
};

bool needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  for (char c : label) {
    if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '[' || c == ']' ||
        c == '\'' || std::isspace(static_cast<unsigned char>(c))) {
      return true;
    }
  }
  return false;
}

void write_label(std::string& out, const std::string& label) {
  if (!needs_quotes(label)) {
    out += label;
    return;
  }
  out += '\'';
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
}

// Splits a line into whitespace-separated fields, dropping '#' comments.
std::vector<std::string_view> fields(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<std::size_t> to_index(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  // std::from_chars for double is not reliable on every libstdc++ in use.
  std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (end != copy.c_str() + copy.size() || copy.empty()) return std::nullopt;
  return v;
}

std::size_t require_index(std::string_view s, std::size_t line) {
  auto v = to_index(s);
  if (!v) throw ParseError("line " + std::to_string(line) + ": bad index '" + std::string(s) + "'", line);
  return *v;
}

// Runs row(line_no, fields) for every non-empty line; a first data line whose
// leading field is not a number is treated as a header.
template <class Row>
void for_each_row(std::istream& in, Row row) {
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields(line);
    if (f.empty()) continue;
    if (first) {
      first = false;
      if (!to_real(f.front())) continue;
    }
    row(line_no, f);
  }
}

WeightMatrix read_triples(std::istream& in, std::size_t rows, std::size_t cols,
                          const char* what) {
  WeightMatrix w(rows, cols);
  for_each_row(in, [&](std::size_t line, const std::vector<std::string_view>& f) {
    const std::string where = "line " + std::to_string(line) + ": ";
    if (f.size() != 3) throw ParseError(where + "expected 'i j " + what + "'", line);
    const std::size_t i = require_index(f[0], line);
    const std::size_t j = require_index(f[1], line);
    auto v = to_real(f[2]);
    if (!v) throw ParseError(where + "bad " + what + " '" + std::string(f[2]) + "'", line);
    if (i >= rows || j >= cols) throw ParseError(where + "index out of range", line);
    if (*v < 0.0) throw ParseError(where + "negative " + what, line);
    w.set(i, j, *v);
  });
  return w;
}

}  // namespace

RootedTree parse_newick(std::string_view text) { return NewickParser(text).parse(); }

std::string write_newick(const RootedTree& tree) {
  std::string out;
  // (node, next child index)
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    const auto kids = tree.children(x);
    if (kids.empty()) {
      write_label(out, tree.label(x));
      stack.pop_back();
      continue;
    }
    if (next == 0) out += '(';
    if (next < kids.size()) {
      if (next > 0) out += ',';
      const NodeId c = kids[next++];
      stack.emplace_back(c, 0);
      continue;
    }
    out += ')';
    write_label(out, tree.label(x));
    stack.pop_back();
  }
  out += ';';
  return out;
}

WeightMatrix read_weights(std::istream& in, std::size_t rows, std::size_t cols) {
  return read_triples(in, rows, cols, "weight");
}

FractionalSolution read_fractional(std::istream& in, std::size_t rows, std::size_t cols) {
  return FractionalSolution(read_triples(in, rows, cols, "value"));
}

WeightMatrix label_match_weights(const RootedTree& t1, const RootedTree& t2) {
  WeightMatrix w(t1.size(), t2.size());
  for (NodeId x = 0; x < t1.size(); ++x) {
    for (NodeId y = 0; y < t2.size(); ++y) {
      if (t1.label(x) == t2.label(y)) w.set(x, y, 1.0);
    }
  }
  return w;
}

Dag read_dag(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t vertices = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields(line);
    if (f.empty()) continue;
    if (f.size() > 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'src dst'", line_no);
    }
    const std::size_t u = require_index(f[0], line_no);
    vertices = std::max(vertices, u + 1);
    if (f.size() == 2) {
      const std::size_t v = require_index(f[1], line_no);
      vertices = std::max(vertices, v + 1);
      edges.emplace_back(u, v);
    }
  }
  if (vertices == 0) throw ParseError("DAG edge list declares no vertices", line_no);
  return Dag(vertices, edges);
}

PairMapping read_pairs(std::istream& in) {
  std::vector<Pair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields(line);
    if (f.empty()) continue;
    if (f.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'i j'", line_no);
    }
    pairs.push_back(Pair{require_index(f[0], line_no), require_index(f[1], line_no)});
  }
  return PairMapping(std::move(pairs));
}

NodeId find_unique_label(const RootedTree& tree, std::string_view label) {
  std::optional<NodeId> found;
  for (NodeId x : tree.preorder()) {
    if (tree.label(x) != label) continue;
    if (found) throw InvalidArgument("label '" + std::string(label) + "' is not unique");
    found = x;
  }
  if (!found) throw InvalidArgument("no node labeled '" + std::string(label) + "'");
  return *found;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace antitai
