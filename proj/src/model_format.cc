// Copyright 2026 The Xplain Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xplain/model_format.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "xplain/error.h"

namespace xplain {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
  std::string rest;  // text after the first token, trimmed
};

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<Line> SplitLines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line;
    line.number = number;
    std::istringstream in{std::string(raw)};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) {
      const std::string trimmed = Trim(raw);
      line.rest = Trim(std::string_view(trimmed).substr(line.tokens[0].size()));
      lines.push_back(std::move(line));
    }
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void LineError(int line, const std::string& message) {
  Fail(ErrorCode::kParse, "line " + std::to_string(line) + ": " + message);
}

int ParseInt(const Line& line, const std::string& token, const char* what) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    LineError(line.number, std::string("expected an integer ") + what +
                               ", found '" + token + "'");
  }
  return value;
}

Rational ParseRationalAt(const Line& line, const std::string& token) {
  try {
    return ParseRational(token);
  } catch (const Error& e) {
    LineError(line.number, e.what());
  }
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return index_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) Fail(ErrorCode::kParse, "unexpected end of input");
    return lines_[index_];
  }
  const Line& next() {
    const Line& line = peek();
    ++index_;
    return line;
  }
  int last_line() const {
    return lines_.empty() ? 0 : lines_.back().number;
  }

 private:
  std::vector<Line> lines_;
  size_t index_ = 0;
};

void ExpectArity(const Line& line, size_t count) {
  if (line.tokens.size() != count) {
    LineError(line.number, "'" + line.tokens[0] + "' expects " +
                               std::to_string(count - 1) + " argument(s)");
  }
}

void ExpectEnd(Cursor& cursor, const char* block) {
  if (cursor.done()) {
    Fail(ErrorCode::kParse, "line " + std::to_string(cursor.last_line()) +
                                ": unterminated " + block + " block");
  }
  const Line& line = cursor.next();
  if (line.tokens[0] != "end" || line.tokens.size() != 1) {
    LineError(line.number, std::string("expected 'end' of ") + block +
                               " block, found '" + line.tokens[0] + "'");
  }
}

void ReportDiagnostics(const std::vector<Diagnostic>& diagnostics,
                       int block_line,
                       const std::map<int, int>& node_lines) {
  if (diagnostics.empty()) return;
  const Diagnostic& d = diagnostics.front();
  int line = block_line;
  if (d.location.rfind("nodes[", 0) == 0) {
    const int id = std::stoi(d.location.substr(6));
    if (auto it = node_lines.find(id); it != node_lines.end()) {
      line = it->second;
    }
  }
  LineError(line, d.message);
}

DecisionTree ParseTree(Cursor& cursor, int feature_count) {
  const Line& header = cursor.next();
  ExpectArity(header, 1);
  std::map<int, TreeNode> nodes;
  std::map<int, int> node_lines;
  while (!cursor.done() && cursor.peek().tokens[0] == "node") {
    const Line& line = cursor.next();
    if (line.tokens.size() < 3) LineError(line.number, "malformed node");
    const int id = ParseInt(line, line.tokens[1], "node id");
    if (id < 0) LineError(line.number, "negative node id");
    if (nodes.count(id)) {
      LineError(line.number, "duplicate node id " + std::to_string(id));
    }
    TreeNode node;
    if (line.tokens[2] == "leaf") {
      ExpectArity(line, 4);
      if (line.tokens[3] != "0" && line.tokens[3] != "1") {
        LineError(line.number, "leaf label must be 0 or 1");
      }
      node = TreeNode::Leaf(line.tokens[3] == "1");
    } else if (line.tokens[2] == "split") {
      ExpectArity(line, 6);
      const int feature = ParseInt(line, line.tokens[3], "feature");
      if (feature < 0) LineError(line.number, "feature index out of range");
      node = TreeNode::Split(feature, ParseInt(line, line.tokens[4], "child"),
                             ParseInt(line, line.tokens[5], "child"));
    } else {
      LineError(line.number, "node kind must be 'leaf' or 'split'");
    }
    nodes[id] = node;
    node_lines[id] = line.number;
  }
  if (nodes.empty()) LineError(header.number, "tree without nodes");
  if (nodes.rbegin()->first != static_cast<int>(nodes.size()) - 1) {
    LineError(header.number, "node ids must be 0..N-1");
  }
  std::vector<TreeNode> arena;
  for (auto& [id, node] : nodes) arena.push_back(node);
  ExpectEnd(cursor, "tree");
  DecisionTree tree(feature_count, std::move(arena), 0);
  ReportDiagnostics(tree.Validate(), header.number, node_lines);
  return tree;
}

Perceptron ParsePerceptron(Cursor& cursor, int feature_count) {
  const Line& header = cursor.next();
  ExpectArity(header, 1);
  std::optional<std::vector<Rational>> weights;
  std::optional<Rational> bias;
  while (!cursor.done() && cursor.peek().tokens[0] != "end") {
    const Line& line = cursor.next();
    if (line.tokens[0] == "weights") {
      if (weights) LineError(line.number, "duplicate weights");
      weights.emplace();
      for (size_t i = 1; i < line.tokens.size(); ++i) {
        weights->push_back(ParseRationalAt(line, line.tokens[i]));
      }
      if (static_cast<int>(weights->size()) != feature_count) {
        LineError(line.number, "expected " + std::to_string(feature_count) +
                                   " weights, found " +
                                   std::to_string(weights->size()));
      }
    } else if (line.tokens[0] == "bias") {
      if (bias) LineError(line.number, "duplicate bias");
      ExpectArity(line, 2);
      bias = ParseRationalAt(line, line.tokens[1]);
    } else {
      LineError(line.number,
                "unexpected '" + line.tokens[0] + "' in perceptron block");
    }
  }
  if (!weights && feature_count == 0) weights.emplace();
  if (!weights) LineError(header.number, "perceptron without weights");
  if (!bias) LineError(header.number, "perceptron without bias");
  ExpectEnd(cursor, "perceptron");
  return Perceptron(std::move(*weights), std::move(*bias));
}

BaseModel ParseBase(Cursor& cursor, int feature_count) {
  const Line& line = cursor.peek();
  if (line.tokens[0] == "tree") return ParseTree(cursor, feature_count);
  if (line.tokens[0] == "perceptron") {
    return ParsePerceptron(cursor, feature_count);
  }
  LineError(line.number, "expected 'tree' or 'perceptron', found '" +
                             line.tokens[0] + "'");
}

Ensemble ParseEnsemble(Cursor& cursor, int feature_count) {
  const Line& header = cursor.next();
  if (header.tokens.size() != 3 ||
      (header.tokens[1] != "majority" && header.tokens[1] != "weighted")) {
    LineError(header.number,
              "expected 'ensemble majority|weighted <count>'");
  }
  const int count = ParseInt(header, header.tokens[2], "model count");
  if (count < 1) LineError(header.number, "ensemble needs at least one model");
  Voting voting = Voting::Majority();
  if (header.tokens[1] == "weighted") {
    voting.rule = VotingRule::kWeighted;
    const Line& weights = cursor.next();
    if (weights.tokens[0] != "weights") {
      LineError(weights.number, "weighted ensemble expects a weights line");
    }
    for (size_t i = 1; i < weights.tokens.size(); ++i) {
      voting.weights.push_back(ParseRationalAt(weights, weights.tokens[i]));
    }
    if (static_cast<int>(voting.weights.size()) != count) {
      LineError(weights.number,
                "expected " + std::to_string(count) + " voting weights, found " +
                    std::to_string(voting.weights.size()));
    }
    const Line& threshold = cursor.next();
    if (threshold.tokens[0] != "threshold") {
      LineError(threshold.number, "weighted ensemble expects a threshold line");
    }
    ExpectArity(threshold, 2);
    voting.threshold = ParseRationalAt(threshold, threshold.tokens[1]);
  }
  std::vector<BaseModel> models;
  while (!cursor.done() && cursor.peek().tokens[0] != "end") {
    if (static_cast<int>(models.size()) == count) {
      LineError(cursor.peek().number,
                "ensemble declares " + std::to_string(count) +
                    " models but has more");
    }
    models.push_back(ParseBase(cursor, feature_count));
  }
  if (static_cast<int>(models.size()) != count) {
    const int at = cursor.done() ? cursor.last_line() : cursor.peek().number;
    LineError(at, "ensemble declares " + std::to_string(count) +
                      " models, found " + std::to_string(models.size()));
  }
  ExpectEnd(cursor, "ensemble");
  return Ensemble(std::move(models), std::move(voting));
}

void WriteTree(const DecisionTree& tree, const std::string& indent,
               std::ostringstream& out) {
  // Preorder renumbering from the root.
  std::vector<int> order;
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    order.push_back(id);
    const TreeNode& node = tree.node(id);
    if (!node.is_leaf()) {
      stack.push_back(node.if_one);
      stack.push_back(node.if_zero);
    }
  }
  std::map<int, int> renumber;
  for (size_t i = 0; i < order.size(); ++i) renumber[order[i]] = i;
  out << indent << "tree\n";
  for (size_t i = 0; i < order.size(); ++i) {
    const TreeNode& node = tree.node(order[i]);
    out << indent << "  node " << i;
    if (node.is_leaf()) {
      out << " leaf " << (node.label ? 1 : 0) << "\n";
    } else {
      out << " split " << node.feature << " " << renumber[node.if_zero] << " "
          << renumber[node.if_one] << "\n";
    }
  }
  out << indent << "end\n";
}

void WritePerceptron(const Perceptron& perceptron, const std::string& indent,
                     std::ostringstream& out) {
  out << indent << "perceptron\n" << indent << "  weights";
  for (const Rational& w : perceptron.weights()) out << " " << ToString(w);
  out << "\n" << indent << "  bias " << ToString(perceptron.bias()) << "\n";
  out << indent << "end\n";
}

void WriteBase(const BaseModel& model, const std::string& indent,
               std::ostringstream& out) {
  if (const auto* t = std::get_if<DecisionTree>(&model)) {
    WriteTree(*t, indent, out);
  } else {
    WritePerceptron(std::get<Perceptron>(model), indent, out);
  }
}

}  // namespace

ModelDocument ParseModel(std::string_view text) {
  Cursor cursor(SplitLines(text));
  if (cursor.done()) Fail(ErrorCode::kParse, "line 1: empty model file");
  const Line& magic = cursor.next();
  if (magic.tokens[0] != "xplain-model" || magic.tokens.size() != 2) {
    LineError(magic.number, "expected 'xplain-model <version>' header");
  }
  const int version = ParseInt(magic, magic.tokens[1], "version");
  if (version != kModelSchemaVersion) {
    LineError(magic.number,
              "unsupported schema version " + std::to_string(version));
  }
  if (cursor.done()) Fail(ErrorCode::kParse, "line 1: missing 'features'");
  const Line& features = cursor.next();
  if (features.tokens[0] != "features") {
    LineError(features.number, "expected 'features <n>'");
  }
  ExpectArity(features, 2);
  const int n = ParseInt(features, features.tokens[1], "feature count");
  if (n < 0) LineError(features.number, "negative feature count");

  std::string name;
  std::string provenance;
  while (!cursor.done() && (cursor.peek().tokens[0] == "name" ||
                            cursor.peek().tokens[0] == "provenance")) {
    const Line& line = cursor.next();
    (line.tokens[0] == "name" ? name : provenance) = line.rest;
  }
  if (cursor.done()) {
    Fail(ErrorCode::kParse,
         "line " + std::to_string(cursor.last_line()) + ": missing model");
  }
  const Line& head = cursor.peek();
  const int head_line = head.number;
  std::optional<Model> model;
  if (head.tokens[0] == "ensemble") {
    Ensemble ensemble = ParseEnsemble(cursor, n);
    ReportDiagnostics(ensemble.Validate(), head_line, {});
    model = std::move(ensemble);
  } else {
    BaseModel base = ParseBase(cursor, n);
    model = std::visit([](auto&& m) -> Model { return std::move(m); },
                       std::move(base));
  }
  if (!cursor.done()) {
    LineError(cursor.peek().number,
              "unexpected '" + cursor.peek().tokens[0] + "' after model");
  }
  return ModelDocument{std::move(*model), std::move(name),
                       std::move(provenance), version};
}

std::string SerializeModel(const ModelDocument& document) {
  std::ostringstream out;
  out << "xplain-model " << document.schema_version << "\n";
  out << "features " << document.feature_count() << "\n";
  if (!document.name.empty()) out << "name " << document.name << "\n";
  if (!document.provenance.empty()) {
    out << "provenance " << document.provenance << "\n";
  }
  if (const auto* e = std::get_if<Ensemble>(&document.model)) {
    const bool weighted = e->voting().rule == VotingRule::kWeighted;
    out << "ensemble " << (weighted ? "weighted " : "majority ") << e->size()
        << "\n";
    if (weighted) {
      out << "  weights";
      for (const Rational& w : e->voting().weights) out << " " << ToString(w);
      out << "\n  threshold " << ToString(e->voting().threshold) << "\n";
    }
    for (const BaseModel& m : e->models()) WriteBase(m, "  ", out);
    out << "end\n";
  } else if (const auto* t = std::get_if<DecisionTree>(&document.model)) {
    WriteTree(*t, "", out);
  } else {
    WritePerceptron(std::get<Perceptron>(document.model), "", out);
  }
  return out.str();
}

std::string SerializeModel(const Model& model) {
  return SerializeModel(ModelDocument{model, "", "", kModelSchemaVersion});
}

NormalForm ParseNormalForm(std::string_view text, bool is_cnf) {
  const std::vector<Line> lines = SplitLines(text);
  if (lines.empty() || lines[0].tokens[0] != "features") {
    LineError(lines.empty() ? 1 : lines[0].number,
              "expected 'features <n>' header");
  }
  ExpectArity(lines[0], 2);
  NormalForm form;
  form.is_cnf = is_cnf;
  form.feature_count = ParseInt(lines[0], lines[0].tokens[1], "feature count");
  for (size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    std::vector<Literal> term;
    std::vector<int> seen;
    for (const std::string& token : line.tokens) {
      const bool negative = token[0] == '-';
      const std::string digits =
          (token[0] == '-' || token[0] == '+') ? token.substr(1) : token;
      const int feature = ParseInt(line, digits, "literal");
      if (feature < 0 || feature >= form.feature_count) {
        LineError(line.number, "literal " + token + " out of range");
      }
      if (std::find(seen.begin(), seen.end(), feature) != seen.end()) {
        LineError(line.number, "feature repeated in one term");
      }
      seen.push_back(feature);
      term.push_back(Literal{feature, !negative});
    }
    form.terms.push_back(std::move(term));
  }
  try {
    form.Check();
  } catch (const Error& e) {
    Fail(ErrorCode::kParse, std::string("line 1: ") + e.what());
  }
  return form;
}

std::string SerializeNormalForm(const NormalForm& form) {
  std::ostringstream out;
  out << "features " << form.feature_count << "\n";
  for (const auto& term : form.terms) {
    for (size_t i = 0; i < term.size(); ++i) {
      out << (i ? " " : "") << (term[i].positive ? "" : "-")
          << term[i].feature;
    }
    out << "\n";
  }
  return out.str();
}

ColoredGraph ParseGraph(std::string_view text) {
  ColoredGraph graph;
  std::map<int, int> colors;
  int declared = -1;
  for (const Line& line : SplitLines(text)) {
    const std::string& kind = line.tokens[0];
    if (kind == "colors") {
      ExpectArity(line, 2);
      declared = ParseInt(line, line.tokens[1], "color count");
    } else if (kind == "v") {
      ExpectArity(line, 3);
      const int id = ParseInt(line, line.tokens[1], "vertex");
      const int color = ParseInt(line, line.tokens[2], "color");
      if (id < 0 || color < 0) LineError(line.number, "negative value");
      if (colors.count(id)) LineError(line.number, "duplicate vertex");
      colors[id] = color;
    } else if (kind == "e") {
      ExpectArity(line, 3);
      graph.edges.emplace_back(ParseInt(line, line.tokens[1], "vertex"),
                               ParseInt(line, line.tokens[2], "vertex"));
    } else {
      LineError(line.number, "expected 'colors', 'v' or 'e'");
    }
  }
  int max_color = -1;
  for (auto [id, color] : colors) {
    if (id != static_cast<int>(graph.color_of.size())) {
      Fail(ErrorCode::kParse, "line 1: vertex ids must be 0..V-1");
    }
    graph.color_of.push_back(color);
    max_color = std::max(max_color, color);
  }
  graph.colors = declared >= 0 ? declared : max_color + 1;
  if (max_color >= graph.colors) {
    Fail(ErrorCode::kParse, "line 1: vertex color exceeds declared colors");
  }
  for (auto [a, b] : graph.edges) {
    if (a < 0 || b < 0 || a >= static_cast<int>(graph.color_of.size()) ||
        b >= static_cast<int>(graph.color_of.size())) {
      Fail(ErrorCode::kParse, "line 1: edge endpoint is not a vertex");
    }
  }
  return graph;
}

std::string SerializeGraph(const ColoredGraph& graph) {
  std::ostringstream out;
  out << "colors " << graph.colors << "\n";
  for (size_t v = 0; v < graph.color_of.size(); ++v) {
    out << "v " << v << " " << graph.color_of[v] << "\n";
  }
  for (auto [a, b] : graph.edges) out << "e " << a << " " << b << "\n";
  return out.str();
}

ProductDistribution ParseDistribution(std::string_view text,
                                      int feature_count) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.size() == 1 && tokens[0] == "uniform") {
    return ProductDistribution::Uniform(feature_count);
  }
  if (static_cast<int>(tokens.size()) != feature_count) {
    Fail(ErrorCode::kInputShape,
         "distribution needs " + std::to_string(feature_count) +
             " values, found " + std::to_string(tokens.size()));
  }
  std::vector<Rational> p;
  for (const std::string& tok : tokens) p.push_back(ParseRational(tok));
  return ProductDistribution(std::move(p));
}

std::string SerializeDistribution(const ProductDistribution& distribution) {
  std::string out;
  for (int i = 0; i < distribution.size(); ++i) {
    if (i) out += " ";
    out += ToString(distribution.p(i));
  }
  return out;
}

}  // namespace xplain
