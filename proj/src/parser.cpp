#include "epiupdate/parser.hpp"

#include <algorithm>
#include <cctype>

#include "epiupdate/history.hpp"

namespace epi {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  /// Character right at the cursor, without skipping whitespace.
  char raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::string ident() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }
  /// Identifier starting exactly at the cursor, or empty.
  std::string peek_ident() {
    skip_space();
    auto end = pos_;
    while (end < text_.size() && is_ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }
  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }
  std::string_view text() const { return text_; }

  [[noreturn]] void fail(const std::string& message) const {
    std::string near = pos_ < text_.size() ? " near '" + std::string(text_.substr(pos_, 12)) + "'"
                                           : " at end of input";
    throw ParseError(message + near, pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

CommGraph graph_literal_at(Cursor& in, const Agents& agents) {
  in.expect("{");
  std::vector<std::pair<AgentIndex, AgentIndex>> add, remove;
  auto agent = [&]() {
    auto start = in.pos();
    auto name = in.ident();
    if (!agents.contains(name)) {
      in.seek(start);
      in.fail("unknown agent '" + name + "'");
    }
    return agents.index(name);
  };
  if (!in.accept("}")) {
    do {
      const bool exclude = in.accept("!");
      auto start = in.pos();
      auto from = agent();
      in.expect("->");
      auto to = agent();
      if (exclude) {
        if (from == to) {
          in.seek(start);
          in.fail("a communication graph is reflexive; the diagonal cannot be excluded");
        }
        remove.emplace_back(from, to);
      } else if (from != to) {
        add.emplace_back(from, to);
      }
    } while (in.accept(","));
    in.expect("}");
  }
  std::vector<std::pair<AgentIndex, AgentIndex>> edges;
  for (auto e : add)
    if (std::find(remove.begin(), remove.end(), e) == remove.end()) edges.push_back(e);
  return CommGraph::from_edges(agents.size(), edges);
}

std::vector<CommGraph> pattern_literal_at(Cursor& in, const Agents& agents) {
  in.expect("[");
  std::vector<CommGraph> graphs;
  if (!in.accept("]")) {
    do {
      graphs.push_back(graph_literal_at(in, agents));
    } while (in.accept(","));
    in.expect("]");
  }
  return graphs;
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const ParseContext& context) : in_(text), ctx_(context) {}

  Formula parse() {
    auto f = formula();
    if (!in_.at_end()) in_.fail("unexpected trailing input");
    return f;
  }

 private:
  Formula formula() {
    const char c = in_.peek();
    if (c == '\0') in_.fail("expected a formula");
    if (c == '~') {
      in_.accept("~");
      return Formula::negation(formula());
    }
    if (c == '(') return parenthesised();
    if (c == '[') return modality();
    if (is_ident_char(c)) return word();
    in_.fail("unexpected character");
  }

  Formula parenthesised() {
    const auto open = in_.pos();
    // A parenthesised view followed by `_owner` is a history variable.
    auto close = matching_paren(open);
    if (close && *close + 1 < in_.text().size() && in_.text()[*close + 1] == '_') {
      auto view = std::string(in_.text().substr(open + 1, *close - open - 1));
      in_.seek(*close + 2);
      auto owner_pos = in_.pos();
      auto owner = in_.ident();
      return history_atom(view, owner, open, owner_pos);
    }
    in_.expect("(");
    auto left = formula();
    std::string op;
    for (std::string_view candidate : {"<->", "->", "&", "|"}) {
      if (in_.accept(candidate)) {
        op = candidate;
        break;
      }
    }
    if (op.empty()) in_.fail("expected one of & | -> <->");
    auto right = formula();
    Formula out = combine(op, left, right);
    if (op == "&" || op == "|") {
      while (in_.accept(op)) out = combine(op, out, formula());
    }
    in_.expect(")");
    return out;
  }

  static Formula combine(const std::string& op, const Formula& x, const Formula& y) {
    if (op == "&") return Formula::conjunction(x, y);
    if (op == "|") return Formula::disjunction(x, y);
    if (op == "->") return Formula::implication(x, y);
    return Formula::equivalence(x, y);
  }

  std::optional<std::size_t> matching_paren(std::size_t open) const {
    int depth = 0;
    const auto text = in_.text();
    for (std::size_t i = open; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')' && --depth == 0) return i;
    }
    return std::nullopt;
  }

  Formula modality() {
    in_.expect("[");
    const auto name_pos = in_.pos();
    auto name = in_.ident();
    if (in_.raw() == ':') {
      in_.accept(":");
      auto pattern = find_pattern(name, name_pos);
      const auto lit_pos = in_.pos();
      auto graph = graph_literal_at(in_, ctx_.agents);
      auto index = pattern->find(graph);
      if (!index) {
        in_.seek(lit_pos);
        in_.fail("graph is not in pattern '" + name + "'");
      }
      in_.expect("]");
      return Formula::pattern_update(pattern, *index, formula());
    }
    if (in_.raw() == '.') {
      in_.accept(".");
      const auto action_pos = in_.pos();
      auto close = in_.text().find(']', action_pos);
      if (close == std::string_view::npos) in_.fail("expected ']'");
      auto action = std::string(in_.text().substr(action_pos, close - action_pos));
      auto it = ctx_.action_models.find(name);
      if (it == ctx_.action_models.end()) {
        in_.seek(name_pos);
        in_.fail("unknown action model '" + name + "'");
      }
      auto e = it->second->find_action(action);
      if (!e) {
        in_.seek(action_pos);
        in_.fail("unknown action '" + action + "' of '" + name + "'");
      }
      in_.seek(close + 1);
      return Formula::action_update(it->second, *e, formula());
    }
    in_.expect("]");
    if (auto it = ctx_.patterns.find(name); it != ctx_.patterns.end())
      return Formula::all_graphs(it->second, formula());
    if (auto it = ctx_.action_models.find(name); it != ctx_.action_models.end())
      return Formula::all_actions(it->second, formula());
    in_.seek(name_pos);
    in_.fail("unknown pattern or action model '" + name + "'");
  }

  std::shared_ptr<const CommPattern> find_pattern(const std::string& name, std::size_t pos) {
    auto it = ctx_.patterns.find(name);
    if (it == ctx_.patterns.end()) {
      in_.seek(pos);
      in_.fail("unknown pattern '" + name + "'");
    }
    return it->second;
  }

  std::vector<std::string> group() {
    in_.expect("{");
    std::vector<std::string> names;
    if (in_.peek() != '}') {
      do {
        names.push_back(agent());
      } while (in_.accept(","));
    }
    in_.expect("}");
    if (names.empty()) in_.fail("distributed knowledge needs a nonempty group");
    return names;
  }

  std::string agent() {
    const auto pos = in_.pos();
    auto name = in_.ident();
    if (!ctx_.agents.contains(name)) {
      in_.seek(pos);
      in_.fail("unknown agent '" + name + "'");
    }
    return name;
  }

  Formula word() {
    const auto start = in_.pos();
    auto w = in_.ident();
    if (in_.raw() == '_') {
      in_.accept("_");
      const auto owner_pos = in_.pos();
      auto owner = in_.ident();
      return atom(w, owner, start, owner_pos);
    }
    if (w == "true") return Formula::top();
    if (w == "false") return Formula::bottom();
    if (w == "D" || w == "hD") {
      auto g = group();
      auto body = formula();
      return w == "D" ? Formula::dknow(std::move(g), std::move(body))
                      : Formula::possible(std::move(g), std::move(body));
    }
    if (w == "K") {
      auto a = agent();
      return Formula::know(a, formula());
    }
    if (w == "hK") {
      auto a = agent();
      return Formula::possible({a}, formula());
    }
    in_.seek(start);
    in_.fail("unexpected identifier '" + w + "'");
  }

  Formula atom(const std::string& name, const std::string& owner, std::size_t start,
               std::size_t owner_pos) {
    if (!ctx_.agents.contains(owner)) {
      in_.seek(owner_pos);
      in_.fail("unknown agent '" + owner + "'");
    }
    auto base = Atom::base(name, owner);
    if (std::binary_search(ctx_.atoms.begin(), ctx_.atoms.end(), base) ||
        std::find(ctx_.atoms.begin(), ctx_.atoms.end(), base) != ctx_.atoms.end())
      return Formula::atom(base);
    if (ctx_.allow_history_atoms) {
      try {
        return history_atom(name, owner, start, owner_pos);
      } catch (const ParseError&) {
      }
    }
    in_.seek(start);
    in_.fail("unknown atom '" + name + "_" + owner + "'");
  }

  Formula history_atom(const std::string& view_text, const std::string& owner, std::size_t start,
                       std::size_t owner_pos) {
    if (!ctx_.allow_history_atoms) {
      in_.seek(start);
      in_.fail("history variables are not allowed here");
    }
    if (!ctx_.agents.contains(owner)) {
      in_.seek(owner_pos);
      in_.fail("unknown agent '" + owner + "'");
    }
    ViewPtr view;
    try {
      view = parse_view(view_text, ctx_.agents);
    } catch (const ParseError& e) {
      in_.seek(start);
      in_.fail(std::string("malformed view: ") + e.what());
    }
    if (view->is_empty()) {
      in_.seek(start);
      in_.fail("the empty view has no history variable");
    }
    return Formula::atom(history_variable(ctx_.agents, ctx_.agents.index(owner), *view));
  }

  Cursor in_;
  const ParseContext& ctx_;
};

}  // namespace

Formula parse_formula(std::string_view text, const ParseContext& context) {
  return FormulaParser(text, context).parse();
}

CommGraph parse_graph_literal(std::string_view text, const Agents& agents) {
  Cursor in(text);
  auto g = graph_literal_at(in, agents);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return g;
}

std::vector<CommGraph> parse_pattern_literal(std::string_view text, const Agents& agents) {
  Cursor in(text);
  auto graphs = pattern_literal_at(in, agents);
  if (!in.at_end()) in.fail("unexpected trailing input");
  return graphs;
}

CommPattern parse_pattern_declaration(std::string_view text, const Agents& agents) {
  Cursor in(text);
  if (in.ident() != "pattern") {
    in.seek(0);
    in.fail("expected 'pattern'");
  }
  auto name = in.ident();
  in.expect("=");
  const auto lit = in.pos();
  auto graphs = pattern_literal_at(in, agents);
  if (!in.at_end()) in.fail("unexpected trailing input");
  if (graphs.empty()) {
    in.seek(lit);
    in.fail("a communication pattern needs at least one graph");
  }
  return CommPattern(name, agents, std::move(graphs));
}

Atom parse_atom(std::string_view text, const ParseContext& context) {
  auto f = parse_formula(text, context);
  if (f.kind() != FormulaKind::atom) throw ParseError("expected an atom: " + std::string(text), 0);
  return f.atom();
}

}  // namespace epi
