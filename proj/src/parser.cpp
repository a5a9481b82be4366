// BoolNet-style model files: a "targets, factors" header followed by one
// "name, expression" line per node.

#include "bnctl/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace bnctl {

namespace {

std::string trim(std::string_view s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b)))
    ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1))))
    --e;
  return std::string(b, e);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Recursive-descent parser for: expr := term ('|' term)*, term := factor ('&'
// factor)*, factor := '!' factor | '(' expr ')' | ident | '0' | '1'.
class ExprParser {
public:
  ExprParser(std::string_view text, std::size_t line,
             const std::unordered_map<std::string, std::size_t> &index)
      : text_(text), line_(line), index_(index) {}

  BoolExpr parse() {
    BoolExpr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(line_, msg + " at column " + std::to_string(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BoolExpr expr() {
    std::vector<BoolExpr> terms;
    terms.push_back(term());
    while (accept('|'))
      terms.push_back(term());
    return BoolExpr::disjunction(std::move(terms));
  }

  BoolExpr term() {
    std::vector<BoolExpr> factors;
    factors.push_back(factor());
    while (accept('&'))
      factors.push_back(factor());
    return BoolExpr::conjunction(std::move(factors));
  }

  BoolExpr factor() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return BoolExpr::negate(factor());
    }
    if (c == '(') {
      ++pos_;
      BoolExpr e = expr();
      if (!accept(')'))
        fail("expected ')'");
      return e;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      if (pos_ < text_.size() && is_ident_char(text_[pos_]))
        fail("malformed constant");
      return BoolExpr::constant(c == '1');
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_]))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = index_.find(name);
      if (it == index_.end())
        throw ParseError(line_, "reference to undeclared node '" + name + "'");
      return BoolExpr::var(it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t line_;
  const std::unordered_map<std::string, std::size_t> &index_;
  std::size_t pos_ = 0;
};

struct RawLine {
  std::size_t line;
  std::string target;
  std::string expr;
};

} // namespace

BooleanNetwork parse_network(std::istream &in) {
  std::vector<RawLine> raw;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t.front() == '#')
      continue;
    auto comma = t.find(',');
    if (!header_seen) {
      if (comma == std::string::npos || lower(trim(t.substr(0, comma))) != "targets" ||
          lower(trim(t.substr(comma + 1))) != "factors")
        throw ParseError(lineno, "expected header 'targets, factors'");
      header_seen = true;
      continue;
    }
    if (comma == std::string::npos)
      throw ParseError(lineno, "expected 'target, expression'");
    std::string target = trim(t.substr(0, comma));
    if (target.empty() || !is_ident_start(target.front()) ||
        !std::all_of(target.begin(), target.end(), is_ident_char))
      throw ParseError(lineno, "invalid target name '" + target + "'");
    raw.push_back({lineno, std::move(target), t.substr(comma + 1)});
  }
  if (!header_seen && lineno == 0)
    throw ParseError(0, "empty model file");
  if (!header_seen)
    throw ParseError(lineno, "missing header 'targets, factors'");
  if (raw.empty())
    throw ParseError(lineno, "model declares no nodes");

  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> names;
  for (const auto &r : raw) {
    if (!index.emplace(r.target, names.size()).second)
      throw ParseError(r.line, "duplicate target node '" + r.target + "'");
    names.push_back(r.target);
  }

  std::vector<BoolExpr> functions;
  functions.reserve(raw.size());
  for (const auto &r : raw)
    functions.push_back(ExprParser(r.expr, r.line, index).parse());
  return BooleanNetwork(std::move(names), std::move(functions));
}

BooleanNetwork parse_network(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_network(in);
}

BooleanNetwork load_network(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open model file '" + path + "'");
  return parse_network(in);
}

namespace {

void write_expr(std::ostream &out, const BoolExpr &e,
                const std::vector<std::string> &names, int parent_prec) {
  // precedence: Or = 1, And = 2, Not/atoms = 3
  switch (e.kind()) {
  case BoolExpr::Kind::Const:
    out << (e.value() ? '1' : '0');
    return;
  case BoolExpr::Kind::Var:
    out << names.at(e.index());
    return;
  case BoolExpr::Kind::Not:
    out << '!';
    write_expr(out, e.children().front(), names, 3);
    return;
  case BoolExpr::Kind::And:
  case BoolExpr::Kind::Or: {
    const bool is_and = e.kind() == BoolExpr::Kind::And;
    const int prec = is_and ? 2 : 1;
    // Nested same-kind children are parenthesised so the tree shape survives
    // a round trip.
    const bool paren = prec <= parent_prec;
    if (paren)
      out << '(';
    bool first = true;
    for (const auto &c : e.children()) {
      if (!first)
        out << (is_and ? " & " : " | ");
      first = false;
      write_expr(out, c, names, prec);
    }
    if (paren)
      out << ')';
    return;
  }
  }
}

} // namespace

std::string to_string(const BoolExpr &expr, const std::vector<std::string> &names) {
  std::ostringstream out;
  write_expr(out, expr, names, 0);
  return out.str();
}

std::string serialize(const BooleanNetwork &bn) {
  std::ostringstream out;
  out << "targets, factors\n";
  for (std::size_t i = 0; i < bn.size(); ++i)
    out << bn.name(i) << ", " << to_string(bn.function(i), bn.names()) << '\n';
  return out.str();
}

} // namespace bnctl
