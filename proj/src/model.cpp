#include "bnctl/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bnctl {

BoolExpr BoolExpr::constant(bool value) {
  BoolExpr e;
  e.kind_ = Kind::Const;
  e.value_ = value;
  return e;
}

BoolExpr BoolExpr::var(std::size_t index) {
  BoolExpr e;
  e.kind_ = Kind::Var;
  e.index_ = index;
  return e;
}

BoolExpr BoolExpr::negate(BoolExpr child) {
  BoolExpr e;
  e.kind_ = Kind::Not;
  e.children_.push_back(std::move(child));
  return e;
}

namespace {

BoolExpr nary(BoolExpr::Kind kind, std::vector<BoolExpr> children, bool neutral) {
  if (children.empty())
    return BoolExpr::constant(neutral);
  if (children.size() == 1)
    return std::move(children.front());
  return kind == BoolExpr::Kind::And ? BoolExpr::conjunction(std::move(children))
                                     : BoolExpr::disjunction(std::move(children));
}

} // namespace

BoolExpr BoolExpr::conjunction(std::vector<BoolExpr> children) {
  if (children.size() < 2)
    return nary(Kind::And, std::move(children), true);
  BoolExpr e;
  e.kind_ = Kind::And;
  e.children_ = std::move(children);
  return e;
}

BoolExpr BoolExpr::disjunction(std::vector<BoolExpr> children) {
  if (children.size() < 2)
    return nary(Kind::Or, std::move(children), false);
  BoolExpr e;
  e.kind_ = Kind::Or;
  e.children_ = std::move(children);
  return e;
}

std::size_t BoolExpr::arity() const {
  if (kind_ == Kind::Var)
    return index_ + 1;
  std::size_t a = 0;
  for (const auto &c : children_)
    a = std::max(a, c.arity());
  return a;
}

State State::from_string(std::string_view bits) {
  State s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw std::invalid_argument("state string must contain only 0 and 1: " +
                                  std::string(bits));
    s.set(i, bits[i] == '1');
  }
  return s;
}

std::string State::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i])
      out[i] = '1';
  return out;
}

void Control::fix(std::size_t node, bool value) {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), node,
                             [](const Literal &l, std::size_t n) { return l.node < n; });
  if (it != literals_.end() && it->node == node) {
    if (it->value != value)
      throw std::invalid_argument("node " + std::to_string(node) +
                                  " fixed to both 0 and 1");
    return;
  }
  literals_.insert(it, Literal{node, value});
}

std::vector<std::size_t> Control::zero_set() const {
  std::vector<std::size_t> out;
  for (const auto &l : literals_)
    if (!l.value)
      out.push_back(l.node);
  return out;
}

std::vector<std::size_t> Control::one_set() const {
  std::vector<std::size_t> out;
  for (const auto &l : literals_)
    if (l.value)
      out.push_back(l.node);
  return out;
}

bool Control::fixes(std::size_t node) const { return value_of(node).has_value(); }

std::optional<bool> Control::value_of(std::size_t node) const {
  auto it = std::lower_bound(literals_.begin(), literals_.end(), node,
                             [](const Literal &l, std::size_t n) { return l.node < n; });
  if (it != literals_.end() && it->node == node)
    return it->value;
  return std::nullopt;
}

bool operator<(const Control &a, const Control &b) {
  if (a.size() != b.size())
    return a.size() < b.size();
  return a.literals_ < b.literals_;
}

namespace {

bool contains(const std::vector<std::size_t> &v, std::size_t i) {
  return std::binary_search(v.begin(), v.end(), i);
}

bool valid_identifier(const std::string &s) {
  if (s.empty())
    return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void collect_vars(const BoolExpr &e, std::vector<std::size_t> &out) {
  if (e.kind() == BoolExpr::Kind::Var) {
    out.push_back(e.index());
    return;
  }
  for (const auto &c : e.children())
    collect_vars(c, out);
}

} // namespace

bool InputClassification::is_input(std::size_t i) const { return contains(inputs, i); }
bool InputClassification::is_specified(std::size_t i) const {
  return contains(specified, i);
}
bool InputClassification::is_nonspecified(std::size_t i) const {
  return contains(nonspecified, i);
}

ParseError::ParseError(std::size_t line, const std::string &message)
    : std::runtime_error(line == 0 ? message
                                   : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

BooleanNetwork::BooleanNetwork(std::vector<std::string> names,
                               std::vector<BoolExpr> functions)
    : names_(std::move(names)), functions_(std::move(functions)) {
  if (names_.empty())
    throw std::invalid_argument("a Boolean network needs at least one node");
  if (names_.size() != functions_.size())
    throw std::invalid_argument("one update function per node is required");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i]))
      throw std::invalid_argument("invalid node name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == names_[i])
        throw std::invalid_argument("duplicate node name '" + names_[i] + "'");
    if (functions_[i].arity() > names_.size())
      throw std::invalid_argument("function of '" + names_[i] +
                                  "' references an unknown node");
  }
}

std::optional<std::size_t> BooleanNetwork::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return i;
  return std::nullopt;
}

bool eval(const BoolExpr &expr, const State &s) {
  switch (expr.kind()) {
  case BoolExpr::Kind::Const:
    return expr.value();
  case BoolExpr::Kind::Var:
    return s[expr.index()];
  case BoolExpr::Kind::Not:
    return !eval(expr.children().front(), s);
  case BoolExpr::Kind::And:
    return std::all_of(expr.children().begin(), expr.children().end(),
                       [&](const BoolExpr &c) { return eval(c, s); });
  case BoolExpr::Kind::Or:
    return std::any_of(expr.children().begin(), expr.children().end(),
                       [&](const BoolExpr &c) { return eval(c, s); });
  }
  return false;
}

std::vector<std::size_t> parents(const BooleanNetwork &bn, std::size_t i) {
  std::vector<std::size_t> out;
  collect_vars(bn.function(i), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

InputClassification classify_inputs(const BooleanNetwork &bn) {
  InputClassification result;
  const std::size_t n = bn.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto par = parents(bn, i);
    if (!(par.empty() || (par.size() == 1 && par.front() == i)))
      continue;
    // Only x_i can matter, so a two-row truth table decides the class.
    State s(n);
    const bool at0 = eval(bn.function(i), s);
    s.set(i, true);
    const bool at1 = eval(bn.function(i), s);
    if (at0 == at1) {
      result.inputs.push_back(i);
      result.specified.push_back(i);
    } else if (!at0 && at1) {
      result.inputs.push_back(i);
      result.nonspecified.push_back(i);
    } else {
      result.oscillating.push_back(i);
    }
  }
  return result;
}

State apply_control(const Control &c, const State &s) {
  State out = s;
  for (const auto &l : c.literals())
    out.set(l.node, l.value);
  return out;
}

BooleanNetwork controlled_network(const BooleanNetwork &bn, const Control &c) {
  std::vector<BoolExpr> functions = bn.functions();
  for (const auto &l : c.literals()) {
    if (l.node >= functions.size())
      throw std::out_of_range("control references node outside the network");
    functions[l.node] = BoolExpr::constant(l.value);
  }
  return BooleanNetwork(bn.names(), std::move(functions));
}

Control parse_control(const BooleanNetwork &bn, std::string_view text) {
  Control c;
  std::string item;
  auto flush = [&]() {
    if (item.empty())
      return;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    auto idx = bn.index_of(name);
    if (!idx)
      throw std::invalid_argument("unknown node '" + name + "'");
    if (value != "0" && value != "1")
      throw std::invalid_argument("value of '" + name + "' must be 0 or 1");
    try {
      c.fix(*idx, value == "1");
    } catch (const std::invalid_argument &) {
      throw std::invalid_argument("node '" + name + "' is fixed to both 0 and 1");
    }
    item.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch)))
      flush();
    else
      item.push_back(ch);
  }
  flush();
  return c;
}

std::string format_control(const BooleanNetwork &bn, const Control &c) {
  std::ostringstream out;
  bool first = true;
  for (const auto &l : c.literals()) {
    if (!first)
      out << ", ";
    first = false;
    out << bn.name(l.node) << '=' << (l.value ? 1 : 0);
  }
  return out.str();
}

} // namespace bnctl
