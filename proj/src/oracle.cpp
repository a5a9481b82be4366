#include "bnctl/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bnctl::oracle {

StateCode encode(const State &s) {
  StateCode code = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i])
      code |= StateCode{1} << i;
  return code;
}

State decode(StateCode code, std::size_t n) {
  State s(n);
  for (std::size_t i = 0; i < n; ++i)
    s.set(i, (code >> i) & 1u);
  return s;
}

ExplicitSet to_explicit(const std::vector<State> &states) {
  ExplicitSet out;
  out.reserve(states.size());
  for (const auto &s : states)
    out.push_back(encode(s));
  std::sort(out.begin(), out.end());
  return out;
}

ExplicitSet ExplicitGraph::admissible_states() const {
  ExplicitSet out;
  for (StateCode s = 0; s < num_states(); ++s)
    if (admissible_[s])
      out.push_back(s);
  return out;
}

namespace {

void check_size(std::size_t n) {
  if (n > kMaxNodes)
    throw std::length_error("explicit oracle supports at most " +
                            std::to_string(kMaxNodes) + " nodes");
}

std::vector<bool> as_mask(const ExplicitSet &set, std::size_t num_states) {
  std::vector<bool> mask(num_states, false);
  for (auto s : set)
    mask[s] = true;
  return mask;
}

ExplicitSet from_mask(const std::vector<bool> &mask) {
  ExplicitSet out;
  for (StateCode s = 0; s < mask.size(); ++s)
    if (mask[s])
      out.push_back(s);
  return out;
}

// Backward search from `seeds`, never entering states marked in `blocked`.
std::vector<bool> backward(const ExplicitGraph &g, const ExplicitSet &seeds,
                           const std::vector<bool> *blocked = nullptr) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<StateCode> stack;
  for (auto s : seeds) {
    if (!seen[s] && g.admissible(s)) {
      seen[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateCode s = stack.back();
    stack.pop_back();
    for (auto p : g.predecessors(s)) {
      if (seen[p] || !g.admissible(p) || (blocked && (*blocked)[p]))
        continue;
      seen[p] = true;
      stack.push_back(p);
    }
  }
  return seen;
}

std::string bit_string(StateCode s, std::size_t n) { return decode(s, n).to_string(); }

} // namespace

std::vector<bool> admissible_mask(const BooleanNetwork &bn) {
  const std::size_t n = bn.size();
  check_size(n);
  const auto inputs = classify_inputs(bn);
  std::vector<bool> mask(std::size_t{1} << n, true);
  for (StateCode s = 0; s < mask.size(); ++s) {
    State st = decode(s, n);
    for (auto i : inputs.specified)
      if (st[i] != eval(bn.function(i), st))
        mask[s] = false;
  }
  return mask;
}

ExplicitGraph build_graph(const BooleanNetwork &bn, const std::vector<bool> &admissible) {
  const std::size_t n = bn.size();
  check_size(n);
  const std::size_t num = std::size_t{1} << n;
  if (admissible.size() != num)
    throw std::invalid_argument("admissible mask has the wrong length");
  ExplicitGraph g;
  g.n_ = n;
  g.successors_.assign(num, {});
  g.predecessors_.assign(num, {});
  g.admissible_ = admissible;
  for (StateCode s = 0; s < num; ++s) {
    State st = decode(s, n);
    bool selfloop = false;
    auto &succ = g.successors_[s];
    for (std::size_t i = 0; i < n; ++i) {
      if (eval(bn.function(i), st) != st[i])
        succ.push_back(s ^ (StateCode{1} << i));
      else
        selfloop = true;
    }
    if (selfloop)
      succ.push_back(s);
    std::sort(succ.begin(), succ.end());
    for (auto t : succ)
      g.predecessors_[t].push_back(s);
  }
  return g;
}

ExplicitGraph build_graph(const BooleanNetwork &bn) {
  return build_graph(bn, admissible_mask(bn));
}

std::vector<ExplicitSet> attractors(const ExplicitGraph &g) {
  // Tarjan's algorithm, iterative, on the admissible subgraph.
  const std::size_t num = g.num_states();
  constexpr std::uint32_t kUnvisited = 0xffffffffu;
  std::vector<std::uint32_t> index(num, kUnvisited), low(num, 0);
  std::vector<bool> on_stack(num, false);
  std::vector<StateCode> scc_stack;
  std::vector<std::vector<StateCode>> sccs;
  std::uint32_t counter = 0;

  struct Frame {
    StateCode state;
    std::size_t next;
  };
  for (StateCode root = 0; root < num; ++root) {
    if (!g.admissible(root) || index[root] != kUnvisited)
      continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame &f = call.back();
      const auto &succ = g.successors(f.state);
      if (f.next < succ.size()) {
        StateCode t = succ[f.next++];
        if (!g.admissible(t))
          continue;
        if (index[t] == kUnvisited) {
          index[t] = low[t] = counter++;
          scc_stack.push_back(t);
          on_stack[t] = true;
          call.push_back({t, 0});
        } else if (on_stack[t]) {
          low[f.state] = std::min(low[f.state], index[t]);
        }
        continue;
      }
      StateCode v = f.state;
      call.pop_back();
      if (!call.empty())
        low[call.back().state] = std::min(low[call.back().state], low[v]);
      if (low[v] == index[v]) {
        std::vector<StateCode> scc;
        StateCode w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = false;
          scc.push_back(w);
        } while (w != v);
        sccs.push_back(std::move(scc));
      }
    }
  }

  std::vector<std::uint32_t> component(num, kUnvisited);
  for (std::uint32_t c = 0; c < sccs.size(); ++c)
    for (auto s : sccs[c])
      component[s] = c;
  std::vector<ExplicitSet> result;
  for (std::uint32_t c = 0; c < sccs.size(); ++c) {
    bool terminal = true;
    for (auto s : sccs[c])
      for (auto t : g.successors(s))
        if (g.admissible(t) && component[t] != c)
          terminal = false;
    if (terminal) {
      ExplicitSet a = sccs[c];
      std::sort(a.begin(), a.end());
      result.push_back(std::move(a));
    }
  }
  const std::size_t n = g.num_nodes();
  auto smallest = [n](const ExplicitSet &a) {
    std::string best = bit_string(a.front(), n);
    for (auto s : a)
      best = std::min(best, bit_string(s, n));
    return best;
  };
  std::sort(result.begin(), result.end(), [&](const ExplicitSet &a, const ExplicitSet &b) {
    return smallest(a) < smallest(b);
  });
  return result;
}

ExplicitSet weak_basin(const ExplicitGraph &g, const ExplicitSet &target) {
  return from_mask(backward(g, target));
}

ExplicitSet strong_basin(const ExplicitGraph &g, const ExplicitSet &target) {
  std::vector<bool> result = backward(g, target);
  for (const auto &other : attractors(g)) {
    if (other == target)
      continue;
    auto reaches_other = backward(g, other);
    for (StateCode s = 0; s < result.size(); ++s)
      if (reaches_other[s])
        result[s] = false;
  }
  return from_mask(result);
}

ExplicitSet fairly_reaches(const ExplicitGraph &g, const ExplicitSet &target) {
  const auto in_target = as_mask(target, g.num_states());
  ExplicitSet bad_seeds;
  for (const auto &scc : attractors(g)) {
    bool disjoint = std::none_of(scc.begin(), scc.end(),
                                 [&](StateCode s) { return in_target[s]; });
    if (disjoint)
      bad_seeds.insert(bad_seeds.end(), scc.begin(), scc.end());
  }
  auto can_reach = backward(g, target);
  auto can_escape = backward(g, bad_seeds, &in_target);
  for (StateCode s = 0; s < can_reach.size(); ++s)
    if (can_escape[s])
      can_reach[s] = false;
  return from_mask(can_reach);
}

namespace {

struct Context {
  const BooleanNetwork &bn;
  ExplicitGraph graph;
  ExplicitSet admissible;
  ExplicitSet target;
  std::vector<bool> strong;
};

StateCode apply(const Control &c, StateCode s) {
  for (const auto &l : c.literals()) {
    if (l.value)
      s |= StateCode{1} << l.node;
    else
      s &= ~(StateCode{1} << l.node);
  }
  return s;
}

bool validate(const Context &ctx, ControlMode mode, const Control &c) {
  const std::size_t num = ctx.graph.num_states();
  std::vector<bool> intermediate(num, false);
  for (auto s : ctx.admissible)
    intermediate[apply(c, s)] = true;
  ExplicitSet inter = from_mask(intermediate);

  if (mode == ControlMode::Instantaneous)
    return std::all_of(inter.begin(), inter.end(),
                       [&](StateCode s) { return ctx.strong[s]; });

  ExplicitGraph controlled = build_graph(controlled_network(ctx.bn, c), intermediate);
  ExplicitSet goal;
  if (mode == ControlMode::Temporary) {
    for (StateCode s = 0; s < num; ++s)
      if (ctx.strong[s] && apply(c, s) == s)
        goal.push_back(s);
    if (goal.empty())
      return false;
  } else {
    auto atts = attractors(controlled);
    if (std::find(atts.begin(), atts.end(), ctx.target) == atts.end())
      return false;
    goal = ctx.target;
  }
  auto ok = as_mask(fairly_reaches(controlled, goal), num);
  return std::all_of(inter.begin(), inter.end(), [&](StateCode s) { return ok[s]; });
}

Context make_context(const BooleanNetwork &bn, const ExplicitSet &target) {
  Context ctx{bn, build_graph(bn), {}, target, {}};
  ctx.admissible = ctx.graph.admissible_states();
  ctx.strong = as_mask(strong_basin(ctx.graph, target), ctx.graph.num_states());
  return ctx;
}

} // namespace

bool validate_control(const BooleanNetwork &bn, ControlMode mode,
                      const ExplicitSet &target, const Control &c) {
  return validate(make_context(bn, target), mode, c);
}

std::vector<Control> brute_force_min_controls(const BooleanNetwork &bn, ControlMode mode,
                                              const ExplicitSet &target,
                                              std::size_t k_max) {
  const std::size_t n = bn.size();
  check_size(n);
  k_max = std::min(k_max, n);
  const Context ctx = make_context(bn, target);
  for (std::size_t k = 0; k <= k_max; ++k) {
    std::vector<Control> valid;
    std::vector<std::size_t> nodes(k);
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    for (;;) {
      for (std::uint32_t values = 0; values < (1u << k); ++values) {
        Control c;
        for (std::size_t j = 0; j < k; ++j)
          c.fix(nodes[j], (values >> j) & 1u);
        if (validate(ctx, mode, c))
          valid.push_back(std::move(c));
      }
      std::size_t j = k;
      while (j > 0 && nodes[j - 1] == n - k + j - 1)
        --j;
      if (j == 0)
        break;
      ++nodes[j - 1];
      for (std::size_t t = j; t < k; ++t)
        nodes[t] = nodes[t - 1] + 1;
    }
    if (!valid.empty()) {
      std::sort(valid.begin(), valid.end());
      return valid;
    }
  }
  return {};
}

BooleanNetwork random_network(std::uint64_t seed, std::size_t n, std::size_t max_indegree) {
  if (n == 0)
    throw std::invalid_argument("random network needs at least one node");
  std::mt19937_64 rng(seed);
  std::vector<std::string> names;
  std::vector<BoolExpr> functions;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("x" + std::to_string(i + 1));
    std::uniform_int_distribution<std::size_t> deg(1, std::min(max_indegree, n));
    const std::size_t d = deg(rng);
    std::vector<std::size_t> par;
    std::sample(all.begin(), all.end(), std::back_inserter(par), d, rng);
    std::bernoulli_distribution bit(0.5);
    std::vector<BoolExpr> minterms;
    const std::size_t rows = std::size_t{1} << d;
    for (std::size_t row = 0; row < rows; ++row) {
      if (!bit(rng))
        continue;
      std::vector<BoolExpr> lits;
      for (std::size_t j = 0; j < d; ++j) {
        BoolExpr v = BoolExpr::var(par[j]);
        lits.push_back((row >> j) & 1u ? v : BoolExpr::negate(v));
      }
      minterms.push_back(BoolExpr::conjunction(std::move(lits)));
    }
    if (minterms.size() == rows)
      functions.push_back(BoolExpr::constant(true));
    else
      functions.push_back(BoolExpr::disjunction(std::move(minterms)));
  }
  return BooleanNetwork(std::move(names), std::move(functions));
}

} // namespace bnctl::oracle
