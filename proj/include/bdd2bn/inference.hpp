/*!
  \file inference.hpp
  \brief Exact inference over compiled networks and the equivalence check
  between a network and the BDD it was compiled from.

  All probability arithmetic is exact rational arithmetic, so marginals are
  reproducible bit for bit and the BDD/network comparison needs no
  tolerance at all.
*/

#pragma once

#include "bayes_net.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace bdd2bn {

namespace detail {

/*! \brief Kahn's algorithm; parents precede children. Throws on cycles. */
inline std::vector<bn_id> topological_order(const bayes_net& net) {
  check_well_formed(net);
  std::vector<unsigned> pending(net.nodes.size(), 0);
  std::vector<std::vector<bn_id>> children(net.nodes.size());
  for (const bn_node& node : net.nodes) {
    pending[node.id] = static_cast<unsigned>(node.parents.size());
    for (bn_id p : node.parents) {
      children[p].push_back(node.id);
    }
  }
  std::vector<bn_id> queue;
  for (const bn_node& node : net.nodes) {
    if (pending[node.id] == 0) queue.push_back(node.id);
  }
  std::vector<bn_id> order;
  order.reserve(net.nodes.size());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    bn_id id = queue[head];
    order.push_back(id);
    for (bn_id child : children[id]) {
      if (--pending[child] == 0) queue.push_back(child);
    }
  }
  if (order.size() != net.nodes.size()) {
    throw std::runtime_error("network contains a cycle");
  }
  return order;
}

inline void check_parameters(const std::vector<rational>& p, unsigned num_vars,
                             const char* where) {
  if (p.size() != num_vars) {
    throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(num_vars) +
                                " parameters, got " + std::to_string(p.size()));
  }
  for (const rational& q : p) {
    if (q < rational(0) || rational(1) < q) {
      throw std::invalid_argument(std::string(where) + ": parameter " + q.to_string() +
                                  " is outside [0, 1]");
    }
  }
}

} // namespace detail

/*! \brief Marginal P(node = 1) for every node when variable i is an
 * independent Bernoulli with P(x_i = 1) = p[i].
 *
 * Forward sum-product pass in topological order. Treating the two parents
 * of an assertion node as independent is exact here: the hypothesis
 * mixture of the two point-mass tables depends on the parents' joint
 * distribution only through the per-parent marginals.
 */
inline std::vector<rational> node_marginals(const bayes_net& net,
                                            const std::vector<rational>& p) {
  detail::check_parameters(p, net.num_vars, "node_marginals");
  std::vector<rational> marginal(net.nodes.size());
  for (bn_id id : detail::topological_order(net)) {
    const bn_node& node = net.nodes[id];
    if (node.kind == bn_kind::square) {
      marginal[id] = rational(node.value ? 1 : 0);
      continue;
    }
    if (node.param >= net.num_vars) {
      throw std::invalid_argument("node_marginals: node " + std::to_string(id) +
                                  " tests x" + std::to_string(node.param + 1) +
                                  " beyond the network arity");
    }
    const rational& ph = p[node.param];
    rational one_minus_ph = rational(1) - ph;
    rational m0 = marginal[node.parents[0]];
    rational m1 = marginal[node.parents[1]];
    rational total;
    for (bool s0 : {false, true}) {
      for (bool s1 : {false, true}) {
        rational joint = (s0 ? m0 : rational(1) - m0) * (s1 ? m1 : rational(1) - m1);
        if (joint.is_zero()) continue;
        total += joint * (one_minus_ph * node.tables[0].at(s0, s1, true) +
                          ph * node.tables[1].at(s0, s1, true));
      }
    }
    marginal[id] = std::move(total);
  }
  return marginal;
}

/*! \brief P(root = 1) under independent Bernoulli variables. */
inline rational root_marginal(const bayes_net& net, const std::vector<rational>& p) {
  return node_marginals(net, p)[net.root];
}

/*! \brief The network's deterministic output under a full assignment.
 *
 * Every square is pinned and every table row is a point mass, so the state
 * of each node is forced; a row that is not a point mass means the network
 * was not produced by the compiler and is reported as a domain error.
 */
inline bool evaluate_net(const bayes_net& net, const assignment& x) {
  if (x.arity() != net.num_vars) {
    throw std::invalid_argument("evaluate_net: assignment arity " + std::to_string(x.arity()) +
                                " does not match network arity " + std::to_string(net.num_vars));
  }
  std::vector<bool> state(net.nodes.size());
  for (bn_id id : detail::topological_order(net)) {
    const bn_node& node = net.nodes[id];
    if (node.kind == bn_kind::square) {
      state[id] = node.value;
      continue;
    }
    if (node.param >= net.num_vars) {
      throw std::invalid_argument("evaluate_net: node " + std::to_string(id) + " tests x" +
                                  std::to_string(node.param + 1) +
                                  " beyond the network arity");
    }
    const cpt& table = node.tables[unsigned(x[node.param])];
    bool c0 = state[node.parents[0]];
    bool c1 = state[node.parents[1]];
    if (table.at(c0, c1, true).is_one()) {
      state[id] = true;
    } else if (table.at(c0, c1, false).is_one()) {
      state[id] = false;
    } else {
      throw std::domain_error("evaluate_net: table row of node " + std::to_string(id) +
                              " is not a point mass");
    }
  }
  return state[net.root];
}

struct equivalence_report {
  std::uint64_t checked = 0;
  bool exhaustive = true;
  std::uint64_t mismatches = 0;
  std::vector<assignment> counterexamples; //!< at most max_recorded of them
  static constexpr std::size_t max_recorded = 64;
  bool passed() const { return mismatches == 0; }
};

/*! \brief Compare the BDD and the network on full assignments.
 *
 * Exhaustive over all 2^n assignments while n <= cap, otherwise a seeded
 * uniform sample of sample_count assignments drawn with replacement.
 */
inline equivalence_report check_equivalence(const bdd_manager& m, bdd_ref r,
                                            const bayes_net& net,
                                            unsigned cap = default_exhaustive_cap,
                                            std::uint64_t sample_count = 10000,
                                            std::uint64_t seed = 0) {
  m.check_ref(r);
  if (net.num_vars != m.num_vars()) {
    throw std::invalid_argument("check_equivalence: network arity " +
                                std::to_string(net.num_vars) + " does not match manager arity " +
                                std::to_string(m.num_vars()));
  }
  const unsigned n = m.num_vars();
  equivalence_report report;
  auto probe = [&](std::uint64_t index) {
    assignment x = assignment::from_index(index, n);
    ++report.checked;
    if (m.evaluate(r, x) != evaluate_net(net, x)) {
      ++report.mismatches;
      if (report.counterexamples.size() < equivalence_report::max_recorded) {
        report.counterexamples.push_back(x);
      }
    }
  };
  if (n <= cap) {
    report.exhaustive = true;
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << n); ++k) {
      probe(k);
    }
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, (std::uint64_t(1) << n) - 1);
    for (std::uint64_t k = 0; k < sample_count; ++k) {
      probe(pick(rng));
    }
  }
  return report;
}

/*! \brief P(f = 1) on the BDD itself under independent Bernoulli variables.
 *
 * Memoized over nodes: value(v) = (1 - p_v) value(lo) + p_v value(hi).
 * Levels skipped along an edge need no correction, their two branches
 * marginalize to a factor of one.
 */
inline rational bernoulli_marginal(const bdd_manager& m, bdd_ref r,
                                   const std::vector<rational>& p) {
  m.check_ref(r);
  detail::check_parameters(p, m.num_vars(), "bernoulli_marginal");
  std::unordered_map<bdd_node_id, rational> memo;
  auto value = [&](auto&& self, bdd_node_id id) -> rational {
    if (id == bdd_t0) return rational(0);
    if (id == bdd_t1) return rational(1);
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const bdd_node& nd = m.node(id);
    const rational& pv = p[m.var_at_level(nd.level)];
    rational result = (rational(1) - pv) * self(self, nd.lo) + pv * self(self, nd.hi);
    memo.emplace(id, result);
    return result;
  };
  return value(value, r.id());
}

} // namespace bdd2bn
