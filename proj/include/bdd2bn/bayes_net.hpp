/*!
  \file bayes_net.hpp
  \brief Bayesian networks with deterministic if-then-else CPTs, compiled from BDDs.

  Every internal BDD node becomes an assertion node whose two network
  parents are its low and high conclusions; the arrows therefore run from
  conclusions to the assertion. The node asserts ite(h, c0, c1) where h is
  the tested variable: given h, the conditional table over the parents is a
  point mass on the selected parent's state. Terminals become parentless
  square nodes pinned to 0 or 1, so the compiled network has exactly the
  shape of the BDD with arrows reversed.
*/

#pragma once

#include "bdd.hpp"
#include "rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bdd2bn {

/*! \brief Conditional table P(a | c0, c1) for binary a, c0, c1.
 *
 * Rows are indexed by the parent states packed as (c0 << 1) | c1, so the
 * row order 00, 01, 10, 11 matches the usual column order of the table.
 */
class cpt {
public:
  static unsigned row_index(bool c0, bool c1) { return (unsigned(c0) << 1) | unsigned(c1); }

  const rational& at(bool c0, bool c1, bool a) const {
    return rows_[row_index(c0, c1)][unsigned(a)];
  }
  void set(bool c0, bool c1, bool a, rational value) {
    rows_[row_index(c0, c1)][unsigned(a)] = std::move(value);
  }
  const std::array<rational, 2>& row(unsigned r) const { return rows_.at(r); }

  /*! \brief All entries 0 or 1 (each row is then a point mass iff it sums to one). */
  bool deterministic() const {
    for (const auto& row : rows_) {
      for (const auto& p : row) {
        if (!p.is_zero() && !p.is_one()) return false;
      }
    }
    return true;
  }

  bool rows_sum_to_one() const {
    for (const auto& row : rows_) {
      if (!(row[0] + row[1]).is_one()) return false;
    }
    return true;
  }

  friend bool operator==(const cpt&, const cpt&) = default;

private:
  std::array<std::array<rational, 2>, 4> rows_{};
};

/*! \brief The table of a = ite(h, c0, c1) for a fixed hypothesis value.
 *
 * P(a = 1 | c0, c1) across the rows 00, 01, 10, 11 comes out as
 * 0,0,1,1 for h = 0 (a copies c0) and 0,1,0,1 for h = 1 (a copies c1).
 */
inline cpt ite_cpt(bool h) {
  cpt table;
  for (bool c0 : {false, true}) {
    for (bool c1 : {false, true}) {
      bool a = ite(h, c0, c1);
      table.set(c0, c1, a, rational(1));
      table.set(c0, c1, !a, rational(0));
    }
  }
  return table;
}

using bn_id = std::uint32_t;

enum class bn_kind { ite, square };

/*! \brief One network node.
 *
 * kind == ite: param is the hypothesis variable ordinal, parents holds
 * the conclusion node ids [c0, c1], tables[h] is the conditional table
 * when the hypothesis takes value h. kind == square: value pins the node
 * to a constant state and the other fields are unused.
 */
struct bn_node {
  bn_id id = 0;
  bn_kind kind = bn_kind::square;
  unsigned states = 2;
  unsigned param = 0;
  bool value = false;
  std::vector<bn_id> parents;
  std::array<cpt, 2> tables;
};

inline bn_node square_node(bn_id id, bool value) {
  bn_node node;
  node.id = id;
  node.kind = bn_kind::square;
  node.value = value;
  return node;
}

inline bn_node ite_node(bn_id id, unsigned param, bn_id c0, bn_id c1) {
  bn_node node;
  node.id = id;
  node.kind = bn_kind::ite;
  node.param = param;
  node.parents = {c0, c1};
  node.tables = {ite_cpt(false), ite_cpt(true)};
  return node;
}

struct bayes_net {
  unsigned num_vars = 0;
  bn_id root = 0;
  std::vector<bn_node> nodes;
};

/*! \brief Compile the BDD rooted at r into its Bayesian network.
 *
 * Reachable BDD nodes are renumbered densely in ascending id order, which
 * also yields a topological order with parents before children. Internal
 * nodes map to ite nodes, reachable terminals to squares; a terminal root
 * compiles to a network with a single square node.
 */
inline bayes_net compile(const bdd_manager& m, bdd_ref r) {
  m.check_ref(r);
  std::vector<bdd_node_id> ids = m.reachable(r);
  std::unordered_map<bdd_node_id, bn_id> renumber;
  renumber.reserve(ids.size());
  for (bdd_node_id id : ids) {
    renumber.emplace(id, static_cast<bn_id>(renumber.size()));
  }

  bayes_net net;
  net.num_vars = m.num_vars();
  net.root = renumber.at(r.id());
  net.nodes.reserve(ids.size());
  for (bdd_node_id id : ids) {
    bn_id bid = renumber.at(id);
    if (m.is_terminal(id)) {
      net.nodes.push_back(square_node(bid, id == bdd_t1));
    } else {
      const bdd_node& nd = m.node(id);
      net.nodes.push_back(ite_node(bid, m.var_at_level(nd.level), renumber.at(nd.lo),
                                   renumber.at(nd.hi)));
    }
  }
  return net;
}

/*! \brief The structural properties a BDD-compiled network must satisfy. */
enum class violation_category {
  node_states,              //!< every node binary
  entering_arrows,          //!< two per assertion node, none per square
  transition_probabilities, //!< all tables deterministic point masses
  top_nodes,                //!< exactly one node without outgoing arrows: the root
  bottom_nodes,             //!< exactly two squares, pinned to distinct values
};

inline const char* to_string(violation_category c) {
  switch (c) {
    case violation_category::node_states: return "node_states";
    case violation_category::entering_arrows: return "entering_arrows";
    case violation_category::transition_probabilities: return "transition_probabilities";
    case violation_category::top_nodes: return "top_nodes";
    case violation_category::bottom_nodes: return "bottom_nodes";
  }
  return "unknown";
}

struct violation {
  violation_category category;
  std::optional<bn_id> node;
  std::string message;
};

struct validation_result {
  std::vector<violation> violations;
  std::optional<std::string> note;
  bool passed() const { return violations.empty(); }
};

namespace detail {

inline void check_well_formed(const bayes_net& net) {
  if (net.nodes.empty()) {
    throw std::invalid_argument("network has no nodes");
  }
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    if (net.nodes[i].id != i) {
      throw std::invalid_argument("node ids must be dense and in position");
    }
    for (bn_id p : net.nodes[i].parents) {
      if (p >= net.nodes.size()) {
        throw std::invalid_argument("parent id out of range");
      }
    }
  }
  if (net.root >= net.nodes.size()) {
    throw std::invalid_argument("root id out of range");
  }
}

} // namespace detail

/*! \brief Check the five structural properties of a compiled network.
 *
 * A constant function compiles to a single square that is simultaneously
 * the top and the only bottom node; that degenerate shape passes with an
 * explanatory note instead of top/bottom violations.
 */
inline validation_result validate_bdd_shape(const bayes_net& net) {
  detail::check_well_formed(net);
  validation_result result;
  auto report = [&](violation_category c, std::optional<bn_id> node, std::string message) {
    result.violations.push_back({c, node, std::move(message)});
  };

  bool degenerate = net.nodes.size() == 1 && net.nodes[0].kind == bn_kind::square;

  std::vector<unsigned> outgoing(net.nodes.size(), 0);
  for (const bn_node& node : net.nodes) {
    if (node.states != 2) {
      report(violation_category::node_states, node.id,
             "node has " + std::to_string(node.states) + " states, expected 2");
    }
    unsigned expected_parents = node.kind == bn_kind::ite ? 2 : 0;
    if (node.parents.size() != expected_parents) {
      report(violation_category::entering_arrows, node.id,
             "node has " + std::to_string(node.parents.size()) + " entering arrows, expected " +
                 std::to_string(expected_parents));
    }
    for (bn_id p : node.parents) {
      ++outgoing[p];
    }
    if (node.kind == bn_kind::ite) {
      for (bool h : {false, true}) {
        const cpt& table = node.tables[unsigned(h)];
        if (!table.deterministic() || !table.rows_sum_to_one()) {
          report(violation_category::transition_probabilities, node.id,
                 std::string("table for hypothesis value ") + (h ? "1" : "0") +
                     " is not a deterministic point mass per row");
        }
      }
    }
  }

  std::vector<bn_id> tops;
  std::vector<bn_id> bottoms;
  for (const bn_node& node : net.nodes) {
    if (outgoing[node.id] == 0) tops.push_back(node.id);
    if (node.parents.empty()) bottoms.push_back(node.id);
  }

  if (degenerate) {
    result.note = "constant network: a single square node serves as both the top node "
                  "and the only bottom node";
    return result;
  }

  if (tops.size() != 1) {
    report(violation_category::top_nodes, std::nullopt,
           "expected exactly 1 top node, found " + std::to_string(tops.size()));
  } else if (tops[0] != net.root) {
    report(violation_category::top_nodes, tops[0], "top node is not the declared root");
  }

  if (bottoms.size() != 2) {
    report(violation_category::bottom_nodes, std::nullopt,
           "expected exactly 2 bottom nodes, found " + std::to_string(bottoms.size()));
  } else {
    const bn_node& a = net.nodes[bottoms[0]];
    const bn_node& b = net.nodes[bottoms[1]];
    if (a.kind != bn_kind::square || b.kind != bn_kind::square) {
      report(violation_category::bottom_nodes, std::nullopt, "bottom nodes must be squares");
    } else if (a.value == b.value) {
      report(violation_category::bottom_nodes, std::nullopt,
             "bottom squares must be pinned to distinct values");
    }
  }
  return result;
}

/*! \brief Graphviz export; arrows run from conclusions to the assertion,
 * dashed from the low conclusion, solid from the high one. */
inline std::string to_dot(const bayes_net& net) {
  std::ostringstream os;
  os << "digraph bnet {\n";
  for (const bn_node& node : net.nodes) {
    if (node.kind == bn_kind::square) {
      os << "  n" << node.id << " [shape=box, label=\"" << (node.value ? 1 : 0) << "\"];\n";
    } else {
      os << "  n" << node.id << " [label=\"x" << node.param + 1 << " ⇒\"];\n";
      os << "  n" << node.parents[0] << " -> n" << node.id << " [style=dashed];\n";
      os << "  n" << node.parents[1] << " -> n" << node.id << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

} // namespace bdd2bn
