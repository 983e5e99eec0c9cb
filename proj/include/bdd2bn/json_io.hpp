/*!
  \file json_io.hpp
  \brief JSON serialization of BDDs, networks, validation results, and
  equivalence reports.

  Output ordering is deterministic (node ids ascending, fixed key order) so
  serialized artifacts are byte-stable and diff-able. Probabilities are
  written as plain integers when integral and as "num/den" strings
  otherwise; the loader additionally accepts floating-point literals,
  which convert exactly since doubles are dyadic rationals.
*/

#pragma once

#include "inference.hpp"

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

namespace bdd2bn {

using json = nlohmann::ordered_json;

/*! \brief {order, nodes, root}; nodes lists internal nodes only, ids ascending. */
inline json bdd_to_json(const bdd_manager& m, bdd_ref r) {
  m.check_ref(r);
  json nodes = json::array();
  for (bdd_node_id id : m.reachable(r)) {
    if (m.is_terminal(id)) continue;
    const bdd_node& nd = m.node(id);
    nodes.push_back({{"id", id}, {"var", m.var_at_level(nd.level)}, {"lo", nd.lo}, {"hi", nd.hi}});
  }
  return json{{"order", m.order()}, {"nodes", std::move(nodes)}, {"root", r.id()}};
}

namespace detail {

inline json rational_to_json(const rational& q) {
  if (q.is_integer() && q.numerator() >= std::numeric_limits<std::int64_t>::min() &&
      q.numerator() <= std::numeric_limits<std::int64_t>::max()) {
    return json(static_cast<std::int64_t>(q.numerator()));
  }
  return json(q.to_string());
}

inline rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return rational(j.get<std::int64_t>());
  if (j.is_number_float()) return rational::from_double(j.get<double>());
  if (j.is_string()) return rational::from_string(j.get<std::string>());
  throw std::invalid_argument("expected a probability as integer, float, or string, got " +
                              j.dump());
}

inline json cpt_to_json(const cpt& table) {
  json rows = json::array();
  for (unsigned r = 0; r < 4; ++r) {
    rows.push_back({rational_to_json(table.row(r)[0]), rational_to_json(table.row(r)[1])});
  }
  return rows;
}

inline cpt cpt_from_json(const json& rows) {
  if (!rows.is_array() || rows.size() != 4) {
    throw std::invalid_argument("cpt must be an array of 4 rows");
  }
  cpt table;
  for (unsigned r = 0; r < 4; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != 2) {
      throw std::invalid_argument("cpt row must hold 2 entries");
    }
    bool c0 = (r >> 1) & 1u;
    bool c1 = r & 1u;
    table.set(c0, c1, false, rational_from_json(row[0]));
    table.set(c0, c1, true, rational_from_json(row[1]));
  }
  return table;
}

} // namespace detail

inline json bayes_net_to_json(const bayes_net& net) {
  json nodes = json::array();
  for (const bn_node& node : net.nodes) {
    json entry{{"id", node.id}};
    if (node.kind == bn_kind::square) {
      entry["kind"] = "square";
      entry["value"] = node.value ? 1 : 0;
    } else {
      entry["kind"] = "ite";
      entry["param"] = node.param;
      entry["parents"] = {node.parents[0], node.parents[1]};
      entry["cpt"] = {{"h0", detail::cpt_to_json(node.tables[0])},
                      {"h1", detail::cpt_to_json(node.tables[1])}};
    }
    nodes.push_back(std::move(entry));
  }
  return json{{"n", net.num_vars}, {"root", net.root}, {"nodes", std::move(nodes)}};
}

inline bayes_net bayes_net_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("root") || !j.contains("nodes")) {
    throw std::invalid_argument("network json must carry n, root, and nodes");
  }
  bayes_net net;
  net.num_vars = j.at("n").get<unsigned>();
  net.root = j.at("root").get<bn_id>();
  for (const json& entry : j.at("nodes")) {
    bn_node node;
    node.id = entry.at("id").get<bn_id>();
    std::string kind = entry.at("kind").get<std::string>();
    if (kind == "square") {
      node.kind = bn_kind::square;
      node.value = entry.at("value").get<int>() != 0;
    } else if (kind == "ite") {
      node.kind = bn_kind::ite;
      node.param = entry.at("param").get<unsigned>();
      const json& parents = entry.at("parents");
      if (!parents.is_array() || parents.size() != 2) {
        throw std::invalid_argument("ite node must list parents [c0, c1]");
      }
      node.parents = {parents[0].get<bn_id>(), parents[1].get<bn_id>()};
      const json& tables = entry.at("cpt");
      node.tables[0] = detail::cpt_from_json(tables.at("h0"));
      node.tables[1] = detail::cpt_from_json(tables.at("h1"));
    } else {
      throw std::invalid_argument("unknown node kind \"" + kind + "\"");
    }
    net.nodes.push_back(std::move(node));
  }
  detail::check_well_formed(net);
  return net;
}

/*! \brief {checked, mode, counterexamples}; assignments as 0/1 arrays x1..xn. */
inline json equivalence_report_to_json(const equivalence_report& report) {
  json examples = json::array();
  for (const assignment& x : report.counterexamples) {
    json bits = json::array();
    for (unsigned v = 0; v < x.arity(); ++v) {
      bits.push_back(x[v] ? 1 : 0);
    }
    examples.push_back(std::move(bits));
  }
  return json{{"checked", report.checked},
              {"mode", report.exhaustive ? "exhaustive" : "sampled"},
              {"counterexamples", std::move(examples)}};
}

inline json validation_to_json(const validation_result& result) {
  json violations = json::array();
  for (const violation& v : result.violations) {
    json entry{{"category", to_string(v.category)}, {"message", v.message}};
    if (v.node) entry["node"] = *v.node;
    violations.push_back(std::move(entry));
  }
  json out{{"passed", result.passed()}, {"violations", std::move(violations)}};
  if (result.note) out["note"] = *result.note;
  return out;
}

} // namespace bdd2bn
