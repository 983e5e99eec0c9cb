#include <bdd2bn/json_io.hpp>

#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace bdd2bn;

namespace {
const expr worked_example = parse("(x1|x2)&x3");
}

TEST_CASE("bdd json lists internal nodes ascending with the order and root") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);
  json j = bdd_to_json(m, r);

  CHECK(j.at("order") == json::array({0, 1, 2}));
  CHECK(j.at("root").get<bdd_node_id>() == r.id());
  REQUIRE(j.at("nodes").size() == 3);
  bdd_node_id previous = 0;
  for (const json& node : j.at("nodes")) {
    CHECK(node.contains("id"));
    CHECK(node.contains("var"));
    CHECK(node.contains("lo"));
    CHECK(node.contains("hi"));
    CHECK(node.at("id").get<bdd_node_id>() > previous);
    previous = node.at("id").get<bdd_node_id>();
  }
  // the root node tests x1 (ordinal 0)
  CHECK(j.at("nodes").back().at("var").get<unsigned>() == 0);
}

TEST_CASE("terminal bdds serialize with an empty node list") {
  bdd_manager m(2);
  json j = bdd_to_json(m, m.from_expr(expr::constant(true)));
  CHECK(j.at("nodes").empty());
  CHECK(j.at("root").get<bdd_node_id>() == bdd_t1);
}

TEST_CASE("network json round-trips losslessly") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);
  bayes_net net = compile(m, r);

  json j = bayes_net_to_json(net);
  CHECK(j.at("n").get<unsigned>() == 3);
  CHECK(j.at("root").get<bn_id>() == net.root);
  REQUIRE(j.at("nodes").size() == net.nodes.size());

  bayes_net loaded = bayes_net_from_json(j);
  CHECK(loaded.num_vars == net.num_vars);
  CHECK(loaded.root == net.root);
  REQUIRE(loaded.nodes.size() == net.nodes.size());
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    CHECK(loaded.nodes[i].kind == net.nodes[i].kind);
    CHECK(loaded.nodes[i].param == net.nodes[i].param);
    CHECK(loaded.nodes[i].value == net.nodes[i].value);
    CHECK(loaded.nodes[i].parents == net.nodes[i].parents);
    CHECK(loaded.nodes[i].tables[0] == net.nodes[i].tables[0]);
    CHECK(loaded.nodes[i].tables[1] == net.nodes[i].tables[1]);
  }

  // identical verdict and identical inference results after the round trip
  CHECK(validate_bdd_shape(loaded).passed() == validate_bdd_shape(net).passed());
  for (std::uint64_t k = 0; k < 8; ++k) {
    assignment x = assignment::from_index(k, 3);
    CHECK(evaluate_net(loaded, x) == evaluate_net(net, x));
  }
  std::vector<rational> p{rational(1, 3), rational(2, 3), rational(1, 7)};
  CHECK(node_marginals(loaded, p) == node_marginals(net, p));
}

TEST_CASE("serialization is byte-stable") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);
  CHECK(bayes_net_to_json(compile(m, r)).dump() == bayes_net_to_json(compile(m, r)).dump());
  CHECK(bdd_to_json(m, r).dump() == bdd_to_json(m, r).dump());
}

TEST_CASE("probabilities load from integers, floats, and strings") {
  CHECK(detail::rational_from_json(json(1)) == rational(1));
  CHECK(detail::rational_from_json(json(0.5)) == rational(1, 2));
  CHECK(detail::rational_from_json(json("3/8")) == rational(3, 8));
  CHECK(detail::rational_from_json(json("0.25")) == rational(1, 4));
  CHECK_THROWS_AS(detail::rational_from_json(json::array()), std::invalid_argument);

  CHECK(detail::rational_to_json(rational(1)) == json(1));
  CHECK(detail::rational_to_json(rational(3, 8)) == json("3/8"));
}

TEST_CASE("malformed network json is rejected") {
  CHECK_THROWS_AS(bayes_net_from_json(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(bayes_net_from_json(json{{"n", 1}}), std::invalid_argument);

  json good = bayes_net_to_json([] {
    bdd_manager m(2);
    return compile(m, m.from_expr(parse("x1&x2")));
  }());
  REQUIRE_NOTHROW(bayes_net_from_json(good));

  json bad_kind = good;
  bad_kind["nodes"][0]["kind"] = "circle";
  CHECK_THROWS_AS(bayes_net_from_json(bad_kind), std::invalid_argument);

  json bad_parents = good;
  bad_parents["nodes"][2]["parents"] = json::array({0});
  CHECK_THROWS_AS(bayes_net_from_json(bad_parents), std::invalid_argument);

  json bad_cpt = good;
  bad_cpt["nodes"][2]["cpt"]["h0"] = json::array({json::array({1, 0})});
  CHECK_THROWS_AS(bayes_net_from_json(bad_cpt), std::invalid_argument);
}

TEST_CASE("equivalence reports serialize checked, mode, and counterexamples") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);
  bayes_net net = compile(m, r);

  json ok = equivalence_report_to_json(check_equivalence(m, r, net));
  CHECK(ok.at("checked").get<std::uint64_t>() == 8);
  CHECK(ok.at("mode").get<std::string>() == "exhaustive");
  CHECK(ok.at("counterexamples").empty());

  std::swap(net.nodes[net.root].parents[0], net.nodes[net.root].parents[1]);
  json bad = equivalence_report_to_json(check_equivalence(m, r, net));
  REQUIRE_FALSE(bad.at("counterexamples").empty());
  CHECK(bad.at("counterexamples")[0].size() == 3);

  json sampled = equivalence_report_to_json(check_equivalence(m, r, net, 2, 100, 1));
  CHECK(sampled.at("mode").get<std::string>() == "sampled");
  CHECK(sampled.at("checked").get<std::uint64_t>() == 100);
}

TEST_CASE("validation results serialize verdict, violations, and note") {
  bdd_manager m(3);
  bayes_net net = compile(m, m.from_expr(worked_example));
  json ok = validation_to_json(validate_bdd_shape(net));
  CHECK(ok.at("passed").get<bool>());
  CHECK(ok.at("violations").empty());
  CHECK_FALSE(ok.contains("note"));

  net.nodes[2].states = 3;
  json bad = validation_to_json(validate_bdd_shape(net));
  CHECK_FALSE(bad.at("passed").get<bool>());
  REQUIRE_FALSE(bad.at("violations").empty());
  CHECK(bad.at("violations")[0].at("category").get<std::string>() == "node_states");

  bdd_manager m1(1);
  json degenerate = validation_to_json(validate_bdd_shape(compile(m1, m1.terminal(false))));
  CHECK(degenerate.at("passed").get<bool>());
  CHECK(degenerate.contains("note"));
}
