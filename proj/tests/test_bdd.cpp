#include <bdd2bn/bdd.hpp>

#include <bdd2bn/decision_tree.hpp>

#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

using namespace bdd2bn;

namespace {
const expr worked_example = parse("(x1|x2)&x3");

/*! No duplicate (level, lo, hi) triples and no redundant tests anywhere. */
void check_reduced(const bdd_manager& m) {
  std::set<std::tuple<unsigned, bdd_node_id, bdd_node_id>> triples;
  for (bdd_node_id id = 2; id < m.arena_size(); ++id) {
    const bdd_node& nd = m.node(id);
    CHECK(nd.lo != nd.hi);
    CHECK(triples.emplace(nd.level, nd.lo, nd.hi).second);
    CHECK(nd.level < m.node(nd.lo).level);
    CHECK(nd.level < m.node(nd.hi).level);
  }
}
} // namespace

TEST_CASE("worked example reduces to 3 internal nodes") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);

  bdd_node_counts counts = m.node_count(r);
  CHECK(counts.internal == 3);
  CHECK(counts.total == 5);

  // root tests x1; low goes to the x2 node, high to the x3 node
  const bdd_node& root = m.node(r.id());
  CHECK(m.var_at_level(root.level) == 0);
  const bdd_node& low = m.node(root.lo);
  const bdd_node& high = m.node(root.hi);
  CHECK(m.var_at_level(low.level) == 1);
  CHECK(m.var_at_level(high.level) == 2);
  // the x2 node drops to terminal 0 on low and shares the x3 node on high
  CHECK(low.lo == bdd_t0);
  CHECK(low.hi == root.hi);
  // the x3 node tests the last variable
  CHECK(high.lo == bdd_t0);
  CHECK(high.hi == bdd_t1);

  check_reduced(m);
}

TEST_CASE("constants map to the terminals") {
  bdd_manager m(2);
  CHECK(m.from_expr(expr::constant(false)).id() == bdd_t0);
  CHECK(m.from_expr(expr::constant(true)).id() == bdd_t1);
  CHECK(m.node_count(m.from_expr(expr::constant(false))).internal == 0);
  CHECK(m.node_count(m.terminal(false)).total == 1);
  CHECK(m.node_count(m.from_expr(parse("x1"))).internal == 1);
  CHECK(m.node_count(m.from_expr(parse("x1"))).total == 3);
  // a contradiction reduces to terminal 0 as well
  CHECK(m.from_expr(parse("x1&!x1")).id() == bdd_t0);
  CHECK(m.from_expr(parse("x1|!x1")).id() == bdd_t1);
  // terminals evaluate to their value under any assignment
  CHECK(m.evaluate(m.terminal(true), assignment::from_index(2, 2)));
  CHECK_FALSE(m.evaluate(m.terminal(false), assignment::from_index(2, 2)));
}

TEST_CASE("semantically equal expressions share one node id") {
  bdd_manager m(3);
  CHECK(equal(m.from_expr(parse("x1&x2")), m.from_expr(parse("x2&x1"))));
  CHECK(equal(m.from_expr(parse("x1|x2")), m.from_expr(parse("x2|x1"))));
  CHECK(equal(m.from_expr(parse("(x1|x2)&x3")), m.from_expr(parse("x1&x3|x2&x3"))));
  CHECK(equal(m.from_expr(parse("!(x1&x2)")), m.from_expr(parse("!x1|!x2"))));
  CHECK(equal(m.from_expr(parse("x1")), m.from_expr(parse("!!x1"))));
  CHECK(equal(m.from_expr(parse("x1 ? x2 : x3")), m.from_expr(parse("!x1&x3 | x1&x2"))));
  CHECK_FALSE(equal(m.from_expr(parse("x1")), m.from_expr(parse("x2"))));
  CHECK_FALSE(equal(m.terminal(false), m.terminal(true)));
}

TEST_CASE("evaluate agrees with eval on random expressions") {
  std::mt19937_64 rng(92);
  for (int i = 0; i < 60; ++i) {
    unsigned n = std::uniform_int_distribution<unsigned>(1, 6)(rng);
    bdd_manager m(n);
    expr f = support::random_expr(rng, n, 4);
    bdd_ref r = m.from_expr(f);
    for (std::uint64_t k = 0; k < (std::uint64_t(1) << n); ++k) {
      assignment x = assignment::from_index(k, n);
      CHECK(m.evaluate(r, x) == eval(f, x));
    }
    check_reduced(m);
  }
}

TEST_CASE("sat_count matches the truth-table popcount") {
  bdd_manager m3(3);
  CHECK(m3.sat_count(m3.from_expr(worked_example)) == 3);
  // skipped levels count double: x3 alone has 4 satisfying assignments in Bool^3
  CHECK(m3.sat_count(m3.from_expr(parse("x3"))) == 4);
  CHECK(m3.sat_count(m3.from_expr(parse("x1"))) == 4);
  CHECK(m3.sat_count(m3.terminal(true)) == 8);
  CHECK(m3.sat_count(m3.terminal(false)) == 0);
  bdd_manager m2(2);
  CHECK(m2.sat_count(m2.from_expr(parse("x1"))) == 2);

  std::mt19937_64 rng(93);
  for (int i = 0; i < 40; ++i) {
    unsigned n = std::uniform_int_distribution<unsigned>(1, 6)(rng);
    bdd_manager m(n);
    expr f = support::random_expr(rng, n, 4);
    std::uint64_t expected = 0;
    for (bool bit : truth_table(f, n)) expected += bit ? 1 : 0;
    CHECK(m.sat_count(m.from_expr(f)) == expected);
  }
}

TEST_CASE("a custom order changes structure but not the function") {
  bdd_manager forward(3, {0, 1, 2});
  bdd_manager backward(3, {2, 1, 0});
  bdd_ref rf = forward.from_expr(worked_example);
  bdd_ref rb = backward.from_expr(worked_example);
  for (std::uint64_t k = 0; k < 8; ++k) {
    assignment x = assignment::from_index(k, 3);
    CHECK(forward.evaluate(rf, x) == eval(worked_example, x));
    CHECK(backward.evaluate(rb, x) == eval(worked_example, x));
  }
  // under x3 first, (x1|x2)&x3 needs only 3 internal nodes as well
  CHECK(backward.node_count(rb).internal == 3);
  CHECK(backward.sat_count(rb) == 3);
  check_reduced(backward);
}

TEST_CASE("order must be a permutation") {
  CHECK_THROWS_AS(bdd_manager(3, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bdd_manager(3, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(bdd_manager(3, {0, 1, 3}), std::invalid_argument);
}

TEST_CASE("manager guards") {
  CHECK_THROWS_AS(bdd_manager(8, 6), std::length_error);  // above the cap
  CHECK_THROWS_AS(bdd_manager(31, 40), std::length_error); // above the hard bound
  bdd_manager m(2);
  CHECK_THROWS_AS(m.from_expr(parse("x3")), std::out_of_range);
  bdd_ref r = m.from_expr(parse("x1"));
  CHECK_THROWS_AS(m.evaluate(r, assignment::from_index(0, 3)), std::invalid_argument);
}

TEST_CASE("refs from different managers do not mix") {
  bdd_manager a(2);
  bdd_manager b(2);
  bdd_ref ra = a.from_expr(parse("x1"));
  bdd_ref rb = b.from_expr(parse("x1"));
  CHECK_THROWS_AS(equal(ra, rb), std::invalid_argument);
  CHECK_THROWS_AS(b.evaluate(ra, assignment::from_index(0, 2)), std::invalid_argument);
}

TEST_CASE("reachable is ascending and closed under children") {
  bdd_manager m(3);
  bdd_ref r = m.from_expr(worked_example);
  std::vector<bdd_node_id> ids = m.reachable(r);
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  CHECK(ids.size() == 5);
  for (bdd_node_id id : ids) {
    if (m.is_terminal(id)) continue;
    CHECK(std::count(ids.begin(), ids.end(), m.node(id).lo) == 1);
    CHECK(std::count(ids.begin(), ids.end(), m.node(id).hi) == 1);
  }
}

TEST_CASE("the reduced BDD never has more nodes than the decision tree") {
  std::mt19937_64 rng(94);
  for (int i = 0; i < 40; ++i) {
    unsigned n = std::uniform_int_distribution<unsigned>(1, 6)(rng);
    bdd_manager m(n);
    expr f = support::random_expr(rng, n, 4);
    CHECK(m.node_count(m.from_expr(f)).total <= build_tree(f, n).node_count());
  }
}

TEST_CASE("dot export names variables and styles edges") {
  bdd_manager m(3);
  std::string dot = m.to_dot(m.from_expr(worked_example));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("x1") != std::string::npos);
  CHECK(dot.find("x3") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}
