/*!
  \file bdd.hpp
  \brief Hash-consed reduced ordered BDD manager.

  Construction is top-down cofactor recursion over the function's truth
  table, memoized on the cofactor's table fingerprint, with a make-node
  step that applies both reduction rules (merge duplicate (level, lo, hi)
  triples, never allocate a node with lo == hi). Node ids are dense with
  the two terminals reserved at 0 and 1, so structurally equal functions
  always come back as the same id.
*/

#pragma once

#include "expr.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bdd2bn {

using bdd_node_id = std::uint32_t;

inline constexpr bdd_node_id bdd_t0 = 0; //!< terminal 0
inline constexpr bdd_node_id bdd_t1 = 1; //!< terminal 1

/*! \brief Arena entry. Terminals carry level == num_vars and self loops. */
struct bdd_node {
  unsigned level;
  bdd_node_id lo;
  bdd_node_id hi;
};

struct bdd_node_counts {
  std::uint64_t internal = 0;
  std::uint64_t total = 0; //!< internal plus reachable terminals
};

class bdd_manager;

/*! \brief Handle to a node inside one manager; never mix managers. */
class bdd_ref {
public:
  bdd_node_id id() const { return id_; }
  const bdd_manager* manager() const { return mgr_; }
  friend bool operator==(const bdd_ref&, const bdd_ref&) = default;

private:
  friend class bdd_manager;
  bdd_ref(const bdd_manager* mgr, bdd_node_id id) : mgr_(mgr), id_(id) {}

  const bdd_manager* mgr_;
  bdd_node_id id_;
};

namespace detail {

struct table_key_hash {
  std::size_t operator()(const std::vector<std::uint64_t>& words) const {
    std::size_t seed = words.size();
    for (std::uint64_t w : words) {
      seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

struct triple_hash {
  std::size_t operator()(const std::array<std::uint32_t, 3>& t) const {
    std::size_t seed = 0;
    for (std::uint32_t v : t) {
      seed ^= std::hash<std::uint32_t>{}(v) + 0x9e3779b9 + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

} // namespace detail

class bdd_manager {
public:
  /*! \brief Hard bound on the arity a manager accepts, independent of the cap. */
  static constexpr unsigned max_vars = 30;

  explicit bdd_manager(unsigned num_vars, unsigned cap = default_exhaustive_cap)
      : bdd_manager(num_vars, identity_order(num_vars), cap) {}

  /*! \brief `order[level]` is the variable ordinal tested at that level;
   * it must be a permutation of 0..num_vars-1. */
  bdd_manager(unsigned num_vars, std::vector<unsigned> order,
              unsigned cap = default_exhaustive_cap)
      : n_(num_vars), cap_(cap), var_at_level_(std::move(order)) {
    if (n_ > cap_ || n_ > max_vars) {
      throw std::length_error("bdd_manager: arity " + std::to_string(n_) +
                              " exceeds the exhaustive cap " +
                              std::to_string(std::min<unsigned>(cap_, max_vars)));
    }
    if (var_at_level_.size() != n_) {
      throw std::invalid_argument("bdd_manager: order must list all " + std::to_string(n_) +
                                  " variables");
    }
    level_of_var_.assign(n_, n_);
    for (unsigned level = 0; level < n_; ++level) {
      unsigned v = var_at_level_[level];
      if (v >= n_ || level_of_var_[v] != n_) {
        throw std::invalid_argument("bdd_manager: order is not a permutation of 0.." +
                                    std::to_string(n_ - 1));
      }
      level_of_var_[v] = level;
    }
    nodes_.push_back({n_, bdd_t0, bdd_t0});
    nodes_.push_back({n_, bdd_t1, bdd_t1});
  }

  bdd_manager(const bdd_manager&) = delete;
  bdd_manager& operator=(const bdd_manager&) = delete;

  unsigned num_vars() const { return n_; }
  unsigned cap() const { return cap_; }
  const std::vector<unsigned>& order() const { return var_at_level_; }
  unsigned var_at_level(unsigned level) const { return var_at_level_.at(level); }
  unsigned level_of(unsigned var) const { return level_of_var_.at(var); }

  bdd_ref terminal(bool value) const { return bdd_ref(this, value ? bdd_t1 : bdd_t0); }

  bool is_terminal(bdd_node_id id) const { return id <= bdd_t1; }
  const bdd_node& node(bdd_node_id id) const { return nodes_.at(id); }
  std::size_t arena_size() const { return nodes_.size(); }

  /*! \brief Canonical ROBDD of f under this manager's order.
   *
   * Recursive Shannon expansion over the truth table of f: level by level
   * the table is split into the low and high cofactor halves, identical
   * cofactors are merged through a fingerprint memo, and make_node applies
   * the two reduction rules. Semantically equal expressions return the
   * identical node id, also across calls.
   */
  bdd_ref from_expr(const expr& f) {
    if (min_arity(f) > n_) {
      throw std::out_of_range("from_expr: expression mentions x" +
                              std::to_string(min_arity(f)) + " but manager arity is " +
                              std::to_string(n_));
    }
    // Truth table in level order: the bit for level l (level 0 the most
    // significant) gives the value of variable var_at_level(l).
    const std::uint64_t size = std::uint64_t(1) << n_;
    std::vector<bool> table(size);
    assignment x{std::vector<bool>(n_)};
    for (std::uint64_t k = 0; k < size; ++k) {
      for (unsigned level = 0; level < n_; ++level) {
        x.set(var_at_level_[level], (k >> (n_ - 1 - level)) & 1u);
      }
      table[k] = eval(f, x);
    }
    std::unordered_map<std::vector<std::uint64_t>, bdd_node_id, detail::table_key_hash> memo;
    return bdd_ref(this, build(table, 0, size, 0, memo));
  }

  /*! \brief Follows low/high edges by x at each level; returns the terminal. */
  bool evaluate(bdd_ref r, const assignment& x) const {
    check_ref(r);
    if (x.arity() != n_) {
      throw std::invalid_argument("evaluate: assignment arity " + std::to_string(x.arity()) +
                                  " does not match manager arity " + std::to_string(n_));
    }
    bdd_node_id id = r.id();
    while (!is_terminal(id)) {
      const bdd_node& nd = nodes_[id];
      id = x[var_at_level_[nd.level]] ? nd.hi : nd.lo;
    }
    return id == bdd_t1;
  }

  /*! \brief Distinct reachable nodes; total includes reachable terminals. */
  bdd_node_counts node_count(bdd_ref r) const {
    check_ref(r);
    bdd_node_counts counts;
    for (bdd_node_id id : reachable(r)) {
      ++counts.total;
      if (!is_terminal(id)) ++counts.internal;
    }
    return counts;
  }

  /*! \brief Number of assignments in Bool^n mapped to 1.
   *
   * Levels skipped along an edge contribute a factor of 2 each.
   */
  std::uint64_t sat_count(bdd_ref r) const {
    check_ref(r);
    std::unordered_map<bdd_node_id, std::uint64_t> memo;
    // counts over the levels below (and including) the node's own level
    auto count = [&](auto&& self, bdd_node_id id) -> std::uint64_t {
      if (id == bdd_t0) return 0;
      if (id == bdd_t1) return 1;
      if (auto it = memo.find(id); it != memo.end()) return it->second;
      const bdd_node& nd = nodes_[id];
      std::uint64_t lo = self(self, nd.lo) << (nodes_[nd.lo].level - nd.level - 1);
      std::uint64_t hi = self(self, nd.hi) << (nodes_[nd.hi].level - nd.level - 1);
      std::uint64_t result = lo + hi;
      memo.emplace(id, result);
      return result;
    };
    return count(count, r.id()) << nodes_[r.id()].level;
  }

  /*! \brief Reachable node ids in ascending order (terminals first). */
  std::vector<bdd_node_id> reachable(bdd_ref r) const {
    check_ref(r);
    std::unordered_set<bdd_node_id> seen;
    std::vector<bdd_node_id> stack{r.id()};
    while (!stack.empty()) {
      bdd_node_id id = stack.back();
      stack.pop_back();
      if (!seen.insert(id).second) continue;
      if (!is_terminal(id)) {
        stack.push_back(nodes_[id].lo);
        stack.push_back(nodes_[id].hi);
      }
    }
    std::vector<bdd_node_id> ids(seen.begin(), seen.end());
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  /*! \brief Graphviz export: round nodes for variables, square terminals,
   * dashed low edge, solid high edge. */
  std::string to_dot(bdd_ref r) const {
    check_ref(r);
    std::ostringstream os;
    os << "digraph bdd {\n";
    for (bdd_node_id id : reachable(r)) {
      if (is_terminal(id)) {
        os << "  n" << id << " [shape=box, label=\"" << (id == bdd_t1 ? 1 : 0) << "\"];\n";
      } else {
        const bdd_node& nd = nodes_[id];
        os << "  n" << id << " [label=\"x" << var_at_level_[nd.level] + 1 << "\"];\n";
        os << "  n" << id << " -> n" << nd.lo << " [style=dashed];\n";
        os << "  n" << id << " -> n" << nd.hi << ";\n";
      }
    }
    os << "}\n";
    return os.str();
  }

  void check_ref(bdd_ref r) const {
    if (r.manager() != this) {
      throw std::invalid_argument("bdd_ref belongs to a different manager");
    }
    if (r.id() >= nodes_.size()) {
      throw std::out_of_range("bdd_ref id out of range");
    }
  }

private:
  static std::vector<unsigned> identity_order(unsigned n) {
    std::vector<unsigned> order(n);
    std::iota(order.begin(), order.end(), 0u);
    return order;
  }

  /*! \brief Reduction rules live here: skip redundant tests, merge duplicates. */
  bdd_node_id make_node(unsigned level, bdd_node_id lo, bdd_node_id hi) {
    if (lo == hi) return lo;
    std::array<std::uint32_t, 3> key{level, lo, hi};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    bdd_node_id id = static_cast<bdd_node_id>(nodes_.size());
    nodes_.push_back({level, lo, hi});
    unique_.emplace(key, id);
    return id;
  }

  using table_memo =
      std::unordered_map<std::vector<std::uint64_t>, bdd_node_id, detail::table_key_hash>;

  bdd_node_id build(const std::vector<bool>& table, std::uint64_t begin, std::uint64_t end,
                    unsigned level, table_memo& memo) {
    if (end - begin == 1) {
      return table[begin] ? bdd_t1 : bdd_t0;
    }
    std::vector<std::uint64_t> key = pack(table, begin, end);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t mid = begin + (end - begin) / 2;
    bdd_node_id lo = build(table, begin, mid, level + 1, memo);
    bdd_node_id hi = build(table, mid, end, level + 1, memo);
    bdd_node_id id = make_node(level, lo, hi);
    memo.emplace(std::move(key), id);
    return id;
  }

  // bit count first so tables of different sizes never collide
  static std::vector<std::uint64_t> pack(const std::vector<bool>& table, std::uint64_t begin,
                                         std::uint64_t end) {
    std::vector<std::uint64_t> words{end - begin};
    std::uint64_t word = 0;
    unsigned filled = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      word = (word << 1) | (table[i] ? 1u : 0u);
      if (++filled == 64) {
        words.push_back(word);
        word = 0;
        filled = 0;
      }
    }
    if (filled > 0) words.push_back(word);
    return words;
  }

  unsigned n_;
  unsigned cap_;
  std::vector<unsigned> var_at_level_;
  std::vector<unsigned> level_of_var_;
  std::vector<bdd_node> nodes_;
  std::unordered_map<std::array<std::uint32_t, 3>, bdd_node_id, detail::triple_hash> unique_;
};

/*! \brief By canonicity, id equality decides function equality. */
inline bool equal(bdd_ref a, bdd_ref b) {
  if (a.manager() != b.manager()) {
    throw std::invalid_argument("equal: refs belong to different managers");
  }
  return a.id() == b.id();
}

} // namespace bdd2bn
