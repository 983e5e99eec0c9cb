/*!
  \file decision_tree.hpp
  \brief Full ordered decision tree built by repeated Shannon expansion.

  The tree is expanded on x1, then x2, ... xn even when a cofactor no longer
  depends on the next variable, so it always has exactly 2^n leaves. Sharing
  and reduction happen later, in the BDD layer.
*/

#pragma once

#include "expr.hpp"

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bdd2bn {

/*! \brief Fixes one variable of f to a constant and folds constants away.
 *
 * The result never mentions `var`. Folding is plain constant propagation:
 * no idempotence or absorption, so the staged cofactors stay syntactically
 * recognizable.
 */
inline expr cofactor(const expr& f, unsigned var, bool value) {
  switch (f.k()) {
    case expr::kind::constant:
      return f;
    case expr::kind::variable:
      return f.var() == var ? expr::constant(value) : f;
    case expr::kind::negation: {
      expr c = cofactor(f.child(), var, value);
      return c.is_constant() ? expr::constant(!c.value()) : !c;
    }
    case expr::kind::conjunction: {
      expr l = cofactor(f.left(), var, value);
      expr r = cofactor(f.right(), var, value);
      if (l.is_constant()) return l.value() ? r : expr::constant(false);
      if (r.is_constant()) return r.value() ? l : expr::constant(false);
      return l & r;
    }
    case expr::kind::disjunction: {
      expr l = cofactor(f.left(), var, value);
      expr r = cofactor(f.right(), var, value);
      if (l.is_constant()) return l.value() ? expr::constant(true) : r;
      if (r.is_constant()) return r.value() ? expr::constant(true) : l;
      return l | r;
    }
    case expr::kind::if_then_else: {
      expr h = cofactor(f.cond(), var, value);
      expr c0 = cofactor(f.if_false(), var, value);
      expr c1 = cofactor(f.if_true(), var, value);
      if (h.is_constant()) return h.value() ? c1 : c0;
      if (c0.is_constant() && c1.is_constant() && c0.value() == c1.value()) return c0;
      return expr::if_then_else(h, c0, c1);
    }
  }
  return f;
}

/*! \brief One Shannon expansion step: f == [x_var => (first, second)].
 *
 * Returns the pair of cofactors (f with var fixed to 0, f with var fixed
 * to 1) after constant propagation.
 */
inline std::pair<expr, expr> shannon_expand(const expr& f, unsigned var, unsigned arity) {
  if (var >= arity) {
    throw std::out_of_range("shannon_expand: variable x" + std::to_string(var + 1) +
                            " out of range for arity " + std::to_string(arity));
  }
  return {cofactor(f, var, false), cofactor(f, var, true)};
}

inline std::pair<expr, expr> shannon_expand(const expr& f, unsigned var) {
  return shannon_expand(f, var, std::max(min_arity(f), var + 1));
}

/*! \brief Full ordered Shannon-expansion tree with 2^n leaves.
 *
 * Along every root-to-leaf path the tested variables are exactly
 * 0, 1, ..., n-1 in order. Immutable; subtrees are shared handles.
 */
class decision_tree {
public:
  static decision_tree leaf(bool value) {
    auto n = std::make_shared<node>();
    n->is_leaf = true;
    n->value = value;
    return decision_tree(std::move(n));
  }

  static decision_tree branch(unsigned var, decision_tree low, decision_tree high) {
    auto n = std::make_shared<node>();
    n->is_leaf = false;
    n->var = var;
    n->lo = std::move(low.root_);
    n->hi = std::move(high.root_);
    return decision_tree(std::move(n));
  }

  bool is_leaf() const { return root_->is_leaf; }
  bool leaf_value() const {
    assert(root_->is_leaf);
    return root_->value;
  }
  unsigned var() const {
    assert(!root_->is_leaf);
    return root_->var;
  }
  decision_tree low() const {
    assert(!root_->is_leaf);
    return decision_tree(root_->lo);
  }
  decision_tree high() const {
    assert(!root_->is_leaf);
    return decision_tree(root_->hi);
  }

  std::uint64_t node_count() const { return count_nodes(root_.get()); }
  std::uint64_t leaf_count() const { return count_leaves(root_.get()); }

  /*! \brief Leaf values in path order; equals the truth table of the
   * expanded function. */
  std::vector<bool> leaves() const {
    std::vector<bool> out;
    collect_leaves(root_.get(), out);
    return out;
  }

  bool evaluate(const assignment& x) const {
    const node* n = root_.get();
    while (!n->is_leaf) {
      n = x[n->var] ? n->hi.get() : n->lo.get();
    }
    return n->value;
  }

private:
  struct node {
    bool is_leaf = true;
    bool value = false;
    unsigned var = 0;
    std::shared_ptr<const node> lo, hi;
  };

  explicit decision_tree(std::shared_ptr<const node> root) : root_(std::move(root)) {}

  static std::uint64_t count_nodes(const node* n) {
    if (n->is_leaf) return 1;
    return 1 + count_nodes(n->lo.get()) + count_nodes(n->hi.get());
  }
  static std::uint64_t count_leaves(const node* n) {
    if (n->is_leaf) return 1;
    return count_leaves(n->lo.get()) + count_leaves(n->hi.get());
  }
  static void collect_leaves(const node* n, std::vector<bool>& out) {
    if (n->is_leaf) {
      out.push_back(n->value);
      return;
    }
    collect_leaves(n->lo.get(), out);
    collect_leaves(n->hi.get(), out);
  }

  friend std::string to_dot(const decision_tree& tree);
  std::shared_ptr<const node> root_;
};

/*! \brief Expands f on x1, x2, ..., xn in order.
 *
 * Leaf at path b1...bn equals eval(f, (b1, ..., bn)). Each cofactor of a
 * variable-free expression folds to a constant, which becomes the leaf.
 */
inline decision_tree build_tree(const expr& f, unsigned n,
                                unsigned cap = default_exhaustive_cap) {
  if (n > cap) {
    throw std::length_error("build_tree: arity " + std::to_string(n) +
                            " exceeds the exhaustive cap " + std::to_string(cap));
  }
  if (min_arity(f) > n) {
    throw std::out_of_range("build_tree: expression mentions x" +
                            std::to_string(min_arity(f)) + " but arity is " +
                            std::to_string(n));
  }
  struct builder {
    unsigned n;
    decision_tree run(const expr& g, unsigned level) {
      if (level == n) {
        if (!g.is_constant()) {
          throw std::logic_error("build_tree: cofactor did not fold to a constant");
        }
        return decision_tree::leaf(g.value());
      }
      return decision_tree::branch(level, run(cofactor(g, level, false), level + 1),
                                   run(cofactor(g, level, true), level + 1));
    }
  };
  return builder{n}.run(f, 0);
}

/*! \brief Graphviz export: dashed edge = low (var=0), solid edge = high,
 * leaves drawn as squares. */
inline std::string to_dot(const decision_tree& tree) {
  std::ostringstream os;
  os << "digraph decision_tree {\n";
  std::uint64_t next_id = 0;
  struct emitter {
    std::ostringstream& os;
    std::uint64_t& next_id;
    std::uint64_t emit(const decltype(tree.root_)& n) {
      std::uint64_t id = next_id++;
      if (n->is_leaf) {
        os << "  n" << id << " [shape=box, label=\"" << (n->value ? 1 : 0) << "\"];\n";
      } else {
        os << "  n" << id << " [label=\"x" << n->var + 1 << "\"];\n";
        std::uint64_t lo = emit(n->lo);
        std::uint64_t hi = emit(n->hi);
        os << "  n" << id << " -> n" << lo << " [style=dashed];\n";
        os << "  n" << id << " -> n" << hi << ";\n";
      }
      return id;
    }
  };
  emitter{os, next_id}.emit(tree.root_);
  os << "}\n";
  return os.str();
}

} // namespace bdd2bn
