/*!
  \file bdd2bn.cpp
  \brief Command-line front end: parse an expression, then print its truth
  table, export the decision tree or BDD, compile the Bayesian network, run
  the equivalence verification, or query a Bernoulli-weighted marginal.

  Exit codes: 0 on success, 1 when verification fails semantically
  (equivalence counterexample or shape violation), 2 on usage, parse, or
  I/O errors.
*/

#include <bdd2bn/bdd2bn.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace bdd2bn;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  std::cout << "wrote " << path.string() << "\n";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

/*! \brief Test hook: flip the one CPT bit exercised by the all-zeros
 * assignment, so verification is guaranteed to find a counterexample.
 * A constant network has no tables; its square value is flipped instead. */
void inject_fault(bayes_net& net) {
  bn_node& root = net.nodes[net.root];
  if (root.kind == bn_kind::square) {
    root.value = !root.value;
    return;
  }
  // Compiled networks order parents before children by id, and the
  // all-zeros assignment selects tables[0] everywhere.
  std::vector<bool> state(net.nodes.size());
  for (const bn_node& node : net.nodes) {
    state[node.id] =
        node.kind == bn_kind::square
            ? node.value
            : node.tables[0].at(state[node.parents[0]], state[node.parents[1]], true).is_one();
  }
  bool c0 = state[root.parents[0]];
  bool c1 = state[root.parents[1]];
  cpt& table = root.tables[0];
  rational p0 = table.at(c0, c1, false);
  rational p1 = table.at(c0, c1, true);
  table.set(c0, c1, false, std::move(p1));
  table.set(c0, c1, true, std::move(p0));
}

struct options {
  expr f;
  unsigned n = 0;
  std::vector<unsigned> order;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  unsigned cap = default_exhaustive_cap;
};

int cmd_table(const options& opt) {
  std::vector<bool> table = truth_table(opt.f, opt.n, opt.cap);
  for (unsigned v = 0; v < opt.n; ++v) {
    std::cout << "x" << v + 1 << " ";
  }
  std::cout << "| f\n";
  for (std::uint64_t k = 0; k < table.size(); ++k) {
    assignment x = assignment::from_index(k, opt.n);
    for (unsigned v = 0; v < opt.n; ++v) {
      std::cout << (x[v] ? 1 : 0) << "  ";
    }
    std::cout << "| " << (table[k] ? 1 : 0) << "\n";
  }
  return 0;
}

int cmd_tree(const options& opt) {
  decision_tree tree = build_tree(opt.f, opt.n, opt.cap);
  std::cout << "decision tree: " << tree.leaf_count() << " leaves, " << tree.node_count()
            << " nodes\n";
  write_text_file(opt.out / "tree.dot", to_dot(tree));
  return 0;
}

int cmd_bdd(const options& opt) {
  bdd_manager m(opt.n, opt.order, opt.cap);
  bdd_ref r = m.from_expr(opt.f);
  bdd_node_counts counts = m.node_count(r);
  std::cout << "bdd: " << counts.internal << " internal + " << counts.total - counts.internal
            << " terminal nodes, sat count " << m.sat_count(r) << "\n";
  write_text_file(opt.out / "bdd.dot", m.to_dot(r));
  write_text_file(opt.out / "bdd.json", dump(bdd_to_json(m, r)));
  return 0;
}

int cmd_compile(const options& opt) {
  bdd_manager m(opt.n, opt.order, opt.cap);
  bdd_ref r = m.from_expr(opt.f);
  bayes_net net = compile(m, r);
  std::size_t squares = 0;
  for (const bn_node& node : net.nodes) {
    if (node.kind == bn_kind::square) ++squares;
  }
  std::cout << "network: " << net.nodes.size() << " nodes (" << net.nodes.size() - squares
            << " ite + " << squares << " square)\n";
  write_text_file(opt.out / "bdd.dot", m.to_dot(r));
  write_text_file(opt.out / "bdd.json", dump(bdd_to_json(m, r)));
  write_text_file(opt.out / "bnet.dot", to_dot(net));
  write_text_file(opt.out / "bnet.json", dump(bayes_net_to_json(net)));
  return 0;
}

int cmd_verify(const options& opt, bool fault) {
  bdd_manager m(opt.n, opt.order, opt.cap);
  bdd_ref r = m.from_expr(opt.f);
  bayes_net net = compile(m, r);
  if (fault) {
    inject_fault(net);
  }
  validation_result shape = validate_bdd_shape(net);
  equivalence_report report = check_equivalence(m, r, net, opt.cap, 10000, opt.seed);

  std::cout << "equivalence: " << (report.passed() ? "passed" : "FAILED") << " ("
            << report.checked << " assignments, "
            << (report.exhaustive ? "exhaustive" : "sampled");
  if (!report.passed()) {
    std::cout << ", " << report.mismatches << " counterexamples";
  }
  std::cout << ")\n";
  std::cout << "validation: " << (shape.passed() ? "passed" : "FAILED");
  if (!shape.passed()) {
    std::cout << " (" << shape.violations.size() << " violations)";
  }
  std::cout << "\n";
  if (shape.note) {
    std::cout << "note: " << *shape.note << "\n";
  }

  json full = equivalence_report_to_json(report);
  full["validation"] = validation_to_json(shape);
  write_text_file(opt.out / "bdd.dot", m.to_dot(r));
  write_text_file(opt.out / "bdd.json", dump(bdd_to_json(m, r)));
  write_text_file(opt.out / "bnet.dot", to_dot(net));
  write_text_file(opt.out / "bnet.json", dump(bayes_net_to_json(net)));
  write_text_file(opt.out / "report.json", dump(full));
  return report.passed() && shape.passed() ? 0 : 1;
}

int cmd_marginal(const options& opt, const std::vector<std::string>& p_texts) {
  std::vector<rational> p;
  p.reserve(p_texts.size());
  for (const std::string& text : p_texts) {
    p.push_back(rational::from_string(text));
  }
  bdd_manager m(opt.n, opt.order, opt.cap);
  bdd_ref r = m.from_expr(opt.f);
  bayes_net net = compile(m, r);
  std::cout << root_marginal(net, p).to_string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean expressions, their reduced ordered BDDs, and the equivalent "
               "Bayesian networks with deterministic if-then-else tables"};
  app.require_subcommand(1);

  std::string expr_text;
  std::string file_path;
  unsigned n = 0;
  std::vector<unsigned> order;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  unsigned cap = bdd2bn::default_exhaustive_cap;

  auto* expr_opt = app.add_option("--expr", expr_text, "expression text, e.g. \"(x1|x2)&x3\"");
  auto* file_opt = app.add_option("--file", file_path, "file holding the expression text");
  expr_opt->excludes(file_opt);
  auto* n_opt = app.add_option("--n", n, "number of variables (default: highest xk used)");
  app.add_option("--order", order, "variable order as a permutation of 0..n-1")->delimiter(',');
  app.add_option("--out", out_dir, "directory for artifacts (default .)");
  app.add_option("--seed", seed, "seed for sampled equivalence checking");
  app.add_option("--cap", cap, "exhaustive-enumeration cap on n");

  auto* table_cmd = app.add_subcommand("table", "print the brute-force truth table");
  auto* tree_cmd = app.add_subcommand("tree", "export the full decision tree (tree.dot)");
  auto* bdd_cmd = app.add_subcommand("bdd", "export the reduced BDD (bdd.dot, bdd.json)");
  auto* compile_cmd =
      app.add_subcommand("compile", "compile the Bayesian network (adds bnet.dot, bnet.json)");
  auto* verify_cmd = app.add_subcommand(
      "verify", "compile, validate the shape, and check equivalence (adds report.json)");
  bool fault = false;
  verify_cmd->add_flag("--inject-fault", fault,
                       "flip one CPT bit before verifying (fault-injection test hook)");
  auto* marginal_cmd =
      app.add_subcommand("marginal", "P(f=1) for independent Bernoulli inputs");
  std::vector<std::string> p_texts;
  marginal_cmd->add_option("--p", p_texts, "P(xk=1) list, e.g. 1/2,1/2,1/2")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string text = expr_text;
    if (file_opt->count() > 0) {
      text = read_text_file(file_path);
    } else if (expr_opt->count() == 0) {
      std::cerr << "error: one of --expr or --file is required\n";
      return 2;
    }

    options opt;
    if (n_opt->count() > 0) {
      opt.f = bdd2bn::parse(text, n);
      opt.n = n;
    } else {
      opt.f = bdd2bn::parse(text);
      opt.n = bdd2bn::min_arity(opt.f);
    }
    opt.order = order;
    if (opt.order.empty()) {
      opt.order.resize(opt.n);
      std::iota(opt.order.begin(), opt.order.end(), 0u);
    }
    opt.out = out_dir;
    opt.seed = seed;
    opt.cap = cap;
    std::filesystem::create_directories(opt.out);

    if (app.got_subcommand(table_cmd)) return cmd_table(opt);
    if (app.got_subcommand(tree_cmd)) return cmd_tree(opt);
    if (app.got_subcommand(bdd_cmd)) return cmd_bdd(opt);
    if (app.got_subcommand(compile_cmd)) return cmd_compile(opt);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(opt, fault);
    if (app.got_subcommand(marginal_cmd)) return cmd_marginal(opt, p_texts);
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const bdd2bn::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bdd2bn::undeclared_variable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
