/*!
  \file bdd2bn.hpp
  \brief Umbrella header: expressions, decision trees, BDDs, compiled
  Bayesian networks, exact inference, and JSON I/O.
*/

#pragma once

#include "bayes_net.hpp"
#include "bdd.hpp"
#include "decision_tree.hpp"
#include "expr.hpp"
#include "inference.hpp"
#include "json_io.hpp"
#include "rational.hpp"
