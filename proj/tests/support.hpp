#pragma once

// Shared generators for randomized tests.

#include <random>
#include <vector>

#include "rosser/syntax.hpp"

namespace testsupport {

using namespace rosser::fol;

inline Term random_term(std::mt19937& rng, int depth, const std::vector<VarIndex>& vars) {
  int pick = rng() % (depth <= 0 ? 3 : 6);
  switch (pick) {
    case 0:
      return zero();
    case 1:
      return numeral(1 + rng() % 4);
    case 2:
      return vars.empty() ? numeral(rng() % 3) : var(vars[rng() % vars.size()]);
    case 3:
      return succ_run(random_term(rng, depth - 1, vars), 1 + rng() % 3);
    case 4:
      return plus(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars));
    default:
      return times(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars));
  }
}

inline Formula random_formula(std::mt19937& rng, int depth, std::vector<VarIndex> vars) {
  if (depth <= 0 || rng() % 8 == 0) {
    Term a = random_term(rng, depth > 1 ? 2 : 1, vars);
    Term b = random_term(rng, depth > 1 ? 2 : 1, vars);
    return rng() % 2 ? eq(a, b) : le(a, b);
  }
  switch (rng() % 6) {
    case 0:
      return lnot(random_formula(rng, depth - 1, vars));
    case 1:
      return lor(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 2:
      return land(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 3:
      return implies(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    default: {
      VarIndex v = rng() % 2 ? (vars.empty() ? 0 : vars[rng() % vars.size()])
                             : 26 + rng() % 3;
      vars.push_back(v);
      Formula body = random_formula(rng, depth - 1, vars);
      return rng() % 2 ? forall(v, body) : exists(v, body);
    }
  }
}

}  // namespace testsupport
