#include "rosser/syntax.hpp"

#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace rosser::fol;

namespace {

// Independent finite-domain evaluator used as the semantic oracle for
// substitution: quantifiers range over {0..domain}.
bool naive_eval(Formula f, std::map<VarIndex, mpz_class>& env, int domain) {
  switch (f.kind()) {
    case FormulaKind::Eq:
      return denote(f.term_left(), env) == denote(f.term_right(), env);
    case FormulaKind::Le:
      return denote(f.term_left(), env) <= denote(f.term_right(), env);
    case FormulaKind::Not:
      return !naive_eval(f.sub_left(), env, domain);
    case FormulaKind::Or:
      return naive_eval(f.sub_left(), env, domain) || naive_eval(f.sub_right(), env, domain);
    case FormulaKind::And:
      return naive_eval(f.sub_left(), env, domain) && naive_eval(f.sub_right(), env, domain);
    case FormulaKind::Implies:
      return !naive_eval(f.sub_left(), env, domain) || naive_eval(f.sub_right(), env, domain);
    case FormulaKind::ForAll: {
      for (int i = 0; i <= domain; ++i) {
        auto saved = env;
        env[f.bound_var()] = i;
        bool ok = naive_eval(f.body(), env, domain);
        env = saved;
        if (!ok) return false;
      }
      return true;
    }
    case FormulaKind::Exists: {
      for (int i = 0; i <= domain; ++i) {
        auto saved = env;
        env[f.bound_var()] = i;
        bool ok = naive_eval(f.body(), env, domain);
        env = saved;
        if (ok) return true;
      }
      return false;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("basic construction and hash-consing identity") {
  Formula f1 = parse_formula("0=0");
  CHECK(f1.kind() == FormulaKind::Eq);
  CHECK(f1.term_left().kind() == TermKind::Zero);
  CHECK(f1.term_right().kind() == TermKind::Zero);

  Formula f2 = eq(zero(), zero());
  CHECK(f1 == f2);  // same interned node

  Term t1 = plus(var("a"), times(var("b"), numeral(2)));
  Term t2 = plus(var("a"), times(var("b"), numeral(2)));
  CHECK(t1 == t2);
  CHECK(t1.raw_id() == t2.raw_id());

  // S-runs collapse: S(S(S0)) is one node over 0
  Term three = succ(succ(succ(zero())));
  CHECK(three == numeral(3));
  CHECK(three.succ_count() == 3);
  CHECK(three.succ_child() == zero());
  CHECK(three.succ_peel() == numeral(2));
}

TEST_CASE("printing: canonical forms") {
  CHECK(numeral(0).to_string() == "0");
  CHECK(numeral(3).to_string() == "SSS0");
  CHECK(plus(var("a"), var("b")).to_string() == "a+b");
  CHECK(times(plus(var("a"), var("b")), var("c")).to_string() == "(a+b)*c");
  CHECK(plus(var("a"), plus(var("b"), var("c"))).to_string() == "a+(b+c)");
  CHECK(succ(plus(var("a"), var("b"))).to_string() == "S(a+b)");
  CHECK(succ_run(var("a"), 2).to_string() == "SSa");
  CHECK(eq(numeral(2), zero()).to_string() == "SS0=0");
  CHECK(le(var("c"), var("b")).to_string() == "c<=b");
  CHECK(lnot(eq(zero(), zero())).to_string() == "~0=0");
  CHECK(forall(1, le(var("b"), var("b"))).to_string() == "all b (b<=b)");
  Formula host_shape = forall(
      1, lor(lnot(eq(var("a"), var("b"))),
             exists(2, land(le(var("c"), var("b")), eq(var("a"), var("c"))))));
  CHECK(host_shape.to_string() == "all b (~a=b | exists c (c<=b & a=c))");
  CHECK(parse_formula(host_shape.to_string()) == host_shape);
}

TEST_CASE("parsing errors") {
  CHECK_THROWS_AS(parse_formula("0="), ParseError);
  CHECK_THROWS_AS(parse_formula("0=0 | "), ParseError);
  CHECK_THROWS_AS(parse_formula("all (0=0)"), ParseError);
  CHECK_THROWS_AS(parse_formula("0"), ParseError);
  CHECK_THROWS_AS(parse_formula("xy=0"), ParseError);
  CHECK_THROWS_AS(parse_term("S"), ParseError);
}

TEST_CASE("round-trip: print then parse is identity on random formulas") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 300; ++i) {
    Formula f = testsupport::random_formula(rng, 5, {0, 1, 2});
    Formula g = parse_formula(f.to_string());
    CAPTURE(f.to_string());
    CHECK(f == g);
  }
  // at least one sizable one, per the 1000-node bar
  std::mt19937 rng2(7);
  Formula big = testsupport::random_formula(rng2, 12, {0, 1, 2});
  int guard = 0;
  while (big.tree_size() < 1000 && ++guard < 50) big = land(big, testsupport::random_formula(rng2, 12, {0, 1, 2}));
  REQUIRE(big.tree_size() >= 1000);
  CHECK(parse_formula(big.to_string()) == big);
}

TEST_CASE("dag size never exceeds tree size") {
  std::mt19937 rng(5150);
  for (int i = 0; i < 100; ++i) {
    Formula f = testsupport::random_formula(rng, 6, {0, 1});
    CHECK(dag_size(f) <= f.tree_size());
  }
  // sharing strictly helps on duplicated structure
  Formula dup = land(eq(var("a"), numeral(5)), eq(var("a"), numeral(5)));
  CHECK(dag_size(dup) < dup.tree_size());
}

TEST_CASE("substitution: pinned examples") {
  VarIndex a = var_index("a");
  Formula f = eq(var(a), zero());
  CHECK(substitute(f, a, numeral(2)) == eq(numeral(2), zero()));
  CHECK(substitute(f, a, numeral(2)).to_string() == "SS0=0");

  Formula bound = forall(a, eq(var(a), var(a)));
  CHECK(substitute(bound, a, numeral(1)) == bound);

  // capture-avoiding rename draws v0 from the pool
  VarIndex b = var_index("b");
  Formula cap = exists(b, eq(var(a), var(b)));
  Formula sub = substitute(cap, a, var(b));
  CHECK(sub.kind() == FormulaKind::Exists);
  CHECK(sub.bound_var() == var_index("v0"));
  CHECK(sub == exists(var_index("v0"), eq(var(b), var(var_index("v0")))));
}

TEST_CASE("substitution: semantics preserved under capture-avoidance") {
  // evaluate phi[a := t] directly vs. substituting the value of t into the
  // environment, over all small assignments
  std::mt19937 rng(31337);
  VarIndex a = var_index("a");
  VarIndex b = var_index("b");
  for (int i = 0; i < 200; ++i) {
    Formula phi = testsupport::random_formula(rng, 4, {a, b});
    Term t = testsupport::random_term(rng, 2, {b});
    Formula subbed = substitute(phi, a, t);
    for (int bv = 0; bv <= 2; ++bv) {
      std::map<VarIndex, mpz_class> env{{b, bv}};
      std::map<VarIndex, mpz_class> env2{{b, bv}};
      env2[a] = denote(t, env);
      CAPTURE(phi.to_string());
      CAPTURE(t.to_string());
      CHECK(naive_eval(subbed, env, 3) == naive_eval(phi, env2, 3));
    }
  }
}

TEST_CASE("substitution: identity and free-variable law") {
  std::mt19937 rng(4711);
  VarIndex a = var_index("a");
  for (int i = 0; i < 200; ++i) {
    Formula phi = testsupport::random_formula(rng, 4, {a, 1, 2});
    CHECK(substitute(phi, a, var(a)) == phi);

    Term t = testsupport::random_term(rng, 2, {1, 3});
    Formula subbed = substitute(phi, a, t);
    const auto& fv_phi = phi.free_vars();
    if (std::binary_search(fv_phi.begin(), fv_phi.end(), a)) {
      std::set<VarIndex> expect(fv_phi.begin(), fv_phi.end());
      expect.erase(a);
      for (VarIndex v : t.free_vars()) expect.insert(v);
      std::set<VarIndex> got(subbed.free_vars().begin(), subbed.free_vars().end());
      CHECK(got == expect);
    } else {
      CHECK(subbed == phi);
    }
  }
}

TEST_CASE("numerals") {
  CHECK(numeral(0) == zero());
  CHECK(numeral(3).to_string() == "SSS0");
  CHECK(denote(numeral(1000)) == 1000);

  mpz_class million = 1000000;
  CHECK(denote(efficient_numeral(million)) == million);
  CHECK(efficient_numeral(million).tree_size() < 200);

  std::mt19937 rng(99);
  for (int i = 0; i < 50; ++i) {
    mpz_class n = rng() % 100000;
    CHECK(denote(efficient_numeral(n)) == n);
    CHECK(denote(numeral(n)) == n);
  }
  // very large values stay logarithmic
  mpz_class big = 1;
  big <<= 4000;
  Term t = efficient_numeral(big);
  CHECK(t.tree_size() < 4000 * 5);
  CHECK(denote(t) == big);

  CHECK(embed_numeral(64, 64) == numeral(64));
  CHECK(embed_numeral(65, 64) == efficient_numeral(65));
}
