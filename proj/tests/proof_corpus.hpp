#pragma once

// Hand-built valid proofs over the base system, shared by the native-checker
// tests, the arithmetized-checker differential, and the acceptance suite.

#include <random>
#include <string>
#include <vector>

#include "rosser/calculus.hpp"
#include "rosser/syntax.hpp"

namespace testsupport {

using namespace rosser;
using proofs::Justification;
using proofs::Proof;
using proofs::ProofStep;

struct CorpusEntry {
  std::string name;
  Proof proof;
  fol::Formula target;
};

inline ProofStep ax_log(fol::Formula f, uint32_t schema = 0) {
  return {f, {Justification::Kind::AxiomLogical, schema, 0, 0, 0}};
}
inline ProofStep ax_nonlog(fol::Formula f) {
  return {f, {Justification::Kind::AxiomNonLogical, 0, 0, 0, 0}};
}
inline ProofStep mp(fol::Formula f, uint32_t i, uint32_t j) {
  return {f, {Justification::Kind::ModusPonens, 0, i, j, 0}};
}
inline ProofStep gen(fol::Formula f, uint32_t i, fol::VarIndex v) {
  return {f, {Justification::Kind::Generalization, 0, i, 0, v}};
}

inline std::vector<CorpusEntry> proof_corpus() {
  using namespace rosser::fol;
  std::vector<CorpusEntry> out;
  auto F = [](const std::string& s) { return parse_formula(s); };
  auto add = [&](std::string name, Proof p) {
    out.push_back({std::move(name), p, p.steps.back().formula});
  };

  // single-step axiom instances
  add("eq-refl", {{ax_nonlog(F("0=0"))}});
  add("eq-refl-term", {{ax_nonlog(F("S0+SS0=S0+SS0"))}});
  add("le-zero", {{ax_nonlog(F("0<=SS0"))}});
  add("plus-zero", {{ax_nonlog(F("S0+0=S0"))}});
  add("plus-succ", {{ax_nonlog(F("S0+SS0=S(S0+S0)"))}});
  add("times-zero", {{ax_nonlog(F("SS0*0=0"))}});
  add("times-succ", {{ax_nonlog(F("SS0*S0=SS0*0+SS0"))}});
  add("succ-not-zero", {{ax_nonlog(F("~S0=0"))}});
  add("succ-inj", {{ax_nonlog(F("SSa=SSb -> Sa=Sb"))}});
  add("le-total", {{ax_nonlog(F("a<=b | b<=a"))}});
  add("le-mono", {{ax_nonlog(F("a<=b -> Sa<=Sb"))}});
  add("eq-sym", {{ax_nonlog(F("a+b=c -> c=a+b"))}});
  add("eq-trans", {{ax_nonlog(F("a=b -> (b=c -> a=c)"))}});
  add("eq-congr-plus", {{ax_nonlog(F("a=b -> a+c=b+c"))}});
  add("eq-congr-le", {{ax_nonlog(F("a=b -> (a<=c -> b<=c)"))}});
  add("prop-k", {{ax_log(F("0=0 -> (0<=0 -> 0=0)"), 1)}});
  add("prop-and-elim", {{ax_log(F("0=0 & 0<=0 -> 0<=0"), 5)}});
  add("prop-or-intro", {{ax_log(F("0=0 -> 0=0 | S0=0"), 6)}});
  add("forall-elim", {{ax_log(F("all a (a=a) -> SS0=SS0"), 11)}});
  add("exists-intro", {{ax_log(F("SS0=SS0 -> exists a (a=a)"), 12)}});

  // induction instance over a=a
  {
    fol::Formula ind = proofs::induction_instance(F("a=a"), var_index("a"));
    add("induction-refl", {{ax_nonlog(ind)}});
  }

  // modus ponens: B from A and A -> (B' -> A) chain
  {
    Proof p;
    p.steps.push_back(ax_nonlog(F("0=0")));
    p.steps.push_back(ax_log(F("0=0 -> (0<=0 -> 0=0)"), 1));
    p.steps.push_back(mp(F("0<=0 -> 0=0"), 0, 1));
    add("mp-two-step", p);
  }

  // generalization then instantiation
  {
    Proof p;
    p.steps.push_back(ax_nonlog(F("a=a")));
    p.steps.push_back(gen(F("all a (a=a)"), 0, fol::var_index("a")));
    p.steps.push_back(ax_log(F("all a (a=a) -> SS0=SS0"), 11));
    p.steps.push_back(mp(F("SS0=SS0"), 1, 2));
    add("gen-then-elim", p);
  }

  // conjunction introduction via L3 and two MPs
  {
    Proof p;
    p.steps.push_back(ax_nonlog(F("0=0")));
    p.steps.push_back(ax_nonlog(F("0<=0")));
    p.steps.push_back(ax_log(F("0=0 -> (0<=0 -> 0=0 & 0<=0)"), 3));
    p.steps.push_back(mp(F("0<=0 -> 0=0 & 0<=0"), 0, 2));
    p.steps.push_back(mp(F("0=0 & 0<=0"), 1, 3));
    add("and-intro", p);
  }

  // a longer chain: all a (a=a) -> exists b (b=b)
  {
    Proof p;
    p.steps.push_back(ax_nonlog(F("a=a")));
    p.steps.push_back(gen(F("all a (a=a)"), 0, fol::var_index("a")));
    p.steps.push_back(ax_log(F("all a (a=a) -> 0=0"), 11));
    p.steps.push_back(mp(F("0=0"), 1, 2));
    p.steps.push_back(ax_log(F("0=0 -> exists b (b=b)"), 12));
    p.steps.push_back(mp(F("exists b (b=b)"), 3, 4));
    add("exists-refl", p);
  }

  // proof of a negation, for the negated-proof predicate route
  {
    Proof p;
    p.steps.push_back(ax_nonlog(F("~S0=0")));
    add("neg-axiom", p);
  }
  {
    // ~SS0=0 via L1-style routing: direct axiom, then weaken through K
    Proof p;
    p.steps.push_back(ax_nonlog(F("~SS0=0")));
    p.steps.push_back(ax_log(F("~SS0=0 -> (0=0 -> ~SS0=0)"), 1));
    p.steps.push_back(mp(F("0=0 -> ~SS0=0"), 0, 1));
    p.steps.push_back(ax_nonlog(F("0=0")));
    p.steps.push_back(mp(F("~SS0=0"), 3, 2));
    add("neg-weakened", p);
  }

  return out;
}

/// Randomized corruption of a proof: formula tweaks, index tweaks,
/// justification swaps, step deletion. The result may or may not check; the
/// differential criterion is agreement between the two checkers.
inline Proof corrupt_proof(const Proof& p, std::mt19937& rng) {
  using namespace rosser::fol;
  Proof out = p;
  size_t which = rng() % out.steps.size();
  ProofStep& step = out.steps[which];
  switch (rng() % 5) {
    case 0:
      step.formula = lnot(step.formula);
      break;
    case 1:
      step.formula = land(step.formula, step.formula);
      break;
    case 2:
      step.just.i = rng() % (out.steps.size() + 1);
      step.just.j = rng() % (out.steps.size() + 1);
      break;
    case 3:
      step.just.kind = static_cast<Justification::Kind>(rng() % 4);
      break;
    default:
      if (out.steps.size() > 1)
        out.steps.erase(out.steps.begin() + (rng() % out.steps.size()));
      else
        step.formula = eq(zero(), succ(zero()));
      break;
  }
  return out;
}

}  // namespace testsupport
