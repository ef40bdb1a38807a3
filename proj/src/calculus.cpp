#include "rosser/calculus.hpp"

#include <set>
#include <unordered_set>

#include "json.hpp"

namespace rosser::proofs {

using fol::Formula;
using fol::FormulaKind;
using fol::Term;
using fol::TermKind;
using fol::VarIndex;

namespace {

bool is_implies(Formula f) { return f.kind() == FormulaKind::Implies; }

// Does any binder for v occur anywhere inside f? (iterative over the DAG)
bool binds_var(Formula f, VarIndex v) {
  std::vector<Formula> stack{f};
  std::unordered_set<uint32_t> seen;
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.raw_id()).second) continue;
    switch (g.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::Le:
        break;
      case FormulaKind::Not:
        stack.push_back(g.sub_left());
        break;
      case FormulaKind::Or:
      case FormulaKind::And:
      case FormulaKind::Implies:
        stack.push_back(g.sub_left());
        stack.push_back(g.sub_right());
        break;
      case FormulaKind::ForAll:
      case FormulaKind::Exists:
        if (g.bound_var() == v) return true;
        stack.push_back(g.body());
        break;
    }
  }
  return false;
}

bool free_in(Formula f, VarIndex v) {
  const auto& fv = f.free_vars();
  return std::binary_search(fv.begin(), fv.end(), v);
}

// --- substitution-instance matching for the quantifier schemas ---
//
// Decides whether inst = pat[x := t] for some term t, collecting t from the
// occurrences; capture tracking rejects t whose variables would be caught by
// binders enclosing an occurrence.

struct MatchState {
  VarIndex x;
  std::optional<Term> t;
  std::vector<VarIndex> binders;  // stack of binder variables on the path

  bool capture_ok(Term cand) const {
    for (VarIndex b : binders) {
      const auto& fv = cand.free_vars();
      if (std::binary_search(fv.begin(), fv.end(), b)) return false;
    }
    return true;
  }

  bool take(Term cand) {
    if (!capture_ok(cand)) return false;
    if (t && !(*t == cand)) return false;
    t = cand;
    return true;
  }
};

bool match_term(Term pat, Term inst, MatchState& st) {
  if (pat.kind() == TermKind::Var && pat.var() == st.x) return st.take(inst);
  switch (pat.kind()) {
    case TermKind::Var:
      return inst == pat;
    case TermKind::Zero:
      return inst.kind() == TermKind::Zero;
    case TermKind::Succ: {
      if (inst.kind() != TermKind::Succ) return false;
      uint64_t rp = pat.succ_count(), ri = inst.succ_count();
      if (rp > ri) return false;
      Term rest = ri == rp ? inst.succ_child() : fol::succ_run(inst.succ_child(), ri - rp);
      return match_term(pat.succ_child(), rest, st);
    }
    case TermKind::Plus:
    case TermKind::Times:
      if (inst.kind() != pat.kind()) return false;
      return match_term(pat.left(), inst.left(), st) && match_term(pat.right(), inst.right(), st);
  }
  return false;
}

bool match_formula(Formula pat, Formula inst, MatchState& st) {
  if (!free_in(pat, st.x)) return inst == pat;
  if (pat.kind() != inst.kind()) return false;
  switch (pat.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Le:
      return match_term(pat.term_left(), inst.term_left(), st) &&
             match_term(pat.term_right(), inst.term_right(), st);
    case FormulaKind::Not:
      return match_formula(pat.sub_left(), inst.sub_left(), st);
    case FormulaKind::Or:
    case FormulaKind::And:
    case FormulaKind::Implies:
      return match_formula(pat.sub_left(), inst.sub_left(), st) &&
             match_formula(pat.sub_right(), inst.sub_right(), st);
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
      if (pat.bound_var() != inst.bound_var()) return false;
      // x free under this binder (checked above), binder shadows nothing of x
      st.binders.push_back(pat.bound_var());
      bool ok = match_formula(pat.body(), inst.body(), st);
      st.binders.pop_back();
      return ok;
    }
  }
  return false;
}

/// inst == pat[x := t] for some t (or x not free in pat and inst == pat).
bool is_subst_instance(Formula pat, VarIndex x, Formula inst) {
  MatchState st{x, std::nullopt, {}};
  return match_formula(pat, inst, st);
}

// --- logical schemas ---

bool match_L1(Formula f) {
  // A -> (B -> A)
  if (!is_implies(f) || !is_implies(f.sub_right())) return false;
  return f.sub_right().sub_right() == f.sub_left();
}

bool match_L2(Formula f) {
  // (A -> B) -> ((A -> (B -> C)) -> (A -> C))
  if (!is_implies(f) || !is_implies(f.sub_left())) return false;
  Formula ab = f.sub_left();
  if (!is_implies(f.sub_right())) return false;
  Formula abc = f.sub_right().sub_left();
  Formula ac = f.sub_right().sub_right();
  if (!is_implies(abc) || !is_implies(abc.sub_right()) || !is_implies(ac)) return false;
  Formula a = ab.sub_left(), b = ab.sub_right();
  return abc.sub_left() == a && abc.sub_right().sub_left() == b &&
         ac.sub_left() == a && abc.sub_right().sub_right() == ac.sub_right();
}

bool match_L3(Formula f) {
  // A -> (B -> A & B)
  if (!is_implies(f) || !is_implies(f.sub_right())) return false;
  Formula a = f.sub_left();
  Formula b = f.sub_right().sub_left();
  Formula conj = f.sub_right().sub_right();
  return conj.kind() == FormulaKind::And && conj.sub_left() == a && conj.sub_right() == b;
}

bool match_L4a(Formula f) {
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::And) return false;
  return f.sub_left().sub_left() == f.sub_right();
}

bool match_L4b(Formula f) {
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::And) return false;
  return f.sub_left().sub_right() == f.sub_right();
}

bool match_L5a(Formula f) {
  if (!is_implies(f) || f.sub_right().kind() != FormulaKind::Or) return false;
  return f.sub_right().sub_left() == f.sub_left();
}

bool match_L5b(Formula f) {
  if (!is_implies(f) || f.sub_right().kind() != FormulaKind::Or) return false;
  return f.sub_right().sub_right() == f.sub_left();
}

bool match_L6(Formula f) {
  // (A -> C) -> ((B -> C) -> (A | B -> C))
  if (!is_implies(f) || !is_implies(f.sub_left()) || !is_implies(f.sub_right())) return false;
  Formula ac = f.sub_left();
  Formula bc = f.sub_right().sub_left();
  Formula abc = f.sub_right().sub_right();
  if (!is_implies(bc) || !is_implies(abc) || abc.sub_left().kind() != FormulaKind::Or)
    return false;
  Formula a = ac.sub_left(), c = ac.sub_right();
  Formula b = bc.sub_left();
  return bc.sub_right() == c && abc.sub_left().sub_left() == a &&
         abc.sub_left().sub_right() == b && abc.sub_right() == c;
}

bool match_L7(Formula f) {
  // (A -> B) -> ((A -> ~B) -> ~A)
  if (!is_implies(f) || !is_implies(f.sub_left()) || !is_implies(f.sub_right())) return false;
  Formula ab = f.sub_left();
  Formula anb = f.sub_right().sub_left();
  Formula na = f.sub_right().sub_right();
  if (!is_implies(anb) || anb.sub_right().kind() != FormulaKind::Not ||
      na.kind() != FormulaKind::Not)
    return false;
  return anb.sub_left() == ab.sub_left() && anb.sub_right().sub_left() == ab.sub_right() &&
         na.sub_left() == ab.sub_left();
}

bool match_L8(Formula f) {
  // ~~A -> A
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::Not) return false;
  Formula inner = f.sub_left().sub_left();
  return inner.kind() == FormulaKind::Not && inner.sub_left() == f.sub_right();
}

bool match_Q1(Formula f) {
  // all x A -> A[x := t]
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::ForAll) return false;
  return is_subst_instance(f.sub_left().body(), f.sub_left().bound_var(), f.sub_right());
}

bool match_Q2(Formula f) {
  // A[x := t] -> exists x A
  if (!is_implies(f) || f.sub_right().kind() != FormulaKind::Exists) return false;
  return is_subst_instance(f.sub_right().body(), f.sub_right().bound_var(), f.sub_left());
}

bool match_Q3(Formula f) {
  // all x (C -> A) -> (C -> all x A), x not free in C
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::ForAll) return false;
  Formula q = f.sub_left();
  VarIndex x = q.bound_var();
  if (!is_implies(q.body())) return false;
  Formula c = q.body().sub_left(), a = q.body().sub_right();
  if (free_in(c, x)) return false;
  return f.sub_right() == fol::implies(c, fol::forall(x, a));
}

bool match_Q4(Formula f) {
  // all x (A -> C) -> (exists x A -> C), x not free in C
  if (!is_implies(f) || f.sub_left().kind() != FormulaKind::ForAll) return false;
  Formula q = f.sub_left();
  VarIndex x = q.bound_var();
  if (!is_implies(q.body())) return false;
  Formula a = q.body().sub_left(), c = q.body().sub_right();
  if (free_in(c, x)) return false;
  return f.sub_right() == fol::implies(fol::exists(x, a), c);
}

using Matcher = bool (*)(Formula);
struct SchemaEntry {
  uint32_t id;
  const char* name;
  Matcher matcher;
};

const std::vector<SchemaEntry>& schema_table() {
  static const std::vector<SchemaEntry> table = {
      {1, "L1", match_L1},   {2, "L2", match_L2},   {3, "L3", match_L3},
      {4, "L4a", match_L4a}, {5, "L4b", match_L4b}, {6, "L5a", match_L5a},
      {7, "L5b", match_L5b}, {8, "L6", match_L6},   {9, "L7", match_L7},
      {10, "L8", match_L8},  {11, "Q1", match_Q1},  {12, "Q2", match_Q2},
      {13, "Q3", match_Q3},  {14, "Q4", match_Q4},
  };
  return table;
}

// --- equality / arithmetic / order axioms (schemas over arbitrary terms) ---

bool is_eq(Formula f) { return f.kind() == FormulaKind::Eq; }
bool is_le(Formula f) { return f.kind() == FormulaKind::Le; }
bool is_succ_of(Term big, Term small) {
  // big == S(small)
  return big.kind() == TermKind::Succ && big.succ_peel() == small;
}

bool match_E1(Formula f) { return is_eq(f) && f.term_left() == f.term_right(); }

bool match_E2(Formula f) {
  // s=t -> t=s
  if (!is_implies(f) || !is_eq(f.sub_left()) || !is_eq(f.sub_right())) return false;
  return f.sub_left().term_left() == f.sub_right().term_right() &&
         f.sub_left().term_right() == f.sub_right().term_left();
}

bool match_E3(Formula f) {
  // s=t -> (t=u -> s=u)
  if (!is_implies(f) || !is_eq(f.sub_left()) || !is_implies(f.sub_right())) return false;
  Formula st = f.sub_left(), tu = f.sub_right().sub_left(), su = f.sub_right().sub_right();
  if (!is_eq(tu) || !is_eq(su)) return false;
  return st.term_right() == tu.term_left() && st.term_left() == su.term_left() &&
         tu.term_right() == su.term_right();
}

bool match_E4(Formula f) {
  // s=t -> Ss=St
  if (!is_implies(f) || !is_eq(f.sub_left()) || !is_eq(f.sub_right())) return false;
  return is_succ_of(f.sub_right().term_left(), f.sub_left().term_left()) &&
         is_succ_of(f.sub_right().term_right(), f.sub_left().term_right());
}

// s=t -> s□u=t□u and s=t -> u□s=u□t for □ in {+, *}, and the <= congruences
bool match_congruence(Formula f) {
  if (!is_implies(f) || !is_eq(f.sub_left())) return false;
  Term s = f.sub_left().term_left(), t = f.sub_left().term_right();
  Formula rhs = f.sub_right();
  if (is_eq(rhs)) {
    Term l = rhs.term_left(), r = rhs.term_right();
    for (TermKind k : {TermKind::Plus, TermKind::Times}) {
      if (l.kind() != k || r.kind() != k) continue;
      if (l.left() == s && r.left() == t && l.right() == r.right()) return true;   // s□u = t□u
      if (l.right() == s && r.right() == t && l.left() == r.left()) return true;   // u□s = u□t
    }
    return false;
  }
  if (is_implies(rhs) && is_le(rhs.sub_left()) && is_le(rhs.sub_right())) {
    Formula l = rhs.sub_left(), r = rhs.sub_right();
    // s=t -> (s<=u -> t<=u)
    if (l.term_left() == s && r.term_left() == t && l.term_right() == r.term_right()) return true;
    // s=t -> (u<=s -> u<=t)
    if (l.term_right() == s && r.term_right() == t && l.term_left() == r.term_left()) return true;
  }
  return false;
}

bool match_A1(Formula f) {
  // ~(St = 0)
  if (f.kind() != FormulaKind::Not || !is_eq(f.sub_left())) return false;
  return f.sub_left().term_left().kind() == TermKind::Succ &&
         f.sub_left().term_right() == fol::zero();
}

bool match_A2(Formula f) {
  // Ss=St -> s=t
  if (!is_implies(f) || !is_eq(f.sub_left()) || !is_eq(f.sub_right())) return false;
  return is_succ_of(f.sub_left().term_left(), f.sub_right().term_left()) &&
         is_succ_of(f.sub_left().term_right(), f.sub_right().term_right());
}

bool match_A3(Formula f) {
  // t+0 = t
  if (!is_eq(f)) return false;
  Term l = f.term_left();
  return l.kind() == TermKind::Plus && l.right() == fol::zero() && l.left() == f.term_right();
}

bool match_A4(Formula f) {
  // s+St = S(s+t)
  if (!is_eq(f)) return false;
  Term l = f.term_left(), r = f.term_right();
  if (l.kind() != TermKind::Plus || l.right().kind() != TermKind::Succ) return false;
  if (r.kind() != TermKind::Succ) return false;
  Term inner = r.succ_peel();
  return inner.kind() == TermKind::Plus && inner.left() == l.left() &&
         inner.right() == l.right().succ_peel();
}

bool match_A5(Formula f) {
  // t*0 = 0
  if (!is_eq(f)) return false;
  Term l = f.term_left();
  return l.kind() == TermKind::Times && l.right() == fol::zero() &&
         f.term_right() == fol::zero();
}

bool match_A6(Formula f) {
  // s*St = s*t+s
  if (!is_eq(f)) return false;
  Term l = f.term_left(), r = f.term_right();
  if (l.kind() != TermKind::Times || l.right().kind() != TermKind::Succ) return false;
  if (r.kind() != TermKind::Plus || r.left().kind() != TermKind::Times) return false;
  return r.left().left() == l.left() && r.left().right() == l.right().succ_peel() &&
         r.right() == l.left();
}

bool match_O1(Formula f) { return is_le(f) && f.term_left() == fol::zero(); }

bool match_O2(Formula f) {
  // s<=t -> Ss<=St
  if (!is_implies(f) || !is_le(f.sub_left()) || !is_le(f.sub_right())) return false;
  return is_succ_of(f.sub_right().term_left(), f.sub_left().term_left()) &&
         is_succ_of(f.sub_right().term_right(), f.sub_left().term_right());
}

bool match_O3(Formula f) {
  // Ss<=St -> s<=t
  if (!is_implies(f) || !is_le(f.sub_left()) || !is_le(f.sub_right())) return false;
  return is_succ_of(f.sub_left().term_left(), f.sub_right().term_left()) &&
         is_succ_of(f.sub_left().term_right(), f.sub_right().term_right());
}

bool match_O4(Formula f) {
  // ~(St <= 0)
  if (f.kind() != FormulaKind::Not || !is_le(f.sub_left())) return false;
  return f.sub_left().term_left().kind() == TermKind::Succ &&
         f.sub_left().term_right() == fol::zero();
}

bool match_O5(Formula f) {
  // s<=t | t<=s
  if (f.kind() != FormulaKind::Or || !is_le(f.sub_left()) || !is_le(f.sub_right())) return false;
  return f.sub_left().term_left() == f.sub_right().term_right() &&
         f.sub_left().term_right() == f.sub_right().term_left();
}

}  // namespace

const std::vector<SchemaInfo>& logical_schemas() {
  static const std::vector<SchemaInfo> out = [] {
    std::vector<SchemaInfo> v;
    for (const auto& e : schema_table()) v.push_back({e.id, e.name});
    return v;
  }();
  return out;
}

bool is_logical_axiom(Formula phi) {
  for (const auto& e : schema_table())
    if (e.matcher(phi)) return true;
  return false;
}

bool is_induction_instance(Formula phi) {
  // A[x:=0] -> (all x (A -> A[x:=Sx]) -> all x A), with x not re-bound in A
  if (!is_implies(phi) || !is_implies(phi.sub_right())) return false;
  Formula base = phi.sub_left();
  Formula stepq = phi.sub_right().sub_left();
  Formula concl = phi.sub_right().sub_right();
  if (concl.kind() != FormulaKind::ForAll) return false;
  VarIndex x = concl.bound_var();
  Formula a = concl.body();
  if (binds_var(a, x)) return false;
  if (!(base == fol::substitute(a, x, fol::zero()))) return false;
  Formula expected_step =
      fol::forall(x, fol::implies(a, fol::substitute(a, x, fol::succ(fol::var(x)))));
  return stepq == expected_step;
}

fol::Formula induction_instance(Formula body, VarIndex x) {
  if (binds_var(body, x))
    throw std::invalid_argument("induction variable is re-bound inside the body");
  Formula base = fol::substitute(body, x, fol::zero());
  Formula step = fol::forall(x, fol::implies(body, fol::substitute(body, x, fol::succ(fol::var(x)))));
  return fol::implies(base, fol::implies(step, fol::forall(x, body)));
}

bool is_nonlogical_base_axiom(Formula phi) {
  static const Matcher matchers[] = {match_E1, match_E2, match_E3, match_E4,
                                     match_congruence, match_A1, match_A2, match_A3,
                                     match_A4, match_A5, match_A6, match_O1,
                                     match_O2, match_O3, match_O4, match_O5};
  for (Matcher m : matchers)
    if (m(phi)) return true;
  return is_induction_instance(phi);
}

bool is_base_axiom(Formula phi) { return is_logical_axiom(phi) || is_nonlogical_base_axiom(phi); }

CheckResult check_proof(const Proof& p, Formula target, const AxiomDecider& decider) {
  CheckResult res;
  if (p.steps.empty()) {
    res.diagnostic = "empty proof";
    return res;
  }
  for (size_t k = 0; k < p.steps.size(); ++k) {
    const ProofStep& step = p.steps[k];
    const Justification& j = step.just;
    auto fail = [&](const std::string& why) {
      res.diagnostic = "step " + std::to_string(k) + ": " + why;
      res.failing_step = k;
      return res;
    };
    switch (j.kind) {
      case Justification::Kind::AxiomLogical:
        if (!is_logical_axiom(step.formula)) return fail("not a logical axiom instance");
        break;
      case Justification::Kind::AxiomNonLogical:
        if (!is_nonlogical_base_axiom(step.formula) &&
            !(decider && decider(step.formula)))
          return fail("not a non-logical axiom");
        break;
      case Justification::Kind::ModusPonens: {
        if (j.i >= k || j.j >= k) return fail("modus ponens references a later step");
        Formula premise = p.steps[j.i].formula;
        Formula impl = p.steps[j.j].formula;
        if (impl.kind() != FormulaKind::Implies || !(impl.sub_left() == premise) ||
            !(impl.sub_right() == step.formula))
          return fail("modus ponens shape mismatch");
        break;
      }
      case Justification::Kind::Generalization: {
        if (j.i >= k) return fail("generalization references a later step");
        if (!(step.formula == fol::forall(j.var, p.steps[j.i].formula)))
          return fail("generalization shape mismatch");
        break;
      }
    }
  }
  if (!(p.steps.back().formula == target)) {
    res.diagnostic = "last step does not match the target";
    res.failing_step = p.steps.size() - 1;
    return res;
  }
  res.ok = true;
  return res;
}

Formula negate(Formula phi) { return fol::lnot(phi); }

// --- JSON exchange format ---

std::string proof_to_json(const Proof& p) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : p.steps) {
    nlohmann::json j;
    j["formula"] = s.formula.to_string();
    switch (s.just.kind) {
      case Justification::Kind::AxiomLogical:
        j["just"] = {{"kind", "axiom-logical"}, {"schema", s.just.schema_id}};
        break;
      case Justification::Kind::AxiomNonLogical:
        j["just"] = {{"kind", "axiom-nonlogical"}};
        break;
      case Justification::Kind::ModusPonens:
        j["just"] = {{"kind", "mp"}, {"i", s.just.i}, {"j", s.just.j}};
        break;
      case Justification::Kind::Generalization:
        j["just"] = {{"kind", "gen"}, {"i", s.just.i}, {"var", fol::var_name(s.just.var)}};
        break;
    }
    steps.push_back(j);
  }
  nlohmann::json out;
  out["steps"] = steps;
  return out.dump(2);
}

Proof proof_from_json(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  Proof p;
  for (const auto& s : doc.at("steps")) {
    ProofStep step;
    step.formula = fol::parse_formula(s.at("formula").get<std::string>());
    const auto& j = s.at("just");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "axiom-logical") {
      step.just.kind = Justification::Kind::AxiomLogical;
      step.just.schema_id = j.value("schema", 0u);
    } else if (kind == "axiom-nonlogical") {
      step.just.kind = Justification::Kind::AxiomNonLogical;
    } else if (kind == "mp") {
      step.just.kind = Justification::Kind::ModusPonens;
      step.just.i = j.at("i").get<uint32_t>();
      step.just.j = j.at("j").get<uint32_t>();
    } else if (kind == "gen") {
      step.just.kind = Justification::Kind::Generalization;
      step.just.i = j.at("i").get<uint32_t>();
      step.just.var = fol::var_index(j.at("var").get<std::string>());
    } else {
      throw std::invalid_argument("unknown justification kind: " + kind);
    }
    p.steps.push_back(step);
  }
  return p;
}

}  // namespace rosser::proofs
