#include "rosser/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace rosser::fol {

std::string var_name(VarIndex v) {
  if (v < 26) return std::string(1, static_cast<char>('a' + v));
  return "v" + std::to_string(v - 26);
}

VarIndex var_index(const std::string& name) {
  if (name.size() == 1 && name[0] >= 'a' && name[0] <= 'z') return name[0] - 'a';
  if (name.size() >= 2 && name[0] == 'v') {
    VarIndex k = 0;
    for (size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i])))
        throw std::invalid_argument("bad variable name: " + name);
      k = k * 10 + (name[i] - '0');
    }
    return 26 + k;
  }
  throw std::invalid_argument("bad variable name: " + name);
}

namespace {

// Append-only store whose published elements never move. The chunk pointer
// vector is reserved up front so readers can index without locking.
template <typename T>
class ChunkedStore {
 public:
  ChunkedStore() { chunks_.reserve(1 << 16); }

  uint32_t push(T value) {
    if (size_ % kChunk == 0) chunks_.push_back(std::make_unique<T[]>(kChunk));
    chunks_[size_ / kChunk][size_ % kChunk] = std::move(value);
    return static_cast<uint32_t>(size_++);
  }

  const T& operator[](uint32_t i) const { return chunks_[i / kChunk][i % kChunk]; }
  size_t size() const { return size_; }

 private:
  static constexpr size_t kChunk = 1 << 12;
  std::vector<std::unique_ptr<T[]>> chunks_;
  size_t size_ = 0;
};

struct TermNode {
  TermKind kind;
  VarIndex var = 0;   // Var
  uint64_t run = 0;   // Succ run length
  uint32_t a = 0, b = 0;
  uint32_t varset = 0;
  uint64_t tsize = 0;
};

struct FormulaNode {
  FormulaKind kind;
  VarIndex bvar = 0;
  uint32_t a = 0, b = 0;  // term ids for Eq/Le, formula ids otherwise
  uint32_t varset = 0;
  uint64_t tsize = 0;
};

struct KeyHash {
  size_t operator()(const std::tuple<uint8_t, uint64_t, uint64_t, uint64_t>& k) const {
    auto [t, x, y, z] = k;
    uint64_t h = 1469598103934665603ull ^ t;
    for (uint64_t v : {x, y, z}) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

class Arena {
 public:
  // --- variable sets (sorted, interned) ---
  uint32_t empty_set() { return 0; }

  uint32_t intern_set(std::vector<VarIndex> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::lock_guard lock(mu_);
    auto it = set_intern_.find(vs);
    if (it != set_intern_.end()) return it->second;
    uint32_t id = sets_.push(vs);
    set_intern_.emplace(std::move(vs), id);
    return id;
  }

  const std::vector<VarIndex>& set(uint32_t id) const { return sets_[id]; }

  uint32_t union_sets(uint32_t a, uint32_t b) {
    if (a == b) return a;
    const auto& va = sets_[a];
    const auto& vb = sets_[b];
    if (va.empty()) return b;
    if (vb.empty()) return a;
    std::vector<VarIndex> out;
    out.reserve(va.size() + vb.size());
    std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(out));
    return intern_set(std::move(out));
  }

  uint32_t erase_from_set(uint32_t s, VarIndex v) {
    const auto& vs = sets_[s];
    if (!std::binary_search(vs.begin(), vs.end(), v)) return s;
    std::vector<VarIndex> out;
    out.reserve(vs.size() - 1);
    for (VarIndex x : vs)
      if (x != v) out.push_back(x);
    return intern_set(std::move(out));
  }

  // --- terms ---
  uint32_t intern_term(TermNode n) {
    auto key = std::make_tuple(static_cast<uint8_t>(n.kind),
                               (static_cast<uint64_t>(n.var) << 32) | n.run, n.a, n.b);
    std::lock_guard lock(mu_);
    auto it = term_intern_.find(key);
    if (it != term_intern_.end()) return it->second;
    uint32_t id = terms_.push(n);
    term_intern_.emplace(key, id);
    return id;
  }

  const TermNode& term(uint32_t id) const { return terms_[id]; }

  // --- formulas ---
  uint32_t intern_formula(FormulaNode n) {
    auto key = std::make_tuple(static_cast<uint8_t>(n.kind) | 0x80,
                               static_cast<uint64_t>(n.bvar), n.a, n.b);
    std::lock_guard lock(mu_);
    auto it = formula_intern_.find(key);
    if (it != formula_intern_.end()) return it->second;
    uint32_t id = formulas_.push(n);
    formula_intern_.emplace(key, id);
    return id;
  }

  const FormulaNode& formula(uint32_t id) const { return formulas_[id]; }

  static Arena& get() {
    static Arena a;
    return a;
  }

 private:
  Arena() {
    // id 0 is the empty variable set
    sets_.push({});
    set_intern_.emplace(std::vector<VarIndex>{}, 0u);
  }

  std::mutex mu_;
  ChunkedStore<TermNode> terms_;
  ChunkedStore<FormulaNode> formulas_;
  ChunkedStore<std::vector<VarIndex>> sets_;
  std::unordered_map<std::tuple<uint8_t, uint64_t, uint64_t, uint64_t>, uint32_t, KeyHash>
      term_intern_;
  std::unordered_map<std::tuple<uint8_t, uint64_t, uint64_t, uint64_t>, uint32_t, KeyHash>
      formula_intern_;
  std::map<std::vector<VarIndex>, uint32_t> set_intern_;
};

Arena& A() { return Arena::get(); }

}  // namespace

// --- Term accessors ---

TermKind Term::kind() const { return A().term(id_).kind; }
VarIndex Term::var() const { return A().term(id_).var; }
uint64_t Term::succ_count() const { return A().term(id_).run; }
Term Term::succ_child() const { return Term(A().term(id_).a); }
Term Term::left() const { return Term(A().term(id_).a); }
Term Term::right() const { return Term(A().term(id_).b); }
uint64_t Term::tree_size() const { return A().term(id_).tsize; }
const std::vector<VarIndex>& Term::free_vars() const { return A().set(A().term(id_).varset); }

Term Term::succ_peel() const {
  const TermNode& n = A().term(id_);
  if (n.run == 1) return Term(n.a);
  return succ_run(Term(n.a), n.run - 1);
}

FormulaKind Formula::kind() const { return A().formula(id_).kind; }
Term Formula::term_left() const { return Term::from_raw(A().formula(id_).a); }
Term Formula::term_right() const { return Term::from_raw(A().formula(id_).b); }
Formula Formula::sub_left() const { return Formula(A().formula(id_).a); }
Formula Formula::sub_right() const { return Formula(A().formula(id_).b); }
VarIndex Formula::bound_var() const { return A().formula(id_).bvar; }
Formula Formula::body() const { return Formula(A().formula(id_).a); }
uint64_t Formula::tree_size() const { return A().formula(id_).tsize; }
const std::vector<VarIndex>& Formula::free_vars() const {
  return A().set(A().formula(id_).varset);
}

// --- constructors ---

Term var(VarIndex v) {
  TermNode n{TermKind::Var};
  n.var = v;
  n.varset = A().intern_set({v});
  n.tsize = 1;
  return Term::from_raw(A().intern_term(n));
}

Term var(const std::string& name) { return var(var_index(name)); }

Term zero() {
  TermNode n{TermKind::Zero};
  n.tsize = 1;
  return Term::from_raw(A().intern_term(n));
}

Term succ_run(Term t, uint64_t count) {
  if (count == 0) return t;
  TermNode n{TermKind::Succ};
  if (t.kind() == TermKind::Succ) {
    n.a = t.succ_child().raw_id();
    n.run = t.succ_count() + count;
  } else {
    n.a = t.raw_id();
    n.run = count;
  }
  const TermNode& child = A().term(n.a);
  n.varset = child.varset;
  n.tsize = child.tsize + n.run;
  return Term::from_raw(A().intern_term(n));
}

Term succ(Term t) { return succ_run(t, 1); }

namespace {
Term binary_term(TermKind k, Term a, Term b) {
  TermNode n{k};
  n.a = a.raw_id();
  n.b = b.raw_id();
  n.varset = A().union_sets(A().term(n.a).varset, A().term(n.b).varset);
  n.tsize = 1 + a.tree_size() + b.tree_size();
  return Term::from_raw(A().intern_term(n));
}
}  // namespace

Term plus(Term a, Term b) { return binary_term(TermKind::Plus, a, b); }
Term times(Term a, Term b) { return binary_term(TermKind::Times, a, b); }

namespace {
Formula atom(FormulaKind k, Term a, Term b) {
  FormulaNode n{k};
  n.a = a.raw_id();
  n.b = b.raw_id();
  n.varset = A().union_sets(A().term(n.a).varset, A().term(n.b).varset);
  n.tsize = 1 + a.tree_size() + b.tree_size();
  return Formula::from_raw(A().intern_formula(n));
}
Formula binary_formula(FormulaKind k, Formula a, Formula b) {
  FormulaNode n{k};
  n.a = a.raw_id();
  n.b = b.raw_id();
  n.varset = A().union_sets(A().formula(n.a).varset, A().formula(n.b).varset);
  n.tsize = 1 + a.tree_size() + b.tree_size();
  return Formula::from_raw(A().intern_formula(n));
}
}  // namespace

Formula eq(Term a, Term b) { return atom(FormulaKind::Eq, a, b); }
Formula le(Term a, Term b) { return atom(FormulaKind::Le, a, b); }

Formula lnot(Formula a) {
  FormulaNode n{FormulaKind::Not};
  n.a = a.raw_id();
  n.varset = A().formula(n.a).varset;
  n.tsize = 1 + a.tree_size();
  return Formula::from_raw(A().intern_formula(n));
}

Formula lor(Formula a, Formula b) { return binary_formula(FormulaKind::Or, a, b); }
Formula land(Formula a, Formula b) { return binary_formula(FormulaKind::And, a, b); }
Formula implies(Formula a, Formula b) { return binary_formula(FormulaKind::Implies, a, b); }

namespace {
Formula quantifier(FormulaKind k, VarIndex v, Formula body) {
  FormulaNode n{k};
  n.bvar = v;
  n.a = body.raw_id();
  n.varset = A().erase_from_set(A().formula(n.a).varset, v);
  n.tsize = 2 + body.tree_size();
  return Formula::from_raw(A().intern_formula(n));
}
}  // namespace

Formula forall(VarIndex v, Formula body) { return quantifier(FormulaKind::ForAll, v, body); }
Formula exists(VarIndex v, Formula body) { return quantifier(FormulaKind::Exists, v, body); }

Term numeral(const mpz_class& n) {
  if (n < 0 || !n.fits_ulong_p())
    throw std::invalid_argument("numeral: value out of unary range");
  return succ_run(zero(), n.get_ui());
}

Term efficient_numeral(const mpz_class& n) {
  if (n < 4) return numeral(n);
  // base-4 digits, least significant first
  std::vector<unsigned> digits;
  mpz_class m = n;
  while (m > 0) {
    digits.push_back(mpz_class(m % 4).get_ui());
    m /= 4;
  }
  Term four = numeral(4);
  Term t = numeral(digits.back());
  for (size_t i = digits.size() - 1; i-- > 0;)
    t = succ_run(times(four, t), digits[i]);
  return t;
}

Term embed_numeral(const mpz_class& n, const mpz_class& threshold) {
  return n <= threshold ? numeral(n) : efficient_numeral(n);
}

// --- printing (iterative; S-runs and deep chains must not recurse) ---

namespace {

struct PrintItem {
  const char* lit = nullptr;
  Term t;
  Formula f;
  int prec = 0;
  uint8_t what = 0;  // 0 literal, 1 term, 2 formula
};

void print_term_into(std::vector<PrintItem>& stack, Term t, int prec) {
  stack.push_back({nullptr, t, {}, prec, 1});
}
void print_formula_into(std::vector<PrintItem>& stack, Formula f, int prec) {
  stack.push_back({nullptr, {}, f, prec, 2});
}
void lit(std::vector<PrintItem>& stack, const char* s) { stack.push_back({s, {}, {}, 0, 0}); }

std::string run_printer(std::vector<PrintItem>& stack, std::string out = "") {
  while (!stack.empty()) {
    PrintItem item = stack.back();
    stack.pop_back();
    if (item.what == 0) {
      out += item.lit;
      continue;
    }
    if (item.what == 1) {
      Term t = item.t;
      switch (t.kind()) {
        case TermKind::Var:
          out += var_name(t.var());
          break;
        case TermKind::Zero:
          out += '0';
          break;
        case TermKind::Succ: {
          out.append(static_cast<size_t>(t.succ_count()), 'S');
          Term c = t.succ_child();
          if (c.kind() == TermKind::Zero || c.kind() == TermKind::Var) {
            print_term_into(stack, c, 3);
          } else {
            lit(stack, ")");
            print_term_into(stack, c, 0);
            lit(stack, "(");
          }
          break;
        }
        case TermKind::Plus: {
          bool parens = item.prec > 0;
          if (parens) lit(stack, ")");
          print_term_into(stack, t.right(), 1);
          lit(stack, "+");
          print_term_into(stack, t.left(), 0);
          if (parens) lit(stack, "(");
          break;
        }
        case TermKind::Times: {
          bool parens = item.prec > 1;
          if (parens) lit(stack, ")");
          print_term_into(stack, t.right(), 2);
          lit(stack, "*");
          print_term_into(stack, t.left(), 1);
          if (parens) lit(stack, "(");
          break;
        }
      }
      continue;
    }
    Formula f = item.f;
    switch (f.kind()) {
      case FormulaKind::Eq:
      case FormulaKind::Le: {
        print_term_into(stack, f.term_right(), 1);
        lit(stack, f.kind() == FormulaKind::Eq ? "=" : "<=");
        print_term_into(stack, f.term_left(), 1);
        break;
      }
      case FormulaKind::Not:
        print_formula_into(stack, f.sub_left(), 3);
        lit(stack, "~");
        break;
      case FormulaKind::Implies: {
        bool parens = item.prec > 0;
        if (parens) lit(stack, ")");
        print_formula_into(stack, f.sub_right(), 0);
        lit(stack, " -> ");
        print_formula_into(stack, f.sub_left(), 1);
        if (parens) lit(stack, "(");
        break;
      }
      case FormulaKind::Or: {
        bool parens = item.prec > 1;
        if (parens) lit(stack, ")");
        print_formula_into(stack, f.sub_right(), 2);
        lit(stack, " | ");
        print_formula_into(stack, f.sub_left(), 1);
        if (parens) lit(stack, "(");
        break;
      }
      case FormulaKind::And: {
        bool parens = item.prec > 2;
        if (parens) lit(stack, ")");
        print_formula_into(stack, f.sub_right(), 3);
        lit(stack, " & ");
        print_formula_into(stack, f.sub_left(), 2);
        if (parens) lit(stack, "(");
        break;
      }
      case FormulaKind::ForAll:
      case FormulaKind::Exists: {
        out += f.kind() == FormulaKind::ForAll ? "all " : "exists ";
        out += var_name(f.bound_var());
        out += " (";
        lit(stack, ")");
        print_formula_into(stack, f.body(), 0);
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::string Term::to_string() const {
  std::vector<PrintItem> stack;
  print_term_into(stack, *this, 0);
  return run_printer(stack);
}

std::string Formula::to_string() const {
  std::vector<PrintItem> stack;
  print_formula_into(stack, *this, 0);
  return run_printer(stack);
}

// --- parsing ---

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(const std::string& text) : text_(text) {}

  Formula parse_full_formula() {
    Formula f = parse_implies();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

  Term parse_full_term() {
    Term t = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  static constexpr int kMaxDepth = 4096;

  Formula parse_implies() {
    Guard g(this);
    Formula a = parse_or();
    skip_ws();
    if (try_tok("->")) return implies(a, parse_implies());
    return a;
  }

  Formula parse_or() {
    Guard g(this);
    Formula a = parse_and();
    while (true) {
      skip_ws();
      // '|' but not part of another token
      if (peek() == '|') {
        ++pos_;
        a = lor(a, parse_and());
      } else {
        return a;
      }
    }
  }

  Formula parse_and() {
    Guard g(this);
    Formula a = parse_unary();
    while (true) {
      skip_ws();
      if (peek() == '&') {
        ++pos_;
        a = land(a, parse_unary());
      } else {
        return a;
      }
    }
  }

  Formula parse_unary() {
    Guard g(this);
    skip_ws();
    if (peek() == '~') {
      ++pos_;
      return lnot(parse_unary());
    }
    if (try_kw("all")) {
      VarIndex v = parse_var();
      return forall(v, parse_unary());
    }
    if (try_kw("exists")) {
      VarIndex v = parse_var();
      return exists(v, parse_unary());
    }
    if (peek() == '(') {
      // '(' may open a formula group or a parenthesized term as in
      // "(c+0)<=c"; try the formula reading first and fall back.
      size_t save = pos_;
      try {
        ++pos_;
        Formula f = parse_implies();
        expect(')');
        skip_ws();
        char c = peek();
        if (c == '=' || c == '<' || c == '+' || c == '*') {
          pos_ = save;
          return parse_atom();
        }
        return f;
      } catch (const ParseError&) {
        pos_ = save;
        return parse_atom();
      }
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Term a = parse_sum();
    skip_ws();
    if (try_tok("<=")) return le(a, parse_sum());
    if (peek() == '=') {
      ++pos_;
      return eq(a, parse_sum());
    }
    fail("expected '=' or '<='");
  }

  Term parse_sum() {
    Guard g(this);
    Term a = parse_product();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        a = plus(a, parse_product());
      } else {
        return a;
      }
    }
  }

  Term parse_product() {
    Guard g(this);
    Term a = parse_factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        a = times(a, parse_factor());
      } else {
        return a;
      }
    }
  }

  Term parse_factor() {
    Guard g(this);
    skip_ws();
    if (peek() == 'S') {
      uint64_t run = 0;
      while (peek() == 'S') {
        ++pos_;
        ++run;
      }
      return succ_run(parse_factor(), run);
    }
    if (peek() == '0') {
      ++pos_;
      return zero();
    }
    if (peek() == '(') {
      ++pos_;
      Term t = parse_sum();
      expect(')');
      return t;
    }
    if (std::islower(static_cast<unsigned char>(peek()))) return var(parse_var());
    fail("expected a term");
  }

  VarIndex parse_var() {
    skip_ws();
    if (!std::islower(static_cast<unsigned char>(peek()))) fail("expected a variable");
    char c = text_[pos_++];
    if (c == 'v' && pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      VarIndex k = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        k = k * 10 + (text_[pos_++] - '0');
      return 26 + k;
    }
    if (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
      fail("multi-letter identifier");
    return c - 'a';
  }

  struct Guard {
    FormulaParser* p;
    explicit Guard(FormulaParser* p) : p(p) {
      if (++p->depth_ > kMaxDepth) p->fail("nesting too deep");
    }
    ~Guard() { --p->depth_; }
  };

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool try_tok(const char* tok) {
    skip_ws();
    size_t len = std::char_traits<char>::length(tok);
    if (text_.compare(pos_, len, tok) == 0) {
      pos_ += len;
      return true;
    }
    return false;
  }

  bool try_kw(const char* kw) {
    skip_ws();
    size_t len = std::char_traits<char>::length(kw);
    if (text_.compare(pos_, len, kw) == 0) {
      size_t after = pos_ + len;
      if (after >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[after]))) {
        pos_ = after;
        return true;
      }
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  const std::string& text_;
  size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) {
  return FormulaParser(text).parse_full_formula();
}

Term parse_term(const std::string& text) { return FormulaParser(text).parse_full_term(); }

// --- substitution ---

namespace {

bool in_set(const std::vector<VarIndex>& vs, VarIndex v) {
  return std::binary_search(vs.begin(), vs.end(), v);
}

VarIndex fresh_var(const std::vector<const std::vector<VarIndex>*>& avoid) {
  for (VarIndex k = 26;; ++k) {
    bool clash = false;
    for (const auto* vs : avoid)
      if (in_set(*vs, k)) {
        clash = true;
        break;
      }
    if (!clash) return k;
  }
}

Term subst_term(Term s, VarIndex v, Term t,
                std::unordered_map<uint32_t, Term>& memo) {
  if (!in_set(s.free_vars(), v)) return s;
  auto it = memo.find(s.raw_id());
  if (it != memo.end()) return it->second;
  Term out;
  switch (s.kind()) {
    case TermKind::Var:
      out = t;  // s.var() == v since v is free in s
      break;
    case TermKind::Zero:
      out = s;
      break;
    case TermKind::Succ:
      out = succ_run(subst_term(s.succ_child(), v, t, memo), s.succ_count());
      break;
    case TermKind::Plus:
      out = plus(subst_term(s.left(), v, t, memo), subst_term(s.right(), v, t, memo));
      break;
    case TermKind::Times:
      out = times(subst_term(s.left(), v, t, memo), subst_term(s.right(), v, t, memo));
      break;
  }
  memo.emplace(s.raw_id(), out);
  return out;
}

Formula subst_formula(Formula phi, VarIndex v, Term t,
                      std::unordered_map<uint32_t, Formula>& fmemo,
                      std::unordered_map<uint32_t, Term>& tmemo) {
  if (!in_set(phi.free_vars(), v)) return phi;
  auto it = fmemo.find(phi.raw_id());
  if (it != fmemo.end()) return it->second;
  Formula out;
  switch (phi.kind()) {
    case FormulaKind::Eq:
      out = eq(subst_term(phi.term_left(), v, t, tmemo),
               subst_term(phi.term_right(), v, t, tmemo));
      break;
    case FormulaKind::Le:
      out = le(subst_term(phi.term_left(), v, t, tmemo),
               subst_term(phi.term_right(), v, t, tmemo));
      break;
    case FormulaKind::Not:
      out = lnot(subst_formula(phi.sub_left(), v, t, fmemo, tmemo));
      break;
    case FormulaKind::Or:
      out = lor(subst_formula(phi.sub_left(), v, t, fmemo, tmemo),
                subst_formula(phi.sub_right(), v, t, fmemo, tmemo));
      break;
    case FormulaKind::And:
      out = land(subst_formula(phi.sub_left(), v, t, fmemo, tmemo),
                 subst_formula(phi.sub_right(), v, t, fmemo, tmemo));
      break;
    case FormulaKind::Implies:
      out = implies(subst_formula(phi.sub_left(), v, t, fmemo, tmemo),
                    subst_formula(phi.sub_right(), v, t, fmemo, tmemo));
      break;
    case FormulaKind::ForAll:
    case FormulaKind::Exists: {
      VarIndex x = phi.bound_var();
      Formula body = phi.body();
      // v is free in phi, hence x != v
      if (in_set(t.free_vars(), x)) {
        // capture threatened: rename binder deterministically
        VarIndex y = fresh_var({&body.free_vars(), &t.free_vars(),
                                &var(v).free_vars()});
        Formula renamed = substitute(body, x, var(y));
        Formula inner = subst_formula(renamed, v, t, fmemo, tmemo);
        out = phi.kind() == FormulaKind::ForAll ? forall(y, inner) : exists(y, inner);
      } else {
        Formula inner = subst_formula(body, v, t, fmemo, tmemo);
        out = phi.kind() == FormulaKind::ForAll ? forall(x, inner) : exists(x, inner);
      }
      break;
    }
  }
  fmemo.emplace(phi.raw_id(), out);
  return out;
}

}  // namespace

Formula substitute(Formula phi, VarIndex v, Term t) {
  std::unordered_map<uint32_t, Formula> fmemo;
  std::unordered_map<uint32_t, Term> tmemo;
  return subst_formula(phi, v, t, fmemo, tmemo);
}

Term substitute(Term s, VarIndex v, Term t) {
  std::unordered_map<uint32_t, Term> memo;
  return subst_term(s, v, t, memo);
}

// --- standard-model term evaluation (iterative post-order) ---

mpz_class denote(Term t, const std::map<VarIndex, mpz_class>& env) {
  std::unordered_map<uint32_t, mpz_class> memo;
  std::vector<std::pair<Term, bool>> stack{{t, false}};
  while (!stack.empty()) {
    auto [cur, expanded] = stack.back();
    stack.pop_back();
    if (memo.count(cur.raw_id())) continue;
    if (!expanded) {
      stack.push_back({cur, true});
      switch (cur.kind()) {
        case TermKind::Succ:
          stack.push_back({cur.succ_child(), false});
          break;
        case TermKind::Plus:
        case TermKind::Times:
          stack.push_back({cur.left(), false});
          stack.push_back({cur.right(), false});
          break;
        default:
          break;
      }
      continue;
    }
    switch (cur.kind()) {
      case TermKind::Var: {
        auto it = env.find(cur.var());
        if (it == env.end())
          throw std::invalid_argument("denote: unbound variable " + var_name(cur.var()));
        memo.emplace(cur.raw_id(), it->second);
        break;
      }
      case TermKind::Zero:
        memo.emplace(cur.raw_id(), 0);
        break;
      case TermKind::Succ:
        memo.emplace(cur.raw_id(), memo.at(cur.succ_child().raw_id()) + cur.succ_count());
        break;
      case TermKind::Plus:
        memo.emplace(cur.raw_id(),
                     memo.at(cur.left().raw_id()) + memo.at(cur.right().raw_id()));
        break;
      case TermKind::Times:
        memo.emplace(cur.raw_id(),
                     memo.at(cur.left().raw_id()) * memo.at(cur.right().raw_id()));
        break;
    }
  }
  return memo.at(t.raw_id());
}

uint64_t dag_size(Formula f) {
  std::vector<uint64_t> seen;  // tagged ids: formulas even, terms odd
  std::vector<std::pair<bool, uint32_t>> stack{{true, f.raw_id()}};
  std::unordered_map<uint64_t, bool> visited;
  uint64_t count = 0;
  while (!stack.empty()) {
    auto [is_formula, id] = stack.back();
    stack.pop_back();
    uint64_t key = (static_cast<uint64_t>(id) << 1) | (is_formula ? 1 : 0);
    if (visited.count(key)) continue;
    visited.emplace(key, true);
    ++count;
    if (is_formula) {
      Formula g = Formula::from_raw(id);
      switch (g.kind()) {
        case FormulaKind::Eq:
        case FormulaKind::Le:
          stack.push_back({false, g.term_left().raw_id()});
          stack.push_back({false, g.term_right().raw_id()});
          break;
        case FormulaKind::Not:
          stack.push_back({true, g.sub_left().raw_id()});
          break;
        case FormulaKind::Or:
        case FormulaKind::And:
        case FormulaKind::Implies:
          stack.push_back({true, g.sub_left().raw_id()});
          stack.push_back({true, g.sub_right().raw_id()});
          break;
        case FormulaKind::ForAll:
        case FormulaKind::Exists:
          stack.push_back({true, g.body().raw_id()});
          break;
      }
    } else {
      Term t = Term::from_raw(id);
      switch (t.kind()) {
        case TermKind::Succ:
          stack.push_back({false, t.succ_child().raw_id()});
          break;
        case TermKind::Plus:
        case TermKind::Times:
          stack.push_back({false, t.left().raw_id()});
          stack.push_back({false, t.right().raw_id()});
          break;
        default:
          break;
      }
    }
  }
  (void)seen;
  return count;
}

namespace {
Formula fold_balanced(const std::vector<Formula>& fs, size_t lo, size_t hi, bool conj) {
  if (hi - lo == 1) return fs[lo];
  size_t mid = lo + (hi - lo) / 2;
  Formula l = fold_balanced(fs, lo, mid, conj);
  Formula r = fold_balanced(fs, mid, hi, conj);
  return conj ? land(l, r) : lor(l, r);
}
}  // namespace

Formula conj_balanced(const std::vector<Formula>& fs) {
  if (fs.empty()) return eq(zero(), zero());
  return fold_balanced(fs, 0, fs.size(), true);
}

Formula disj_balanced(const std::vector<Formula>& fs) {
  if (fs.empty()) throw std::invalid_argument("empty disjunction");
  return fold_balanced(fs, 0, fs.size(), false);
}

}  // namespace rosser::fol
