#include "rosser/pr_library.hpp"

namespace rosser::pr::lib {

namespace {

constexpr unsigned kB = godel::kBase;

using Args = std::vector<mpz_class>;

mpz_class off_value(const mpz_class& n) {
  return (godel::base_power(n) - 1) / (kB - 1);
}

}  // namespace

PrRef add() {
  static const PrRef fn = with_intrinsic(
      // add(a, 0) = a; add(a, b+1) = S(add(a, b))
      primrec(proj(1, 0), ap(succ_fn(), {proj(3, 2)})), "add",
      [](const Args& a) { return a[0] + a[1]; });
  return fn;
}

PrRef mul() {
  static const PrRef fn = with_intrinsic(
      primrec(zero_fn(1), ap(add(), {proj(3, 2), proj(3, 0)})), "mul",
      [](const Args& a) { return a[0] * a[1]; });
  return fn;
}

PrRef pred1() {
  static const PrRef fn = with_intrinsic(
      // pred(0) = 0; pred(k+1) = k
      primrec(zero_fn(0), proj(2, 0)), "pred",
      [](const Args& a) { return a[0] == 0 ? mpz_class(0) : mpz_class(a[0] - 1); });
  return fn;
}

PrRef monus() {
  static const PrRef fn = with_intrinsic(
      primrec(proj(1, 0), ap(pred1(), {proj(3, 2)})), "monus",
      [](const Args& a) { return a[0] > a[1] ? mpz_class(a[0] - a[1]) : mpz_class(0); });
  return fn;
}

PrRef sign() {
  static const PrRef fn = with_intrinsic(
      primrec(zero_fn(0), ap(succ_fn(), {zero_fn(2)})), "sign",
      [](const Args& a) { return mpz_class(a[0] == 0 ? 0 : 1); });
  return fn;
}

PrRef eqz() {
  static const PrRef fn = with_intrinsic(
      // 1 - sign(a)
      ap(monus(), {ap(succ_fn(), {zero_fn(1)}), sign()}), "eqz",
      [](const Args& a) { return mpz_class(a[0] == 0 ? 1 : 0); });
  return fn;
}

PrRef le2() {
  static const PrRef fn = with_intrinsic(
      ap(eqz(), {monus()}), "le",
      [](const Args& a) { return mpz_class(a[0] <= a[1] ? 1 : 0); });
  return fn;
}

PrRef lt2() {
  static const PrRef fn = with_intrinsic(
      ap(le2(), {ap(succ_fn(), {proj(2, 0)}), proj(2, 1)}), "lt",
      [](const Args& a) { return mpz_class(a[0] < a[1] ? 1 : 0); });
  return fn;
}

PrRef eq2() {
  static const PrRef fn = with_intrinsic(
      ap(mul(), {le2(), ap(le2(), {proj(2, 1), proj(2, 0)})}), "eq",
      [](const Args& a) { return mpz_class(a[0] == a[1] ? 1 : 0); });
  return fn;
}

PrRef and2() {
  static const PrRef fn = with_intrinsic(
      ap(sign(), {mul()}), "and",
      [](const Args& a) { return mpz_class(a[0] != 0 && a[1] != 0 ? 1 : 0); });
  return fn;
}

PrRef or2() {
  static const PrRef fn = with_intrinsic(
      ap(sign(), {add()}), "or",
      [](const Args& a) { return mpz_class(a[0] != 0 || a[1] != 0 ? 1 : 0); });
  return fn;
}

PrRef not1() {
  static const PrRef fn = with_intrinsic(ap(eqz(), {sign()}), "not", [](const Args& a) {
    return mpz_class(a[0] == 0 ? 1 : 0);
  });
  return fn;
}

PrRef ifz() {
  static const PrRef fn = with_intrinsic(
      // eqz(c)*a + sign(c)*b
      ap(add(), {ap(mul(), {ap(eqz(), {proj(3, 0)}), proj(3, 1)}),
                 ap(mul(), {ap(sign(), {proj(3, 0)}), proj(3, 2)})}),
      "ifz", [](const Args& a) { return a[0] == 0 ? a[1] : a[2]; },
      /*lazy_if=*/true);
  return fn;
}

PrRef divide() {
  static const PrRef fn = [] {
    // least q <= a with a < b*(q+1); none when b = 0, so guard with ifz
    PrRef search = bounded_search(
        ap(lt2(), {proj(3, 0), ap(mul(), {proj(3, 1), ap(succ_fn(), {proj(3, 2)})})}),
        proj(2, 0));
    PrRef guarded = ap(ifz(), {proj(2, 1), zero_fn(2), search});
    return with_intrinsic(guarded, "div", [](const Args& a) {
      return a[1] == 0 ? mpz_class(0) : mpz_class(a[0] / a[1]);
    });
  }();
  return fn;
}

PrRef modulo() {
  static const PrRef fn = with_intrinsic(
      ap(monus(), {proj(2, 0), ap(mul(), {proj(2, 1), divide()})}), "mod",
      [](const Args& a) { return a[1] == 0 ? a[0] : mpz_class(a[0] % a[1]); });
  return fn;
}

PrRef power() {
  static const PrRef fn = with_intrinsic(
      primrec(ap(succ_fn(), {zero_fn(1)}), ap(mul(), {proj(3, 0), proj(3, 2)})), "pow",
      [](const Args& a) {
        if (!a[1].fits_ulong_p()) throw EvalLimit("pow: exponent too large");
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), a[0].get_mpz_t(), a[1].get_ui());
        return out;
      });
  return fn;
}

PrRef cantor_pair() {
  static const PrRef fn = [] {
    // (a + b) * (a + b + 1) / 2 + b
    PrRef s = ap(add(), {proj(2, 0), proj(2, 1)});
    PrRef prod = ap(mul(), {s, ap(succ_fn(), {s})});
    PrRef half = ap(divide(), {prod, constant(2, 2)});
    return with_intrinsic(ap(add(), {half, proj(2, 1)}), "pair", [](const Args& a) {
      mpz_class s = a[0] + a[1];
      return mpz_class(s * (s + 1) / 2 + a[1]);
    });
  }();
  return fn;
}

namespace {

// w = least w with p < (w+1)(w+2)/2; then snd = p - w(w+1)/2, fst = w - snd.
PrRef pair_diag() {
  static const PrRef fn = [] {
    PrRef wp1 = ap(succ_fn(), {proj(2, 1)});
    PrRef wp2 = ap(succ_fn(), {wp1});
    PrRef tri = ap(divide(), {ap(mul(), {wp1, wp2}), constant(2, 2)});
    return bounded_search(ap(lt2(), {proj(2, 0), tri}), proj(1, 0));
  }();
  return fn;
}

mpz_class diag_of(const mpz_class& p) {
  mpz_class w = (sqrt(8 * p + 1) - 1) / 2;
  while ((w + 1) * (w + 2) / 2 <= p) ++w;
  while (w > 0 && w * (w + 1) / 2 > p) --w;
  return w;
}

}  // namespace

PrRef cantor_snd() {
  static const PrRef fn = [] {
    PrRef w = pair_diag();
    PrRef tri = ap(divide(), {ap(mul(), {w, ap(succ_fn(), {w})}), constant(1, 2)});
    return with_intrinsic(ap(monus(), {proj(1, 0), tri}), "snd", [](const Args& a) {
      mpz_class w = diag_of(a[0]);
      return mpz_class(a[0] - w * (w + 1) / 2);
    });
  }();
  return fn;
}

PrRef cantor_fst() {
  static const PrRef fn = with_intrinsic(
      ap(monus(), {pair_diag(), cantor_snd()}), "fst", [](const Args& a) {
        mpz_class w = diag_of(a[0]);
        return mpz_class(w - (a[0] - w * (w + 1) / 2));
      });
  return fn;
}

PrRef constant(unsigned arity, const mpz_class& k) {
  if (!k.fits_ulong_p() || k > 1000000)
    throw std::invalid_argument("constant: unary constants must stay small");
  unsigned long n = k.get_ui();
  PrRef out = zero_fn(arity);
  for (unsigned long i = 0; i < n; ++i) out = ap(succ_fn(), {out});
  mpz_class value = k;
  return with_intrinsic(out, "const", [value](const Args&) { return value; });
}

PrRef pow_base() {
  static const PrRef fn = with_intrinsic(
      ap(power(), {constant(1, kB), proj(1, 0)}), "powK",
      [](const Args& a) { return godel::base_power(a[0]); });
  return fn;
}

PrRef str_offset() {
  static const PrRef fn = with_intrinsic(
      ap(divide(), {ap(monus(), {pow_base(), constant(1, 1)}), constant(1, kB - 1)}), "offK",
      [](const Args& a) { return off_value(a[0]); });
  return fn;
}

PrRef str_len() {
  static const PrRef fn = [] {
    // least L <= x with x < off(L+1)
    PrRef pred = ap(lt2(), {proj(2, 0), ap(str_offset(), {ap(succ_fn(), {proj(2, 1)})})});
    return with_intrinsic(bounded_search(pred, proj(1, 0)), "slen", [](const Args& a) {
      if (a[0] == 0) return mpz_class(0);
      size_t approx = mpz_sizeinbase(a[0].get_mpz_t(), kB);
      mpz_class len = approx;
      while (len > 1 && off_value(len) > a[0]) --len;
      while (off_value(len + 1) <= a[0]) ++len;
      return len;
    });
  }();
  return fn;
}

PrRef str_digit() {
  static const PrRef fn = [] {
    // digit_i(x) = ((x - off(len)) div K^(len-1-i)) mod K + 1, for i < len
    PrRef len = ap(str_len(), {proj(2, 0)});
    PrRef plain = ap(monus(), {proj(2, 0), ap(str_offset(), {len})});
    PrRef shift = ap(pow_base(), {ap(monus(), {len, ap(succ_fn(), {proj(2, 1)})})});
    PrRef digit = ap(add(), {ap(modulo(), {ap(divide(), {plain, shift}), constant(2, kB)}),
                             constant(2, 1)});
    // ifz takes its second argument when the condition is 0: le(len, i) = 0
    // exactly when i is in range
    PrRef fixed = ap(ifz(), {ap(le2(), {len, proj(2, 1)}), digit, zero_fn(2)});
    return with_intrinsic(fixed, "sdigit", [](const Args& a) {
      mpz_class len = eval_pr(str_len(), {a[0]});
      if (a[1] >= len) return mpz_class(0);
      mpz_class plain = a[0] - off_value(len);
      mpz_class shift = godel::base_power(len - 1 - a[1]);
      return mpz_class(plain / shift % kB + 1);
    });
  }();
  return fn;
}

PrRef str_sub() {
  static const PrRef fn = [] {
    // sub(x, i, m) = ((x - off(len)) div K^(len-i-m)) mod K^m + off(m), valid when i+m <= len
    PrRef len = ap(str_len(), {proj(3, 0)});
    PrRef plain = ap(monus(), {proj(3, 0), ap(str_offset(), {len})});
    PrRef shift = ap(pow_base(), {ap(monus(), {len, ap(add(), {proj(3, 1), proj(3, 2)})})});
    PrRef chunk = ap(modulo(), {ap(divide(), {plain, shift}), ap(pow_base(), {proj(3, 2)})});
    PrRef value = ap(add(), {chunk, ap(str_offset(), {proj(3, 2)})});
    PrRef in_range = ap(le2(), {ap(add(), {proj(3, 1), proj(3, 2)}), len});
    PrRef guarded = ap(ifz(), {in_range, zero_fn(3), value});
    return with_intrinsic(guarded, "ssub", [](const Args& a) {
      mpz_class len = eval_pr(str_len(), {a[0]});
      if (a[1] + a[2] > len) return mpz_class(0);
      if (a[2] == 0) return mpz_class(0);
      mpz_class plain = a[0] - off_value(len);
      mpz_class shift = godel::base_power(len - a[1] - a[2]);
      mpz_class chunk = plain / shift % godel::base_power(a[2]);
      return mpz_class(chunk + off_value(a[2]));
    });
  }();
  return fn;
}

PrRef str_concat() {
  static const PrRef fn = with_intrinsic(
      ap(add(), {ap(mul(), {proj(2, 0), ap(pow_base(), {ap(str_len(), {proj(2, 1)})})}),
                 proj(2, 1)}),
      "sconcat", [](const Args& a) {
        mpz_class len = eval_pr(str_len(), {a[1]});
        return mpz_class(a[0] * godel::base_power(len) + a[1]);
      });
  return fn;
}

PrRef str_run() {
  static const PrRef fn = with_intrinsic(
      ap(mul(), {proj(2, 0), ap(str_offset(), {proj(2, 1)})}), "srun",
      [](const Args& a) { return mpz_class(a[0] * off_value(a[1])); });
  return fn;
}

}  // namespace rosser::pr::lib
