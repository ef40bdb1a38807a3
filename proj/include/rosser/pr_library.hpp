#pragma once

#include "rosser/pr.hpp"

#include "rosser/coding.hpp"

namespace rosser::pr::lib {

// Arithmetic (all carry intrinsics; structures are honest PR definitions).
PrRef add();          // (a, b)
PrRef mul();          // (a, b)
PrRef pred1();        // (a)     a - 1 clipped
PrRef monus();        // (a, b)  a - b clipped
PrRef sign();         // (a)     0 if a = 0 else 1
PrRef eqz();          // (a)     1 if a = 0 else 0
PrRef le2();          // (a, b)  characteristic of a <= b
PrRef lt2();          // (a, b)
PrRef eq2();          // (a, b)
PrRef and2();         // 0/1 args
PrRef or2();
PrRef not1();
PrRef ifz();          // (c, a, b): a if c = 0 else b  (lazy dispatch in eval)
PrRef divide();       // (a, b), b = 0 gives 0
PrRef modulo();       // (a, b), b = 0 gives a
PrRef power();        // (a, b) a^b
PrRef cantor_pair();  // (a, b)
PrRef cantor_fst();   // (p)
PrRef cantor_snd();   // (p)

/// Constant function of the given arity. Unary structure (S^k 0), so the
/// compiled form is a plain numeral; keep k modest.
PrRef constant(unsigned arity, const mpz_class& k);

// Symbol-string views of numbers in the coding's bijective base (K = 29).
PrRef str_len();      // (x)        digit count
PrRef str_digit();    // (x, i)     i-th digit from the left, 0-based, in 1..K; 0 if out of range
PrRef str_sub();      // (x, i, m)  packed substring of m digits starting at i
PrRef str_concat();   // (x, y)
PrRef str_run();      // (s, n)     value of symbol s repeated n times
PrRef pow_base();     // (n)        K^n
PrRef str_offset();   // (n)        value of the all-ones string of length n: (K^n - 1)/(K - 1)

}  // namespace rosser::pr::lib
