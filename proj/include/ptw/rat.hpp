#ifndef PTW_RAT_HPP
#define PTW_RAT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptw {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ptw_error : std::runtime_error {
  explicit ptw_error(const std::string& what) : std::runtime_error(what) {}
};

#define PTW_ERROR(kind)                                        \
  struct kind : ptw_error {                                    \
    explicit kind(const std::string& w = #kind) : ptw_error(w) {} \
  }

PTW_ERROR(ZeroDenominator);
PTW_ERROR(ZeroInput);
PTW_ERROR(PoleHit);
PTW_ERROR(UnboundVariable);
PTW_ERROR(EssentialSingularity);
PTW_ERROR(SymbolicRootOfUnity);
PTW_ERROR(SymbolicRegime);
PTW_ERROR(NumericRegime);
PTW_ERROR(SymbolicRamified);
PTW_ERROR(InsufficientPrecision);
PTW_ERROR(NonSummableTail);
PTW_ERROR(UnrecognizedPoleStructure);
PTW_ERROR(OracleRequired);
PTW_ERROR(OutsideHeckeFamily);
PTW_ERROR(DegenerateParameter);
PTW_ERROR(PrecisionExhausted);
PTW_ERROR(NotLocallyConstant);
PTW_ERROR(RegimeMismatch);

#undef PTW_ERROR

inline Int pow_int(const Int& b, unsigned e) {
  Int r = 1, x = b;
  for (unsigned k = e; k; k >>= 1) {
    if (k & 1) r *= x;
    x *= x;
  }
  return r;
}

inline Rat pow_rat(const Rat& b, long e) {
  if (e == 0) return Rat(1);
  if (e < 0) {
    if (b == 0) throw PoleHit("pow_rat: negative power of zero");
    Rat inv = Rat(boost::multiprecision::denominator(b), boost::multiprecision::numerator(b));
    return pow_rat(inv, -e);
  }
  Rat r = 1, x = b;
  for (long k = e; k; k >>= 1) {
    if (k & 1) r *= x;
    x *= x;
  }
  return r;
}

// p-adic valuation of a nonzero rational.
inline long val_p(const Rat& x, long p) {
  if (x == 0) throw ZeroInput("val_p(0)");
  Int n = boost::multiprecision::numerator(x);
  Int d = boost::multiprecision::denominator(x);
  long v = 0;
  while (n % p == 0) { n /= p; ++v; }
  while (d % p == 0) { d /= p; --v; }
  return v;
}

// Unit part u of x = p^v * u.
inline Rat unit_part(const Rat& x, long p) {
  long v = val_p(x, p);
  return x / pow_rat(Rat(p), v);
}

inline Int mod_pow(Int b, Int e, const Int& m) {
  Int r = 1;
  b %= m; if (b < 0) b += m;
  while (e > 0) {
    if (e % 2 == 1) r = r * b % m;
    b = b * b % m;
    e /= 2;
  }
  return r;
}

// Inverse of a mod m (gcd(a, m) = 1).
inline Int inv_mod(Int a, const Int& m) {
  a %= m; if (a < 0) a += m;
  Int g0 = a, g1 = m, x0 = 1, x1 = 0;
  while (g1 != 0) {
    Int q = g0 / g1;
    Int t = g0 - q * g1; g0 = g1; g1 = t;
    t = x0 - q * x1; x0 = x1; x1 = t;
  }
  if (g0 != 1) throw ZeroInput("inv_mod: not invertible");
  x0 %= m; if (x0 < 0) x0 += m;
  return x0;
}

// Residue of a rational with denominator prime to m.
inline Int rat_mod(const Rat& x, const Int& m) {
  Int n = boost::multiprecision::numerator(x) % m;
  if (n < 0) n += m;
  Int d = boost::multiprecision::denominator(x) % m;
  return n * inv_mod(d, m) % m;
}

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

}  // namespace ptw

#endif
