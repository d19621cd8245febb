#ifndef PTW_LOCAL_FIELD_HPP
#define PTW_LOCAL_FIELD_HPP

#include <optional>
#include <string>
#include <vector>

#include "ptw/cyc.hpp"
#include "ptw/scalar.hpp"

namespace ptw {

enum class Regime { Symbolic, Numeric };

// Model of F = Q_p.  p == 0 selects the "generic prime" mode: q stays a
// symbol, and field elements are restricted to 0 and powers of the
// uniformizer, which is exactly what the symbolic identities consume.
struct PAdicContext {
  long p = 0;
  int k_max = 6;
  Regime regime = Regime::Symbolic;

  bool generic() const { return p == 0; }

  Scalar q() const {
    if (generic()) return Scalar(rf_q());
    if (regime == Regime::Numeric) return Scalar(NumC(static_cast<double>(p), 0.0));
    return Scalar(Rat(p));
  }
  Scalar qpow(long e) const {
    if (generic()) return Scalar(RatFunc::var("q", static_cast<int>(e)));
    if (regime == Regime::Numeric)
      return Scalar(NumC(std::pow(static_cast<double>(p), static_cast<double>(e)), 0.0));
    return Scalar(pow_rat(Rat(p), e));
  }
  Scalar one() const {
    return regime == Regime::Numeric ? Scalar(NumC(1.0, 0.0)) : Scalar(Rat(1));
  }
  Scalar zero() const {
    return regime == Regime::Numeric ? Scalar(NumC(0.0, 0.0)) : Scalar(Rat(0));
  }
  Scalar from_rat(const Rat& r) const {
    return regime == Regime::Numeric ? Scalar(NumC(to_double(r), 0.0)) : Scalar(Rat(r));
  }
};

// Element of F with p-power denominator, kept as valuation + unit part.
// In generic-prime mode only 0 and pi^v (unit = 1) exist.
struct FElem {
  bool zero = true;
  long v = 0;
  Rat unit = 1;  // p-adic unit when p > 0; must be 1 when p == 0

  static FElem zero_elem() { return FElem{}; }
  static FElem pi_pow(long k) { return FElem{false, k, Rat(1)}; }
  static FElem of(const Rat& x, const PAdicContext& ctx) {
    if (x == 0) return FElem{};
    if (ctx.generic()) throw ptw_error("FElem::of needs a concrete prime");
    long v = val_p(x, ctx.p);
    return FElem{false, v, unit_part(x, ctx.p)};
  }

  Rat to_rat(const PAdicContext& ctx) const {
    if (zero) return Rat(0);
    long p = ctx.generic() ? 0 : ctx.p;
    if (p == 0) throw ptw_error("FElem::to_rat in generic mode");
    return unit * pow_rat(Rat(p), v);
  }

  friend FElem operator*(const FElem& a, const FElem& b) {
    if (a.zero || b.zero) return FElem{};
    return FElem{false, a.v + b.v, a.unit * b.unit};
  }
  friend bool operator==(const FElem& a, const FElem& b) {
    if (a.zero != b.zero) return false;
    return a.zero || (a.v == b.v && a.unit == b.unit);
  }
  friend bool operator<(const FElem& a, const FElem& b) {
    if (a.zero != b.zero) return a.zero < b.zero;
    if (a.zero) return false;
    if (a.v != b.v) return a.v < b.v;
    return a.unit < b.unit;
  }
  FElem inv() const {
    if (zero) throw ZeroInput("FElem inverse of 0");
    return FElem{false, -v, Rat(1) / unit};
  }
};

// x = p^v * unit, v(x) = v.
inline long valuation(const Rat& x, const PAdicContext& ctx) {
  if (ctx.generic()) throw ptw_error("valuation needs a concrete prime");
  return val_p(x, ctx.p);
}

// ---- additive character -------------------------------------------------
//
// psi(x) = exp(2 pi i {x}_p), conductor o.  The generic-symbolic regime only
// produces values that are rational (+-1); everything else routes through
// either the exact cyclotomic layer or complex doubles.

// {x}_p: the unique a/p^m in [0,1) with x - a/p^m in Z_(p).
inline Rat frac_part_p(const Rat& x, long p) {
  Int den = boost::multiprecision::denominator(x);
  Int pk = 1;
  while (den % p == 0) { den /= p; pk *= p; }
  if (pk == 1) return Rat(0);
  Int n = boost::multiprecision::numerator(x);
  Int a = n % pk * inv_mod(den, pk) % pk;
  if (a < 0) a += pk;
  return Rat(a, pk);
}

inline Scalar psi_eval(const Rat& x, const PAdicContext& ctx) {
  if (ctx.generic()) throw ptw_error("psi_eval needs a concrete prime");
  Rat fr = frac_part_p(x, ctx.p);
  if (ctx.regime == Regime::Numeric) {
    double ang = 2.0 * 3.14159265358979323846 * to_double(fr);
    return Scalar(NumC(std::cos(ang), std::sin(ang)));
  }
  if (fr == 0) return Scalar(Rat(1));
  if (fr == Rat(1, 2)) return Scalar(Rat(-1));
  throw SymbolicRootOfUnity("psi value is an irrational root of unity");
}

inline Scalar psi_eval_elem(const FElem& x, const PAdicContext& ctx) {
  if (x.zero) return ctx.one();
  if (x.v >= 0) return ctx.one();
  if (ctx.generic())
    throw SymbolicRootOfUnity("generic-mode psi at negative valuation");
  return psi_eval(x.to_rat(ctx), ctx);
}

// Exact psi value in Q(zeta_{p^K}).
inline Cyc psi_exact(const Rat& x, long p, int K) {
  Rat fr = frac_part_p(x, p);
  Int order = pow_int(Int(p), static_cast<unsigned>(K));
  Rat scaled = fr * Rat(order);
  if (boost::multiprecision::denominator(scaled) != 1)
    throw InsufficientPrecision("psi_exact: K too small for this element");
  return Cyc::root(p, K, boost::multiprecision::numerator(scaled));
}

// ---- balls and unit cosets ----------------------------------------------

// center + pi^level * o, center canonical (0 if the ball contains 0).
struct Ball {
  FElem center;
  int level = 0;

  static Ball around_zero(int level) { return Ball{FElem::zero_elem(), level}; }
  static Ball of(const FElem& c, int level, const PAdicContext& ctx) {
    Ball b{c, level};
    b.canonicalize(ctx);
    return b;
  }

  void canonicalize(const PAdicContext& ctx) {
    if (!center.zero && center.v >= level) center = FElem::zero_elem();
    if (!center.zero && !ctx.generic()) {
      // reduce the unit modulo p^(level - v)
      Int m = pow_int(Int(ctx.p), static_cast<unsigned>(level - center.v));
      center.unit = Rat(rat_mod(center.unit, m));
      if (center.unit == 0) center = FElem::zero_elem();  // cannot happen for units
    }
  }

  bool contains_zero() const { return center.zero; }

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.level == b.level && a.center.zero == b.center.zero &&
           (a.center.zero || (a.center.v == b.center.v && a.center.unit == b.center.unit));
  }
  friend bool operator<(const Ball& a, const Ball& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.center.zero != b.center.zero) return a.center.zero < b.center.zero;
    if (a.center.zero) return false;
    if (a.center.v != b.center.v) return a.center.v < b.center.v;
    return a.center.unit < b.center.unit;
  }
};

inline Scalar ball_volume(const Ball& b, const PAdicContext& ctx) {
  return ctx.qpow(-b.level);
}

// pi^v * unit * (1 + p^n o); n = 0 denotes the full shell pi^v o^x.
struct UnitCoset {
  long v = 0;
  Rat unit = 1;
  int n = 0;

  static UnitCoset shell(long v) { return UnitCoset{v, Rat(1), 0}; }

  void canonicalize(const PAdicContext& ctx) {
    if (n == 0) { unit = 1; return; }
    if (ctx.generic()) {
      if (unit != 1) throw ptw_error("generic mode: unit cosets must be 1-centered");
      return;
    }
    Int m = pow_int(Int(ctx.p), static_cast<unsigned>(n));
    unit = Rat(rat_mod(unit, m));
  }

  UnitCoset inverse(const PAdicContext& ctx) const {
    UnitCoset r{-v, unit, n};
    if (n > 0 && !ctx.generic()) {
      Int m = pow_int(Int(ctx.p), static_cast<unsigned>(n));
      r.unit = Rat(inv_mod(rat_mod(unit, m), m));
    }
    return r;
  }

  friend bool operator==(const UnitCoset& a, const UnitCoset& b) {
    return a.v == b.v && a.n == b.n && a.unit == b.unit;
  }
  friend bool operator<(const UnitCoset& a, const UnitCoset& b) {
    if (a.v != b.v) return a.v < b.v;
    if (a.n != b.n) return a.n < b.n;
    return a.unit < b.unit;
  }
};

inline Scalar unitcoset_volume(const UnitCoset& c, const PAdicContext& ctx) {
  // d-times-x volume: q^{-n} for n >= 1; 1 - q^{-1} for the full shell
  if (c.n == 0) return ctx.one() - ctx.qpow(-1);
  return ctx.qpow(-c.n);
}

// AvgVol(F^x, d^x x) = (1 - q^{-1}) / log q.
inline NumC avg_volume(const PAdicContext& ctx) {
  if (ctx.regime != Regime::Numeric) throw SymbolicRegime("avg_volume");
  double q = static_cast<double>(ctx.p);
  return NumC((1.0 - 1.0 / q) / std::log(q), 0.0);
}

}  // namespace ptw

#endif
