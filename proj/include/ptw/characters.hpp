#ifndef PTW_CHARACTERS_HPP
#define PTW_CHARACTERS_HPP

#include <optional>
#include <vector>

#include "ptw/local_field.hpp"

namespace ptw {

// Character of (Z/p^n)^x, p odd (cyclic): determined by the image exponent
// on a fixed primitive root g, chi(g) = zeta_M^k with M = phi(p^n).
struct TameChar {
  long p = 0;
  int n = 0;      // conductor; 0 = trivial
  long k = 0;     // exponent of the image of the generator
  long M = 1;     // group order phi(p^n)
  long gen = 1;   // fixed primitive root mod p^n

  static long primitive_root(long p, int n) {
    long mod = 1;
    for (int i = 0; i < n; ++i) mod *= p;
    long M = mod / p * (p - 1);
    std::vector<long> primes;
    long m = M;
    for (long r = 2; r * r <= m; ++r)
      if (m % r == 0) { primes.push_back(r); while (m % r == 0) m /= r; }
    if (m > 1) primes.push_back(m);
    for (long g = 2; g < mod; ++g) {
      if (g % p == 0) continue;
      bool prim = true;
      for (long r : primes)
        if (mod_pow(Int(g), Int(M / r), Int(mod)) == 1) { prim = false; break; }
      if (prim) return g;
    }
    throw ptw_error("no primitive root found");
  }

  static TameChar trivial() { return TameChar{}; }

  static TameChar make(long p, int n, long k) {
    if (n == 0 || k == 0) return trivial();
    if (p == 2) throw ptw_error("ramified characters at p = 2 are out of scope");
    TameChar t;
    t.p = p;
    t.n = n;
    long mod = 1;
    for (int i = 0; i < n; ++i) mod *= p;
    t.M = mod / p * (p - 1);
    t.k = ((k % t.M) + t.M) % t.M;
    if (t.k == 0) return trivial();
    t.gen = primitive_root(p, n);
    // demand genuine conductor n: nontrivial on the kernel of reduction
    if (n >= 2 && t.k % p == 0)
      throw ptw_error("tame data does not have conductor n (factors through level n-1)");
    return t;
  }

  bool trivial_p() const { return n == 0; }

  long dlog(const Int& x) const {
    long mod = 1;
    for (int i = 0; i < n; ++i) mod *= p;
    Int g = gen, acc = 1;
    Int xr = x % mod;
    if (xr < 0) xr += mod;
    for (long e = 0; e < M; ++e) {
      if (acc == xr) return e;
      acc = acc * g % mod;
    }
    throw ZeroInput("dlog: not a unit");
  }

  // exponent of chi(x) as a root of unity of order M
  long value_exponent(const Rat& x_unit) const {
    if (trivial_p()) return 0;
    long mod = 1;
    for (int i = 0; i < n; ++i) mod *= p;
    Int r = rat_mod(x_unit, Int(mod));
    return (dlog(r) % M) * k % M;
  }

  int order() const {
    if (trivial_p()) return 1;
    long g = std::__gcd(k, M);
    return static_cast<int>(M / g);
  }

  Scalar eval(const Rat& x_unit, const PAdicContext& ctx) const {
    if (trivial_p()) return ctx.one();
    long e = value_exponent(x_unit);
    if (2 * e % M == 0) {  // value is +-1
      Rat v = (e == 0) ? Rat(1) : Rat(-1);
      return ctx.from_rat(v);
    }
    if (ctx.regime != Regime::Numeric)
      throw SymbolicRootOfUnity("tame character value is irrational");
    double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(e) / static_cast<double>(M);
    return Scalar(NumC(std::cos(ang), std::sin(ang)));
  }

  TameChar inverse() const { return trivial_p() ? *this : make(p, n, M - k); }
  TameChar power(long m) const {
    if (trivial_p()) return *this;
    long kk = (m % M) * k % M;
    if (kk < 0) kk += M;
    if (kk == 0) return trivial();
    // conductor may drop
    int nn = n;
    long kred = kk;
    long pw = 1;
    while (nn >= 2 && kred % p == 0) { --nn; kred /= p; pw *= p; }
    long Mn = 1;
    for (int i = 0; i < nn; ++i) Mn *= p;
    Mn = Mn / p * (p - 1);
    if (nn == 0) return trivial();
    return make(p, nn, kred % Mn);
  }

  friend bool operator==(const TameChar& a, const TameChar& b) {
    return a.p == b.p && a.n == b.n && a.k == b.k;
  }
};

// Multiplicative character: conductor-n tame part twisted by the unramified
// parameter z = chi(pi).
struct MultChar {
  TameChar tame;
  Scalar z;  // nonzero

  static MultChar unramified(const Scalar& z) { return MultChar{TameChar::trivial(), z}; }
  static MultChar unramified_symbol() { return unramified(Scalar(rf_z())); }
  static MultChar trivial_char(const PAdicContext& ctx) { return unramified(ctx.one()); }

  int conductor() const { return tame.n; }
  bool unramified_p() const { return tame.trivial_p(); }

  MultChar inverse() const {
    Scalar zi = Scalar(Rat(1));
    if (z.symbolic())
      zi = Scalar(z.rf().inverse());
    else
      zi = Scalar(NumC(1.0, 0.0) / z.num());
    return MultChar{tame.inverse(), zi};
  }

  // Composition with the power map x -> x^k (the cocharacter adapter).
  MultChar compose_power(long k) const {
    if (k == 0) throw ZeroInput("compose_power k=0");
    Scalar zk = z.symbolic() ? Scalar(z.rf().pow(k)) : Scalar(std::pow(z.num(), static_cast<double>(k)));
    return MultChar{tame.power(k), zk};
  }

  Scalar zpow(long e, const PAdicContext& ctx) const {
    (void)ctx;
    return z.symbolic() ? Scalar(z.rf().pow(e)) : Scalar(std::pow(z.num(), static_cast<double>(e)));
  }

  // chi on x = pi^v * unit, given to precision >= conductor.
  Scalar eval(long v, const Rat& unit, int precision, const PAdicContext& ctx) const {
    if (!unramified_p() && precision < conductor())
      throw InsufficientPrecision("char_eval: coset shallower than the conductor");
    Scalar val = zpow(v, ctx);
    if (!unramified_p()) val = val * tame.eval(unit, ctx);
    return val;
  }
};

inline Scalar char_eval(const MultChar& chi, const UnitCoset& x, const PAdicContext& ctx) {
  return chi.eval(x.v, x.unit, x.n, ctx);
}

// Tate local L-factor as a function of u = q^{-s}: 1/(1 - z u) for
// unramified chi, 1 for ramified.
inline RatFunc l_factor(const MultChar& chi) {
  if (!chi.unramified_p()) return RatFunc(Rat(1));
  if (!chi.z.symbolic())
    throw RegimeMismatch("l_factor: symbolic output needs symbolic z");
  RatFunc one(Rat(1));
  return one / (one - chi.z.rf() * rf_u());
}

// sum over units mod p^n of chi(a) psi(a * twist / p^n)
inline NumC gauss_sum(const MultChar& chi, const Rat& twist, const PAdicContext& ctx) {
  if (ctx.regime != Regime::Numeric) throw SymbolicRegime("gauss_sum");
  if (chi.conductor() < 1) throw ptw_error("gauss_sum needs a ramified character");
  if (chi.conductor() > ctx.k_max) throw InsufficientPrecision("gauss_sum: n > k_max");
  long mod = 1;
  for (int i = 0; i < chi.conductor(); ++i) mod *= ctx.p;
  NumC acc = 0;
  for (long a = 1; a < mod; ++a) {
    if (a % ctx.p == 0) continue;
    Scalar cv = chi.tame.eval(Rat(a), ctx);
    Scalar pv = psi_eval(Rat(a) * twist / Rat(mod), ctx);
    acc += cv.num() * pv.num();
  }
  return acc;
}

// Exact Gauss sum in Q(zeta_{p^K}) when the tame order is a p-power times <=2.
inline std::optional<Cyc> gauss_sum_exact(const MultChar& chi, const Rat& twist,
                                          long p, int K) {
  if (chi.conductor() < 1) return std::nullopt;
  long mod = 1;
  for (int i = 0; i < chi.conductor(); ++i) mod *= p;
  long M = chi.tame.M;
  // representable exactly only if chi takes values in {+-1} (quadratic) --
  // higher tame orders involve (p-1)-th roots of unity.
  if (chi.tame.order() > 2) return std::nullopt;
  Cyc acc(p, K);
  Int order = pow_int(Int(p), static_cast<unsigned>(K));
  for (long a = 1; a < mod; ++a) {
    if (a % p == 0) continue;
    long e = chi.tame.value_exponent(Rat(a));
    Rat sign = (2 * e % M == 0 && e != 0) ? Rat(-1) : Rat(1);
    Rat arg = Rat(a) * twist / Rat(mod);
    Rat fr = frac_part_p(arg, p);
    Rat sc = fr * Rat(order);
    if (boost::multiprecision::denominator(sc) != 1) return std::nullopt;
    acc.add_root(boost::multiprecision::numerator(sc), sign);
  }
  return acc;
}

// ---- gamma factors -------------------------------------------------------

struct GammaFactor {
  Scalar value;   // = eps * l_num / l_den
  RatFunc l_num;  // L(chi^{-1}, 1-s)
  RatFunc l_den;  // L(chi, s)
  Scalar eps;
};

// gamma(chi, s, psi^{sign}) with the s-slot evaluated at u_val (u_val may be
// the symbol u, or any scalar like 1 = q^{-0} or q^{-1}).
//
// Unramified: eps = 1 and
//   gamma = L(chi^{-1}, 1-s) / L(chi, s) = (1 - z u) / (1 - z^{-1} q^{-1} u^{-1}).
// Ramified (numeric): gamma = (z u)^n * tau(chi^{-1}, psi^{sign}), certified
// downstream by the functional-equation oracle.
inline GammaFactor gamma_factor(const MultChar& chi, const Scalar& u_val,
                                int psi_sign, const PAdicContext& ctx) {
  if (chi.unramified_p()) {
    const Scalar& z = chi.z;
    const Scalar& u = u_val;
    if (z.symbolic() != u.symbolic())
      throw RegimeMismatch("gamma_factor: z and u regimes differ");
    bool sym = z.symbolic();
    Scalar one = sym ? Scalar(Rat(1)) : Scalar(NumC(1, 0));
    Scalar q = ctx.generic() ? Scalar(rf_q())
                             : (sym ? Scalar(Rat(ctx.p))
                                    : Scalar(NumC(static_cast<double>(ctx.p), 0)));
    Scalar num = one - z * u;        // 1/L(chi, s)
    Scalar den = one - one / (z * q * u);  // 1/L(chi^{-1}, 1-s)
    GammaFactor g;
    g.value = num / den;
    g.eps = one;
    if (sym) {
      RatFunc rone(Rat(1));
      g.l_num = rone / (rone - rone / (z.rf() * q.rf() * u.rf()));
      g.l_den = rone / (rone - z.rf() * u.rf());
    } else {
      g.l_num = RatFunc(Rat(1));
      g.l_den = RatFunc(Rat(1));
    }
    return g;
  }
  if (ctx.regime != Regime::Numeric || chi.z.symbolic())
    throw SymbolicRamified("gamma_factor: ramified characters are numeric-only");
  int n = chi.conductor();
  NumC tau = gauss_sum(chi.inverse(), Rat(psi_sign), ctx);
  NumC zu = chi.z.num() * u_val.num();
  NumC val = std::pow(zu, static_cast<double>(n)) * tau;
  GammaFactor g;
  g.value = Scalar(val);
  g.eps = g.value;  // both L-factors are 1
  g.l_num = RatFunc(Rat(1));
  g.l_den = RatFunc(Rat(1));
  return g;
}

// gamma(chi, lambda-check, s, psi^sign) realized through the power-map
// adapter: compose chi with x -> x^k first.
inline Scalar gamma_cochar(const MultChar& chi, long k, const Scalar& u_val,
                           int psi_sign, const PAdicContext& ctx) {
  return gamma_factor(chi.compose_power(k), u_val, psi_sign, ctx).value;
}

}  // namespace ptw

#endif
