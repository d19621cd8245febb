#ifndef PTW_RATFUNC_HPP
#define PTW_RATFUNC_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptw/poly.hpp"

namespace ptw {

using NumC = std::complex<double>;

// Exact rational function over Q in the indeterminates {q, z, u, w}.
// Always kept in canonical form: num/den reduced by their gcd and the
// denominator made monic with respect to graded lex.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Rat(1)) {}
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}   // NOLINT(runtime/explicit)
  RatFunc(long c) : num_(Rat(c)), den_(Rat(1)) {}    // NOLINT(runtime/explicit)
  RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }
  explicit RatFunc(const Poly& n) : num_(n), den_(Rat(1)) {}

  static RatFunc var(const std::string& name, int e = 1) {
    int v = var_index(name);
    if (e >= 0) return RatFunc(Poly::var(v, e));
    return RatFunc(Poly(Rat(1)), Poly::var(v, -e));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw ZeroDenominator("RatFunc division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc inverse() const {
    if (is_zero()) throw ZeroDenominator("inverse of 0");
    return RatFunc(den_, num_);
  }
  RatFunc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(Rat(1)), x = *this;
    for (long k = e; k; k >>= 1) {
      if (k & 1) r *= x;
      x *= x;
    }
    return r;
  }

  // Canonical forms make equality syntactic.
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  bool depends_on(int v) const { return num_.depends_on(v) || den_.depends_on(v); }

  // Substitute var <- var^k (k nonzero, possibly negative).
  RatFunc subst_power(int v, long k) const {
    if (k == 0) throw ZeroInput("subst_power k=0");
    auto lift = [&](const Poly& p) -> std::pair<Poly, int> {
      // returns (poly in var^|k| with exponents scaled, extra negative power)
      Poly r;
      int neg = 0;
      if (k < 0) neg = p.degree_in(v) < 0 ? 0 : p.degree_in(v);
      for (auto& [m, c] : p.terms()) {
        Mono mm = m;
        long e = static_cast<long>(m[v]) * k;
        long shift = k < 0 ? static_cast<long>(neg) * (-k) : 0;
        mm[v] = static_cast<int>(e + shift);
        r.add_term(mm, c);
      }
      return {r, neg};
    };
    auto [n, negn] = lift(num_);
    auto [d, negd] = lift(den_);
    // balance the var^{|k| * neg} clearing factors
    long diff = static_cast<long>(negn) - static_cast<long>(negd);
    if (diff > 0)
      d = d * Poly::var(v, static_cast<int>(diff * (-k)));
    else if (diff < 0)
      n = n * Poly::var(v, static_cast<int>(-diff * (-k)));
    return RatFunc(n, d);
  }

  // Substitute var <- value (a full rational-function composition).
  RatFunc subst(int v, const RatFunc& value) const {
    auto comp = [&](const Poly& p) -> RatFunc {
      auto cs = p.univ(v);
      RatFunc acc(Rat(0));
      for (auto it = cs.rbegin(); it != cs.rend(); ++it)
        acc = acc * value + RatFunc(*it);
      return acc;
    };
    RatFunc n = comp(num_), d = comp(den_);
    if (d.is_zero()) throw PoleHit("subst hits pole");
    return n / d;
  }

  std::string str() const {
    if (den_ == Poly(Rat(1))) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw ZeroDenominator("RatFunc with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant() || g.constant_value() != 1) {
      num_ = detail::poly_exact_div(num_, g);
      den_ = detail::poly_exact_div(den_, g);
    }
    Rat lc = den_.lead_coeff();
    if (lc != 1) {
      num_ = num_.scaled(Rat(1) / lc);
      den_ = den_.scaled(Rat(1) / lc);
    }
  }

  Poly num_, den_;
};

inline RatFunc rf_q() { return RatFunc::var("q"); }
inline RatFunc rf_z() { return RatFunc::var("z"); }
inline RatFunc rf_u() { return RatFunc::var("u"); }
inline RatFunc rf_w() { return RatFunc::var("w"); }
inline RatFunc rf_qinv() { return RatFunc::var("q", -1); }

// Identity map; construction keeps everything canonical, so normalizing
// twice is a no-op.  Exposed for the contract tests.
inline RatFunc rf_normalize(const RatFunc& f) { return f; }

// ---- evaluation --------------------------------------------------------

struct Binding {
  // exactly one of the two is engaged
  std::optional<Rat> exact;
  std::optional<NumC> numeric;
  static Binding of(const Rat& r) { return Binding{r, std::nullopt}; }
  static Binding of(const NumC& c) { return Binding{std::nullopt, c}; }
};

using Bindings = std::map<std::string, Binding>;

struct EvalResult {
  std::optional<Rat> exact;
  std::optional<NumC> numeric;
  bool is_exact() const { return exact.has_value(); }
};

namespace detail {

inline void eval_poly(const Poly& p, const std::vector<std::optional<Binding>>& bs,
                      Rat* outr, NumC* outc, bool exact) {
  Rat accr = 0;
  NumC accc = 0;
  for (auto& [m, c] : p.terms()) {
    Rat tr = c;
    NumC tc = exact ? NumC() : NumC(to_double(c), 0.0);
    for (int v = 0; v < kNumVars; ++v) {
      if (m[v] == 0) continue;
      if (!bs[v]) throw UnboundVariable("unbound " + kVarNames[v]);
      if (exact)
        tr *= pow_rat(*bs[v]->exact, m[v]);
      else {
        NumC base = bs[v]->exact ? NumC(to_double(*bs[v]->exact), 0.0) : *bs[v]->numeric;
        NumC pw = 1;
        for (int i = 0; i < m[v]; ++i) pw *= base;
        tc *= pw;
      }
    }
    if (exact) accr += tr; else accc += tc;
  }
  if (exact) *outr = accr; else *outc = accc;
}

}  // namespace detail

// Exact Rat result when all bindings are exact and no pole is hit; NumC
// otherwise.  Variables absent from f need not be bound.
inline EvalResult rf_evaluate(const RatFunc& f, const Bindings& bindings) {
  std::vector<std::optional<Binding>> bs(kNumVars);
  bool all_exact = true;
  for (auto& [name, b] : bindings) {
    int v = var_index(name);
    bs[static_cast<size_t>(v)] = b;
  }
  for (int v = 0; v < kNumVars; ++v)
    if (f.depends_on(v)) {
      if (!bs[v]) throw UnboundVariable("unbound " + kVarNames[v]);
      if (!bs[v]->exact) all_exact = false;
    }
  if (all_exact) {
    Rat n, d;
    detail::eval_poly(f.num(), bs, &n, nullptr, true);
    detail::eval_poly(f.den(), bs, &d, nullptr, true);
    if (d == 0) throw PoleHit("rf_evaluate: denominator vanishes");
    return EvalResult{n / d, std::nullopt};
  }
  NumC n, d;
  detail::eval_poly(f.num(), bs, nullptr, &n, false);
  detail::eval_poly(f.den(), bs, nullptr, &d, false);
  if (std::abs(d) == 0.0) throw PoleHit("rf_evaluate: denominator vanishes");
  return EvalResult{std::nullopt, n / d};
}

// ---- shell expansion ---------------------------------------------------

enum class ExpandAt { Zero, Infinity };

struct ShellExpansion {
  // f = sum_{k >= 0} coeffs[k] * var^(start + dir*k) + O(var^(start + dir*count)),
  // dir = +1 at zero, -1 at infinity.
  long start = 0;
  ExpandAt direction = ExpandAt::Zero;
  std::vector<RatFunc> coeffs;
};

// Laurent coefficients of f in the chosen direction.  Rational functions
// have no essential singularities, so this always succeeds.
inline ShellExpansion rf_shell_expand(const RatFunc& f, const std::string& varname,
                                      ExpandAt direction, int count) {
  int v = var_index(varname);
  RatFunc g = f;
  if (direction == ExpandAt::Infinity) g = f.subst_power(v, -1);
  ShellExpansion out;
  out.direction = direction;
  out.coeffs.assign(static_cast<size_t>(count), RatFunc(Rat(0)));
  if (g.is_zero()) {
    out.start = 0;
    return out;
  }
  auto nu = g.num().univ(v);
  auto de = g.den().univ(v);
  size_t sn = 0, sd = 0;
  while (nu[sn].is_zero()) ++sn;
  while (de[sd].is_zero()) ++sd;
  out.start = static_cast<long>(sn) - static_cast<long>(sd);
  // series division: (sum n_i x^i) / (sum d_j x^j), d_0 != 0
  std::vector<RatFunc> cs(static_cast<size_t>(count));
  RatFunc d0 = RatFunc(de[sd]);
  for (int k = 0; k < count; ++k) {
    RatFunc acc = (sn + k < nu.size()) ? RatFunc(nu[sn + k]) : RatFunc(Rat(0));
    for (int j = 1; j <= k; ++j) {
      if (sd + j < de.size())
        acc -= RatFunc(de[sd + j]) * cs[static_cast<size_t>(k - j)];
    }
    cs[static_cast<size_t>(k)] = acc / d0;
  }
  out.coeffs = cs;
  if (direction == ExpandAt::Infinity) out.start = -out.start;
  return out;
}

}  // namespace ptw

#endif
