#ifndef PTW_POLY_HPP
#define PTW_POLY_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ptw/rat.hpp"

namespace ptw {

// Fixed indeterminate universe.  q = residue cardinality, z = chi(pi),
// u = q^{-s}, w = second exponent slot.
inline constexpr int kNumVars = 4;
inline const std::array<std::string, kNumVars> kVarNames = {"q", "z", "u", "w"};

inline int var_index(const std::string& name) {
  for (int i = 0; i < kNumVars; ++i)
    if (kVarNames[i] == name) return i;
  throw UnboundVariable("unknown indeterminate " + name);
}

using Mono = std::array<int, kNumVars>;

inline Mono mono_one() { return {0, 0, 0, 0}; }

inline Mono mono_var(int v, int e = 1) {
  Mono m = mono_one();
  m[v] = e;
  return m;
}

inline int mono_deg(const Mono& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

// Graded lexicographic order over the declared variable list.
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_deg(a), db = mono_deg(b);
    if (da != db) return da < db;
    for (int i = 0; i < kNumVars; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

// Sparse multivariate polynomial over Rat with non-negative exponents.
class Poly {
 public:
  using Terms = std::map<Mono, Rat, GrlexLess>;

  Poly() = default;
  explicit Poly(const Rat& c) {
    if (c != 0) terms_[mono_one()] = c;
  }
  Poly(const Rat& c, const Mono& m) {
    if (c != 0) terms_[m] = c;
  }
  static Poly var(int v, int e = 1) { return Poly(Rat(1), mono_var(v, e)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == mono_one());
  }
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw ptw_error("Poly: not a constant");
    return terms_.begin()->second;
  }

  void add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Poly operator-() const {
    Poly r;
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        Mono m;
        for (int i = 0; i < kNumVars; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend Poly operator*(const Rat& c, const Poly& a) { return Poly(c) * a; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int degree_in(int v) const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m[v]);
    return d;  // -1 for the zero polynomial
  }
  int low_degree_in(int v) const {
    int d = -1;
    for (auto& [m, c] : terms_)
      d = (d < 0) ? m[v] : std::min(d, m[v]);
    return d;
  }
  bool depends_on(int v) const { return degree_in(v) > 0; }

  // Leading coefficient/monomial in graded lex.
  const Rat& lead_coeff() const {
    if (terms_.empty()) throw ptw_error("lead_coeff of 0");
    return terms_.rbegin()->second;
  }
  const Mono& lead_mono() const {
    if (terms_.empty()) throw ptw_error("lead_mono of 0");
    return terms_.rbegin()->first;
  }

  // Coefficients as a dense univariate vector in variable v (entries are
  // polynomials in the remaining variables).
  std::vector<Poly> univ(int v) const {
    std::vector<Poly> out(static_cast<size_t>(std::max(0, degree_in(v)) + 1));
    if (terms_.empty()) return {};
    for (auto& [m, c] : terms_) {
      Mono rest = m;
      int e = rest[v];
      rest[v] = 0;
      out[static_cast<size_t>(e)].add_term(rest, c);
    }
    return out;
  }
  static Poly from_univ(int v, const std::vector<Poly>& cs) {
    Poly r;
    for (size_t e = 0; e < cs.size(); ++e)
      for (auto& [m, c] : cs[e].terms()) {
        Mono me = m;
        me[v] += static_cast<int>(e);
        r.add_term(me, c);
      }
    return r;
  }

  Poly scaled(const Rat& c) const {
    if (c == 0) return Poly();
    Poly r;
    for (auto& [m, co] : terms_) r.terms_[m] = c * co;
    return r;
  }

  std::string str() const;

 private:
  Terms terms_;
};

// ---- gcd machinery (primitive PRS, recursing on the top-most variable) ----

Poly poly_gcd(const Poly& a, const Poly& b);

namespace detail {

inline int top_var(const Poly& a, const Poly& b) {
  for (int v = kNumVars - 1; v >= 0; --v)
    if (a.depends_on(v) || b.depends_on(v)) return v;
  return -1;
}

// Pseudo-remainder of dense univariate polynomials (coefficients Poly).
inline std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
  auto norm = [](std::vector<Poly>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  norm(a);
  if (b.empty()) throw ZeroDenominator("prem by zero");
  const Poly& lb = b.back();
  while (a.size() >= b.size()) {
    // a <- lb * a - lead(a) * x^(da-db) * b
    Poly la = a.back();
    size_t shift = a.size() - b.size();
    for (auto& c : a) c = lb * c;
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = a[shift + i] - la * b[i];
    norm(a);
    if (a.empty()) break;
  }
  return a;
}

inline Poly content(const std::vector<Poly>& cs) {
  Poly g;
  for (auto& c : cs)
    if (!c.is_zero()) g = g.is_zero() ? c : poly_gcd(g, c);
  return g;
}

Poly poly_exact_div(const Poly& a, const Poly& b);

}  // namespace detail

// Exact division (throws if not divisible); used to take out gcd factors.
inline Poly detail::poly_exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ZeroDenominator("exact_div by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(Rat(1) / b.constant_value());
  int v = top_var(a, b);
  auto av = a.univ(v), bv = b.univ(v);
  std::vector<Poly> q(av.size() >= bv.size() ? av.size() - bv.size() + 1 : 0);
  while (!av.empty() && av.size() >= bv.size()) {
    Poly qc = poly_exact_div(av.back(), bv.back());
    size_t shift = av.size() - bv.size();
    q[shift] = qc;
    for (size_t i = 0; i < bv.size(); ++i)
      av[shift + i] = av[shift + i] - qc * bv[i];
    while (!av.empty() && av.back().is_zero()) av.pop_back();
  }
  if (!av.empty()) throw ptw_error("poly_exact_div: not divisible");
  return Poly::from_univ(v, q);
}

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) return Poly(Rat(1));
  int v = detail::top_var(a, b);
  if (!a.depends_on(v)) return poly_gcd(a, detail::content(b.univ(v)));
  if (!b.depends_on(v)) return poly_gcd(detail::content(a.univ(v)), b);

  auto av = a.univ(v), bv = b.univ(v);
  Poly ca = detail::content(av), cb = detail::content(bv);
  Poly cg = poly_gcd(ca, cb);
  for (auto& c : av) c = detail::poly_exact_div(c, ca);
  for (auto& c : bv) c = detail::poly_exact_div(c, cb);

  // Primitive PRS.
  std::vector<Poly> f = av.size() >= bv.size() ? av : bv;
  std::vector<Poly> g = av.size() >= bv.size() ? bv : av;
  while (true) {
    std::vector<Poly> r = detail::prem(f, g);
    if (r.empty()) break;
    Poly cr = detail::content(r);
    for (auto& c : r) c = detail::poly_exact_div(c, cr);
    f = g;
    g = r;
    if (g.size() == 1) {
      g = {Poly(Rat(1))};
      break;
    }
  }
  Poly prim = Poly::from_univ(v, g);
  return cg * prim;
}

inline std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) s += " + ";
    first = false;
    std::string t = c.str();
    for (int i = 0; i < kNumVars; ++i) {
      if (m[i] == 0) continue;
      t += "*" + kVarNames[i];
      if (m[i] != 1) t += "^" + std::to_string(m[i]);
    }
    s += t;
  }
  return s;
}

}  // namespace ptw

#endif
