#ifndef PTW_SCALAR_HPP
#define PTW_SCALAR_HPP

#include <cmath>
#include <complex>
#include <variant>

#include "ptw/ratfunc.hpp"

namespace ptw {

inline void check_finite(const NumC& x) {
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    throw ptw_error("NumC overflow/NaN");
}

// Tagged union of the two arithmetic regimes.  Binary operations require
// matching regimes; crossing them is an error, never a coercion.
class Scalar {
 public:
  Scalar() : v_(RatFunc(Rat(0))) {}
  Scalar(const RatFunc& f) : v_(f) {}            // NOLINT(runtime/explicit)
  Scalar(const Rat& r) : v_(RatFunc(r)) {}       // NOLINT(runtime/explicit)
  Scalar(long n) : v_(RatFunc(Rat(n))) {}        // NOLINT(runtime/explicit)
  Scalar(const NumC& c) : v_(c) { check_finite(c); }  // NOLINT(runtime/explicit)

  bool symbolic() const { return std::holds_alternative<RatFunc>(v_); }
  bool numeric() const { return !symbolic(); }

  const RatFunc& rf() const {
    if (!symbolic()) throw RegimeMismatch("Scalar: numeric where symbolic expected");
    return std::get<RatFunc>(v_);
  }
  const NumC& num() const {
    if (symbolic()) throw RegimeMismatch("Scalar: symbolic where numeric expected");
    return std::get<NumC>(v_);
  }

  bool is_zero() const {
    return symbolic() ? rf().is_zero() : (num() == NumC(0.0, 0.0));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return a.apply(b, [](auto& x, auto& y) { return x + y; });
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return a.apply(b, [](auto& x, auto& y) { return x - y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return a.apply(b, [](auto& x, auto& y) { return x * y; });
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw ZeroDenominator("Scalar division by zero");
    return a.apply(b, [](auto& x, auto& y) { return x / y; });
  }
  Scalar operator-() const {
    return symbolic() ? Scalar(-rf()) : Scalar(-num());
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  // Exact equality in the symbolic regime; bitwise complex equality in the
  // numeric one (tolerances live at comparison sites).
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.symbolic() != b.symbolic()) return false;
    return a.symbolic() ? a.rf() == b.rf() : a.num() == b.num();
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  double abs_approx() const {
    if (symbolic()) {
      if (!is_zero() && rf().is_constant()) return std::abs(to_double(rf().constant_value()));
      return is_zero() ? 0.0 : 1.0;
    }
    return std::abs(num());
  }

  std::string str() const {
    if (symbolic()) return rf().str();
    return "(" + std::to_string(num().real()) + "," + std::to_string(num().imag()) + ")";
  }

 private:
  template <class F>
  Scalar apply(const Scalar& o, F&& f) const {
    if (symbolic() != o.symbolic())
      throw RegimeMismatch("Scalar: mixed symbolic/numeric operation");
    if (symbolic()) return Scalar(f(rf(), o.rf()));
    NumC r = f(num(), o.num());
    check_finite(r);
    return Scalar(r);
  }

  std::variant<RatFunc, NumC> v_;
};

inline bool close(const NumC& a, const NumC& b, double tol) { return std::abs(a - b) <= tol; }

// Equality check used by the verification suites: exact in the symbolic
// regime, within tol otherwise.
inline bool scalar_eq(const Scalar& a, const Scalar& b, double tol = 0.0) {
  if (a.symbolic() && b.symbolic()) return a.rf() == b.rf();
  if (!a.symbolic() && !b.symbolic()) return close(a.num(), b.num(), tol);
  throw RegimeMismatch("scalar_eq across regimes");
}

}  // namespace ptw

#endif
