#ifndef PTW_CYC_HPP
#define PTW_CYC_HPP

#include <complex>
#include <optional>
#include <vector>

#include "ptw/rat.hpp"

namespace ptw {

// Exact element of Q(zeta_N), N = p^K, stored on the spanning set
// {zeta^0, ..., zeta^(N-1)} with the single relation
//   zeta^i * Phi_{p^K}: sum_{j=0}^{p-1} zeta^(i + j*N/p) = 0.
// reduce() rewrites all exponents below phi(N) = N - N/p, which is a basis,
// so reduced forms are canonical and rationality is decidable.
//
// This is the exact accumulator behind every character-sum oracle: whole
// sums of p-power roots of unity are gathered here and only declared
// rational (or handed to floating point) at the end.
class Cyc {
 public:
  Cyc() : p_(0), order_(1), a_(1, Rat(0)) {}
  Cyc(long p, int K) : p_(p), order_(1), a_() {
    for (int i = 0; i < K; ++i) order_ *= p;
    a_.assign(static_cast<size_t>(order_), Rat(0));
  }
  static Cyc rational(long p, int K, const Rat& r) {
    Cyc c(p, K);
    c.a_[0] = r;
    return c;
  }
  // zeta^e, e taken mod the order
  static Cyc root(long p, int K, const Int& e) {
    Cyc c(p, K);
    Int m = e % c.order_;
    if (m < 0) m += c.order_;
    c.a_[m.convert_to<size_t>()] = 1;
    return c;
  }

  long order() const { return order_; }
  long p() const { return p_; }

  void add_root(const Int& e, const Rat& coeff) {
    Int m = e % order_;
    if (m < 0) m += order_;
    a_[m.convert_to<size_t>()] += coeff;
  }

  Cyc& operator+=(const Cyc& o) {
    compat(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Cyc& operator-=(const Cyc& o) {
    compat(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }

  Cyc scaled(const Rat& c) const {
    Cyc r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  // multiply by zeta^e
  Cyc rotated(const Int& e) const {
    Cyc r(p_, 0);
    r.order_ = order_;
    r.a_.assign(a_.size(), Rat(0));
    Int m = e % order_;
    if (m < 0) m += order_;
    size_t s = m.convert_to<size_t>();
    for (size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != 0) r.a_[(i + s) % a_.size()] += a_[i];
    return r;
  }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    a.compat(b);
    Cyc r(a.p_, 0);
    r.order_ = a.order_;
    r.a_.assign(a.a_.size(), Rat(0));
    for (size_t i = 0; i < a.a_.size(); ++i) {
      if (a.a_[i] == 0) continue;
      for (size_t j = 0; j < b.a_.size(); ++j) {
        if (b.a_[j] == 0) continue;
        r.a_[(i + j) % a.a_.size()] += a.a_[i] * b.a_[j];
      }
    }
    return r;
  }

  // Galois action zeta -> zeta^s, s prime to p.
  Cyc galois(const Int& s) const {
    Cyc r(p_, 0);
    r.order_ = order_;
    r.a_.assign(a_.size(), Rat(0));
    for (size_t i = 0; i < a_.size(); ++i)
      if (a_[i] != 0) {
        Int m = Int(i) * s % order_;
        r.a_[m.convert_to<size_t>()] += a_[i];
      }
    return r;
  }
  Cyc conjugate() const { return galois(Int(order_ - 1)); }

  void reduce() {
    if (order_ == 1) return;
    long step = order_ / p_;
    long phi = order_ - step;
    for (long i = order_ - 1; i >= phi; --i) {
      Rat c = a_[static_cast<size_t>(i)];
      if (c == 0) continue;
      a_[static_cast<size_t>(i)] = 0;
      for (long j = 1; j < p_; ++j) a_[static_cast<size_t>(i - j * step)] -= c;
    }
  }

  bool is_zero() const {
    Cyc t = *this;
    t.reduce();
    for (auto& x : t.a_)
      if (x != 0) return false;
    return true;
  }

  std::optional<Rat> rationalize() const {
    Cyc t = *this;
    t.reduce();
    for (size_t i = 1; i < t.a_.size(); ++i)
      if (t.a_[i] != 0) return std::nullopt;
    return t.a_[0];
  }

  std::complex<double> to_complex() const {
    std::complex<double> r = 0;
    const double twopi = 6.283185307179586476925286766559;
    for (size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] == 0) continue;
      double ang = twopi * static_cast<double>(i) / static_cast<double>(order_);
      r += to_double(a_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return r;
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    Cyc d = a;
    d -= b;
    return d.is_zero();
  }

 private:
  void compat(const Cyc& o) const {
    if (order_ != o.order_) throw ptw_error("Cyc order mismatch");
  }

  long p_;
  long order_;
  std::vector<Rat> a_;
};

}  // namespace ptw

#endif
