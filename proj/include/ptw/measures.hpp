#ifndef PTW_MEASURES_HPP
#define PTW_MEASURES_HPP

#include <algorithm>
#include <map>
#include <vector>

#include "ptw/characters.hpp"

namespace ptw {

// ---- measures on F^x -----------------------------------------------------

struct GmTerm {
  UnitCoset coset;
  Scalar coeff;  // density against d^x x
};

class SchwartzMeasureGm {
 public:
  SchwartzMeasureGm() = default;
  explicit SchwartzMeasureGm(const PAdicContext& ctx) : ctx_(ctx) {}

  const PAdicContext& ctx() const { return ctx_; }
  const std::vector<GmTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(UnitCoset c, const Scalar& coeff) {
    c.canonicalize(ctx_);
    terms_.push_back({c, coeff});
  }

  void canonicalize();

  Scalar mass() const {
    Scalar m = ctx_.zero();
    for (auto& t : terms_) m += t.coeff * unitcoset_volume(t.coset, ctx_);
    return m;
  }

  // chi(x) |x|^s with |x|^s realized by multiplying shell v by u_power^v.
  SchwartzMeasureGm twist(const MultChar& chi, const Scalar& u_power) const;

  SchwartzMeasureGm invert_variable() const {
    SchwartzMeasureGm r(ctx_);
    for (auto& t : terms_) r.terms_.push_back({t.coset.inverse(ctx_), t.coeff});
    r.canonicalize();
    return r;
  }

  SchwartzMeasureGm pushforward_power(long k) const;

  // multiplicative convolution (used as a test oracle)
  SchwartzMeasureGm convolve(const SchwartzMeasureGm& g) const;

  // refine every term so that its precision is >= n (p > 0)
  SchwartzMeasureGm refined(int n) const;

  std::vector<GmTerm>& mutable_terms() { return terms_; }

 private:
  PAdicContext ctx_;
  std::vector<GmTerm> terms_;
};

// ---- measures on F (with explicit additive phases) ------------------------
//
// Each term is coeff * psi(phase * x) * 1_Ball(x) dx.  Plain Schwartz
// measures carry phase 0; Fourier transforms of ball indicators stay in
// closed form this way, which is what keeps the symbolic functional
// equation exact.

struct GaTerm {
  Ball ball;
  FElem phase;  // zero for plain indicator pieces
  Scalar coeff;
};

class SchwartzMeasureGa {
 public:
  SchwartzMeasureGa() = default;
  explicit SchwartzMeasureGa(const PAdicContext& ctx) : ctx_(ctx) {}

  const PAdicContext& ctx() const { return ctx_; }
  const std::vector<GaTerm>& terms() const { return terms_; }

  void add(Ball b, const Scalar& coeff) {
    b.canonicalize(ctx_);
    terms_.push_back({b, FElem::zero_elem(), coeff});
  }
  void add_phased(Ball b, const FElem& phase, const Scalar& coeff) {
    b.canonicalize(ctx_);
    terms_.push_back({b, phase, coeff});
  }

  static SchwartzMeasureGa indicator(const PAdicContext& ctx, const Ball& b) {
    SchwartzMeasureGa f(ctx);
    f.add(b, ctx.regime == Regime::Numeric ? Scalar(NumC(1, 0)) : Scalar(Rat(1)));
    return f;
  }

  // Density value at 0 (psi(0) = 1 on every phase).
  Scalar value_at_zero() const {
    Scalar v = ctx_.zero();
    for (auto& t : terms_)
      if (t.ball.contains_zero()) v += t.coeff;
    return v;
  }

  // integral of psi(phase x) over the ball is psi(phase*center) q^{-level}
  // when phase * p^level is integral, and 0 otherwise (complete cancellation)
  Scalar mass() const {
    Scalar m = ctx_.zero();
    for (auto& t : terms_) {
      bool flat = t.phase.zero || t.phase.v + t.ball.level >= 0;
      if (!flat) continue;
      Scalar ph = (t.phase.zero || t.ball.center.zero)
                      ? ctx_.one()
                      : psi_eval_elem(t.phase * t.ball.center, ctx_);
      m += t.coeff * ph * ctx_.qpow(-t.ball.level);
    }
    return m;
  }

  SchwartzMeasureGa additive_fourier(int psi_sign = 1) const {
    SchwartzMeasureGa r(ctx_);
    for (auto& t : terms_) {
      FElem c = t.ball.center;
      int ell = t.ball.level;
      Scalar front = t.coeff * ctx_.qpow(-ell);
      if (!c.zero && !t.phase.zero) front = front * psi_eval_elem(c * t.phase, ctx_);
      FElem new_center = t.phase;  // output ball is -sign*phase + p^{-level}
      if (!new_center.zero && psi_sign == 1) new_center.unit = -new_center.unit;
      FElem new_phase = c;
      if (psi_sign == -1 && !new_phase.zero) new_phase.unit = -new_phase.unit;
      Ball nb{new_center, -ell};
      nb.canonicalize(ctx_);
      r.terms_.push_back({nb, new_phase, front});
    }
    r.canonicalize();
    return r;
  }

  void canonicalize();

 private:
  PAdicContext ctx_;
  std::vector<GaTerm> terms_;
};

// ---- tails and extended measures ------------------------------------------

enum class TailNorm { SL2, PGL2 };  // density |zeta| d^x zeta vs |xi|^{1/2} d^x xi

// coeff * v(zeta)^m * chi0^{-1}(zeta) * D(zeta) on |zeta| >= q^N.
struct TailGerm {
  MultChar chi0;
  int log_power = 0;
  Scalar coeff;
  int start_N = 1;
  TailNorm norm = TailNorm::SL2;

  // density against the normalizing measure D on the shell |zeta| = q^j
  Scalar density_on_shell(long j, const PAdicContext& ctx) const {
    if (j < start_N) return ctx.zero();
    Scalar d = coeff;
    if (log_power > 0) {
      Rat vj = Rat(-j);
      Scalar f = ctx.regime == Regime::Numeric ? Scalar(NumC(to_double(vj), 0)) : Scalar(vj);
      for (int i = 0; i < log_power; ++i) d = d * f;
    }
    // chi0^{-1}(zeta) on the shell: z0^{j} (unramified part); ramified tails
    // are restricted to unramified chi0 in this build
    if (!chi0.unramified_p())
      throw ptw_error("tail germs with ramified twists are data-only");
    d = d * chi0.zpow(j, ctx);
    return d;
  }
};

class ExtendedMeasure {
 public:
  ExtendedMeasure() = default;
  explicit ExtendedMeasure(const PAdicContext& ctx) : compact_(ctx), ctx_(ctx) {}
  explicit ExtendedMeasure(const SchwartzMeasureGm& c) : compact_(c), ctx_(c.ctx()) {}

  const PAdicContext& ctx() const { return ctx_; }
  SchwartzMeasureGm& compact() { return compact_; }
  const SchwartzMeasureGm& compact() const { return compact_; }
  std::vector<TailGerm>& tails() { return tails_; }
  const std::vector<TailGerm>& tails() const { return tails_; }

  bool has_tails() const { return !tails_.empty(); }

  void add_tail(const TailGerm& t) { tails_.push_back(t); }

  // total density against d^x x on the full shell |x| = q^j, provided the
  // measure is shell-granular there (compact terms at precision 0)
  Scalar shell_density(long j) const {
    Scalar d = ctx_.zero();
    for (auto& t : compact_.terms()) {
      if (t.coset.v != -j) continue;
      if (t.coset.n != 0)
        throw InsufficientPrecision("shell_density on a non-shell-granular measure");
      d += t.coeff;
    }
    for (auto& g : tails_) {
      Scalar gd = g.density_on_shell(j, ctx_);
      if (gd.is_zero()) continue;
      // convert from the normalizing density to d^x x: multiply by |zeta|^kappa
      Scalar conv = g.norm == TailNorm::SL2 ? ctx_.qpow(j) : ctx_.qpow(0);
      if (g.norm == TailNorm::PGL2)
        throw ptw_error("PGL2-normalized tails expose only relative densities");
      d += gd * conv;
    }
    return d;
  }

 private:
  SchwartzMeasureGm compact_;
  std::vector<TailGerm> tails_;
  PAdicContext ctx_;
};

}  // namespace ptw

#endif
