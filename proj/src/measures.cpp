#include "ptw/measures.hpp"

namespace ptw {

namespace {

Scalar scalar_pow(const Scalar& s, long e) {
  if (s.symbolic()) return Scalar(s.rf().pow(e));
  return Scalar(std::pow(s.num(), static_cast<double>(e)));
}

// children of a coset one level down
std::vector<UnitCoset> coset_children(const UnitCoset& c, const PAdicContext& ctx) {
  if (ctx.generic()) throw ptw_error("generic mode: cannot refine cosets");
  std::vector<UnitCoset> out;
  long p = ctx.p;
  if (c.n == 0) {
    for (long u = 1; u < p; ++u) out.push_back(UnitCoset{c.v, Rat(u), 1});
    return out;
  }
  Int pn = pow_int(Int(p), static_cast<unsigned>(c.n));
  for (long t = 0; t < p; ++t) {
    UnitCoset ch{c.v, c.unit + Rat(pn * t), c.n + 1};
    ch.canonicalize(ctx);
    out.push_back(ch);
  }
  return out;
}

}  // namespace

SchwartzMeasureGm SchwartzMeasureGm::refined(int n) const {
  SchwartzMeasureGm r(ctx_);
  for (auto& t : terms_) {
    std::vector<UnitCoset> frontier = {t.coset};
    while (!frontier.empty() && frontier.front().n < n) {
      std::vector<UnitCoset> next;
      for (auto& c : frontier)
        for (auto& ch : coset_children(c, ctx_)) next.push_back(ch);
      frontier = std::move(next);
    }
    for (auto& c : frontier) r.terms_.push_back({c, t.coeff});
  }
  r.canonicalize();
  return r;
}

void SchwartzMeasureGm::canonicalize() {
  for (auto& t : terms_) t.coset.canonicalize(ctx_);
  // group by shell
  std::map<long, std::vector<GmTerm>> shells;
  for (auto& t : terms_)
    if (!t.coeff.is_zero()) shells[t.coset.v].push_back(t);
  terms_.clear();

  for (auto& [v, ts] : shells) {
    int nmin = ts.front().coset.n, nmax = nmin;
    for (auto& t : ts) {
      nmin = std::min(nmin, t.coset.n);
      nmax = std::max(nmax, t.coset.n);
    }
    std::map<UnitCoset, Scalar> acc;
    if (nmin != nmax) {
      if (ctx_.generic())
        throw ptw_error("generic mode: overlapping cosets of mixed precision");
      // refine everything in this shell to the deepest level present
      for (auto& t : ts) {
        std::vector<UnitCoset> frontier = {t.coset};
        while (frontier.front().n < nmax) {
          std::vector<UnitCoset> next;
          for (auto& c : frontier)
            for (auto& ch : coset_children(c, ctx_)) next.push_back(ch);
          frontier = std::move(next);
        }
        for (auto& c : frontier) {
          auto it = acc.find(c);
          if (it == acc.end()) acc.emplace(c, t.coeff);
          else it->second += t.coeff;
        }
      }
    } else {
      for (auto& t : ts) {
        auto it = acc.find(t.coset);
        if (it == acc.end()) acc.emplace(t.coset, t.coeff);
        else it->second += t.coeff;
      }
    }
    // merge children with equal coefficients back up
    if (!ctx_.generic()) {
      long p = ctx_.p;
      bool merged = true;
      while (merged) {
        merged = false;
        std::map<UnitCoset, std::vector<std::pair<UnitCoset, Scalar>>> by_parent;
        for (auto& [c, co] : acc) {
          if (co.is_zero() || c.n == 0) continue;
          UnitCoset parent = c;
          parent.n = c.n - 1;
          parent.canonicalize(ctx_);
          by_parent[parent].push_back({c, co});
        }
        for (auto& [parent, kids] : by_parent) {
          size_t need = parent.n == 0 ? static_cast<size_t>(p - 1) : static_cast<size_t>(p);
          if (kids.size() != need) continue;
          bool equal = true;
          for (auto& [c, co] : kids)
            if (!(co == kids.front().second)) { equal = false; break; }
          if (!equal) continue;
          for (auto& [c, co] : kids) acc.erase(c);
          auto it = acc.find(parent);
          if (it == acc.end()) acc.emplace(parent, kids.front().second);
          else it->second += kids.front().second;
          merged = true;
        }
      }
    }
    for (auto& [c, co] : acc)
      if (!co.is_zero()) terms_.push_back({c, co});
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const GmTerm& a, const GmTerm& b) { return a.coset < b.coset; });
}

SchwartzMeasureGm SchwartzMeasureGm::twist(const MultChar& chi, const Scalar& u_power) const {
  int c = chi.conductor();
  if (c > 0 && ctx_.generic())
    throw SymbolicRamified("twist by a ramified character in generic mode");
  const SchwartzMeasureGm* srcp = this;
  SchwartzMeasureGm refined_copy;
  bool need_refine = false;
  if (c > 0)
    for (auto& t : terms_)
      if (t.coset.n < c) { need_refine = true; break; }
  if (need_refine) {
    refined_copy = refined(c);
    srcp = &refined_copy;
  }
  SchwartzMeasureGm r(ctx_);
  for (auto& t : srcp->terms()) {
    Scalar factor = chi.eval(t.coset.v, t.coset.unit, t.coset.n == 0 ? 0 : t.coset.n, ctx_);
    if (!u_power.is_zero()) factor = factor * scalar_pow(u_power, t.coset.v);
    r.mutable_terms().push_back({t.coset, t.coeff * factor});
  }
  r.canonicalize();
  return r;
}

SchwartzMeasureGm SchwartzMeasureGm::pushforward_power(long k) const {
  if (k == 0) throw ZeroInput("pushforward_power k=0");
  if (k == 1) return *this;
  if (ctx_.generic()) {
    if (k != -1) throw InsufficientPrecision("generic mode: pushforward only for k=+-1");
    return invert_variable();
  }
  long p = ctx_.p;
  long a = 0, kk = k < 0 ? -k : k;
  while (kk % p == 0) { kk /= p; ++a; }
  SchwartzMeasureGm r(ctx_);
  for (auto& t : terms_) {
    // ensure coset precision >= 1 so that units determine the image
    std::vector<std::pair<UnitCoset, Scalar>> pieces;
    if (t.coset.n == 0) {
      for (auto& ch : coset_children(t.coset, ctx_)) pieces.push_back({ch, t.coeff});
    } else {
      pieces.push_back({t.coset, t.coeff});
    }
    for (auto& [c, coeff] : pieces) {
      int n = c.n;
      if (n + a > static_cast<long>(ctx_.k_max))
        throw InsufficientPrecision("pushforward_power: precision margin exhausted");
      Int mod = pow_int(Int(p), static_cast<unsigned>(n + a));
      Int uk = mod_pow(rat_mod(c.unit, mod), Int(k < 0 ? -k : k), mod);
      if (k < 0) uk = inv_mod(uk, mod);
      UnitCoset img{c.v * k, Rat(uk), static_cast<int>(n + a)};
      img.canonicalize(ctx_);
      // mass of the source coset lands uniformly on the image coset
      Scalar density = coeff * ctx_.qpow(a);
      r.mutable_terms().push_back({img, density});
    }
  }
  r.canonicalize();
  return r;
}

SchwartzMeasureGm SchwartzMeasureGm::convolve(const SchwartzMeasureGm& g) const {
  SchwartzMeasureGm r(ctx_);
  for (auto& s : terms_)
    for (auto& t : g.terms()) {
      UnitCoset out;
      out.v = s.coset.v + t.coset.v;
      out.n = std::min(s.coset.n, t.coset.n);
      if (out.n == 0) {
        out.unit = 1;
      } else {
        out.unit = s.coset.unit * t.coset.unit;
      }
      out.canonicalize(ctx_);
      Scalar mass = s.coeff * unitcoset_volume(s.coset, ctx_) * t.coeff *
                    unitcoset_volume(t.coset, ctx_);
      Scalar density = mass / unitcoset_volume(out, ctx_);
      r.mutable_terms().push_back({out, density});
    }
  r.canonicalize();
  return r;
}

// ---- Ga ----

void SchwartzMeasureGa::canonicalize() {
  // normalize phases modulo what the ball can see
  for (auto& t : terms_) {
    t.ball.canonicalize(ctx_);
    if (!t.phase.zero) {
      long vmin = t.ball.contains_zero()
                      ? t.ball.level
                      : std::min<long>(t.ball.center.v, t.ball.level);
      if (t.phase.v + vmin >= 0) {
        t.phase = FElem::zero_elem();
      } else if (!ctx_.generic()) {
        // reduce the phase unit mod p^{-vmin - v(phase)}
        Int m = pow_int(Int(ctx_.p), static_cast<unsigned>(-vmin - t.phase.v));
        t.phase.unit = Rat(rat_mod(t.phase.unit, m));
      }
    }
  }
  // group identical (ball, phase)
  std::map<std::pair<Ball, FElem>, Scalar> acc;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    auto key = std::make_pair(t.ball, t.phase);
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, t.coeff);
    else it->second += t.coeff;
  }
  terms_.clear();
  // merge full sets of phase-free sibling balls
  if (!ctx_.generic()) {
    long p = ctx_.p;
    bool merged = true;
    while (merged) {
      merged = false;
      std::map<Ball, std::vector<std::pair<Ball, Scalar>>> by_parent;
      for (auto& [key, co] : acc) {
        if (co.is_zero() || !key.second.zero) continue;
        Ball parent = key.first;
        parent.level -= 1;
        parent.canonicalize(ctx_);
        by_parent[parent].push_back({key.first, co});
      }
      for (auto& [parent, kids] : by_parent) {
        if (kids.size() != static_cast<size_t>(p)) continue;
        bool equal = true;
        for (auto& [b, co] : kids)
          if (!(co == kids.front().second)) { equal = false; break; }
        if (!equal) continue;
        for (auto& [b, co] : kids) acc.erase({b, FElem::zero_elem()});
        auto key = std::make_pair(parent, FElem::zero_elem());
        auto it = acc.find(key);
        if (it == acc.end()) acc.emplace(key, kids.front().second);
        else it->second += kids.front().second;
        merged = true;
      }
    }
  }
  for (auto& [key, co] : acc)
    if (!co.is_zero()) terms_.push_back({key.first, key.second, co});
  std::sort(terms_.begin(), terms_.end(), [](const GaTerm& a, const GaTerm& b) {
    if (!(a.ball == b.ball)) return a.ball < b.ball;
    return a.phase < b.phase;
  });
}

}  // namespace ptw
