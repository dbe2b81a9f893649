#include "rzw/classical.hpp"

#include "rzw/reduce.hpp"

namespace rzw {

std::optional<size_t> interpret_term(const FiniteOpca& a, const Interp& in,
                                     const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Comb:
      switch (t->comb) {
        case Comb::B: return in.b;
        case Comb::C: return in.c;
        case Comb::K: return in.k;
        case Comb::W: return in.w;
      }
      return std::nullopt;
    case TermNode::Kind::App: {
      auto l = interpret_term(a, in, t->left);
      if (!l) return std::nullopt;
      auto r = interpret_term(a, in, t->right);
      if (!r) return std::nullopt;
      return a.app(*l, *r);
    }
    default:
      return std::nullopt;  // open terms have no interpretation
  }
}

std::optional<size_t> InducedAks::push(size_t t, size_t pi) const {
  auto pt = a->app(p_elem, t);
  if (!pt) return std::nullopt;
  return a->app(*pt, pi);
}

std::optional<size_t> InducedAks::continuation(size_t pi) const {
  return a->app(kappa_elem, pi);
}

std::optional<size_t> InducedAks::bullet(size_t m, size_t n) const {
  auto bm = a->app(interp.b, m);
  if (!bm) return std::nullopt;
  auto pn = a->app(p_elem, n);
  if (!pn) return std::nullopt;
  return a->app(*bm, *pn);
}

bool InducedAks::succ(size_t x, size_t y, size_t x2, size_t y2) const {
  auto up = a->app(x2, y2);
  if (!up) return true;
  auto lo = a->app(x, y);
  return lo && a->le(*lo, *up);
}

InducedAksReport induce_aks(const FiniteOpca& a, const Interp& in) {
  InducedAksReport rep;
  const size_t n = a.size();
  auto viol = [&](const std::string& s) { rep.violations.push_back(s); };
  auto app2 = [&](size_t h, size_t x, size_t y) -> std::optional<size_t> {
    auto hx = a.app(h, x);
    if (!hx) return std::nullopt;
    return a.app(*hx, y);
  };
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      auto bxy = app2(in.b, x, y);
      if (!bxy) viol("f(b) x y undefined at (" + a.name(x) + "," + a.name(y) + ")");
      auto cxy = app2(in.c, x, y);
      if (!cxy) viol("f(c) x y undefined at (" + a.name(x) + "," + a.name(y) + ")");
      auto kxy = app2(in.k, x, y);
      if (!kxy || !a.le(*kxy, x))
        viol("f(k) law fails at (" + a.name(x) + "," + a.name(y) + ")");
      auto wx = a.app(in.w, x);
      if (!wx) viol("f(w) x undefined at " + a.name(x));
      for (size_t z = 0; z < n; ++z) {
        auto yz = a.app(y, z);
        if (yz) {
          auto xyz = a.app(x, *yz);
          if (xyz && bxy) {
            auto bxyz = a.app(*bxy, z);
            if (!bxyz || !a.le(*bxyz, *xyz))
              viol("f(b) law fails at (" + a.name(x) + "," + a.name(y) + "," +
                   a.name(z) + ")");
          }
        }
        auto xz = a.app(x, z);
        if (xz) {
          auto xzy = a.app(*xz, y);
          if (xzy && cxy) {
            auto cxyz = a.app(*cxy, z);
            if (!cxyz || !a.le(*cxyz, *xzy))
              viol("f(c) law fails at (" + a.name(x) + "," + a.name(y) + "," +
                   a.name(z) + ")");
          }
        }
      }
      auto xy = a.app(x, y);
      if (xy) {
        auto xyy = a.app(*xy, y);
        if (xyy && wx) {
          auto wxy = a.app(*wx, y);
          if (!wxy || !a.le(*wxy, *xyy))
            viol("f(w) law fails at (" + a.name(x) + "," + a.name(y) + ")");
        }
      }
    }
  }
  if (!rep.violations.empty()) return rep;

  InducedAks k;
  k.a = &a;
  k.interp = in;
  auto p = interpret_term(a, in, term_p());
  auto kap = interpret_term(a, in, term_kappa());
  auto cc = interpret_term(a, in, term_cc());
  if (!p) viol("pairing term has no interpretation");
  if (!kap) viol("continuation term has no interpretation");
  if (!cc) viol("cc term has no interpretation");
  if (!rep.violations.empty()) return rep;
  k.p_elem = *p;
  k.kappa_elem = *kap;
  k.cc_elem = *cc;
  rep.ok = true;
  rep.aks = k;
  return rep;
}

bool pole_saturated(const InducedAks& k, const InducedPole& pole) {
  const size_t n = k.a->size();
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!pole.contains(x, y)) continue;
      for (size_t x2 = 0; x2 < n; ++x2)
        for (size_t y2 = 0; y2 < n; ++y2)
          if (k.succ(x2, y2, x, y) && !pole.contains(x2, y2)) return false;
    }
  return true;
}

Dset orthogonal_stacks(const InducedPole& pole, Dset stacks) {
  Dset out = 0;
  for (size_t t = 0; t < pole.a->size(); ++t) {
    bool good = true;
    for (size_t pi = 0; pi < pole.a->size() && good; ++pi)
      if ((stacks >> pi & 1) && !pole.contains(t, pi)) good = false;
    if (good) out |= Dset{1} << t;
  }
  return out;
}

Dset orthogonal_terms(const InducedPole& pole, Dset terms) {
  Dset out = 0;
  for (size_t pi = 0; pi < pole.a->size(); ++pi) {
    bool good = true;
    for (size_t t = 0; t < pole.a->size() && good; ++t)
      if ((terms >> t & 1) && !pole.contains(t, pi)) good = false;
    if (good) out |= Dset{1} << pi;
  }
  return out;
}

Dset cr_implication(const InducedAks& k, const InducedPole& pole, Dset fx,
                    Dset gx) {
  Dset orth = orthogonal_stacks(pole, fx);
  Dset out = 0;
  for (size_t u = 0; u < k.a->size(); ++u) {
    if (!(orth >> u & 1)) continue;
    for (size_t pi = 0; pi < k.a->size(); ++pi) {
      if (!(gx >> pi & 1)) continue;
      auto pushed = k.push(u, pi);
      if (pushed) out |= Dset{1} << *pushed;
    }
  }
  return out;
}

CrEntailResult cr_entails(const InducedAks& k, const InducedPole& pole,
                          Dset filter_c, const StackPred& f,
                          const StackPred& g) {
  if (f.size() != g.size())
    throw std::invalid_argument("cr_entails: index mismatch");
  CrEntailResult res;
  for (size_t t = 0; t < k.a->size(); ++t) {
    if (!(filter_c >> t & 1)) continue;
    bool good = true;
    for (size_t x = 0; x < f.size() && good; ++x) {
      Dset orth = orthogonal_stacks(pole, f[x]);
      for (size_t u = 0; u < k.a->size() && good; ++u) {
        if (!(orth >> u & 1)) continue;
        for (size_t pi = 0; pi < k.a->size() && good; ++pi) {
          if (!(g[x] >> pi & 1)) continue;
          auto pushed = k.push(u, pi);
          if (!pushed || !pole.contains(t, *pushed)) good = false;
        }
      }
    }
    if (good) {
      res.holds = true;
      res.witness = t;
      return res;
    }
  }
  return res;
}

StackPred cr_forall_along(const IndexMap& f, const StackPred& g,
                          size_t y_size) {
  StackPred out(y_size, 0);
  for (size_t x = 0; x < f.size(); ++x) out[f[x]] |= g[x];
  return out;
}

Dset neg_translate(const FiniteOpca& a, Dset v, Dset u) {
  return arrow(a, v, u);
}

bool check_cr_vs_intuitionistic(const InducedAks& k, Dset filter_c, Dset u,
                                const StackPred& f, const StackPred& g) {
  InducedPole pole{k.a, u};
  bool classical = cr_entails(k, pole, filter_c, f, g).holds;
  Family nf, ng;
  for (size_t x = 0; x < f.size(); ++x) {
    nf.vals.push_back(neg_translate(*k.a, f[x], u));
    ng.vals.push_back(neg_translate(*k.a, g[x], u));
  }
  PhiPolicy rel;
  rel.kind = PhiPolicy::Kind::Intersects;
  rel.filter = filter_c;
  bool intuitionistic = entails(*k.a, rel, nf, ng).holds;
  return classical == intuitionistic;
}

bool syn_succ(const Term& m, const Term& pi, const Term& m2, const Term& pi2,
              size_t fuel) {
  return chain_reaches(mk_app(m, pi), mk_app(m2, pi2), fuel);
}

bool SynPole::contains(const Term& t, const Term& pi) const {
  Term proc = mk_app(t, pi);
  for (const auto& [g, rho] : generators)
    if (chain_reaches(proc, mk_app(g, rho), fuel)) return true;
  return false;
}

}  // namespace rzw
