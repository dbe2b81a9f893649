#include "rzw/assembly.hpp"

#include <algorithm>

namespace rzw {

Assembly nabla(const FiniteOpca& a, std::vector<std::string> elems) {
  Assembly x;
  x.elems = std::move(elems);
  x.e.vals.assign(x.elems.size(), a.full());
  return x;
}

bool assembly_ok(const FiniteOpca& a, const Assembly& x) {
  if (x.e.size() != x.elems.size()) return false;
  for (Dset d : x.e.vals)
    if (d == 0 || !a.is_downset(d)) return false;
  return true;
}

Dset trackers(const FiniteOpca& a, const IndexMap& f, const Assembly& x,
              const Assembly& y) {
  Dset out = a.full();
  for (size_t i = 0; i < x.size(); ++i) out &= arrow(a, x.e[i], y.e[f[i]]);
  return out;
}

TrackedMorphism track(const FiniteOpca& a, const PhiPolicy& phi,
                      const IndexMap& f, const Assembly& x,
                      const Assembly& y) {
  TrackedMorphism m;
  m.f = f;
  m.tracker_set = trackers(a, f, x, y);
  m.tracked = phi.contains(m.tracker_set);
  return m;
}

ProductResult product(const FiniteOpca& a, const Assembly& x,
                      const Assembly& y) {
  ProductResult res;
  FiberAlgebra alg(a);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) {
      res.prod.elems.push_back("(" + x.elems[i] + "," + y.elems[j] + ")");
      auto pd = alg.conj(x.e[i], y.e[j]);
      if (!pd) {
        res.pairing_defined = false;
        res.prod.e.vals.push_back(0);
      } else {
        res.prod.e.vals.push_back(*pd);
      }
      res.proj1.push_back(i);
      res.proj2.push_back(j);
    }
  return res;
}

EqualizerResult equalizer(const FiniteOpca&, const IndexMap& f,
                          const IndexMap& g, const Assembly& x) {
  EqualizerResult res;
  for (size_t i = 0; i < x.size(); ++i)
    if (f[i] == g[i]) {
      res.sub.elems.push_back(x.elems[i]);
      res.sub.e.vals.push_back(x.e[i]);
      res.include.push_back(i);
    }
  return res;
}

bool is_mono(const IndexMap& f) {
  std::vector<size_t> seen;
  for (size_t v : f) {
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(v);
  }
  return true;
}

RegularEpiResult is_regular_epi(const FiniteOpca& a, const PhiPolicy& phi,
                                const IndexMap& f, const Assembly& x,
                                const Assembly& y) {
  RegularEpiResult res;
  std::vector<bool> hit(y.size(), false);
  for (size_t v : f) hit[v] = true;
  res.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  if (!res.surjective) return res;
  Dset w = 0;
  for (size_t v = 0; v < a.size(); ++v) {
    bool good = true;
    for (size_t yi = 0; yi < y.size() && good; ++yi) {
      for (size_t b = 0; b < a.size() && good; ++b) {
        if (!(y.e[yi] >> b & 1)) continue;
        auto vb = a.app(v, b);
        if (!vb) { good = false; break; }
        bool lands = false;
        for (size_t xi = 0; xi < x.size(); ++xi)
          if (f[xi] == yi && (x.e[xi] >> *vb & 1)) { lands = true; break; }
        if (!lands) good = false;
      }
    }
    if (good) w |= Dset{1} << v;
  }
  res.witness = w;
  res.is_regular_epi = phi.contains(w);
  return res;
}

bool is_partitioned(const FiniteOpca& a, const Assembly& x) {
  for (Dset d : x.e.vals) {
    bool principal = false;
    for (size_t e = 0; e < a.size() && !principal; ++e)
      if (a.principal_down(e) == d) principal = true;
    if (!principal) return false;
  }
  return true;
}

bool is_modest(const FiniteOpca&, const Assembly& x) {
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x.e[i] & x.e[j]) return false;
  return true;
}

bool isomorphic(const FiniteOpca& a, const PhiPolicy& phi, const Assembly& x,
                const Assembly& y) {
  if (x.size() != y.size()) return false;
  IndexMap f(x.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = i;
  std::sort(f.begin(), f.end());
  do {
    if (!track(a, phi, f, x, y).tracked) continue;
    IndexMap inv(f.size());
    for (size_t i = 0; i < f.size(); ++i) inv[f[i]] = i;
    if (track(a, phi, inv, y, x).tracked) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

AppMorphReport check_applicative_morphism(const FiniteOpca& b,
                                          const PhiPolicy& chi,
                                          const FiniteOpca& a,
                                          const PhiPolicy& phi,
                                          const ApplicativeMorphism& c) {
  AppMorphReport rep;
  // condition 1: downward closed in the B coordinate
  for (size_t bb = 0; bb < b.size(); ++bb)
    for (size_t aa = 0; aa < a.size(); ++aa) {
      if (!c.pairs[bb][aa]) continue;
      for (size_t b2 = 0; b2 < b.size(); ++b2)
        if (b.le(b2, bb) && !c.pairs[b2][aa]) {
          rep.downward_in_b = false;
          rep.failures.push_back("not downward closed at (" + b.name(b2) +
                                 "," + a.name(aa) + ")");
        }
    }
  // condition 2: some U in chi realizes monotone translation
  Dset u = 0;
  for (size_t cand = 0; cand < b.size(); ++cand) {
    bool good = true;
    for (size_t bb = 0; bb < b.size() && good; ++bb)
      for (size_t aa = 0; aa < a.size() && good; ++aa) {
        if (!c.pairs[bb][aa]) continue;
        for (size_t a2 = 0; a2 < a.size() && good; ++a2) {
          if (!a.le(aa, a2)) continue;
          auto ub = b.app(cand, bb);
          if (!ub || !c.pairs[*ub][a2]) good = false;
        }
      }
    if (good) u |= Dset{1} << cand;
  }
  rep.u_set = u;
  rep.cond_monotone = chi.contains(u);
  if (!rep.cond_monotone)
    rep.failures.push_back("no chi-member monotonicity realizer");
  // condition 3: some R in chi realizes application
  Dset r = 0;
  for (size_t cand = 0; cand < b.size(); ++cand) {
    bool good = true;
    for (size_t b1 = 0; b1 < b.size() && good; ++b1)
      for (size_t a1 = 0; a1 < a.size() && good; ++a1) {
        if (!c.pairs[b1][a1]) continue;
        for (size_t b2 = 0; b2 < b.size() && good; ++b2)
          for (size_t a2 = 0; a2 < a.size() && good; ++a2) {
            if (!c.pairs[b2][a2]) continue;
            auto a12 = a.app(a1, a2);
            if (!a12) continue;
            auto rb = b.app(cand, b1);
            if (!rb) { good = false; break; }
            auto rbb = b.app(*rb, b2);
            if (!rbb || !c.pairs[*rbb][*a12]) good = false;
          }
      }
    if (good) r |= Dset{1} << cand;
  }
  rep.r_set = r;
  rep.cond_application = chi.contains(r);
  if (!rep.cond_application)
    rep.failures.push_back("no chi-member application realizer");
  // condition 4: images of phi members are chi members
  rep.cond_filter = true;
  for (Dset udown : a.all_downsets()) {
    if (!phi.contains(udown)) continue;
    Dset img = morphism_image(c, b.size(), udown);
    if (!chi.contains(img)) {
      rep.cond_filter = false;
      rep.failures.push_back("image of a phi member is not in chi");
      break;
    }
  }
  rep.ok = rep.downward_in_b && rep.cond_monotone && rep.cond_application &&
           rep.cond_filter;
  return rep;
}

ApplicativeMorphism le_morphism(const FiniteOpca& a) {
  ApplicativeMorphism c;
  c.pairs.assign(a.size(), std::vector<bool>(a.size(), false));
  for (size_t bb = 0; bb < a.size(); ++bb)
    for (size_t aa = 0; aa < a.size(); ++aa)
      if (a.le(bb, aa)) c.pairs[bb][aa] = true;
  return c;
}

ApplicativeMorphism compose(const ApplicativeMorphism& d2,
                            const ApplicativeMorphism& d1) {
  size_t csize = d2.pairs.size();
  size_t bsize = d1.pairs.size();
  size_t asize = bsize ? d1.pairs[0].size() : 0;
  ApplicativeMorphism out;
  out.pairs.assign(csize, std::vector<bool>(asize, false));
  for (size_t cc = 0; cc < csize; ++cc)
    for (size_t aa = 0; aa < asize; ++aa)
      for (size_t bb = 0; bb < bsize; ++bb)
        if (d1.pairs[bb][aa] && d2.pairs[cc][bb]) out.pairs[cc][aa] = true;
  return out;
}

Dset morphism_image(const ApplicativeMorphism& c, size_t b_size, Dset u) {
  Dset img = 0;
  for (size_t bb = 0; bb < b_size; ++bb)
    for (size_t aa = 0; aa < c.pairs[bb].size(); ++aa)
      if ((u >> aa & 1) && c.pairs[bb][aa]) img |= Dset{1} << bb;
  return img;
}

Assembly induced_map(const ApplicativeMorphism& c, size_t b_size,
                     const Assembly& x) {
  Assembly out;
  out.elems = x.elems;
  for (Dset d : x.e.vals) out.e.vals.push_back(morphism_image(c, b_size, d));
  return out;
}

}  // namespace rzw
