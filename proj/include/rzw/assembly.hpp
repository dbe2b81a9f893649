#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rzw/rtripos.hpp"

namespace rzw {

// Desk-scale category of assemblies over a finite OPCA: finite sets whose
// elements carry inhabited downsets of realizers.

struct Assembly {
  std::vector<std::string> elems;
  Family e;  // one inhabited downset per element

  size_t size() const { return elems.size(); }
};

// nabla X: every realizer set is the full carrier.
Assembly nabla(const FiniteOpca& a, std::vector<std::string> elems);

bool assembly_ok(const FiniteOpca& a, const Assembly& x);  // inhabited downsets

// trackers(f) = {u | forall x, r in E(x): u r defined and in F(f(x))}
Dset trackers(const FiniteOpca& a, const IndexMap& f, const Assembly& x,
              const Assembly& y);

struct TrackedMorphism {
  IndexMap f;
  Dset tracker_set = 0;
  bool tracked = false;  // tracker_set in phi
};

TrackedMorphism track(const FiniteOpca& a, const PhiPolicy& phi,
                      const IndexMap& f, const Assembly& x, const Assembly& y);

struct ProductResult {
  Assembly prod;                      // pairs in row-major order (x, y)
  IndexMap proj1, proj2;
  bool pairing_defined = true;        // p-pairing application defined
};

// E(x,y) = p E(x) E(y) via the pairing realizer object.
ProductResult product(const FiniteOpca& a, const Assembly& x,
                      const Assembly& y);

struct EqualizerResult {
  Assembly sub;
  IndexMap include;
};

EqualizerResult equalizer(const FiniteOpca& a, const IndexMap& f,
                          const IndexMap& g, const Assembly& x);

bool is_mono(const IndexMap& f);

struct RegularEpiResult {
  bool is_regular_epi = false;
  bool surjective = false;
  Dset witness = 0;  // {v | forall y, b in F(y): exists x in fiber: v b in E(x)}
};

RegularEpiResult is_regular_epi(const FiniteOpca& a, const PhiPolicy& phi,
                                const IndexMap& f, const Assembly& x,
                                const Assembly& y);

bool is_partitioned(const FiniteOpca& a, const Assembly& x);  // principal E(x)
bool is_modest(const FiniteOpca& a, const Assembly& x);  // realizers separate

// Mutual-tracker isomorphism search (instances are tiny).
bool isomorphic(const FiniteOpca& a, const PhiPolicy& phi, const Assembly& x,
                const Assembly& y);

// ----- applicative morphisms -----

// A relation C <= B x A between (B, chi) and (A, phi); pairs[b][a].
struct ApplicativeMorphism {
  std::vector<std::vector<bool>> pairs;  // indexed [b][a]
};

struct AppMorphReport {
  bool ok = false;
  bool downward_in_b = true;
  bool cond_monotone = false;  // with certifying downset u_set
  Dset u_set = 0;
  bool cond_application = false;
  Dset r_set = 0;
  bool cond_filter = false;    // image of every U in phi lands in chi
  std::vector<std::string> failures;
};

AppMorphReport check_applicative_morphism(const FiniteOpca& b,
                                          const PhiPolicy& chi,
                                          const FiniteOpca& a,
                                          const PhiPolicy& phi,
                                          const ApplicativeMorphism& c);

ApplicativeMorphism le_morphism(const FiniteOpca& a);  // the order of A

ApplicativeMorphism compose(const ApplicativeMorphism& d2,  // (B,chi)->(C,psi)
                            const ApplicativeMorphism& d1); // (A,phi)->(B,chi)

// Image of a downset of A under the relation.
Dset morphism_image(const ApplicativeMorphism& c, size_t b_size, Dset u);

// induced_map sends (X, E) over A to (X, x -> C[E(x)]) over B.
Assembly induced_map(const ApplicativeMorphism& c, size_t b_size,
                     const Assembly& x);

}  // namespace rzw
