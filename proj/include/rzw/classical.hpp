#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rzw/rtripos.hpp"

namespace rzw {

// Abstract Krivine structures. The induced form lives on a finite OPCA via a
// partial interpretation of the basic combinators; the syntactic form lives
// on CL terms with the head-reduction chain as process order.

struct Interp {
  size_t b, c, k, w;  // carrier elements interpreting the basic combinators
};

struct InducedAks {
  const FiniteOpca* a = nullptr;
  Interp interp{};
  size_t p_elem = 0;      // value of the pairing term b c (c (w k))
  size_t kappa_elem = 0;  // value of the continuation builder
  size_t cc_elem = 0;     // value of cc

  std::optional<size_t> push(size_t t, size_t pi) const;
  std::optional<size_t> continuation(size_t pi) const;  // k_pi
  std::optional<size_t> bullet(size_t m, size_t n) const;

  // (x,y) > (x',y') iff x'y' defined implies xy defined and xy <= x'y'
  bool succ(size_t x, size_t y, size_t x2, size_t y2) const;
};

struct InducedAksReport {
  bool ok = false;
  std::optional<InducedAks> aks;
  std::vector<std::string> violations;
};

// Validates the four interpretation laws exhaustively and interprets the
// machine terms; fails when any machine constant is undefined.
InducedAksReport induce_aks(const FiniteOpca& a, const Interp& interp);

// Evaluates a closed CL term under the interpretation (partial).
std::optional<size_t> interpret_term(const FiniteOpca& a, const Interp& in,
                                     const Term& t);

// Poles over the induced structure. Processes are pairs of carrier elements;
// the pole induced by a downset U is {(t,pi) | t pi defined and in U}.
struct InducedPole {
  const FiniteOpca* a = nullptr;
  Dset u = 0;
  bool contains(size_t t, size_t pi) const {
    auto v = a->app(t, pi);
    return v && (u >> *v & 1);
  }
};

bool pole_saturated(const InducedAks& k, const InducedPole& pole);

// Stack predicates: one set of stacks (any subset, not necessarily downward
// closed) per index.
using StackPred = std::vector<Dset>;

Dset orthogonal_stacks(const InducedPole& pole, Dset stacks);  // U^pole
Dset orthogonal_terms(const InducedPole& pole, Dset terms);

// Implication predicate (f -> g)(x) = {u . pi | u in f(x)^pole, pi in g(x)}.
Dset cr_implication(const InducedAks& k, const InducedPole& pole, Dset fx,
                    Dset gx);

struct CrEntailResult {
  bool holds = false;
  std::optional<size_t> witness;  // least filter element realizing it
};

// Exists t in C with t * (u . pi) in pole for all x, u in f(x)^pole,
// pi in g(x). C enumerated in increasing element order.
CrEntailResult cr_entails(const InducedAks& k, const InducedPole& pole,
                          Dset filter_c, const StackPred& f,
                          const StackPred& g);

// forall along a map in the classical tripos: union over fibers.
StackPred cr_forall_along(const IndexMap& f, const StackPred& g,
                          size_t y_size);

// n(V) = V => U = V^pole for the induced pole.
Dset neg_translate(const FiniteOpca& a, Dset v, Dset u);

// cr_entails(f, g)  <=>  entails(n o f, n o g) over phi = intersects(C).
bool check_cr_vs_intuitionistic(const InducedAks& k, Dset filter_c, Dset u,
                                const StackPred& f, const StackPred& g);

// ----- syntactic machine -----

// A process M * pi is represented by the applied term (M pi); the process
// order is the head chain.
bool syn_succ(const Term& m, const Term& pi, const Term& m2, const Term& pi2,
              size_t fuel);

struct SynPole {
  std::vector<std::pair<Term, Term>> generators;
  size_t fuel = 10000;
  bool contains(const Term& t, const Term& pi) const;
};

}  // namespace rzw
