#pragma once

#include <optional>
#include <vector>

#include "rzw/term.hpp"

namespace rzw {

// Deterministic weak head reduction for CL-pure terms:
//   b x y z -> x (y z)    c x y z -> x z y
//   k x y   -> x          w x y   -> x y y
// applied at the head spine only.

struct ReductionOutcome {
  enum class Status { HeadNormal, FuelExhausted } status;
  Term final;
  size_t steps = 0;
  std::optional<std::vector<Term>> trace;  // includes initial term
};

// One head step, or nullopt when the term is in weak head normal form.
std::optional<Term> whnf_step(const Term& m);

ReductionOutcome reduce_whnf(const Term& m, size_t fuel,
                             bool want_trace = false);

// True iff n occurs (structurally) on the head chain of m within fuel steps.
bool chain_reaches(const Term& m, const Term& n, size_t fuel);

}  // namespace rzw
