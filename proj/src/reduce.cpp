#include "rzw/reduce.hpp"

#include <stdexcept>

namespace rzw {

std::optional<Term> whnf_step(const Term& m) {
  const TermNode* leaf = nullptr;
  std::vector<Term> args;  // innermost argument at the back
  {
    const TermNode* cur = m.get();
    while (cur->kind == TermNode::Kind::App) {
      args.push_back(cur->right);
      cur = cur->left.get();
    }
    leaf = cur;
  }
  if (leaf->kind == TermNode::Kind::Lam)
    throw std::invalid_argument("whnf_step: term is not CL-pure");
  if (leaf->kind != TermNode::Kind::Comb) return std::nullopt;

  // args[back] is the first argument of the head combinator
  auto arg = [&](size_t i) -> const Term& { return args[args.size() - 1 - i]; };
  size_t need = 0;
  Term contracted;
  switch (leaf->comb) {
    case Comb::B:
      need = 3;
      if (args.size() < need) return std::nullopt;
      contracted = mk_app(arg(0), mk_app(arg(1), arg(2)));
      break;
    case Comb::C:
      need = 3;
      if (args.size() < need) return std::nullopt;
      contracted = mk_app(mk_app(arg(0), arg(2)), arg(1));
      break;
    case Comb::K:
      need = 2;
      if (args.size() < need) return std::nullopt;
      contracted = arg(0);
      break;
    case Comb::W:
      need = 2;
      if (args.size() < need) return std::nullopt;
      contracted = mk_app(mk_app(arg(0), arg(1)), arg(1));
      break;
  }
  Term out = std::move(contracted);
  for (size_t i = args.size() - need; i-- > 0;) out = mk_app(std::move(out), args[i]);
  return out;
}

ReductionOutcome reduce_whnf(const Term& m, size_t fuel, bool want_trace) {
  ReductionOutcome out;
  out.final = m;
  if (want_trace) out.trace = std::vector<Term>{m};
  while (out.steps < fuel) {
    auto next = whnf_step(out.final);
    if (!next) {
      out.status = ReductionOutcome::Status::HeadNormal;
      return out;
    }
    out.final = *next;
    ++out.steps;
    if (want_trace) out.trace->push_back(out.final);
  }
  if (!whnf_step(out.final)) {
    out.status = ReductionOutcome::Status::HeadNormal;
  } else {
    out.status = ReductionOutcome::Status::FuelExhausted;
  }
  return out;
}

bool chain_reaches(const Term& m, const Term& n, size_t fuel) {
  Term cur = m;
  if (term_equal(cur, n)) return true;
  for (size_t i = 0; i < fuel; ++i) {
    auto next = whnf_step(cur);
    if (!next) return false;
    cur = *next;
    if (term_equal(cur, n)) return true;
  }
  return false;
}

}  // namespace rzw
