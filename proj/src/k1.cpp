#include "rzw/k1.hpp"

#include <cmath>

#include "rzw/reduce.hpp"

namespace rzw {

namespace {

using U128 = unsigned __int128;

constexpr K1Code kMax = ~K1Code{0};

}  // namespace

K1Code cantor_pair(K1Code x, K1Code y) {
  U128 s = static_cast<U128>(x) + y;
  U128 z = s * (s + 1) / 2 + y;
  if (z > kMax) throw K1Overflow();
  return static_cast<K1Code>(z);
}

std::pair<K1Code, K1Code> cantor_unpair(K1Code z) {
  long double approx =
      (std::sqrt(8.0L * static_cast<long double>(z) + 1.0L) - 1.0L) / 2.0L;
  K1Code w = approx < 0 ? 0 : static_cast<K1Code>(approx);
  auto tri = [](K1Code n) -> U128 {
    return static_cast<U128>(n) * (n + 1) / 2;
  };
  while (w > 0 && tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  K1Code y = z - static_cast<K1Code>(tri(w));
  return {w - y, y};
}

K1Code k1_encode(const Term& t) {
  auto r = k1_try_encode(t);
  if (!r) throw K1Overflow();
  return *r;
}

std::optional<K1Code> k1_try_encode(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Comb:
      switch (t->comb) {
        case Comb::B: return K1Code{0};
        case Comb::C: return K1Code{1};
        case Comb::K: return K1Code{2};
        case Comb::W: return K1Code{3};
      }
      return std::nullopt;
    case TermNode::Kind::App: {
      auto l = k1_try_encode(t->left);
      auto r = k1_try_encode(t->right);
      if (!l || !r) return std::nullopt;
      try {
        K1Code p = cantor_pair(*l, *r);
        if (p > kMax - 4) return std::nullopt;
        return p + 4;
      } catch (const K1Overflow&) {
        return std::nullopt;
      }
    }
    default:
      throw std::invalid_argument("k1_encode: term is not closed CL");
  }
}

Term k1_decode(K1Code code) {
  switch (code) {
    case 0: return mk_comb(Comb::B);
    case 1: return mk_comb(Comb::C);
    case 2: return mk_comb(Comb::K);
    case 3: return mk_comb(Comb::W);
    default: {
      auto [l, r] = cantor_unpair(code - 4);
      return mk_app(k1_decode(l), k1_decode(r));
    }
  }
}

std::optional<K1Code> k1_apply(K1Code e, K1Code n, size_t fuel) {
  Term t = mk_app(k1_decode(e), k1_decode(n));
  ReductionOutcome out = reduce_whnf(t, fuel);
  if (out.status != ReductionOutcome::Status::HeadNormal) return std::nullopt;
  auto code = k1_try_encode(out.final);
  if (!code) throw K1Overflow();  // head normal but unencodable
  return code;
}

std::optional<K1Code> k1_apply_chain(K1Code e, const std::vector<K1Code>& args,
                                     size_t fuel) {
  K1Code cur = e;
  for (K1Code a : args) {
    auto next = k1_apply(cur, a, fuel);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

}  // namespace rzw
