#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rzw/term.hpp"

namespace rzw {

// Desk-scale Kleene's first model: natural numbers coding closed CL terms.
// Leaves b,c,k,w are 0..3; an application is 4 + cantor(code l, code r).

using K1Code = std::uint64_t;

struct K1Overflow : std::overflow_error {
  K1Overflow() : std::overflow_error("K1 code does not fit in 64 bits") {}
};

K1Code cantor_pair(K1Code x, K1Code y);  // throws K1Overflow
std::pair<K1Code, K1Code> cantor_unpair(K1Code z);

K1Code k1_encode(const Term& t);  // requires closed CL; throws K1Overflow
std::optional<K1Code> k1_try_encode(const Term& t);  // nullopt on overflow
Term k1_decode(K1Code code);

// Decode both, juxtapose, head-reduce with fuel; encode the head normal form.
// nullopt means undefined within fuel.
std::optional<K1Code> k1_apply(K1Code e, K1Code n, size_t fuel);

// Iterated application (left associated), for the probe-based law checks.
std::optional<K1Code> k1_apply_chain(K1Code e, const std::vector<K1Code>& args,
                                     size_t fuel);

}  // namespace rzw
