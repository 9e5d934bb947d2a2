#pragma once

#include "totlab/core_arith.hpp"
#include "totlab/u128.hpp"

#include <optional>
#include <vector>

namespace totlab {

// Convention throughout: phi^0(n) = n. Hence k(1) = 0, C(2) = 0, S(1) = 0,
// and the chain of 1 is empty. C(1) is absent: no iterate of 1 equals 2.

// The iterate sequence [phi(n), phi^2(n), ..., 1], ending at the first 1.
struct TotientChain {
    u128 start;
    std::vector<u128> iterates;
};

struct ChainSummary {
    u128 n;
    u32 k;                 // least k with phi^k(n) = 1
    std::optional<u32> c;  // least x with phi^x(n) = 2; absent for n = 1
    u256 s;                // S(n) = sum of the iterates; S(n) < 2n can pass 2^128
};

// Numeric route: factorizes each iterate afresh. Kept separate from the
// factored route below so the two can cross-check each other.
TotientChain totient_chain(u128 n);

// Factored route with memoization for small n; k, c, s per the conventions
// above. Correct with or without cache hits. The budget caps the rho effort
// per factorization along the chain.
ChainSummary chain_summary(u128 n, u64 rho_budget = DEFAULT_RHO_BUDGET);

u256 chain_sum_S(u128 n);

// Chains below this bound share a process-wide memo cache.
inline constexpr u64 CHAIN_CACHE_CAP = u64{1} << 24;

// Applies the factored-domain phi repeatedly until the empty factorization;
// the returned sequence multiplies out to totient_chain's iterates. Works
// for starts beyond 128 bits since nothing is materialized.
std::vector<Factorization> factored_chain(const Factorization& f);

} // namespace totlab
