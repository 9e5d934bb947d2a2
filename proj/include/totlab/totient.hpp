#pragma once

#include "totlab/core_arith.hpp"
#include "totlab/u128.hpp"

namespace totlab {

struct TotientValue {
    u128 n;
    u128 phi;
};

// Counting definition: |{ x : 1 <= x <= n, gcd(x, n) = 1 }|. This is the
// oracle the formula is tested against, so it stays deliberately naive.
// Capped at 10^7 (RangeError above); O(n log n).
u64 phi_by_counting(u64 n);

inline constexpr u64 PHI_COUNTING_CAP = 10'000'000;

// Product formula, computed through phi_factored so there is a single
// source of truth. phi(1) = 1 is the formula's stated exception.
u128 phi(u128 n);

// Maps each p^a to p^(a-1) * (p-1) and re-factors the (p-1) parts. Never
// materializes the value, so it works even when f multiplies out past
// 128 bits, as long as every prime fits. The budget bounds the rho effort
// spent on each (p-1).
Factorization phi_factored(const Factorization& f,
                           u64 rho_budget = DEFAULT_RHO_BUDGET);

} // namespace totlab
