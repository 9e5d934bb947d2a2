#pragma once

#include "totlab/u128.hpp"

#include <optional>

namespace totlab {

struct FermatNumber {
    u32 m;
    u128 value;    // 2^(2^m) + 1
    bool is_prime; // computed verdict, not assumed
};

// Exact integer ceil-logs: lower = least j with 3^j >= n, upper = least j
// with 2^j >= n. Computed by table comparison, never floating point.
struct KBounds {
    u128 n;
    u32 lower;
    u32 upper;
};

// Outcome of checking C(2^x + 1) = x against Fermat-primality of 2^x + 1.
struct CIdentityCheck {
    u32 x;
    bool computed;               // false when the effort budget ran out
    std::optional<u64> c_value;  // C(2^x + 1) when computed
    bool fermat_prime;           // 2^x + 1 passes the Fermat-prime predicate
    bool identity_holds;         // (c_value == x) iff fermat_prime; only when computed
};

// F_m for 0 <= m <= 6 (F_7 exceeds 128 bits). RangeError above 6.
FermatNumber fermat_number(u32 m);

// True iff p = 2^k + 1 with k >= 1 a power of two, and p is prime. The form
// check runs first: a non-power-of-two exponent refutes without any
// primality test. Within 128 bits this admits exactly {3, 5, 17, 257, 65537}.
bool is_fermat_prime(u128 p);

// 2p - 3, which equals chain_sum_S(p) for Fermat primes p.
// InvalidInputError when p is not a Fermat prime.
u128 fermat_prime_sum(u128 p);

// Closed form for S(p^k), p a Fermat prime:
//   ( 2 * [ p^k * (p-1) + 2 * ((p-1)/2)^k ] ) / (p+1)  -  1
// evaluated numerator-first in 256-bit arithmetic with a divisibility
// assertion before the division (InternalError if it fails). (p-1)/2 is
// formed as 2^(2^m - 1) straight from the Fermat structure.
// InvalidInputError for non-Fermat-prime p, RangeError for k = 0,
// OverflowError when p^k exceeds 128 bits.
u256 fermat_power_sum(u128 p, u32 k);

// S(3^k) = 3^k. RangeError for k = 0, OverflowError for k > 80.
u256 power_of_three_sum(u32 k);

// ceil-log bounds on the chain length k(n); see KBounds.
KBounds k_bounds(u128 n);

// k(n) in closed form for the two special shapes: j for n = 2^j,
// j + 1 for n = 2 * 3^j with j >= 1. Absent for every other n.
std::optional<u32> k_exact_special(u128 n);

// Checks C(2^x + 1) = x against the Fermat-prime predicate. x <= 64 runs
// with the default factoring budget; larger x is reported not-computed
// unless an explicit rho budget is supplied, since factoring 2^x + 1 can be
// arbitrarily hard. A budget exhaustion also yields computed = false.
CIdentityCheck c_identity_check(u32 x);
CIdentityCheck c_identity_check(u32 x, u64 rho_budget);

// Pepin's criterion: F_m (1 <= m <= 6) is prime iff 3^((F_m - 1)/2) = -1
// (mod F_m). Shares no code with is_prime, so the two can cross-check.
bool pepin_test(u32 m);

} // namespace totlab
