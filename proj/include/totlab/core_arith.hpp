#pragma once

#include "totlab/u128.hpp"

#include <optional>
#include <vector>

namespace totlab {

struct PrimePower {
    u128 prime;
    u32 exponent;

    friend bool operator==(const PrimePower& a, const PrimePower& b) {
        return a.prime == b.prime && a.exponent == b.exponent;
    }
};

// Prime-power decomposition, primes strictly increasing, exponents >= 1.
// The empty sequence represents 1.
struct Factorization {
    std::vector<PrimePower> pairs;

    // Product of the prime powers; nullopt when it exceeds 128 bits.
    std::optional<u128> value() const;
    // Same, but throws OverflowError instead of returning nullopt.
    u128 value_exact() const;
};

// g = gcd(a, m) together with r, s satisfying r*a + s*m = g.
struct BezoutTriple {
    u128 g;
    i128 r;
    i128 s;
};

// Full solution set of a*x = b (mod m): the count residues are
// base_solution + i*modulus_step for 0 <= i < count, all distinct mod m.
struct LinearCongruenceSolution {
    u128 base_solution;
    u128 modulus_step; // m / g
    u128 count;        // g = gcd(a, m)
    u128 modulus;      // m

    u128 residue_at(u128 i) const; // requires i < count
};

struct CrtSolution {
    u128 residue; // in [0, modulus)
    u128 modulus; // m1 * m2
};

// gcd of a and b, both >= 1.
u128 gcd(u128 a, u128 b);

// Extended Euclid. Throws RangeError if a or m is zero, OverflowError if an
// input or intermediate coefficient falls outside the signed 128-bit range
// (cannot happen for inputs below 2^127).
BezoutTriple extended_gcd(u128 a, u128 m);

// x with a*x = 1 (mod m); throws NotCoprimeError when gcd(a, m) != 1.
// Runs entirely in unsigned arithmetic mod m, so it is safe for any m.
u128 mod_inverse(u128 a, u128 m);

// Deterministic for the full 128-bit range: fixed Miller-Rabin witness set
// below 2^64, strong BPSW plus the same witnesses above it.
bool is_prime(u128 n);

// Pollard rho gives up after this many iterations per cofactor.
inline constexpr u64 DEFAULT_RHO_BUDGET = u64{1} << 24;

// Trial division by primes <= 2^16, perfect-power detection, then Brent's
// variant of Pollard rho. Throws RangeError for n = 0, ResourceError when
// rho exhausts its budget.
Factorization factorize(u128 n, u64 rho_budget = DEFAULT_RHO_BUDGET);

// Solves a*x = b (mod m). Preconditions: a >= 1, m >= 1, b < m (strict here;
// the CLI normalizes b). Throws NoSolutionError when gcd(a, m) does not
// divide b.
LinearCongruenceSolution solve_linear_congruence(u128 a, u128 b, u128 m);

// Simultaneous x = a1 (mod m1), x = a2 (mod m2) for coprime m1, m2.
// Throws NotCoprimeError otherwise, OverflowError if m1*m2 exceeds 128 bits.
CrtSolution crt_pair(u128 a1, u128 m1, u128 a2, u128 m2);

// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(i128 a, u128 n);

// The primes up to 2^16, shared by trial division and the sieve tests.
const std::vector<u32>& small_primes();

} // namespace totlab
