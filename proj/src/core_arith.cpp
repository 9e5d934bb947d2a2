#include "totlab/core_arith.hpp"

#include "totlab/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace totlab {

namespace {

constexpr i128 I128_MAX = i128((u128{1} << 127) - 1);

u128 submod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    return a >= b ? a - b : m - b + a;
}

} // namespace

std::optional<u128> Factorization::value() const {
    u128 product = 1;
    for (const auto& pp : pairs) {
        for (u32 i = 0; i < pp.exponent; ++i) {
            if (mul_overflows(product, pp.prime)) return std::nullopt;
            product *= pp.prime;
        }
    }
    return product;
}

u128 Factorization::value_exact() const {
    auto v = value();
    if (!v) throw OverflowError("factorization product exceeds 128 bits");
    return *v;
}

u128 LinearCongruenceSolution::residue_at(u128 i) const {
    if (i >= count) throw RangeError("solution index out of range");
    return (base_solution + i * modulus_step) % modulus;
}

u128 gcd(u128 a, u128 b) {
    if (a == 0 || b == 0) throw RangeError("gcd requires positive arguments");
    return gcd_u128(a, b);
}

BezoutTriple extended_gcd(u128 a, u128 m) {
    if (a == 0 || m == 0) throw RangeError("extended_gcd requires positive arguments");
    if (a > u128(I128_MAX) || m > u128(I128_MAX))
        throw OverflowError("extended_gcd input exceeds signed 128-bit range");
    i128 old_r = i128(a), r = i128(m);
    i128 old_s = 1, s = 0;
    i128 old_t = 0, t = 1;
    while (r != 0) {
        i128 q = old_r / r;
        i128 next_r = old_r - q * r; // remainder, always in range
        i128 qs, qt, next_s, next_t;
        if (__builtin_mul_overflow(q, s, &qs) || __builtin_sub_overflow(old_s, qs, &next_s) ||
            __builtin_mul_overflow(q, t, &qt) || __builtin_sub_overflow(old_t, qt, &next_t))
            throw OverflowError("extended_gcd coefficient overflow");
        old_r = r;
        r = next_r;
        old_s = s;
        s = next_s;
        old_t = t;
        t = next_t;
    }
    return BezoutTriple{u128(old_r), old_s, old_t};
}

u128 mod_inverse(u128 a, u128 m) {
    if (m == 0) throw RangeError("mod_inverse requires m >= 1");
    if (m == 1) return 0;
    // Euclid with the Bezout coefficient tracked mod m; no signed arithmetic,
    // so this works right up to 128-bit moduli.
    u128 r0 = m, r1 = a % m;
    u128 t0 = 0, t1 = 1;
    while (r1 != 0) {
        u128 q = r0 / r1;
        u128 r2 = r0 - q * r1;
        u128 t2 = submod(t0, mulmod(q, t1, m), m);
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw NotCoprimeError("mod_inverse: arguments share a factor");
    return t0;
}

// ---- primality ------------------------------------------------------------

namespace {

// Witness set deterministic for every n < 2^64.
constexpr u64 MR_WITNESSES[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool mr_witness64(u64 n, u64 a) {
    // n odd, n > 2, a < n
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool mr_witness128(u128 n, u128 a) {
    u128 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Strong Lucas probable-prime test with Selfridge's parameter choice:
// first D in 5, -7, 9, -11, ... with (D/n) = -1, P = 1, Q = (1-D)/4.
// Caller guarantees n is odd, > 5, not a perfect square, and has no
// factor among the Miller-Rabin witnesses.
bool strong_lucas(u128 n) {
    i128 D = 5;
    while (true) {
        int j = jacobi(D, n);
        if (j == 0) return false; // |D| shares a factor with n
        if (j == -1) break;
        D = D > 0 ? -(D + 2) : -(D - 2);
    }
    i128 Q = (1 - D) / 4;
    u128 d_mod = D >= 0 ? u128(D) % n : submod(0, u128(-D) % n, n);
    u128 q_mod = Q >= 0 ? u128(Q) % n : submod(0, u128(-Q) % n, n);

    u128 d = n + 1; // never overflows: n odd, so n < 2^128 - 1
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }

    // halve(x) = x/2 mod n for odd n, written to avoid the x+n overflow
    auto halve = [n](u128 x) { return (x & 1) ? x / 2 + n / 2 + 1 : x / 2; };

    // Left-to-right ladder over the bits of d; tracks U_k, V_k, Q^k mod n.
    u128 U = 1, V = 1, qk = q_mod; // k = 1, P = 1 so V_1 = 1
    for (int bit = bit_length(d) - 2; bit >= 0; --bit) {
        // double: k -> 2k
        U = mulmod(U, V, n);
        V = submod(mulmod(V, V, n), addmod(qk, qk, n), n);
        qk = mulmod(qk, qk, n);
        if ((d >> bit) & 1) {
            // increment: 2k -> 2k+1 (P = 1)
            u128 nextU = halve(addmod(U, V, n));
            u128 nextV = halve(addmod(mulmod(d_mod, U, n), V, n));
            U = nextU;
            V = nextV;
            qk = mulmod(qk, q_mod, n);
        }
    }

    if (U == 0 || V == 0) return true;
    for (int r = 1; r < s; ++r) {
        V = submod(mulmod(V, V, n), addmod(qk, qk, n), n);
        qk = mulmod(qk, qk, n);
        if (V == 0) return true;
    }
    return false;
}

} // namespace

int jacobi(i128 a, u128 n) {
    if (n == 0 || (n & 1) == 0) throw RangeError("jacobi requires odd n >= 1");
    u128 x = a >= 0 ? u128(a) % n : submod(0, u128(-a) % n, n);
    int result = 1;
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            u64 r = static_cast<u64>(n % 8);
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, n);
        if ((x & 3) == 3 && (n & 3) == 3) result = -result;
        x %= n;
    }
    return n == 1 ? result : 0;
}

bool is_prime(u128 n) {
    if (n < 2) return false;
    for (u64 p : MR_WITNESSES) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    if (n <= UINT64_MAX) {
        u64 n64 = static_cast<u64>(n);
        for (u64 a : MR_WITNESSES) {
            if (!mr_witness64(n64, a)) return false;
        }
        return true;
    }
    // 65..128 bits: strong BPSW, then the fixed witnesses again for margin.
    // The Lucas leg is what rejects base-2 strong pseudoprimes like F_5, F_6.
    if (!mr_witness128(n, 2)) return false;
    u128 root = isqrt(n);
    if (root * root == n) return false;
    if (!strong_lucas(n)) return false;
    for (u64 a : MR_WITNESSES) {
        if (a == 2) continue;
        if (!mr_witness128(n, a)) return false;
    }
    return true;
}

// ---- factorization ---------------------------------------------------------

const std::vector<u32>& small_primes() {
    static const std::vector<u32> primes = [] {
        constexpr u32 LIMIT = 1u << 16;
        std::vector<bool> composite(LIMIT, false);
        std::vector<u32> out;
        for (u32 i = 2; i < LIMIT; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (u32 j = i * i; j < LIMIT; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

namespace {

// b^e <= limit, evaluated without overflow.
bool pow_at_most(u128 b, u32 e, u128 limit) {
    u128 r = 1;
    for (u32 i = 0; i < e; ++i) {
        if (b != 0 && r > limit / b) return false;
        r *= b;
    }
    return r <= limit;
}

// floor(n^(1/e))
u128 nth_root(u128 n, u32 e) {
    if (n <= 1 || e == 1) return n;
    u128 lo = 1;
    u128 hi = (u128{1} << (bit_length(n) / e + 1));
    while (hi - lo > 1) {
        u128 mid = lo + (hi - lo) / 2;
        if (pow_at_most(mid, e, n)) lo = mid;
        else hi = mid;
    }
    return lo;
}

u128 rho_step(u128 x, u128 c, u128 n) { return addmod(mulmod(x, x, n), c, n); }

// Brent's cycle-finding variant with gcds batched 128 at a time.
// n is odd, composite, not a prime power, and has no factor <= 2^16.
u128 pollard_brent(u128 n, u64 budget) {
    u64 used = 0;
    for (u128 c = 1; used < budget; ++c) {
        u128 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        constexpr u128 BATCH = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (u128 i = 0; i < r && used < budget; ++i) {
                y = rho_step(y, c, n);
                ++used;
            }
            u128 k = 0;
            while (k < r && g == 1 && used < budget) {
                ys = y;
                u128 steps = std::min(BATCH, r - k);
                for (u128 i = 0; i < steps; ++i) {
                    y = rho_step(y, c, n);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                    ++used;
                }
                g = gcd_u128(q, n);
                k += BATCH;
            }
            r <<= 1;
        }
        if (g == n) {
            // The batch jumped past the factor; replay one step at a time.
            g = 1;
            while (g == 1) {
                ys = rho_step(ys, c, n);
                g = gcd_u128(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != 1 && g != n) return g;
        // g == n means every factor collided at once; retry with the next c.
    }
    throw ResourceError("factorize: rho budget exhausted for "
                        + to_string_u128(n));
}

void factor_into(u128 n, std::map<u128, u32>& out, u32 multiplicity, u64 budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += multiplicity;
        return;
    }
    // Perfect powers would stall rho (x^2+c collides mod p for every p at
    // once), so peel them first.
    for (u32 e = 2; e <= bit_length(n); ++e) {
        u128 root = nth_root(n, e);
        if (root >= 2 && checked_pow(root, e) == n) {
            factor_into(root, out, multiplicity * e, budget);
            return;
        }
    }
    u128 d = pollard_brent(n, budget);
    factor_into(d, out, multiplicity, budget);
    factor_into(n / d, out, multiplicity, budget);
}

} // namespace

Factorization factorize(u128 n, u64 rho_budget) {
    if (n == 0) throw RangeError("factorize requires n >= 1");
    Factorization result;
    if (n == 1) return result;

    std::map<u128, u32> acc;
    for (u32 p : small_primes()) {
        if (u128(p) * p > n) break;
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            acc[p] = e;
        }
    }
    if (n > 1) factor_into(n, acc, 1, rho_budget);
    result.pairs.reserve(acc.size());
    for (const auto& [p, e] : acc) result.pairs.push_back({p, e});
    return result;
}

// ---- congruence solvers -----------------------------------------------------

LinearCongruenceSolution solve_linear_congruence(u128 a, u128 b, u128 m) {
    if (m == 0) throw RangeError("solve_linear_congruence requires m >= 1");
    if (a == 0) throw RangeError("solve_linear_congruence requires a >= 1");
    if (b >= m) throw RangeError("solve_linear_congruence requires b < m");
    u128 g = gcd_u128(a, m);
    if (b % g != 0)
        throw NoSolutionError("no solution: gcd(a, m) = " + to_string_u128(g)
                              + " does not divide b");
    u128 m_red = m / g;
    u128 x0 = m_red == 1
                  ? 0
                  : mulmod((b / g) % m_red, mod_inverse((a / g) % m_red, m_red), m_red);
    return LinearCongruenceSolution{x0, m_red, g, m};
}

CrtSolution crt_pair(u128 a1, u128 m1, u128 a2, u128 m2) {
    if (m1 == 0 || m2 == 0) throw RangeError("crt_pair requires positive moduli");
    if (a1 >= m1 || a2 >= m2) throw RangeError("crt_pair requires a_i < m_i");
    if (gcd_u128(m1, m2) != 1)
        throw NotCoprimeError("crt_pair: moduli share a factor");
    u128 modulus = checked_mul(m1, m2);
    // x = a1 + m1 * k with k = (a2 - a1) / m1 (mod m2); stays below m1*m2.
    u128 k = mulmod(submod(a2 % m2, a1 % m2, m2), mod_inverse(m1 % m2, m2), m2);
    u128 residue = a1 + m1 * k;
    return CrtSolution{residue, modulus};
}

} // namespace totlab
