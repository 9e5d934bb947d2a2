#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace totlab {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---- checked u128 arithmetic -------------------------------------------

inline constexpr u128 U128_MAX = ~u128{0};

// a + b, throws OverflowError on wrap.
u128 checked_add(u128 a, u128 b);
// a * b, throws OverflowError on wrap.
u128 checked_mul(u128 a, u128 b);
// base^exp, throws OverflowError on wrap.
u128 checked_pow(u128 base, u64 exp);

// Wrapping test helpers (no throw).
bool add_overflows(u128 a, u128 b);
bool mul_overflows(u128 a, u128 b);

// ---- modular arithmetic -------------------------------------------------

// (a + b) mod m, correct for any a, b < m without wrapping.
u64 addmod64(u64 a, u64 b, u64 m);
u128 addmod(u128 a, u128 b, u128 m);

// (a * b) mod m. Fast path when m fits in 64 bits, shift-and-add otherwise.
u64 mulmod64(u64 a, u64 b, u64 m);
u128 mulmod(u128 a, u128 b, u128 m);

// (base^exp) mod m, m >= 1.
u64 powmod64(u64 base, u64 exp, u64 m);
u128 powmod(u128 base, u128 exp, u128 m);

// ---- misc ---------------------------------------------------------------

// floor(sqrt(n)), exact.
u128 isqrt(u128 n);

// Greatest common divisor (binary algorithm; u128-wide).
u128 gcd_u128(u128 a, u128 b);

u32 bit_length(u128 n); // bits needed to represent n; bit_length(0) == 0

// ---- decimal <-> u128 ---------------------------------------------------

std::string to_string_u128(u128 n);

// Parses a decimal literal with optional '_' group separators ("1_000_000").
// Rejects empty strings, signs, leading/trailing/doubled separators, and
// values above 2^128 - 1. Returns nullopt instead of throwing.
std::optional<u128> parse_u128(std::string_view text);

// ---- u256: just enough 256-bit unsigned arithmetic for chain sums -------
//
// Chain sums S(n) can exceed 2^128 for admissible inputs (e.g. S(5^55)),
// but never 2^136 or so, since S(n) <= n * (k(n) + 1) and k(n) <= 128.
// Two limbs are plenty; a big-int dependency is not.

struct u256 {
    u128 hi = 0;
    u128 lo = 0;

    constexpr u256() = default;
    constexpr u256(u128 v) : hi(0), lo(v) {}
    constexpr u256(u128 h, u128 l) : hi(h), lo(l) {}

    friend constexpr bool operator==(const u256& a, const u256& b) {
        return a.hi == b.hi && a.lo == b.lo;
    }
    friend constexpr bool operator!=(const u256& a, const u256& b) { return !(a == b); }
    friend constexpr bool operator<(const u256& a, const u256& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    }
    friend constexpr bool operator<=(const u256& a, const u256& b) { return !(b < a); }

    bool fits_u128() const { return hi == 0; }
    // Narrows to u128, throws OverflowError if hi != 0.
    u128 to_u128_exact() const;
};

u256 add_u256(u256 a, u256 b);           // throws OverflowError on 256-bit wrap
u256 sub_u256(u256 a, u256 b);           // requires a >= b, throws InternalError otherwise
u256 mul_u256_u64(u256 a, u64 b);        // throws OverflowError on wrap
u256 mul_u128_u128(u128 a, u128 b);      // full 256-bit product, never overflows

// Divides a by d, returning quotient and storing the remainder. d >= 1.
u256 divmod_u256_u64(u256 a, u64 d, u64& rem);

std::string to_string_u256(u256 n);

} // namespace totlab
