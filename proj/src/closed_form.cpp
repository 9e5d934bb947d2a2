#include "totlab/closed_form.hpp"

#include "totlab/chain.hpp"
#include "totlab/core_arith.hpp"
#include "totlab/errors.hpp"

#include <array>
#include <bit>

namespace totlab {

namespace {

// 3^0 .. 3^80; 3^81 would overflow u128.
constexpr u32 MAX_POW3 = 80;

const std::array<u128, MAX_POW3 + 1>& pow3_table() {
    static const auto table = [] {
        std::array<u128, MAX_POW3 + 1> t{};
        t[0] = 1;
        for (u32 i = 1; i <= MAX_POW3; ++i) t[i] = t[i - 1] * 3;
        return t;
    }();
    return table;
}

bool is_power_of_two(u128 v) { return v != 0 && (v & (v - 1)) == 0; }

u32 log2_exact(u128 v) { return bit_length(v) - 1; } // v a power of two

} // namespace

FermatNumber fermat_number(u32 m) {
    if (m > 6) throw RangeError("fermat_number supports m <= 6 (F_7 exceeds 128 bits)");
    u128 value = (u128{1} << (u32{1} << m)) + 1;
    return FermatNumber{m, value, is_prime(value)};
}

bool is_fermat_prime(u128 p) {
    if (p < 3) return false;
    u128 q = p - 1;
    if (!is_power_of_two(q)) return false;
    u32 k = log2_exact(q);
    if (!is_power_of_two(k)) return false; // exponent not a power of two: composite form
    return is_prime(p);
}

u128 fermat_prime_sum(u128 p) {
    if (!is_fermat_prime(p))
        throw InvalidInputError(to_string_u128(p) + " is not a Fermat prime");
    return checked_mul(p, 2) - 3;
}

u256 fermat_power_sum(u128 p, u32 k) {
    if (k == 0) throw RangeError("fermat_power_sum requires k >= 1");
    if (!is_fermat_prime(p))
        throw InvalidInputError(to_string_u128(p) + " is not a Fermat prime");
    u128 pk = checked_pow(p, k); // OverflowError when p^k exceeds 128 bits

    // p = 2^(2^m) + 1, so (p-1)/2 = 2^(2^m - 1) by construction.
    u32 e = log2_exact(p - 1);           // 2^m
    u128 half = u128{1} << (e - 1);      // (p-1)/2
    u128 half_pow = checked_pow(half, k); // < p^k, fits

    // numerator = 2 * [ p^k * (p-1) + 2 * ((p-1)/2)^k ]
    u256 numerator = mul_u256_u64(
        add_u256(mul_u128_u128(pk, p - 1), mul_u128_u128(half_pow, 2)), 2);

    if (p + 1 > UINT64_MAX)
        throw InternalError("fermat_power_sum: divisor exceeds 64 bits");
    u64 rem;
    u256 quotient = divmod_u256_u64(numerator, static_cast<u64>(p + 1), rem);
    if (rem != 0)
        throw InternalError("fermat_power_sum: numerator not divisible by p + 1 for p = "
                            + to_string_u128(p));
    return sub_u256(quotient, u256{1});
}

u256 power_of_three_sum(u32 k) {
    if (k == 0) throw RangeError("power_of_three_sum requires k >= 1");
    if (k > MAX_POW3) throw OverflowError("3^k exceeds 128 bits");
    return u256{pow3_table()[k]};
}

KBounds k_bounds(u128 n) {
    if (n == 0) throw RangeError("k_bounds requires n >= 1");
    const auto& p3 = pow3_table();
    u32 lower = 0;
    while (lower <= MAX_POW3 && p3[lower] < n) ++lower; // n > 3^80 lands on 81: 3^81 > 2^128 > n
    u32 upper = n == 1 ? 0 : bit_length(n - 1); // least j with 2^j >= n
    return KBounds{n, lower, upper};
}

std::optional<u32> k_exact_special(u128 n) {
    if (n == 0) throw RangeError("k_exact_special requires n >= 1");
    if (is_power_of_two(n)) return log2_exact(n); // covers n = 1 (j = 0) and n = 2
    if ((n & 1) == 0) {
        u128 half = n / 2;
        const auto& p3 = pow3_table();
        for (u32 j = 1; j <= MAX_POW3 && p3[j] <= half; ++j)
            if (p3[j] == half) return j + 1;
    }
    return std::nullopt;
}

namespace {

CIdentityCheck c_check_with_budget(u32 x, u64 rho_budget) {
    if (x == 0 || x > 127) throw RangeError("c_identity_check requires 1 <= x <= 127");
    u128 n = (u128{1} << x) + 1;
    CIdentityCheck result{x, false, std::nullopt, is_fermat_prime(n), false};
    try {
        ChainSummary summary = chain_summary(n, rho_budget);
        result.computed = true;
        result.c_value = summary.c.value();
        result.identity_holds = ((*result.c_value == x) == result.fermat_prime);
    } catch (const ResourceError&) {
        // leave computed = false
    }
    return result;
}

} // namespace

CIdentityCheck c_identity_check(u32 x) {
    if (x == 0 || x > 127) throw RangeError("c_identity_check requires 1 <= x <= 127");
    if (x > 64) {
        // Factoring 2^x + 1 beyond 64 bits can be arbitrarily hard; refuse
        // by default rather than stall. Callers opt in with a budget.
        u128 n = (u128{1} << x) + 1;
        return CIdentityCheck{x, false, std::nullopt, is_fermat_prime(n), false};
    }
    return c_check_with_budget(x, DEFAULT_RHO_BUDGET);
}

CIdentityCheck c_identity_check(u32 x, u64 rho_budget) {
    return c_check_with_budget(x, rho_budget);
}

bool pepin_test(u32 m) {
    if (m == 0 || m > 6) throw RangeError("pepin_test requires 1 <= m <= 6");
    u32 e = u32{1} << m;               // F_m = 2^e + 1
    u128 fm = (u128{1} << e) + 1;
    // 3^((F_m - 1)/2) = 3^(2^(e-1)): e - 1 successive squarings of 3.
    u128 r = 3 % fm;
    for (u32 i = 0; i < e - 1; ++i) r = mulmod(r, r, fm);
    return r == fm - 1;
}

} // namespace totlab
