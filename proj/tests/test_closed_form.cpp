#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "totlab/chain.hpp"
#include "totlab/closed_form.hpp"
#include "totlab/core_arith.hpp"
#include "totlab/errors.hpp"

#include <map>

using namespace totlab;

TEST_CASE("fermat numbers and their computed verdicts") {
    const u128 values[7] = {3,
                            5,
                            17,
                            257,
                            65537,
                            4294967297ULL,
                            (u128{1} << 64) + 1};
    const bool prime[7] = {true, true, true, true, true, false, false};
    for (u32 m = 0; m <= 6; ++m) {
        FermatNumber f = fermat_number(m);
        CHECK(f.m == m);
        CHECK(f.value == values[m]);
        CHECK(f.is_prime == prime[m]);
    }
    CHECK_THROWS_AS(fermat_number(7), RangeError);
}

TEST_CASE("fermat prime predicate") {
    for (u128 p : {u128{3}, u128{5}, u128{17}, u128{257}, u128{65537}})
        CHECK(is_fermat_prime(p));
    // Wrong form, wrong exponent shape, or composite.
    for (u128 p : {u128{0}, u128{1}, u128{2}, u128{4}, u128{6}, u128{7}, u128{9},
                   u128{4097}, (u128{1} << 20) + 1, u128{4294967297ULL},
                   (u128{1} << 64) + 1})
        CHECK(!is_fermat_prime(p));
}

TEST_CASE("chain sum of a fermat prime is 2p - 3") {
    CHECK(fermat_prime_sum(3) == 3);
    CHECK(fermat_prime_sum(5) == 7);
    CHECK(fermat_prime_sum(17) == 31);
    CHECK(fermat_prime_sum(257) == 511);
    CHECK(fermat_prime_sum(65537) == 131071);
    CHECK_THROWS_AS(fermat_prime_sum(7), InvalidInputError);
    CHECK_THROWS_AS(fermat_prime_sum(13), InvalidInputError);
    for (u128 p : {u128{3}, u128{5}, u128{17}, u128{257}, u128{65537}})
        CHECK(chain_sum_S(p) == u256{fermat_prime_sum(p)});
}

TEST_CASE("fermat prime chains descend by halving") {
    // p = 2^(2^m) + 1 gives phi(p) = 2^(2^m), then straight halving to 1.
    for (u32 m = 0; m <= 4; ++m) {
        u128 p = fermat_number(m).value;
        TotientChain chain = totient_chain(p);
        u32 e = bit_length(p - 1) - 1; // 2^m
        REQUIRE(chain.iterates.size() == e + 1);
        for (u32 i = 0; i <= e; ++i)
            CHECK(chain.iterates[i] == u128{1} << (e - i));
    }
}

TEST_CASE("fermat power sum fixed values") {
    CHECK(fermat_power_sum(5, 1) == u256{7});
    CHECK(fermat_power_sum(5, 2) == u256{35});
    CHECK(fermat_power_sum(17, 2) == u256{527});
    CHECK(fermat_power_sum(257, 2) == u256{131327});
    for (u32 k = 1; k <= 12; ++k)
        CHECK(fermat_power_sum(3, k) == power_of_three_sum(k));
    CHECK_THROWS_AS(fermat_power_sum(5, 0), RangeError);
    CHECK_THROWS_AS(fermat_power_sum(7, 2), InvalidInputError);
    CHECK_THROWS_AS(fermat_power_sum(65537, 8), OverflowError);
}

TEST_CASE("fermat power sum matches the brute-force chain sum") {
    const std::map<u128, u32> max_k = {
        {3, 12}, {5, 10}, {17, 5}, {257, 4}, {65537, 3}};
    for (const auto& [p, kmax] : max_k) {
        for (u32 k = 1; k <= kmax; ++k) {
            u128 pk = checked_pow(p, k);
            CHECK(fermat_power_sum(p, k) == chain_sum_S(pk));
        }
    }
}

TEST_CASE("the naive 2p^k - 3p^(k-1) guess fails from k = 3 on") {
    auto naive = [](u128 p, u32 k) {
        return 2 * checked_pow(p, k) - 3 * checked_pow(p, k - 1);
    };
    for (u128 p : {u128{5}, u128{17}, u128{257}}) {
        CHECK(fermat_power_sum(p, 1) == u256{naive(p, 1)});
        CHECK(fermat_power_sum(p, 2) == u256{naive(p, 2)});
        CHECK(fermat_power_sum(p, 3) != u256{naive(p, 3)});
    }
    CHECK(naive(5, 3) == 175);
    CHECK(fermat_power_sum(5, 3) == u256{171});
    CHECK(naive(17, 3) == 8959);
    CHECK(fermat_power_sum(17, 3) == u256{8847});
    CHECK(naive(257, 3) == 33751039);
    CHECK(fermat_power_sum(257, 3) == u256{33718527});
}

TEST_CASE("power of three sums") {
    CHECK(power_of_three_sum(1) == u256{3});
    CHECK(power_of_three_sum(3) == u256{27});
    CHECK(power_of_three_sum(12) == u256{531441});
    CHECK(to_string_u256(power_of_three_sum(80))
          == "147808829414345923316083210206383297601");
    CHECK_THROWS_AS(power_of_three_sum(0), RangeError);
    CHECK_THROWS_AS(power_of_three_sum(81), OverflowError);
    for (u32 k = 1; k <= 10; ++k) {
        u128 n = checked_pow(3, k);
        CHECK(power_of_three_sum(k) == chain_sum_S(n));
    }
}

TEST_CASE("k bounds fixed values") {
    auto check = [](u128 n, u32 lower, u32 upper) {
        KBounds b = k_bounds(n);
        CHECK(b.n == n);
        CHECK(b.lower == lower);
        CHECK(b.upper == upper);
    };
    check(1, 0, 0);
    check(2, 1, 1);
    check(3, 1, 2);
    check(162, 5, 8);
    check(1024, 7, 10);
    check(checked_pow(3, 40), 40, 64);
    check(u128{1} << 127, 81, 127);
    check(U128_MAX, 81, 128);
    CHECK_THROWS_AS(k_bounds(0), RangeError);
}

TEST_CASE("k bounds bracket the true chain length up to 10^4") {
    u64 bad = 0;
    for (u64 n = 1; n <= 10'000; ++n) {
        KBounds b = k_bounds(n);
        u32 k = chain_summary(n).k;
        if (k < b.lower || k > b.upper) { bad = n; break; }
    }
    CHECK(bad == 0);
}

TEST_CASE("exact k for powers of two and twice-powers-of-three") {
    auto val = [](u128 n) { return k_exact_special(n); };
    CHECK(val(1) == 0u);
    CHECK(val(2) == 1u);
    CHECK(val(4) == 2u);
    CHECK(val(8) == 3u);
    CHECK(val(u128{1} << 60) == 60u);
    CHECK(val(6) == 2u);
    CHECK(val(18) == 3u);
    CHECK(val(162) == 5u);
    CHECK(val(2 * checked_pow(3, 30)) == 31u);
    CHECK(!val(15).has_value());
    CHECK(!val(12).has_value());
    CHECK(!val(10).has_value());
    CHECK_THROWS_AS(k_exact_special(0), RangeError);
}

TEST_CASE("exact k agrees with the chain walk wherever it applies") {
    u64 bad = 0;
    for (u64 n = 1; n <= 100'000; ++n) {
        std::optional<u32> k = k_exact_special(n);
        if (k && *k != chain_summary(n).k) { bad = n; break; }
    }
    CHECK(bad == 0);
}

TEST_CASE("c identity for 2^x + 1, x up to 20") {
    const std::map<u32, u64> c_table = {
        {1, 1},  {2, 2},  {3, 2},   {4, 4},   {5, 4},   {6, 5},  {7, 5},
        {8, 8},  {9, 6},  {10, 9},  {11, 9},  {12, 11}, {13, 10}, {14, 12},
        {15, 12}, {16, 16}, {17, 16}, {18, 14}, {19, 14}, {20, 19}};
    for (const auto& [x, c] : c_table) {
        CIdentityCheck chk = c_identity_check(x);
        CHECK(chk.computed);
        CHECK(chk.c_value == c);
        bool expect_fermat = (x == 1 || x == 2 || x == 4 || x == 8 || x == 16);
        CHECK(chk.fermat_prime == expect_fermat);
        CHECK(chk.identity_holds);
    }
}

TEST_CASE("c identity at x = 32: both sides false") {
    CIdentityCheck chk = c_identity_check(32);
    CHECK(chk.computed);
    CHECK(!chk.fermat_prime);
    CHECK(chk.c_value != 32u);
    CHECK(chk.identity_holds);
}

TEST_CASE("large x is not computed unless a budget is supplied") {
    CIdentityCheck lazy = c_identity_check(70);
    CHECK(!lazy.computed);
    CHECK(!lazy.c_value.has_value());
    CHECK(!lazy.fermat_prime);

    CIdentityCheck full = c_identity_check(70, DEFAULT_RHO_BUDGET);
    CHECK(full.computed);
    CHECK(full.c_value == 56u);
    CHECK(full.identity_holds);
}

TEST_CASE("budget exhaustion reports not-computed") {
    // 2^58 + 1 = 5 * 107367629 * 536903681; after trial division a semiprime
    // with ~2^27 factors remains, far out of reach for 100 rho steps.
    CIdentityCheck chk = c_identity_check(58, 100);
    CHECK(!chk.computed);
    CHECK(!chk.c_value.has_value());
}

TEST_CASE("c identity check domain") {
    CHECK_THROWS_AS(c_identity_check(0), RangeError);
    CHECK_THROWS_AS(c_identity_check(128), RangeError);
    CHECK_THROWS_AS(c_identity_check(0, 100), RangeError);
}

TEST_CASE("pepin verdicts") {
    CHECK(pepin_test(1));
    CHECK(pepin_test(2));
    CHECK(pepin_test(3));
    CHECK(pepin_test(4));
    CHECK(!pepin_test(5));
    CHECK(!pepin_test(6));
    CHECK_THROWS_AS(pepin_test(0), RangeError);
    CHECK_THROWS_AS(pepin_test(7), RangeError);
    for (u32 m = 1; m <= 6; ++m)
        CHECK(pepin_test(m) == fermat_number(m).is_prime);
}
