#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "totlab/errors.hpp"
#include "totlab/u128.hpp"

#include <random>

using namespace totlab;

namespace {

u128 lit(const char* s) { return parse_u128(s).value(); }

std::mt19937_64 rng(0x7e57'0128ULL);

u128 random_u128() { return (u128{rng()} << 64) | rng(); }

} // namespace

TEST_CASE("parse_u128 accepts plain and separated decimals") {
    CHECK(parse_u128("0") == u128{0});
    CHECK(parse_u128("18") == u128{18});
    CHECK(parse_u128("1_000") == u128{1000});
    CHECK(parse_u128("1_2_3") == u128{123});
    CHECK(parse_u128("340282366920938463463374607431768211455") == U128_MAX);
}

TEST_CASE("parse_u128 rejects malformed input") {
    CHECK(!parse_u128(""));
    CHECK(!parse_u128("_1"));
    CHECK(!parse_u128("1_"));
    CHECK(!parse_u128("1__0"));
    CHECK(!parse_u128("-3"));
    CHECK(!parse_u128("+3"));
    CHECK(!parse_u128("12a"));
    CHECK(!parse_u128(" 12"));
    CHECK(!parse_u128("340282366920938463463374607431768211456")); // 2^128
    CHECK(!parse_u128("999999999999999999999999999999999999999999"));
}

TEST_CASE("to_string round-trips") {
    CHECK(to_string_u128(0) == "0");
    CHECK(to_string_u128(U128_MAX) == "340282366920938463463374607431768211455");
    for (int i = 0; i < 2000; ++i) {
        u128 v = random_u128();
        CHECK(parse_u128(to_string_u128(v)) == v);
    }
}

TEST_CASE("checked arithmetic traps overflow") {
    CHECK(checked_add(U128_MAX - 1, 1) == U128_MAX);
    CHECK_THROWS_AS(checked_add(U128_MAX, 1), OverflowError);
    CHECK(checked_mul(u128{1} << 64, u128{1} << 63) == u128{1} << 127);
    CHECK_THROWS_AS(checked_mul(u128{1} << 64, u128{1} << 64), OverflowError);
    CHECK(checked_pow(3, 80) == lit("147808829414345923316083210206383297601"));
    CHECK_THROWS_AS(checked_pow(3, 81), OverflowError);
    CHECK(checked_pow(2, 127) == u128{1} << 127);
    CHECK(checked_pow(12345, 0) == 1);
    CHECK(mul_overflows(U128_MAX, 2));
    CHECK(!mul_overflows(U128_MAX, 1));
}

TEST_CASE("mulmod matches direct arithmetic at 64 bits") {
    for (int i = 0; i < 5000; ++i) {
        u64 a = rng(), b = rng(), m = rng() | 1;
        CHECK(mulmod64(a, b, m) == static_cast<u64>(u128{a % m} * (b % m) % m));
        CHECK(mulmod(a, b, m) == u128{a % m} * (b % m) % m);
    }
}

TEST_CASE("mulmod above 64-bit moduli matches frozen products") {
    CHECK(mulmod((u128{1} << 100) + 7, (u128{1} << 99) + 11, (u128{1} << 127) - 1)
          == lit("18380933708031692804571841691725"));
    CHECK(mulmod((u128{1} << 120) + 33, (u128{1} << 119) + 1, U128_MAX - 158)
          == lit("23674277526489546572284798013079027745"));
    CHECK(mulmod((u128{1} << 127) + 9, (u128{1} << 126) + 5, U128_MAX - 158)
          == lit("212676479325586539664609129644855136021"));
    CHECK(mulmod(0, 123, (u128{1} << 127) - 1) == 0);
}

TEST_CASE("powmod satisfies Fermat's little theorem at wide primes") {
    u128 p1 = (u128{1} << 127) - 1;
    CHECK(powmod(3, p1 - 1, p1) == 1);
    u128 p2 = U128_MAX - 158; // 2^128 - 159
    CHECK(powmod(12345, p2 - 1, p2) == 1);
    CHECK(powmod64(3, 2'147'483'646, 2'147'483'647) == 1);
    CHECK(powmod(7, 0, 1000) == 1);
    CHECK(powmod(7, 5, 1) == 0);
}

TEST_CASE("isqrt is exact") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(3) == 1);
    CHECK(isqrt(4) == 2);
    CHECK(isqrt(U128_MAX) == (u128{1} << 64) - 1);
    for (int i = 0; i < 2000; ++i) {
        u128 n = random_u128();
        u128 r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((mul_overflows(r + 1, r + 1) || (r + 1) * (r + 1) > n));
    }
    for (int i = 0; i < 2000; ++i) {
        u128 r = rng();
        CHECK(isqrt(r * r) == r);
    }
}

TEST_CASE("bit_length") {
    CHECK(bit_length(0) == 0);
    CHECK(bit_length(1) == 1);
    CHECK(bit_length(2) == 2);
    CHECK(bit_length((u128{1} << 64) - 1) == 64);
    CHECK(bit_length(u128{1} << 64) == 65);
    CHECK(bit_length(U128_MAX) == 128);
}

TEST_CASE("gcd_u128 agrees with std::gcd on 64-bit values") {
    for (int i = 0; i < 5000; ++i) {
        u64 a = rng(), b = rng();
        CHECK(gcd_u128(a, b) == std::gcd(a, b));
    }
    CHECK(gcd_u128(0, 5) == 5);
    CHECK(gcd_u128(5, 0) == 5);
    CHECK(gcd_u128(U128_MAX, U128_MAX) == U128_MAX);
    CHECK(gcd_u128(u128{1} << 127, u128{1} << 126) == u128{1} << 126);
}

TEST_CASE("u256 add, sub, compare") {
    u256 a{0, U128_MAX};
    u256 one{1};
    CHECK(add_u256(a, one) == u256{1, 0});
    CHECK(sub_u256(u256{1, 0}, one) == a);
    CHECK(a < u256{1, 0});
    CHECK(u256{5} < u256{7});
    CHECK_THROWS_AS(add_u256(u256{U128_MAX, U128_MAX}, one), OverflowError);
    CHECK_THROWS_AS(sub_u256(u256{5}, u256{6}), InternalError);
    CHECK(u256{7}.to_u128_exact() == 7);
    CHECK_THROWS_AS((u256{1, 0}.to_u128_exact()), OverflowError);
}

TEST_CASE("u256 multiplication matches a frozen full-width product") {
    u256 p = mul_u128_u128(U128_MAX, (u128{1} << 127) + 12345);
    CHECK(to_string_u256(p)
          == "57896044618658097711785492504343958127250670788345144243356633445419251126215");
    u64 rem = 1;
    u256 q = divmod_u256_u64(p, 65537, rem);
    CHECK(rem == 0);
    CHECK(to_string_u256(q)
          == "883410052621543520633924233705295605951610094882969074619781702632394695");
}

TEST_CASE("u256 divmod round-trips against multiplication") {
    for (int i = 0; i < 2000; ++i) {
        u256 a{random_u128() >> 1, random_u128()}; // headroom for the check below
        u64 d = rng() | 1;
        u64 rem = 0;
        u256 q = divmod_u256_u64(a, d, rem);
        CHECK(rem < d);
        CHECK(add_u256(mul_u256_u64(q, d), u256{rem}) == a);
    }
    u64 rem = 99;
    CHECK(divmod_u256_u64(u256{0}, 7, rem) == u256{0});
    CHECK(rem == 0);
}

TEST_CASE("mul_u256_u64 traps overflow") {
    CHECK_THROWS_AS(mul_u256_u64(u256{U128_MAX, U128_MAX}, 2), OverflowError);
    CHECK(mul_u256_u64(u256{0, u128{1} << 127}, 2) == u256{1, 0});
}

TEST_CASE("to_string_u256 small and boundary values") {
    CHECK(to_string_u256(u256{0}) == "0");
    CHECK(to_string_u256(u256{12345}) == "12345");
    CHECK(to_string_u256(u256{1, 0}) == "340282366920938463463374607431768211456"); // 2^128
    CHECK(to_string_u256(u256{U128_MAX, U128_MAX})
          == "115792089237316195423570985008687907853269984665640564039457584007913129639935");
}
