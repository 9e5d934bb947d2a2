#include "totlab/u128.hpp"

#include "totlab/errors.hpp"

#include <bit>
#include <cctype>

namespace totlab {

u128 checked_add(u128 a, u128 b) {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("u128 addition overflow");
    return r;
}

u128 checked_mul(u128 a, u128 b) {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("u128 multiplication overflow");
    return r;
}

u128 checked_pow(u128 base, u64 exp) {
    u128 result = 1;
    u128 acc = base;
    while (exp) {
        if (exp & 1) result = checked_mul(result, acc);
        exp >>= 1;
        if (exp) acc = checked_mul(acc, acc);
    }
    return result;
}

bool add_overflows(u128 a, u128 b) {
    u128 r;
    return __builtin_add_overflow(a, b, &r);
}

bool mul_overflows(u128 a, u128 b) {
    u128 r;
    return __builtin_mul_overflow(a, b, &r);
}

u64 addmod64(u64 a, u64 b, u64 m) {
    a %= m;
    b %= m;
    if (a >= m - b && b != 0) return a - (m - b);
    return a + b;
}

u128 addmod(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (a >= m - b && b != 0) return a - (m - b);
    return a + b;
}

u64 mulmod64(u64 a, u64 b, u64 m) {
    return static_cast<u64>(u128(a % m) * (b % m) % m);
}

u128 mulmod(u128 a, u128 b, u128 m) {
    if (m == 1) return 0;
    a %= m;
    b %= m;
    if (m <= UINT64_MAX)
        return mulmod64(static_cast<u64>(a), static_cast<u64>(b), static_cast<u64>(m));
    // Shift-and-add: only reached for 65..128-bit moduli (Pepin on F_6,
    // wide primality tests), so the bit loop's cost is acceptable.
    if (a < b) std::swap(a, b);
    u128 result = 0;
    while (b) {
        if (b & 1) result = addmod(result, a, m);
        a = addmod(a, a, m);
        b >>= 1;
    }
    return result;
}

u64 powmod64(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod64(result, base, m);
        base = mulmod64(base, base, m);
        exp >>= 1;
    }
    return result;
}

u128 powmod(u128 base, u128 exp, u128 m) {
    if (m == 1) return 0;
    u128 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u32 bit_length(u128 n) {
    u64 hi = static_cast<u64>(n >> 64);
    if (hi) return 128 - std::countl_zero(hi);
    u64 lo = static_cast<u64>(n);
    if (lo) return 64 - std::countl_zero(lo);
    return 0;
}

u128 isqrt(u128 n) {
    if (n == 0) return 0;
    u128 x = u128{1} << ((bit_length(n) + 1) / 2); // >= sqrt(n)
    while (true) {
        u128 next = (x + n / x) / 2;
        if (next >= x) break;
        x = next;
    }
    return x;
}

namespace {

int ctz128(u128 x) {
    u64 lo = static_cast<u64>(x);
    if (lo) return std::countr_zero(lo);
    return 64 + std::countr_zero(static_cast<u64>(x >> 64));
}

} // namespace

u128 gcd_u128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = std::min(ctz128(a), ctz128(b));
    a >>= ctz128(a);
    while (b) {
        b >>= ctz128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    }
    return a << shift;
}

std::string to_string_u128(u128 n) {
    if (n == 0) return "0";
    char buf[40];
    int pos = 40;
    while (n) {
        buf[--pos] = static_cast<char>('0' + static_cast<unsigned>(n % 10));
        n /= 10;
    }
    return std::string(buf + pos, buf + 40);
}

std::optional<u128> parse_u128(std::string_view text) {
    if (text.empty()) return std::nullopt;
    u128 value = 0;
    bool prev_was_digit = false;
    for (char ch : text) {
        if (ch == '_') {
            if (!prev_was_digit) return std::nullopt; // no leading or doubled '_'
            prev_was_digit = false;
            continue;
        }
        if (ch < '0' || ch > '9') return std::nullopt;
        u128 digit = static_cast<u128>(ch - '0');
        if (value > (U128_MAX - digit) / 10) return std::nullopt;
        value = value * 10 + digit;
        prev_was_digit = true;
    }
    if (!prev_was_digit) return std::nullopt; // trailing '_'
    return value;
}

// ---- u256 ----------------------------------------------------------------

u128 u256::to_u128_exact() const {
    if (hi != 0) throw OverflowError("u256 value does not fit in u128");
    return lo;
}

u256 add_u256(u256 a, u256 b) {
    u256 r;
    r.lo = a.lo + b.lo;
    u128 carry = (r.lo < a.lo) ? 1 : 0;
    if (__builtin_add_overflow(a.hi, b.hi, &r.hi) ||
        __builtin_add_overflow(r.hi, carry, &r.hi))
        throw OverflowError("u256 addition overflow");
    return r;
}

u256 sub_u256(u256 a, u256 b) {
    if (a < b) throw InternalError("u256 subtraction underflow");
    u256 r;
    r.lo = a.lo - b.lo;
    u128 borrow = (a.lo < b.lo) ? 1 : 0;
    r.hi = a.hi - b.hi - borrow;
    return r;
}

u256 mul_u128_u128(u128 a, u128 b) {
    u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    u128 p00 = u128(a0) * b0;
    u128 p01 = u128(a0) * b1;
    u128 p10 = u128(a1) * b0;
    u128 p11 = u128(a1) * b1;
    u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    u256 r;
    r.lo = (mid << 64) | static_cast<u64>(p00);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

u256 mul_u256_u64(u256 a, u64 b) {
    u256 low = mul_u128_u128(a.lo, b);
    u256 high = mul_u128_u128(a.hi, b);
    if (high.hi != 0) throw OverflowError("u256 multiplication overflow");
    u256 r;
    r.lo = low.lo;
    if (__builtin_add_overflow(low.hi, high.lo, &r.hi))
        throw OverflowError("u256 multiplication overflow");
    return r;
}

u256 divmod_u256_u64(u256 a, u64 d, u64& rem) {
    if (d == 0) throw InternalError("u256 division by zero");
    u64 limbs[4] = {
        static_cast<u64>(a.hi >> 64), static_cast<u64>(a.hi),
        static_cast<u64>(a.lo >> 64), static_cast<u64>(a.lo),
    };
    u64 q[4];
    u128 r = 0;
    for (int i = 0; i < 4; ++i) {
        u128 cur = (r << 64) | limbs[i];
        q[i] = static_cast<u64>(cur / d);
        r = cur % d;
    }
    rem = static_cast<u64>(r);
    return u256{(u128(q[0]) << 64) | q[1], (u128(q[2]) << 64) | q[3]};
}

std::string to_string_u256(u256 n) {
    if (n.hi == 0) return to_string_u128(n.lo);
    std::string out;
    while (n.hi != 0 || n.lo != 0) {
        u64 digit;
        n = divmod_u256_u64(n, 10, digit);
        out.push_back(static_cast<char>('0' + digit));
    }
    return std::string(out.rbegin(), out.rend());
}

} // namespace totlab
