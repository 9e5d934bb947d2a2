#include "totlab/totient.hpp"

#include "totlab/errors.hpp"

#include <bit>
#include <map>

namespace totlab {

namespace {

// Binary gcd on u32; the counting oracle spends all its time here.
u32 gcd32(u32 a, u32 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    do {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b);
    return a << shift;
}

} // namespace

u64 phi_by_counting(u64 n) {
    if (n == 0) throw RangeError("phi_by_counting requires n >= 1");
    if (n > PHI_COUNTING_CAP)
        throw RangeError("phi_by_counting capped at 10^7 (oracle use only)");
    u32 n32 = static_cast<u32>(n);
    u64 count = 0;
    for (u32 x = 1; x <= n32; ++x)
        if (gcd32(x, n32) == 1) ++count;
    return count;
}

u128 phi(u128 n) {
    if (n == 0) throw RangeError("phi requires n >= 1");
    if (n == 1) return 1;
    return phi_factored(factorize(n)).value_exact();
}

Factorization phi_factored(const Factorization& f, u64 rho_budget) {
    std::map<u128, u32> acc;
    for (const auto& [p, a] : f.pairs) {
        if (a >= 2) acc[p] += a - 1;
        for (const auto& [q, b] : factorize(p - 1, rho_budget).pairs) acc[q] += b;
    }
    Factorization result;
    result.pairs.reserve(acc.size());
    for (const auto& [p, e] : acc) result.pairs.push_back({p, e});
    return result;
}

} // namespace totlab
