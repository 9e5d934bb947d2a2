#include "totlab/chain.hpp"

#include "totlab/errors.hpp"
#include "totlab/totient.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace totlab {

namespace {

struct CacheEntry {
    u32 k;
    u64 s; // S(v) < 2v < 2^25 for cached v, so u64 is generous
};

std::shared_mutex cache_mutex;
std::unordered_map<u64, CacheEntry> cache;

std::optional<CacheEntry> cache_lookup(u64 v) {
    std::shared_lock lock(cache_mutex);
    auto it = cache.find(v);
    if (it == cache.end()) return std::nullopt;
    return it->second;
}

void cache_insert(u64 v, CacheEntry e) {
    std::unique_lock lock(cache_mutex);
    cache.try_emplace(v, e); // first writer wins; entries for v are identical anyway
}

} // namespace

TotientChain totient_chain(u128 n) {
    if (n == 0) throw RangeError("totient_chain requires n >= 1");
    TotientChain chain{n, {}};
    u128 x = n;
    while (x != 1) {
        x = phi(x);
        chain.iterates.push_back(x);
    }
    return chain;
}

ChainSummary chain_summary(u128 n, u64 rho_budget) {
    if (n == 0) throw RangeError("chain_summary requires n >= 1");

    // Walk forward until 1 or a cached suffix, keeping the current iterate
    // in factored form so each step only factors the small (p-1) parts.
    std::vector<u128> pending; // visited values whose summary is still unknown
    u128 x = n;
    Factorization f;
    bool have_f = false;
    u32 k_suffix = 0;
    u256 s_suffix = 0;
    while (x != 1) {
        if (x < CHAIN_CACHE_CAP) {
            if (auto hit = cache_lookup(static_cast<u64>(x))) {
                k_suffix = hit->k;
                s_suffix = u256{hit->s};
                break;
            }
        }
        pending.push_back(x);
        if (!have_f) {
            f = factorize(x, rho_budget);
            have_f = true;
        }
        f = phi_factored(f, rho_budget);
        x = f.value_exact(); // phi(x) < x, so this always fits
    }

    // Fold the recurrence S(v) = phi(v) + S(phi(v)), k(v) = 1 + k(phi(v))
    // back over the pending prefix, caching small suffixes as we go.
    u32 k = k_suffix;
    u256 s = s_suffix;
    u128 successor = x;
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
        k += 1;
        s = add_u256(s, u256{successor});
        if (*it < CHAIN_CACHE_CAP)
            cache_insert(static_cast<u64>(*it),
                         CacheEntry{k, static_cast<u64>(s.lo)});
        successor = *it;
    }

    ChainSummary summary{n, k, std::nullopt, s};
    if (n >= 2) summary.c = k - 1;
    return summary;
}

u256 chain_sum_S(u128 n) { return chain_summary(n).s; }

std::vector<Factorization> factored_chain(const Factorization& f) {
    std::vector<Factorization> chain;
    Factorization cur = f;
    while (!cur.pairs.empty()) {
        cur = phi_factored(cur);
        chain.push_back(cur);
    }
    return chain;
}

} // namespace totlab
