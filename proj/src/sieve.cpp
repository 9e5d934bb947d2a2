#include "totlab/sieve.hpp"

#include "totlab/errors.hpp"
#include "totlab/totient.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

namespace totlab {

namespace {

void check_budget(u64 limit, u64 bytes_per_entry, u64 mem_cap, const char* what) {
    if (limit > UINT64_MAX / bytes_per_entry || limit * bytes_per_entry > mem_cap)
        throw ResourceError(std::string(what) + ": estimated "
                            + std::to_string(limit * bytes_per_entry)
                            + " bytes exceeds memory cap of "
                            + std::to_string(mem_cap));
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    size_t mid = xs.size() / 2;
    return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

} // namespace

ChainSummary ChainTable::row(u64 n) const {
    ChainSummary summary{n, k_v[n - 1], std::nullopt, u256{s_v[n - 1]}};
    if (n >= 2) summary.c = summary.k - 1;
    return summary;
}

TotientTable totient_sieve(u64 limit, u64 mem_cap) {
    if (limit == 0) throw RangeError("totient_sieve requires limit >= 1");
    if (limit > SIEVE_LIMIT_CAP) throw RangeError("totient_sieve capped at 10^8");
    // phi array (4 bytes) + composite bitmap + prime list, rounded up.
    check_budget(limit + 1, 5, mem_cap, "totient_sieve");

    std::vector<u32> phi_of(limit + 1, 0);
    std::vector<bool> composite(limit + 1, false);
    std::vector<u32> primes;
    phi_of[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<u32>(i));
            phi_of[i] = static_cast<u32>(i - 1);
        }
        for (u32 p : primes) {
            u64 ip = i * p;
            if (ip > limit) break;
            composite[ip] = true;
            if (i % p == 0) {
                phi_of[ip] = phi_of[i] * p; // p already divides i: phi(p*i) = p*phi(i)
                break;
            }
            phi_of[ip] = phi_of[i] * (p - 1);
        }
    }

    TotientTable table{limit, {}};
    table.values.assign(phi_of.begin() + 1, phi_of.end());
    return table;
}

SummatoryReport summatory_report(u64 limit, u64 mem_cap) {
    TotientTable table = totient_sieve(limit, mem_cap);
    u128 sum = 0;
    for (u32 v : table.values) sum += v;
    double ratio = 2.0 * static_cast<double>(sum)
                   / (static_cast<double>(limit) * static_cast<double>(limit));
    double target = 6.0 / (std::numbers::pi * std::numbers::pi);
    return SummatoryReport{limit, sum, ratio, target, std::fabs(ratio - target)};
}

ChainTable chain_table(u64 limit, u64 mem_cap) {
    if (limit == 0) throw RangeError("chain_table requires limit >= 1");
    if (limit > CHAIN_TABLE_CAP) throw RangeError("chain_table capped at 10^7");
    // sieve working set (5/entry) + phi/k (4 each) + s (8)
    check_budget(limit + 1, 21, mem_cap, "chain_table");

    TotientTable sieve = totient_sieve(limit, mem_cap);
    ChainTable table{limit, std::move(sieve.values), {}, {}};
    table.k_v.resize(limit);
    table.s_v.resize(limit);
    table.k_v[0] = 0;
    table.s_v[0] = 0;
    for (u64 n = 2; n <= limit; ++n) {
        u64 f = table.phi_v[n - 1];
        table.k_v[n - 1] = table.k_v[f - 1] + 1;
        table.s_v[n - 1] = f + table.s_v[f - 1];
    }
    return table;
}

BenchReport bench_compare(u64 n, u32 trials, u64 mem_cap) {
    if (n < 1000) throw RangeError("bench_compare requires n >= 10^3");
    if (trials == 0) throw RangeError("bench_compare requires trials >= 1");
    using clock = std::chrono::steady_clock;

    std::vector<double> sieve_times, per_number_times;
    volatile u64 sink = 0; // keep the loops honest
    for (u32 t = 0; t < trials; ++t) {
        auto t0 = clock::now();
        TotientTable table = totient_sieve(n, mem_cap);
        auto t1 = clock::now();
        sink = sink + table.at(n);
        sieve_times.push_back(std::chrono::duration<double>(t1 - t0).count());

        auto t2 = clock::now();
        u64 acc = 0;
        for (u64 i = 1; i <= n; ++i) acc += static_cast<u64>(phi(i));
        auto t3 = clock::now();
        sink = sink + acc;
        per_number_times.push_back(std::chrono::duration<double>(t3 - t2).count());
    }
    double sieve_med = median(sieve_times);
    double per_med = median(per_number_times);
    return BenchReport{n, trials, sieve_med, per_med,
                       sieve_med > 0 ? per_med / sieve_med : 0.0};
}

namespace {

void write_row(std::ostream& out, const ChainTable& t, u64 n, char sep,
               const char* absent) {
    out << n << sep << t.phi_v[n - 1] << sep << t.k_v[n - 1] << sep;
    if (n >= 2) out << t.k_v[n - 1] - 1;
    else out << absent;
    out << sep << t.s_v[n - 1] << '\n';
}

} // namespace

void write_table_csv(const ChainTable& table, std::ostream& out) {
    out << "n,phi,k,c,s\n";
    for (u64 n = 1; n <= table.limit; ++n) write_row(out, table, n, ',', "");
}

void write_table_text(const ChainTable& table, std::ostream& out) {
    out << "n phi k c s\n";
    for (u64 n = 1; n <= table.limit; ++n) write_row(out, table, n, ' ', "-");
}

void write_table_jsonl(const ChainTable& table, std::ostream& out) {
    for (u64 n = 1; n <= table.limit; ++n) {
        out << "{\"n\":" << n << ",\"phi\":" << table.phi_v[n - 1]
            << ",\"k\":" << table.k_v[n - 1] << ",\"c\":";
        if (n >= 2) out << table.k_v[n - 1] - 1;
        else out << "null";
        out << ",\"s\":" << table.s_v[n - 1] << "}\n";
    }
}

} // namespace totlab
