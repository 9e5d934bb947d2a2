#pragma once

#include "totlab/chain.hpp"
#include "totlab/u128.hpp"

#include <iosfwd>
#include <vector>

namespace totlab {

inline constexpr u64 SIEVE_LIMIT_CAP = 100'000'000;  // 10^8
inline constexpr u64 CHAIN_TABLE_CAP = 10'000'000;   // 10^7
inline constexpr u64 DEFAULT_MEM_CAP = u64{2} << 30; // 2 GiB

// phi(1..N); 1-based through at().
struct TotientTable {
    u64 limit;
    std::vector<u32> values; // values[i-1] = phi(i); u32 holds any phi <= 10^8

    u64 at(u64 n) const { return values[n - 1]; }
};

// Exact summatory Phi(N) with the ratio 2*Phi(N)/N^2 against 6/pi^2.
// The division to double happens once, at the end.
struct SummatoryReport {
    u64 n;
    u128 summatory;
    double ratio;
    double target; // 6/pi^2
    double abs_error;
};

// Per-n chain summaries for 1..N, stored as parallel arrays to keep
// 10^7 rows affordable; row() materializes the ChainSummary view.
struct ChainTable {
    u64 limit;
    std::vector<u32> phi_v;
    std::vector<u32> k_v;
    std::vector<u64> s_v; // S(n) < 2n <= 2 * 10^7

    ChainSummary row(u64 n) const;
};

struct BenchReport {
    u64 n;
    u32 trials;
    double sieve_seconds;      // median over trials
    double per_number_seconds; // median over trials
    double speedup;            // per_number / sieve
};

// Linear smallest-prime-factor sieve; one pass, O(N). RangeError above
// 10^8, ResourceError when the estimated allocation exceeds mem_cap.
TotientTable totient_sieve(u64 limit, u64 mem_cap = DEFAULT_MEM_CAP);

SummatoryReport summatory_report(u64 limit, u64 mem_cap = DEFAULT_MEM_CAP);

// Fills k and S by the recurrences k(n) = 1 + k(phi(n)) and
// S(n) = phi(n) + S(phi(n)), walking n upward (phi(n) < n makes every
// dependency already available). RangeError above 10^7.
ChainTable chain_table(u64 limit, u64 mem_cap = DEFAULT_MEM_CAP);

// Wall-clock comparison of the sieve against per-number phi over 1..N.
// Emitted, never asserted. Requires N >= 10^3.
BenchReport bench_compare(u64 n, u32 trials, u64 mem_cap = DEFAULT_MEM_CAP);

// Table export: header n,phi,k,c,s; c is empty (CSV) or null (JSON lines)
// for n = 1.
void write_table_csv(const ChainTable& table, std::ostream& out);
void write_table_jsonl(const ChainTable& table, std::ostream& out);
void write_table_text(const ChainTable& table, std::ostream& out);

} // namespace totlab
