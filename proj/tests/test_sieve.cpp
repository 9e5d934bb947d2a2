#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "totlab/chain.hpp"
#include "totlab/errors.hpp"
#include "totlab/sieve.hpp"
#include "totlab/totient.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace totlab;

TEST_CASE("sieve reproduces the first ten phi values") {
    TotientTable t = totient_sieve(10);
    CHECK(t.limit == 10);
    CHECK(t.values == std::vector<u32>{1, 1, 2, 2, 4, 2, 6, 4, 6, 4});
}

TEST_CASE("sieve edge and prime entries") {
    TotientTable one = totient_sieve(1);
    CHECK(one.values == std::vector<u32>{1});

    TotientTable t = totient_sieve(100'000);
    CHECK(t.at(65537) == 65536);
    CHECK(t.at(99991) == 99990); // prime
    CHECK(t.at(65536) == 32768);
    CHECK(t.at(99990) == 24000); // 2 * 3^2 * 5 * 11 * 101
}

TEST_CASE("sieve agrees with per-number phi up to 10^4") {
    TotientTable t = totient_sieve(10'000);
    u64 bad = 0;
    for (u64 n = 1; n <= 10'000; ++n) {
        if (t.at(n) != phi(n)) { bad = n; break; }
    }
    CHECK(bad == 0);
}

TEST_CASE("sieve domain and resource checks") {
    CHECK_THROWS_AS(totient_sieve(0), RangeError);
    CHECK_THROWS_AS(totient_sieve(SIEVE_LIMIT_CAP + 1), RangeError);
    CHECK_THROWS_AS(totient_sieve(1'000'000, 1'000), ResourceError);
}

TEST_CASE("summatory fixed values") {
    SummatoryReport r10 = summatory_report(10);
    CHECK(r10.summatory == 32);
    CHECK(r10.ratio == doctest::Approx(0.64).epsilon(1e-12));

    SummatoryReport r1 = summatory_report(1);
    CHECK(r1.summatory == 1);
    CHECK(r1.ratio == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(summatory_report(100).summatory == 3044);

    SummatoryReport r1000 = summatory_report(1000);
    CHECK(r1000.summatory == 304192);
    CHECK(r1000.ratio == doctest::Approx(0.608384).epsilon(1e-12));
}

TEST_CASE("summatory ratio approaches 6/pi^2") {
    SummatoryReport r = summatory_report(1'000'000);
    CHECK(r.summatory == u128{303963552392ULL});
    CHECK(r.target == doctest::Approx(6.0 / (std::numbers::pi * std::numbers::pi))
                          .epsilon(1e-15));
    CHECK(r.abs_error == doctest::Approx(std::fabs(r.ratio - r.target)).epsilon(1e-15));
    CHECK(r.abs_error < 1e-5);
    // Convergence direction: farther out is closer to the limit.
    CHECK(r.abs_error < summatory_report(1'000).abs_error);
}

TEST_CASE("chain table small values") {
    ChainTable t = chain_table(5);
    CHECK(t.phi_v == std::vector<u32>{1, 1, 2, 2, 4});
    CHECK(t.k_v == std::vector<u32>{0, 1, 2, 2, 3});
    CHECK(t.s_v == std::vector<u64>{0, 1, 3, 3, 7});
}

TEST_CASE("chain table rows match the summary struct") {
    ChainTable t = chain_table(27);

    ChainSummary r27 = t.row(27);
    CHECK(r27.n == 27);
    CHECK(r27.k == 4);
    CHECK(*r27.c == 3);
    CHECK(r27.s == u256{27});

    ChainSummary r2 = t.row(2);
    CHECK(r2.k == 1);
    CHECK(*r2.c == 0);
    CHECK(r2.s == u256{1});

    ChainSummary r1 = t.row(1);
    CHECK(r1.k == 0);
    CHECK(!r1.c.has_value());
    CHECK(r1.s == u256{0});
}

TEST_CASE("chain table agrees with chain_summary up to 10^4") {
    ChainTable t = chain_table(10'000);
    u64 bad = 0;
    for (u64 n = 1; n <= 10'000; ++n) {
        ChainSummary a = t.row(n);
        ChainSummary b = chain_summary(n);
        if (a.k != b.k || a.c != b.c || !(a.s == b.s)) { bad = n; break; }
    }
    CHECK(bad == 0);
}

TEST_CASE("chain table domain and resource checks") {
    CHECK_THROWS_AS(chain_table(0), RangeError);
    CHECK_THROWS_AS(chain_table(CHAIN_TABLE_CAP + 1), RangeError);
    CHECK_THROWS_AS(chain_table(1'000'000, 1'000), ResourceError);
}

TEST_CASE("bench report structure") {
    BenchReport r = bench_compare(1000, 1);
    CHECK(r.n == 1000);
    CHECK(r.trials == 1);
    CHECK(r.sieve_seconds >= 0.0);
    CHECK(r.per_number_seconds > 0.0);
    CHECK(r.speedup >= 0.0);
    CHECK_THROWS_AS(bench_compare(999, 1), RangeError);
    CHECK_THROWS_AS(bench_compare(1000, 0), RangeError);
}

TEST_CASE("csv export golden") {
    std::ostringstream out;
    write_table_csv(chain_table(3), out);
    CHECK(out.str() == "n,phi,k,c,s\n"
                       "1,1,0,,0\n"
                       "2,1,1,0,1\n"
                       "3,2,2,1,3\n");
}

TEST_CASE("jsonl export golden") {
    std::ostringstream out;
    write_table_jsonl(chain_table(2), out);
    CHECK(out.str() == "{\"n\":1,\"phi\":1,\"k\":0,\"c\":null,\"s\":0}\n"
                       "{\"n\":2,\"phi\":1,\"k\":1,\"c\":0,\"s\":1}\n");
}

TEST_CASE("text export golden") {
    std::ostringstream out;
    write_table_text(chain_table(2), out);
    CHECK(out.str() == "n phi k c s\n"
                       "1 1 0 - 0\n"
                       "2 1 1 0 1\n");
}
