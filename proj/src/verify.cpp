#include "totlab/verify.hpp"

#include "totlab/chain.hpp"
#include "totlab/closed_form.hpp"
#include "totlab/core_arith.hpp"
#include "totlab/errors.hpp"
#include "totlab/sieve.hpp"
#include "totlab/totient.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>

namespace totlab::verify {

namespace {

constexpr u128 POW2_127 = u128{1} << 127;

std::string fail_at(const std::string& what) { return "first failure: " + what; }

// --- criterion bodies; each returns correctness and fills detail ----------

bool crit_phi_first_ten(std::string& detail) {
    const u64 expected[10] = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4};
    for (u64 n = 1; n <= 10; ++n) {
        if (phi(n) != expected[n - 1]) {
            detail = fail_at("phi(" + std::to_string(n) + ") != "
                             + std::to_string(expected[n - 1]));
            return false;
        }
    }
    detail = "phi(1..10) all exact";
    return true;
}

bool crit_three_power_sum(std::string& detail) {
    u128 p3 = 1;
    for (u32 k = 1; k <= 40; ++k) {
        p3 *= 3;
        if (chain_sum_S(p3) != u256{p3}) {
            detail = fail_at("S(3^" + std::to_string(k) + ") != 3^k");
            return false;
        }
        if (power_of_three_sum(k) != u256{p3}) {
            detail = fail_at("closed form for 3^" + std::to_string(k));
            return false;
        }
    }
    detail = "S(3^k) = 3^k for k = 1..40";
    return true;
}

bool crit_fermat_prime_sum(std::string& detail) {
    for (u128 p : {u128{3}, u128{5}, u128{17}, u128{257}, u128{65537}}) {
        u128 want = 2 * p - 3;
        if (chain_sum_S(p) != u256{want} || fermat_prime_sum(p) != want) {
            detail = fail_at("S(" + to_string_u128(p) + ") != 2p - 3");
            return false;
        }
    }
    detail = "S(p) = 2p - 3 for all five Fermat primes";
    return true;
}

bool crit_fermat_power_closed_form(std::string& detail) {
    u64 cases = 0;
    for (u128 p : {u128{3}, u128{5}, u128{17}, u128{257}, u128{65537}}) {
        u128 pk = p;
        for (u32 k = 1; pk < POW2_127; ++k) {
            if (fermat_power_sum(p, k) != chain_sum_S(pk)) {
                detail = fail_at("closed form != chain sum at p = "
                                 + to_string_u128(p) + ", k = " + std::to_string(k));
                return false;
            }
            ++cases;
            if (pk > POW2_127 / p) break;
            pk *= p;
        }
    }
    detail = std::to_string(cases) + " (p, k) cases with p^k < 2^127";
    return true;
}

bool crit_chain_length_identities(std::string& detail) {
    for (u32 j = 1; j <= 60; ++j) {
        if (chain_summary(u128{1} << j).k != j) {
            detail = fail_at("k(2^" + std::to_string(j) + ") != j");
            return false;
        }
    }
    u128 p3 = 1;
    for (u32 j = 1; j <= 30; ++j) {
        p3 *= 3;
        if (chain_summary(2 * p3).k != j + 1) {
            detail = fail_at("k(2*3^" + std::to_string(j) + ") != j + 1");
            return false;
        }
    }
    ChainTable table = chain_table(1'000'000);
    for (u64 n = 2; n <= table.limit; ++n) {
        KBounds b = k_bounds(n);
        u32 k = table.k_v[n - 1];
        if (k < b.lower || k > b.upper) {
            detail = fail_at("k(" + std::to_string(n) + ") outside ceil-log bounds");
            return false;
        }
    }
    detail = "k identities for 2^j, 2*3^j; bounds hold for 2 <= n <= 10^6";
    return true;
}

bool crit_c_power_identity(std::string& detail) {
    for (u32 x = 1; x <= 20; ++x) {
        CIdentityCheck check = c_identity_check(x);
        if (!check.computed || !check.c_value) {
            detail = fail_at("C(2^" + std::to_string(x) + "+1) not computed");
            return false;
        }
        bool matches = *check.c_value == x;
        bool expected = x == 1 || x == 2 || x == 4 || x == 8 || x == 16;
        if (matches != expected || !check.identity_holds
            || check.fermat_prime != expected) {
            detail = fail_at("x = " + std::to_string(x) + ": C = "
                             + std::to_string(*check.c_value));
            return false;
        }
    }
    detail = "C(2^x+1) = x exactly for x in {1,2,4,8,16}, fails elsewhere (x <= 20)";
    return true;
}

bool crit_parity_and_decrease(std::string& detail) {
    TotientTable table = totient_sieve(1'000'000);
    if (table.at(1) != 1 || table.at(2) != 1) {
        detail = fail_at("phi(1) or phi(2) != 1");
        return false;
    }
    for (u64 n = 2; n <= table.limit; ++n) {
        u64 v = table.at(n);
        if (v >= n) {
            detail = fail_at("phi(" + std::to_string(n) + ") >= n");
            return false;
        }
        if (n > 2 && (v & 1)) {
            detail = fail_at("phi(" + std::to_string(n) + ") odd");
            return false;
        }
    }
    detail = "phi even on (2, 10^6], phi(n) < n on (1, 10^6], phi(1) = phi(2) = 1";
    return true;
}

bool crit_multiplicativity(std::string& detail) {
    std::mt19937_64 rng(PROPERTY_SEED);

    // Theorem-style multiplicativity over coprime pairs.
    std::uniform_int_distribution<u64> small(2, 31622);
    for (int i = 0; i < 10'000; ++i) {
        u64 m, n;
        do {
            m = small(rng);
            n = std::uniform_int_distribution<u64>(2, 1'000'000'000 / m)(rng);
        } while (std::gcd(m, n) != 1);
        if (phi(u128{m} * n) != phi(m) * phi(n)) {
            detail = fail_at("phi(" + std::to_string(m) + " * " + std::to_string(n) + ")");
            return false;
        }
    }

    // phi(a*b) = phi(a) * b whenever every prime of b divides a.
    std::uniform_int_distribution<u64> base(2, 10'000);
    for (int i = 0; i < 1'000; ++i) {
        u64 a = base(rng);
        Factorization f = factorize(a);
        u64 b = 1;
        for (const auto& pp : f.pairs) {
            u32 reps = std::uniform_int_distribution<u32>(0, 2)(rng);
            for (u32 r = 0; r < reps && b <= 100'000 / pp.prime; ++r)
                b *= static_cast<u64>(pp.prime);
        }
        if (b == 1) b = static_cast<u64>(f.pairs[0].prime);
        if (phi(u128{a} * b) != phi(a) * b) {
            detail = fail_at("phi(" + std::to_string(a) + " * " + std::to_string(b)
                             + ") != phi(a) * b");
            return false;
        }
    }

    if (phi(2) * phi(4) == phi(8)) {
        detail = fail_at("phi(2) * phi(4) == phi(8): complete multiplicativity");
        return false;
    }
    detail = "10^4 coprime pairs, 10^3 shared-radical pairs, fixed counterexample";
    return true;
}

bool crit_congruence_solvers(std::string& detail) {
    // Exhaustive agreement for every modulus up to 200.
    for (u64 m = 1; m <= 200; ++m) {
        for (u64 a = 1; a <= m; ++a) {
            std::vector<std::vector<u64>> buckets(m);
            for (u64 x = 0; x < m; ++x) buckets[a * x % m].push_back(x);
            u64 g = std::gcd(a, m);
            for (u64 b = 0; b < m; ++b) {
                if (b % g != 0) {
                    bool threw = false;
                    try {
                        solve_linear_congruence(a, b, m);
                    } catch (const NoSolutionError&) {
                        threw = true;
                    }
                    if (!threw || !buckets[b].empty()) {
                        detail = fail_at("unsolvable case " + std::to_string(a) + "x = "
                                         + std::to_string(b) + " mod " + std::to_string(m));
                        return false;
                    }
                    continue;
                }
                LinearCongruenceSolution sol = solve_linear_congruence(a, b, m);
                if (sol.count != g || buckets[b].size() != g) {
                    detail = fail_at("count mismatch at m = " + std::to_string(m));
                    return false;
                }
                for (u64 i = 0; i < g; ++i) {
                    if (sol.residue_at(i) != buckets[b][i]) {
                        detail = fail_at("residue set mismatch at m = " + std::to_string(m));
                        return false;
                    }
                }
            }
        }
    }

    // Exhaustive uniqueness for every coprime modulus pair up to 200.
    for (u64 m1 = 1; m1 <= 200; ++m1) {
        for (u64 m2 = 1; m2 <= 200; ++m2) {
            if (std::gcd(m1, m2) != 1) continue;
            u64 a1 = m2 % m1, a2 = m1 % m2;
            CrtSolution sol = crt_pair(a1, m1, a2, m2);
            u64 hits = 0, witness = 0;
            for (u64 x = 0; x < m1 * m2; ++x) {
                if (x % m1 == a1 && x % m2 == a2) {
                    ++hits;
                    witness = x;
                }
            }
            if (hits != 1 || witness != sol.residue || sol.modulus != m1 * m2) {
                detail = fail_at("crt scan at (" + std::to_string(m1) + ", "
                                 + std::to_string(m2) + ")");
                return false;
            }
        }
    }

    // Seeded random instances at larger moduli.
    std::mt19937_64 rng(PROPERTY_SEED);
    std::uniform_int_distribution<u64> dist(1, 1'000'000);
    for (int i = 0; i < 1'000; ++i) {
        u64 a = dist(rng), m = dist(rng);
        u64 g = std::gcd(a, m);
        u64 x0 = dist(rng) % m;
        u64 b = static_cast<u64>(u128{a} * x0 % m); // solvable by construction
        LinearCongruenceSolution sol = solve_linear_congruence(a, b, m);
        if (sol.count != g) {
            detail = fail_at("random lincong count, instance " + std::to_string(i));
            return false;
        }
        for (u64 j : {u64{0}, g / 2, g - 1}) {
            if (u128{a} * sol.residue_at(j) % m != b) {
                detail = fail_at("random lincong residue, instance " + std::to_string(i));
                return false;
            }
        }
        if (g > 1) {
            u64 bad = b + 1 <= m - 1 && (b + 1) % g != 0 ? b + 1 : 1; // 1 % g != 0 for g > 1
            bool threw = false;
            try {
                solve_linear_congruence(a, bad, m);
            } catch (const NoSolutionError&) {
                threw = true;
            }
            if (!threw) {
                detail = fail_at("random lincong missing NoSolution, instance "
                                 + std::to_string(i));
                return false;
            }
        }

        u64 m1, m2;
        do {
            m1 = dist(rng) % 10'000 + 1;
            m2 = dist(rng) % 10'000 + 1;
        } while (std::gcd(m1, m2) != 1);
        u64 r1 = dist(rng) % m1, r2 = dist(rng) % m2;
        CrtSolution crt = crt_pair(r1, m1, r2, m2);
        if (crt.residue % m1 != r1 || crt.residue % m2 != r2 || crt.residue >= crt.modulus) {
            detail = fail_at("random crt instance " + std::to_string(i));
            return false;
        }
    }
    detail = "exhaustive m <= 200 plus 10^3 seeded instances for both solvers";
    return true;
}

bool crit_summatory_limit(std::string& detail) {
    SummatoryReport big = summatory_report(1'000'000);
    SummatoryReport small = summatory_report(1'000);
    if (big.abs_error >= 1e-3) {
        detail = fail_at("abs_error at 10^6 is " + std::to_string(big.abs_error));
        return false;
    }
    if (big.abs_error >= small.abs_error) {
        detail = fail_at("error at 10^6 not below error at 10^3");
        return false;
    }
    std::ostringstream os;
    os << "Phi(10^6) = " << to_string_u128(big.summatory)
       << ", abs_error " << big.abs_error;
    detail = os.str();
    return true;
}

bool crit_fermat_compositeness(std::string& detail) {
    for (u32 k = 1; k <= 40; ++k) {
        if ((k & (k - 1)) == 0) continue; // powers of two are the Fermat exponents
        if (is_prime((u128{1} << k) + 1)) {
            detail = fail_at("2^" + std::to_string(k) + " + 1 reported prime");
            return false;
        }
    }
    if (fermat_number(5).value % 641 != 0) {
        detail = fail_at("641 does not divide F_5");
        return false;
    }
    for (u32 m = 1; m <= 6; ++m) {
        FermatNumber f = fermat_number(m);
        if (pepin_test(m) != f.is_prime) {
            detail = fail_at("pepin vs is_prime disagree on F_" + std::to_string(m));
            return false;
        }
        if ((m <= 4) != f.is_prime) {
            detail = fail_at("unexpected verdict for F_" + std::to_string(m));
            return false;
        }
    }
    detail = "2^k + 1 composite for non-power-of-two k <= 40; pepin agrees on F_1..F_6";
    return true;
}

bool crit_oracle_equivalence(std::string& detail) {
    for (u64 n = 1; n <= 10'000; ++n) {
        if (phi(n) != phi_by_counting(n)) {
            detail = fail_at("formula != counting at n = " + std::to_string(n));
            return false;
        }
    }
    TotientTable table = totient_sieve(100'000);
    for (u64 n = 1; n <= table.limit; ++n) {
        if (phi(n) != table.at(n)) {
            detail = fail_at("sieve != formula at n = " + std::to_string(n));
            return false;
        }
    }
    for (u64 n = 1; n <= 10'000; ++n) {
        TotientChain numeric = totient_chain(n);
        std::vector<Factorization> factored = factored_chain(factorize(n));
        if (numeric.iterates.size() != factored.size()) {
            detail = fail_at("chain length mismatch at n = " + std::to_string(n));
            return false;
        }
        for (size_t i = 0; i < factored.size(); ++i) {
            if (factored[i].value_exact() != numeric.iterates[i]) {
                detail = fail_at("chain element mismatch at n = " + std::to_string(n));
                return false;
            }
        }
    }
    detail = "counting vs formula (10^4), sieve vs formula (10^5), factored vs numeric chains (10^4)";
    return true;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    bool (*body)(std::string&);
};

constexpr Criterion CRITERIA[] = {
    {1, "phi-first-ten", 0.001, crit_phi_first_ten},
    {2, "three-power-chain-sum", 1.0, crit_three_power_sum},
    {3, "fermat-prime-chain-sum", 1.0, crit_fermat_prime_sum},
    {4, "fermat-power-closed-form", 30.0, crit_fermat_power_closed_form},
    {5, "chain-length-identities-and-bounds", 60.0, crit_chain_length_identities},
    {6, "c-power-identity", 5.0, crit_c_power_identity},
    {7, "parity-and-strict-decrease", 10.0, crit_parity_and_decrease},
    {8, "multiplicativity-properties", 5.0, crit_multiplicativity},
    {9, "congruence-solvers", 10.0, crit_congruence_solvers},
    {10, "summatory-limit", 5.0, crit_summatory_limit},
    {11, "fermat-compositeness-and-pepin", 30.0, crit_fermat_compositeness},
    {12, "oracle-equivalence", 30.0, crit_oracle_equivalence},
};

} // namespace

const std::vector<int>& all_criteria() {
    static const std::vector<int> ids = [] {
        std::vector<int> v;
        for (const auto& c : CRITERIA) v.push_back(c.id);
        return v;
    }();
    return ids;
}

std::vector<int> suite_criteria(std::string_view suite) {
    if (suite == "fermat-power") return {3, 4};
    if (suite == "three-power") return {2};
    if (suite == "bounds") return {5};
    if (suite == "parity") return {7};
    if (suite == "multiplicativity") return {8};
    if (suite == "all") return all_criteria();
    throw InvalidInputError("unknown verify suite: " + std::string(suite));
}

CriterionResult run_criterion(int id) {
    const Criterion* found = nullptr;
    for (const auto& c : CRITERIA)
        if (c.id == id) found = &c;
    if (!found) throw InvalidInputError("unknown criterion id: " + std::to_string(id));

    small_primes(); // shared table; its one-time build is not the criterion's cost

    CriterionResult result{id, found->name, false, 0.0, found->budget_seconds, false, {}};
    auto t0 = std::chrono::steady_clock::now();
    result.correct = found->body(result.detail);
    auto t1 = std::chrono::steady_clock::now();
    result.seconds = std::chrono::duration<double>(t1 - t0).count();
    result.passed = result.correct && result.seconds < result.budget_seconds;
    if (result.correct && !result.passed)
        result.detail += " (exceeded budget of "
                         + std::to_string(found->budget_seconds) + "s)";
    return result;
}

std::vector<CriterionResult> run_suite(std::string_view suite) {
    std::vector<CriterionResult> results;
    for (int id : suite_criteria(suite)) results.push_back(run_criterion(id));
    return results;
}

} // namespace totlab::verify
