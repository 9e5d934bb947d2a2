#include "totlab/cli.hpp"

#include "totlab/chain.hpp"
#include "totlab/closed_form.hpp"
#include "totlab/core_arith.hpp"
#include "totlab/errors.hpp"
#include "totlab/sieve.hpp"
#include "totlab/totient.hpp"
#include "totlab/u128.hpp"
#include "totlab/verify.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <unistd.h>

namespace totlab::cli {

namespace {

const char* USAGE =
    "usage: totlab <command> [args]\n"
    "\n"
    "  phi N             Euler's totient of N\n"
    "  factor N          prime factorization of N\n"
    "  chain N           iterated-totient chain of N down to 1\n"
    "  sum N             chain sum S(N)\n"
    "  kfn N             k(N): iterations of phi until 1\n"
    "  cfn N             C(N): iterations of phi until 2 (undefined for N = 1)\n"
    "  crt A1 M1 A2 M2   simultaneous congruences, coprime moduli\n"
    "  lincong A B M     solve A*x = B (mod M)\n"
    "  fermat M          Fermat number F_M with primality verdict (M <= 6)\n"
    "  pepin M           Pepin primality criterion for F_M (1 <= M <= 6)\n"
    "  bounds N          ceil-log bounds on k(N)\n"
    "  table --limit N [--format text|csv|json] [--out PATH]\n"
    "                    per-n table of phi, k, C, S\n"
    "  limit --n N       summatory ratio 2*Phi(N)/N^2 vs 6/pi^2\n"
    "  bench --n N --trials T\n"
    "                    sieve vs per-number timing\n"
    "  verify SUITE      run checks; suites: fermat-power, three-power,\n"
    "                    bounds, parity, multiplicativity, all\n"
    "  verify fermat-power --p P --max-k K\n"
    "                    per-k closed form vs chain sum for one prime\n"
    "\n"
    "Integers are decimal, optionally with _ separators (e.g. 1_000_000).\n"
    "TOTIENT_LAB_MEM_CAP (bytes) overrides the 2 GiB sieve memory cap.\n";

u128 parse_int(const std::string& text, const char* what) {
    auto v = parse_u128(text);
    if (!v)
        throw InvalidInputError(std::string(what) + ": not a valid 128-bit decimal: '"
                                + text + "'");
    return *v;
}

u64 parse_int64(const std::string& text, const char* what) {
    u128 v = parse_int(text, what);
    if (v > UINT64_MAX)
        throw InvalidInputError(std::string(what) + ": value too large: '" + text + "'");
    return static_cast<u64>(v);
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string fmt_seconds(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

void expect_argc(const std::vector<std::string>& args, size_t n, const char* usage) {
    if (args.size() != n)
        throw InvalidInputError(std::string("expected ") + usage);
}

u64 mem_cap_from_env() {
    const char* raw = std::getenv("TOTIENT_LAB_MEM_CAP");
    if (!raw) return DEFAULT_MEM_CAP;
    auto v = parse_u128(raw);
    if (!v || *v == 0 || *v > UINT64_MAX)
        throw InvalidInputError("TOTIENT_LAB_MEM_CAP: not a valid byte count");
    return static_cast<u64>(*v);
}

std::string format_factorization(const Factorization& f) {
    if (f.pairs.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < f.pairs.size(); ++i) {
        if (i) out += " * ";
        out += to_string_u128(f.pairs[i].prime);
        if (f.pairs[i].exponent > 1) out += "^" + std::to_string(f.pairs[i].exponent);
    }
    return out;
}

// Option parsing for the flag-style commands: --name value pairs only.
std::vector<std::pair<std::string, std::string>>
parse_flags(const std::vector<std::string>& args, size_t from) {
    std::vector<std::pair<std::string, std::string>> flags;
    for (size_t i = from; i < args.size(); i += 2) {
        if (args[i].rfind("--", 0) != 0)
            throw InvalidInputError("expected a --flag, got '" + args[i] + "'");
        if (i + 1 >= args.size())
            throw InvalidInputError("flag " + args[i] + " needs a value");
        flags.emplace_back(args[i].substr(2), args[i + 1]);
    }
    return flags;
}

void write_atomically(const std::string& path,
                      const std::function<void(std::ostream&)>& writer) {
    std::string temp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + temp + " for writing");
        writer(out);
        out.flush();
        if (!out) {
            std::remove(temp.c_str());
            throw Error("write to " + temp + " failed");
        }
    }
    if (std::rename(temp.c_str(), path.c_str()) != 0) {
        std::remove(temp.c_str());
        throw Error("rename to " + path + " failed");
    }
}

int cmd_table(const std::vector<std::string>& args, std::ostream& out) {
    std::optional<u64> limit;
    std::string format = "text";
    std::optional<std::string> out_path;
    for (const auto& [flag, value] : parse_flags(args, 1)) {
        if (flag == "limit") limit = parse_int64(value, "--limit");
        else if (flag == "format") format = value;
        else if (flag == "out") out_path = value;
        else throw InvalidInputError("table: unknown flag --" + flag);
    }
    if (!limit) throw InvalidInputError("table: --limit is required");

    void (*writer)(const ChainTable&, std::ostream&) = nullptr;
    if (format == "text") writer = write_table_text;
    else if (format == "csv") writer = write_table_csv;
    else if (format == "json") writer = write_table_jsonl;
    else throw InvalidInputError("table: unknown format '" + format + "'");

    ChainTable table = chain_table(*limit, mem_cap_from_env());
    if (out_path)
        write_atomically(*out_path, [&](std::ostream& o) { writer(table, o); });
    else
        writer(table, out);
    return 0;
}

int cmd_limit(const std::vector<std::string>& args, std::ostream& out) {
    std::optional<u64> n;
    for (const auto& [flag, value] : parse_flags(args, 1)) {
        if (flag == "n") n = parse_int64(value, "--n");
        else throw InvalidInputError("limit: unknown flag --" + flag);
    }
    if (!n) throw InvalidInputError("limit: --n is required");
    SummatoryReport report = summatory_report(*n, mem_cap_from_env());
    out << "n " << report.n << '\n'
        << "summatory " << to_string_u128(report.summatory) << '\n'
        << "ratio " << fmt_double(report.ratio) << '\n'
        << "target " << fmt_double(report.target) << '\n'
        << "abs_error " << fmt_double(report.abs_error) << '\n';
    return 0;
}

int cmd_bench(const std::vector<std::string>& args, std::ostream& out) {
    std::optional<u64> n;
    std::optional<u64> trials;
    for (const auto& [flag, value] : parse_flags(args, 1)) {
        if (flag == "n") n = parse_int64(value, "--n");
        else if (flag == "trials") trials = parse_int64(value, "--trials");
        else throw InvalidInputError("bench: unknown flag --" + flag);
    }
    if (!n || !trials) throw InvalidInputError("bench: --n and --trials are required");
    if (*trials > UINT32_MAX) throw InvalidInputError("bench: --trials too large");
    BenchReport report = bench_compare(*n, static_cast<u32>(*trials), mem_cap_from_env());
    out << "n " << report.n << '\n'
        << "trials " << report.trials << '\n'
        << "sieve_seconds " << fmt_double(report.sieve_seconds) << '\n'
        << "per_number_seconds " << fmt_double(report.per_number_seconds) << '\n'
        << "speedup " << fmt_double(report.speedup) << '\n';
    return 0;
}

int cmd_verify(const std::vector<std::string>& args, std::ostream& out) {
    if (args.size() < 2) throw InvalidInputError("verify: suite name required");
    const std::string& suite = args[1];

    std::optional<u128> p;
    std::optional<u64> max_k;
    for (const auto& [flag, value] : parse_flags(args, 2)) {
        if (flag == "p" && suite == "fermat-power") p = parse_int(value, "--p");
        else if (flag == "max-k" && suite == "fermat-power")
            max_k = parse_int64(value, "--max-k");
        else throw InvalidInputError("verify: unknown flag --" + flag
                                     + " for suite " + suite);
    }

    if (p || max_k) {
        if (!p || !max_k)
            throw InvalidInputError("verify fermat-power: --p and --max-k go together");
        if (!is_fermat_prime(*p))
            throw InvalidInputError(to_string_u128(*p) + " is not a Fermat prime");
        bool all_ok = true;
        out << "p " << to_string_u128(*p) << '\n';
        u128 pk = 1;
        for (u64 k = 1; k <= *max_k; ++k) {
            pk = checked_mul(pk, *p);
            u256 closed = fermat_power_sum(*p, static_cast<u32>(k));
            u256 chain = chain_sum_S(pk);
            bool ok = closed == chain;
            all_ok = all_ok && ok;
            out << "k=" << k << " closed_form=" << to_string_u256(closed)
                << " chain_sum=" << to_string_u256(chain)
                << (ok ? " ok" : " MISMATCH") << '\n';
        }
        return all_ok ? 0 : 2;
    }

    auto results = verify::run_suite(suite);
    int failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ");
        out << std::setw(2) << std::setfill('0') << r.id << std::setfill(' ')
            << ' ' << r.name << ": " << r.detail
            << " (" << fmt_seconds(r.seconds) << "s, budget "
            << fmt_double(r.budget_seconds) << "s)\n";
        if (!r.passed) ++failed;
    }
    out << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 2;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << USAGE;
        return 1;
    }
    const std::string& cmd = args[0];

    if (cmd == "phi") {
        expect_argc(args, 2, "phi N");
        out << to_string_u128(phi(parse_int(args[1], "N"))) << '\n';
        return 0;
    }
    if (cmd == "factor") {
        expect_argc(args, 2, "factor N");
        out << format_factorization(factorize(parse_int(args[1], "N"))) << '\n';
        return 0;
    }
    if (cmd == "chain") {
        expect_argc(args, 2, "chain N");
        TotientChain chain = totient_chain(parse_int(args[1], "N"));
        for (size_t i = 0; i < chain.iterates.size(); ++i)
            out << (i ? " " : "") << to_string_u128(chain.iterates[i]);
        out << '\n';
        return 0;
    }
    if (cmd == "sum") {
        expect_argc(args, 2, "sum N");
        out << to_string_u256(chain_sum_S(parse_int(args[1], "N"))) << '\n';
        return 0;
    }
    if (cmd == "kfn") {
        expect_argc(args, 2, "kfn N");
        out << chain_summary(parse_int(args[1], "N")).k << '\n';
        return 0;
    }
    if (cmd == "cfn") {
        expect_argc(args, 2, "cfn N");
        ChainSummary summary = chain_summary(parse_int(args[1], "N"));
        if (summary.c) out << *summary.c << '\n';
        else out << "undefined\n";
        return 0;
    }
    if (cmd == "crt") {
        expect_argc(args, 5, "crt A1 M1 A2 M2");
        CrtSolution sol = crt_pair(parse_int(args[1], "A1"), parse_int(args[2], "M1"),
                                   parse_int(args[3], "A2"), parse_int(args[4], "M2"));
        out << to_string_u128(sol.residue) << " (mod " << to_string_u128(sol.modulus)
            << ")\n";
        return 0;
    }
    if (cmd == "lincong") {
        expect_argc(args, 4, "lincong A B M");
        u128 a = parse_int(args[1], "A");
        u128 b = parse_int(args[2], "B");
        u128 m = parse_int(args[3], "M");
        if (m == 0) throw InvalidInputError("lincong: M must be >= 1");
        b %= m; // ergonomic at the CLI; the library precondition stays strict
        try {
            LinearCongruenceSolution sol = solve_linear_congruence(a, b, m);
            out << "x = " << to_string_u128(sol.base_solution) << " + "
                << to_string_u128(sol.modulus_step) << "*i (mod "
                << to_string_u128(sol.modulus) << "), i = 0.."
                << to_string_u128(sol.count - 1) << '\n';
        } catch (const NoSolutionError& e) {
            // A solvability verdict is an answer, not an input error.
            out << e.what() << '\n';
        }
        return 0;
    }
    if (cmd == "fermat") {
        expect_argc(args, 2, "fermat M");
        FermatNumber f = fermat_number(static_cast<u32>(parse_int64(args[1], "M")));
        out << "F_" << f.m << " = " << to_string_u128(f.value) << " ("
            << (f.is_prime ? "prime" : "composite") << ")\n";
        return 0;
    }
    if (cmd == "pepin") {
        expect_argc(args, 2, "pepin M");
        u64 m = parse_int64(args[1], "M");
        if (m > 6) throw RangeError("pepin supports 1 <= M <= 6");
        out << (pepin_test(static_cast<u32>(m)) ? "prime" : "composite") << '\n';
        return 0;
    }
    if (cmd == "bounds") {
        expect_argc(args, 2, "bounds N");
        KBounds b = k_bounds(parse_int(args[1], "N"));
        out << b.lower << ' ' << b.upper << '\n';
        return 0;
    }
    if (cmd == "table") return cmd_table(args, out);
    if (cmd == "limit") return cmd_limit(args, out);
    if (cmd == "bench") return cmd_bench(args, out);
    if (cmd == "verify") return cmd_verify(args, out);

    err << "unknown command: " << cmd << "\n\n" << USAGE;
    return 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace totlab::cli
