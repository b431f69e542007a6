// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Time limits are wall-clock seconds per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <qseries/qseries.hpp>

#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace qseries;
namespace tst = qseries::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    std::string id;
    std::string title;
    double time_limit_s;
    std::function<Outcome()> body;
};

const char* const base_a = "f3/(f1*f6)";

const char* const five_term_4n2_printed =
    "2*f3*f4^3*f6^2*f24/(f1^2*f2^3*f8*f12^2) + 4q*f6^5*f24^2/(f1^3*f2^2*f12^3)"
    " - 2q^2*f3*f4^3*f24^4/(f1^2*f2^2*f6*f8^2*f12^2) + 4q^3*f6^2*f24^5/(f1^3*f2^5*f8*f12^3)"
    " - 8q^5*f24^8/(f1^3*f6*f8^2*f12^3)";

// Same as above with f2^5 -> f2 in the q^3 term.
const char* const five_term_4n2_corrected =
    "2*f3*f4^3*f6^2*f24/(f1^2*f2^3*f8*f12^2) + 4q*f6^5*f24^2/(f1^3*f2^2*f12^3)"
    " - 2q^2*f3*f4^3*f24^4/(f1^2*f2^2*f6*f8^2*f12^2) + 4q^3*f6^2*f24^5/(f1^3*f2*f8*f12^3)"
    " - 8q^5*f24^8/(f1^3*f6*f8^2*f12^3)";

const char* const five_term_4n3_printed =
    "2*f4^8*f6^6*f24^3/(f1*f2^7*f8^3*f12^7) + 8q*f4^5*f6^9*f24^4/(f1^2*f2^6*f3*f8^2*f12^8)"
    " - 2q^2*f4^8*f6^3*f24^6/(f1*f2^6*f8^4*f12^7) - 16q^3*f4^5*f6^6*f24^7/(f1^2*f2^5*f3*f8^3*f12^8)"
    " + 8q^5*f4^5*f6^3*f24^10/(f1^2*f2^4*f3*f8^4*f12^8)";

std::string describe(const Report& r) {
    if (r.passed()) {
        return r.name + " PASS to " + std::to_string(r.checked_up_to);
    }
    const auto& m = *r.first_mismatch;
    return r.name + " FAIL at " + std::to_string(m.index) + " (" + m.lhs.get_str() + " vs " + m.rhs.get_str() + ")";
}

Report equality(const std::string& name, const std::string& lhs, const std::string& rhs, std::size_t order) {
    return check_identity({name, parse(lhs), parse(rhs), CheckKind::equality, std::nullopt, order});
}

Outcome oracle_agreement() {
    Outcome o;
    const std::size_t N = 300;
    const Series s = evaluate(base_a, N);
    const auto mod6 = a_oracle(N, ADefinition::mod6);
    const auto odd = a_oracle(N, ADefinition::oddtwice);
    for (std::size_t n = 0; n <= N; ++n) {
        o.require(coeff(s, n) == mod6[n], "mod-6 definition differs at n=" + std::to_string(n));
        o.require(coeff(s, n) == odd[n], "odd-twice definition differs at n=" + std::to_string(n));
    }
    o.detail = o.ok ? "n <= 300, both definitions" : o.detail;
    return o;
}

Outcome identities(const std::vector<Report>& reports) {
    Outcome o;
    std::string all;
    for (const auto& r : reports) {
        o.require(r.passed(), describe(r));
        all += (all.empty() ? "" : "; ") + describe(r);
    }
    o.detail = all;
    return o;
}

struct TimedIdentity {
    std::string name;
    std::string lhs;
    std::string rhs;
    std::size_t order;
    double limit_s; // per identity
};

// Each identity must pass and finish within its own limit.
Outcome timed_identities(const std::vector<TimedIdentity>& items) {
    Outcome o;
    std::string all;
    for (const auto& it : items) {
        const auto start = std::chrono::steady_clock::now();
        const Report r = equality(it.name, it.lhs, it.rhs, it.order);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        o.require(r.passed(), describe(r));
        o.require(secs <= it.limit_s, it.name + " took " + std::to_string(secs) + " s");
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.3f s]", secs);
        all += (all.empty() ? "" : "; ") + describe(r) + buf;
    }
    o.detail = all;
    return o;
}

Outcome progressions_even() {
    Outcome o;
    const std::size_t n_max = 2000;
    const auto base = parse(base_a);
    const Report r2 = check_congruence_progression(*base, 4, 2, 2, n_max, "a(4n+2)");
    const Report r3 = check_congruence_progression(*base, 4, 3, 2, n_max, "a(4n+3)");
    o.require(r2.passed(), describe(r2));
    o.require(r3.passed(), describe(r3));
    const auto a = a_oracle(n_max, ADefinition::oddtwice);
    for (std::size_t n = 0; 4 * n + 3 <= n_max; ++n) {
        o.require(mpz_even_p(a[4 * n + 2].get_mpz_t()) != 0, "oracle a(4n+2) odd at n=" + std::to_string(n));
        o.require(mpz_even_p(a[4 * n + 3].get_mpz_t()) != 0, "oracle a(4n+3) odd at n=" + std::to_string(n));
    }
    if (o.ok) {
        o.detail = "series mod 2 and oracle parity, 4n+3 <= 2000";
    }
    return o;
}

Outcome theta_support() {
    Outcome o;
    const std::size_t N = 1000;
    const Series g = evaluate("f2^2*f3*f12/(f1*f4*f6)", N);
    const auto by_scan = tst::theta_support_by_scan(static_cast<std::int64_t>(N));
    for (std::size_t n = 0; n <= N; ++n) {
        const integer& c = coeff(g, n);
        o.require(c == 0 || c == 1, "coefficient outside {0,1} at n=" + std::to_string(n));
        o.require((c == 1) == by_scan[n], "support differs at n=" + std::to_string(n));
    }
    if (o.ok) {
        o.detail = "order 1000";
    }
    return o;
}

Outcome frobenius_grid() {
    Outcome o;
    int count = 0;
    for (std::size_t p : {2u, 3u, 5u}) {
        for (std::size_t a = 1; a <= 4; ++a) {
            for (std::size_t b = 1; b <= 3; ++b) {
                const auto r = check_frobenius(p, a, b, 300,
                                               "p=" + std::to_string(p) + ",a=" + std::to_string(a) + ",b=" + std::to_string(b));
                o.require(r.passed(), describe(r));
                ++count;
            }
        }
    }
    if (o.ok) {
        o.detail = std::to_string(count) + " triples to order 300";
    }
    return o;
}

Outcome empty_support() {
    Outcome o;
    for (std::size_t j : {2u, 3u}) {
        const auto r = check_empty_support(4, j, 100000, "g(4N+" + std::to_string(j) + ")");
        o.require(r.passed(), describe(r));
    }
    for (long k = -1000; k <= 1000; ++k) {
        const long s = (3 * k + 1) * (3 * k + 1) % 4;
        o.require(s == 0 || s == 1, "(3k+1)^2 mod 4 = " + std::to_string(s) + " at k=" + std::to_string(k));
    }
    if (o.ok) {
        o.detail = "n_max = 100000; |k| <= 1000";
    }
    return o;
}

Outcome property_suites() {
    Outcome o;
    constexpr int cases = 100;
    tst::rng_t rng(20261017);
    int ring = 0, inv = 0, dis = 0, adj = 0, pent = 0, fmt = 0;
    for (int t = 0; t < cases; ++t) {
        const Series a = tst::random_series(rng, 50);
        const Series b = tst::random_series(rng, 50);
        const Series c = tst::random_series(rng, 50);
        const bool ok = mul(a, b) == mul(b, a) && mul(mul(a, b), c) == mul(a, mul(b, c)) &&
                        mul(a, add(b, c)) == add(mul(a, b), mul(a, c));
        o.require(ok, "ring law case " + std::to_string(t));
        ring += ok;
    }
    for (int t = 0; t < cases; ++t) {
        const Series u = tst::random_unit_series(rng, 100);
        const bool ok = mul(u, invert(u)) == Series::one(100);
        o.require(ok, "invert case " + std::to_string(t));
        inv += ok;
    }
    for (int t = 0; t < cases; ++t) {
        const Series s = tst::random_series(rng, 60 + t % 11);
        bool ok = true;
        for (std::size_t m : {2u, 3u, 4u, 6u, 12u}) {
            std::size_t attainable = s.order();
            for (std::size_t j = 0; j < m; ++j) {
                attainable = std::min(attainable, m * ((s.order() - j) / m) + m - 1);
            }
            Series sum = Series::zero(attainable);
            for (std::size_t j = 0; j < m; ++j) {
                sum = add(sum, shift(truncate(inflate(extract(s, m, j), m), attainable), j));
            }
            ok = ok && sum == truncate(s, attainable);
        }
        o.require(ok, "dissection case " + std::to_string(t));
        dis += ok;
    }
    for (int t = 0; t < cases; ++t) {
        const Series s = tst::random_series(rng, 40);
        const std::size_t m = 1 + static_cast<std::size_t>(t % 9);
        bool ok = extract(inflate(s, m), m, 0) == s;
        for (std::size_t j = 1; j < m; ++j) {
            ok = ok && extract(inflate(s, m), m, j).is_zero();
        }
        o.require(ok, "extract/inflate case " + std::to_string(t));
        adj += ok;
    }
    std::uniform_int_distribution<std::size_t> order(0, 300);
    for (int t = 0; t < cases; ++t) {
        const std::size_t N = order(rng);
        const Series f1 = expand_f(1, N);
        const auto naive = tst::naive_f(1, N);
        bool ok = true;
        for (std::size_t n = 0; n <= N; ++n) {
            ok = ok && coeff(f1, n) == static_cast<long>(naive[n]);
            const std::uint64_t d = 24 * n + 1; // n pentagonal iff 24n+1 is a square
            const std::uint64_t r = isqrt(d);
            ok = ok && ((sgn(coeff(f1, n)) != 0) == (r * r == d));
        }
        o.require(ok, "pentagonal case N=" + std::to_string(N));
        pent += ok;
    }
    for (int t = 0; t < cases; ++t) {
        const auto e = tst::random_ast(rng, 1 + t % 5);
        const bool ok = *parse(format(e)) == *e;
        o.require(ok, "round trip: " + format(e));
        fmt += ok;
    }
    if (o.ok) {
        std::ostringstream ss;
        ss << "ring " << ring << ", invert " << inv << ", dissection " << dis << ", extract/inflate " << adj
           << ", pentagonal " << pent << ", parse/format " << fmt;
        o.detail = ss.str();
    }
    return o;
}

Outcome printed_values() {
    Outcome o;
    o.require(p_oracle(4)[4] == 5, "p(4) != 5");
    o.require(overp_oracle(4)[4] == 14, "overp(4) != 14");
    o.require(coeff(evaluate("f2/f1^2", 4), 4) == 14, "f2/f1^2 coefficient of q^4 != 14");
    const std::set<std::size_t> pattern{0, 1, 5, 8, 16, 21, 33, 40, 56, 65, 85};
    const Series g = evaluate("f2^2*f3*f12/(f1*f4*f6)", 85);
    for (std::size_t n = 0; n <= 85; ++n) {
        o.require(coeff(g, n) == (pattern.count(n) ? 1 : 0), "G(q) differs at q^" + std::to_string(n));
    }
    if (o.ok) {
        o.detail = "p(4)=5, overp(4)=14, G(q) through q^85";
    }
    return o;
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
    const std::string cmd = std::string("\"") + QSERIES_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_black_box() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / ("qseries-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string corpus = QSERIES_CORPUS_DIR "/identities.corpus";

    const int shipped = run_cli("verify --corpus \"" + corpus + "\"", dir / "shipped.out");
    o.require(shipped == 0, "shipped corpus exit " + std::to_string(shipped));

    std::filesystem::copy_file(corpus, dir / "false.corpus", std::filesystem::copy_options::overwrite_existing);
    {
        std::ofstream f(dir / "false.corpus", std::ios::app);
        f << "\n[entry]\nname = \"injected-false\"\nkind = \"equality\"\nlhs = \"f1\"\nrhs = \"f2\"\norder = 10\n";
    }
    const int injected = run_cli("verify --corpus \"" + (dir / "false.corpus").string() + "\"", dir / "false.out");
    o.require(injected == 1, "injected corpus exit " + std::to_string(injected));
    const std::string out = slurp(dir / "false.out");
    o.require(out.find("injected-false\tFAIL\t10\t1\t-1\t0\n") != std::string::npos, "missing minimal-index FAIL record");
    std::filesystem::remove_all(dir);
    if (o.ok) {
        o.detail = "shipped exit 0; injected f1 = f2 exit 1, FAIL at index 1";
    }
    return o;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "a(n) series vs both oracles, n <= 300", 1.0, oracle_agreement},
        {"AC2", "2-dissections of f3/f1 and 1/f1^2 to order 500, < 5 s each", 10.0,
         [] {
             return timed_identities(
                 {{"dissect2-f3-over-f1", "f3/f1", "f4*f6*f16*f24^2/(f2^2*f8*f12*f48) + q*f6*f8^2*f48/(f2^2*f16*f24)", 500, 5.0},
                  {"dissect2-inv-f1-squared", "1/f1^2", "f8^5/(f2^5*f16^2) + 2q*f4^2*f16^2/(f2^5*f8)", 500, 5.0}});
         }},
        {"AC3", "a(4n+2), a(4n+3) product forms to order 300, < 10 s each", 20.0,
         [] {
             return timed_identities(
                 {{"a4n2-product", "extract(f3/(f1*f6), 4, 2)", "2*f2*f6^2*f8^2/(f1^4*f3*f12)", 300, 10.0},
                  {"a4n3-product", "extract(f3/(f1*f6), 4, 3)", "2*f2^4*f8^2*f12/(f1^5*f4^2*f6)", 300, 10.0}});
         }},
        {"AC4", "a(4n+2), a(4n+3) five-term forms as printed, to order 150, < 30 s each", 60.0,
         [] {
             return timed_identities({{"a4n2-five-term", "extract(f3/(f1*f6), 4, 2)", five_term_4n2_printed, 150, 30.0},
                                      {"a4n3-five-term", "extract(f3/(f1*f6), 4, 3)", five_term_4n3_printed, 150, 30.0}});
         }},
        {"AC5", "a(4n+2), a(4n+3) even for 4n+3 <= 2000", 2.0, progressions_even},
        {"AC6", "G(q) to order 1000 has 0/1 coefficients on {3k^2+2k}", 2.0, theta_support},
        {"AC7", "f_{ap}^b = f_a^{bp} mod p, p in {2,3,5}, a <= 4, b <= 3", 10.0, frobenius_grid},
        {"AC8", "a(n) = sum p(k) g(n-12k) mod 2, n <= 1000", 1.0,
         [] { return identities({check_convolution(1000, "convolution")}); }},
        {"AC9", "g empty on 4N+2, 4N+3 to 1e5; (3k+1)^2 mod 4 in {0,1}", 1.0, empty_support},
        {"AC10", "property suites, 100 randomized cases each", 60.0, property_suites},
        {"AC11", "printed scalar values", 1.0, printed_values},
        {"AC12", "CLI verify exit codes", 30.0, cli_black_box},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.time_limit_s) {
            o.ok = false;
            o.detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(c.time_limit_s) + " s";
        }
        failed += !o.ok;
        std::printf("[%s] %-4s %s (%.3f s / %.0f s): %s\n", o.ok ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), secs,
                    c.time_limit_s, o.detail.c_str());
    }

    // Not a criterion: the five-term identity for a(4n+2) with f2^5 -> f2 in
    // its q^3 term.
    const Report fixed = equality("a4n2-five-term-corrected", "extract(f3/(f1*f6), 4, 2)", five_term_4n2_corrected, 150);
    std::printf("[info] %s\n", describe(fixed).c_str());

    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
