// qseries: expand eta-quotients, print oracle tables, and verify the
// identity corpus.
//
// Exit codes: 0 success / all PASS, 1 some check FAILed, 2 usage, parse or
// evaluation error.

#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qseries/qseries.hpp>

namespace {

constexpr int exit_fail = 1;
constexpr int exit_error = 2;

void print_series(const qseries::Series& s) {
    for (std::size_t n = 0; n <= s.order(); ++n) {
        std::cout << n << '\t' << s.coeffs()[n] << '\n';
    }
}

qseries::Series expand(const std::string& text, std::size_t order, std::optional<std::size_t> mod) {
    qseries::Series s = qseries::evaluate(text, order);
    if (mod) {
        s = qseries::reduce_mod(s, qseries::integer(static_cast<unsigned long>(*mod)));
    }
    return s;
}

int run_verify(const std::string& path, const std::string& only, qseries::RunOptions opt, unsigned threads) {
    const qseries::Corpus corpus = qseries::load_corpus(path);
    std::vector<const qseries::CorpusEntry*> selected;
    for (const auto& e : corpus.entries) {
        if (only.empty() || e.name == only) {
            selected.push_back(&e);
        }
    }
    if (selected.empty()) {
        std::cerr << "qseries: no corpus entry named '" << only << "'\n";
        return exit_error;
    }
    const auto outcomes = qseries::run_corpus(selected, opt, threads);
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errored = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (const auto* r = std::get_if<qseries::Report>(&outcomes[i].result)) {
            std::cout << qseries::to_record(*r) << '\n';
            (r->passed() ? passed : failed)++;
        } else {
            std::cout << selected[i]->name << "\tERROR\t\t\t\t\n";
            std::cerr << "qseries: " << selected[i]->name << ": " << std::get<std::string>(outcomes[i].result) << '\n';
            ++errored;
        }
    }
    std::cerr << passed << " passed, " << failed << " failed, " << errored << " errors\n";
    if (errored > 0) {
        return exit_error;
    }
    return failed > 0 ? exit_fail : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-series engine for eta-quotient identities"};
    app.require_subcommand(1);

    std::string expr_text;
    std::size_t order = qseries::default_order;
    std::optional<std::size_t> mod;

    auto* expand_cmd = app.add_subcommand("expand", "Print n<TAB>coefficient for n = 0..order");
    expand_cmd->add_option("expr", expr_text, "Expression, e.g. \"f3/(f1*f6)\"")->required();
    expand_cmd->add_option("--order", order, "Truncation order")->capture_default_str();
    expand_cmd->add_option("--mod", mod, "Reduce coefficients modulo M")->check(CLI::Range(std::size_t{2}, SIZE_MAX));

    std::string oracle_kind;
    std::size_t nmax = qseries::default_nmax;
    auto* oracle_cmd = app.add_subcommand("oracle", "Print n<TAB>value of a combinatorial oracle");
    oracle_cmd->add_option("kind", oracle_kind, "p, overp, a (= a-mod6), a-oddtwice or g")->required();
    oracle_cmd->add_option("nmax,--nmax", nmax, "Largest n");

    std::string corpus_path = QSERIES_DEFAULT_CORPUS;
    std::string only;
    std::optional<std::size_t> order_override;
    std::optional<std::size_t> nmax_override;
    unsigned threads = std::thread::hardware_concurrency();
    auto* verify_cmd = app.add_subcommand("verify", "Run the identity corpus");
    verify_cmd->add_option("--corpus", corpus_path, "Corpus file")->capture_default_str();
    verify_cmd->add_option("--only", only, "Run only the entry with this name");
    verify_cmd->add_option("--order", order_override, "Override every entry's order");
    verify_cmd->add_option("--nmax", nmax_override, "Override every entry's nmax");
    verify_cmd->add_option("--threads", threads, "Worker threads");

    std::size_t m = 1;
    std::size_t j = 0;
    std::size_t modulus = 2;
    auto* scan_cmd = app.add_subcommand("scan", "Check coeff(m n + j) = 0 mod M for every residue j");
    scan_cmd->add_option("expr", expr_text, "Base expression")->required();
    scan_cmd->add_option("m", m, "Progression modulus")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--mod", modulus, "Coefficient modulus")->check(CLI::Range(std::size_t{2}, SIZE_MAX));
    scan_cmd->add_option("--nmax", nmax, "Largest raw index m n + j")->capture_default_str();

    auto* dissect_cmd = app.add_subcommand("dissect", "Print the coefficients of extract(expr, m, j)");
    dissect_cmd->add_option("expr", expr_text, "Base expression")->required();
    dissect_cmd->add_option("m", m, "Dissection modulus")->required()->check(CLI::PositiveNumber);
    dissect_cmd->add_option("j", j, "Residue")->required();
    dissect_cmd->add_option("--order", order, "Order of the dissected series")->capture_default_str();
    dissect_cmd->add_option("--mod", mod, "Reduce coefficients modulo M")->check(CLI::Range(std::size_t{2}, SIZE_MAX));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (*expand_cmd) {
            print_series(expand(expr_text, order, mod));
        } else if (*oracle_cmd) {
            const auto table = qseries::make_oracle(qseries::parse_oracle_kind(oracle_kind), nmax);
            for (std::size_t n = 0; n <= table.limit(); ++n) {
                std::cout << n << '\t' << table[n] << '\n';
            }
        } else if (*verify_cmd) {
            return run_verify(corpus_path, only, {order_override, nmax_override}, threads);
        } else if (*scan_cmd) {
            const qseries::ExprPtr base = qseries::parse(expr_text);
            const qseries::integer M(static_cast<unsigned long>(modulus));
            for (std::size_t r = 0; r < m; ++r) {
                std::cout << qseries::to_record(qseries::check_congruence_progression(
                                 *base, m, r, M, nmax, "j=" + std::to_string(r)))
                          << '\n';
            }
        } else if (*dissect_cmd) {
            if (j >= m) {
                throw qseries::domain_error("residue j must satisfy 0 <= j < m");
            }
            const qseries::ExprPtr e = qseries::ast::extract(qseries::parse(expr_text), m, j);
            qseries::Series s = qseries::evaluate(*e, order);
            if (mod) {
                s = qseries::reduce_mod(s, qseries::integer(static_cast<unsigned long>(*mod)));
            }
            print_series(s);
        }
    } catch (const qseries::error& e) {
        std::cerr << "qseries: " << e.what() << '\n';
        return exit_error;
    }
    return 0;
}
