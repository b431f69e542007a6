#pragma once

// Finite, coefficientwise verification of identities and congruences.
// A PASS means "agrees up to the checked index", never "proved".

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "eta.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "oracles.hpp"
#include "series.hpp"

namespace qseries {

enum class CheckKind { equality, congruence };

struct IdentityCheck {
    std::string name;
    ExprPtr lhs;
    ExprPtr rhs;
    CheckKind kind = CheckKind::equality;
    std::optional<integer> modulus; // present iff kind == congruence
    std::size_t order = 500;
};

struct Mismatch {
    std::int64_t index;
    integer lhs;
    integer rhs;
};

enum class Verdict { pass, fail };

struct Report {
    std::string name;
    Verdict verdict = Verdict::pass;
    std::int64_t checked_up_to = -1; // -1 when nothing was compared
    std::optional<Mismatch> first_mismatch;

    bool passed() const noexcept { return verdict == Verdict::pass; }
};

inline std::string_view to_string(Verdict v) { return v == Verdict::pass ? "PASS" : "FAIL"; }

/// `name \t verdict \t checked_up_to \t mismatch_index \t lhs \t rhs`, the
/// last three empty on PASS.
inline std::string to_record(const Report& r) {
    std::string out = r.name;
    out += '\t';
    out += to_string(r.verdict);
    out += '\t' + std::to_string(r.checked_up_to) + '\t';
    if (r.first_mismatch) {
        out += std::to_string(r.first_mismatch->index) + '\t' + r.first_mismatch->lhs.get_str() + '\t' +
               r.first_mismatch->rhs.get_str();
    } else {
        out += "\t\t";
    }
    return out;
}

/// Tags an evaluation failure with the side that raised it.
class check_error : public error {
public:
    check_error(std::string side, const std::exception& cause)
        : error(side + ": " + cause.what()), side_(std::move(side)) {}
    const std::string& side() const noexcept { return side_; }

private:
    std::string side_;
};

namespace detail {

inline Series evaluate_side(const char* side, const Expr& e, std::size_t order) {
    try {
        return evaluate(e, order);
    } catch (const error& ex) {
        throw check_error(side, ex);
    }
}

// Scans 0..min order for the first differing coefficient.
inline Report compare(std::string name, const Series& lhs, const Series& rhs) {
    Report r{std::move(name)};
    const std::size_t n = std::min(lhs.order(), rhs.order());
    r.checked_up_to = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (lhs.coeffs()[i] != rhs.coeffs()[i]) {
            r.verdict = Verdict::fail;
            r.first_mismatch = Mismatch{static_cast<std::int64_t>(i), lhs.coeffs()[i], rhs.coeffs()[i]};
            break;
        }
    }
    return r;
}

} // namespace detail

inline Report check_identity(const IdentityCheck& c) {
    if ((c.kind == CheckKind::congruence) != c.modulus.has_value()) {
        throw domain_error(c.name + ": a modulus is required exactly for congruence checks");
    }
    Series lhs = detail::evaluate_side("lhs", *c.lhs, c.order);
    Series rhs = detail::evaluate_side("rhs", *c.rhs, c.order);
    if (c.kind == CheckKind::congruence) {
        lhs = reduce_mod(lhs, *c.modulus);
        rhs = reduce_mod(rhs, *c.modulus);
    }
    return detail::compare(c.name, lhs, rhs);
}

/// coeff(m n + j) == 0 (mod `modulus`) for every n with m n + j <= n_max.
/// Mismatches are indexed by n and report the residue against 0.
inline Report check_congruence_progression(const Expr& base, std::size_t m, std::size_t j, const integer& modulus,
                                           std::size_t n_max, std::string name = "progression") {
    if (m == 0 || j >= m) {
        throw domain_error("progression needs 0 <= j < m");
    }
    if (modulus < 2) {
        throw domain_error("modulus must be at least 2");
    }
    Report r{std::move(name)};
    if (j > n_max) {
        return r;
    }
    const Series s = reduce_mod(extract(detail::evaluate_side("base", base, n_max), m, j), modulus);
    r.checked_up_to = static_cast<std::int64_t>(s.order());
    for (std::size_t n = 0; n <= s.order(); ++n) {
        if (sgn(s.coeffs()[n]) != 0) {
            r.verdict = Verdict::fail;
            r.first_mismatch = Mismatch{static_cast<std::int64_t>(n), s.coeffs()[n], 0};
            break;
        }
    }
    return r;
}

/// Deterministic trial division.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// f_{a p}^b against f_a^{b p}, both reduced mod `modulus`. check_frobenius
/// uses modulus = p; other moduli are for exploring where it breaks.
inline Report compare_frobenius(std::size_t p, std::size_t a, std::size_t b, std::size_t order, const integer& modulus,
                                std::string name = "frobenius") {
    if (a == 0 || b == 0) {
        throw domain_error("frobenius check needs a >= 1 and b >= 1");
    }
    const Series lhs = reduce_mod(pow(expand_f(a * p, order), static_cast<long>(b)), modulus);
    const Series rhs = reduce_mod(pow(expand_f(a, order), static_cast<long>(b * p)), modulus);
    return detail::compare(std::move(name), lhs, rhs);
}

inline Report check_frobenius(std::size_t p, std::size_t a, std::size_t b, std::size_t order,
                              std::string name = "frobenius") {
    if (!is_prime(p)) {
        throw not_prime(std::to_string(p) + " is not prime");
    }
    return compare_frobenius(p, a, b, order, integer(static_cast<unsigned long>(p)), std::move(name));
}

/// a(n) against sum_k p(k) g(n - 12k), both mod 2, for n <= n_max.
inline Report check_convolution(std::size_t n_max, std::string name = "convolution") {
    const OracleTable a = a_oracle(n_max, ADefinition::mod6);
    const OracleTable p = p_oracle(n_max / 12);
    const OracleTable g = g_oracle(n_max);
    Report r{std::move(name)};
    r.checked_up_to = static_cast<std::int64_t>(n_max);
    for (std::size_t n = 0; n <= n_max; ++n) {
        integer sum = 0;
        for (std::size_t k = 0; 12 * k <= n; ++k) {
            if (sgn(g[n - 12 * k]) != 0) {
                sum += p[k];
            }
        }
        const int lhs = mpz_odd_p(a[n].get_mpz_t()) ? 1 : 0;
        const int rhs = mpz_odd_p(sum.get_mpz_t()) ? 1 : 0;
        if (lhs != rhs) {
            r.verdict = Verdict::fail;
            r.first_mismatch = Mismatch{static_cast<std::int64_t>(n), lhs, rhs};
            break;
        }
    }
    return r;
}

/// g(n) == 0 for every n <= n_max with n = j (mod m). Indexed by n itself.
inline Report check_empty_support(std::size_t m, std::size_t j, std::size_t n_max, std::string name = "empty-support") {
    if (m == 0 || j >= m) {
        throw domain_error("empty-support check needs 0 <= j < m");
    }
    const OracleTable g = g_oracle(n_max);
    Report r{std::move(name)};
    for (std::size_t n = j; n <= n_max; n += m) {
        r.checked_up_to = static_cast<std::int64_t>(n);
        if (sgn(g[n]) != 0) {
            r.verdict = Verdict::fail;
            r.first_mismatch = Mismatch{static_cast<std::int64_t>(n), g[n], 0};
            break;
        }
    }
    return r;
}

/// Series coefficients of `expr` against an oracle table, for n <= order.
inline Report check_oracle_match(const Expr& expr, OracleKind kind, std::size_t order, std::string name = "oracle") {
    const Series s = detail::evaluate_side("lhs", expr, order);
    const OracleTable t = make_oracle(kind, order);
    return detail::compare(std::move(name), s, Series(t.values()));
}

} // namespace qseries
