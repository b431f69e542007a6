#pragma once

// Truncated formal power series in q over the integers.
//
// A Series holds the coefficients of q^0 .. q^order. Anything past `order` is
// unknown, never zero: binary operations truncate to the smaller order and
// reading beyond the order throws.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace qseries {

using integer = mpz_class;

class Series {
public:
    /// The constant series 0 known to order 0.
    Series() : coeffs_(1) {}

    /// Coefficients c[0..n]; the order is n. An empty vector is rejected.
    explicit Series(std::vector<integer> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw domain_error("a series needs at least the constant coefficient");
        }
    }

    Series(std::initializer_list<long> coeffs) {
        if (coeffs.size() == 0) {
            throw domain_error("a series needs at least the constant coefficient");
        }
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) {
            coeffs_.emplace_back(c);
        }
    }

    static Series zero(std::size_t order) { return Series(std::vector<integer>(order + 1)); }

    static Series constant(const integer& c, std::size_t order) {
        std::vector<integer> v(order + 1);
        v[0] = c;
        return Series(std::move(v));
    }

    static Series one(std::size_t order) { return constant(1, order); }

    /// c * q^k to the given order (zero if k > order).
    static Series monomial(std::size_t k, std::size_t order, const integer& c = 1) {
        std::vector<integer> v(order + 1);
        if (k <= order) {
            v[k] = c;
        }
        return Series(std::move(v));
    }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }

    const integer& coeff(std::size_t n) const {
        if (n > order()) {
            throw out_of_range("coefficient of q^" + std::to_string(n) +
                               " is unknown beyond truncation order " + std::to_string(order()));
        }
        return coeffs_[n];
    }

    const integer& operator[](std::size_t n) const { return coeff(n); }

    std::span<const integer> coeffs() const noexcept { return coeffs_; }

    /// Index of the first nonzero coefficient, or nullopt if zero to the order.
    std::optional<std::size_t> valuation() const {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (sgn(coeffs_[i]) != 0) {
                return i;
            }
        }
        return std::nullopt;
    }

    bool is_zero() const { return !valuation().has_value(); }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(
            std::count_if(coeffs_.begin(), coeffs_.end(), [](const integer& c) { return sgn(c) != 0; }));
    }

    friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<integer> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Series& s) {
    bool first = true;
    for (std::size_t i = 0; i <= s.order(); ++i) {
        const integer& c = s.coeffs()[i];
        if (sgn(c) == 0) {
            continue;
        }
        if (!first) {
            os << (sgn(c) < 0 ? " - " : " + ");
        } else if (sgn(c) < 0) {
            os << "-";
        }
        integer mag = abs(c);
        if (i == 0 || mag != 1) {
            os << mag;
        }
        if (i > 0) {
            os << "q";
            if (i > 1) {
                os << "^" << i;
            }
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os << " + O(q^" << s.order() + 1 << ")";
}

/// Drop coefficients past `order`. Requesting more than is known throws.
inline Series truncate(const Series& a, std::size_t order) {
    if (order > a.order()) {
        throw out_of_range("cannot extend a series known to order " + std::to_string(a.order()) +
                           " to order " + std::to_string(order));
    }
    auto c = a.coeffs();
    return Series(std::vector<integer>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(order) + 1));
}

inline Series add(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<integer> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = a.coeffs()[i] + b.coeffs()[i];
    }
    return Series(std::move(out));
}

inline Series sub(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<integer> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = a.coeffs()[i] - b.coeffs()[i];
    }
    return Series(std::move(out));
}

inline Series neg(const Series& a) {
    std::vector<integer> out(a.coeffs().begin(), a.coeffs().end());
    for (auto& c : out) {
        c = -c;
    }
    return Series(std::move(out));
}

inline Series scale(const Series& a, const integer& k) {
    std::vector<integer> out(a.coeffs().begin(), a.coeffs().end());
    for (auto& c : out) {
        c *= k;
    }
    return Series(std::move(out));
}

namespace detail {

struct sparse_term {
    std::size_t index;
    const integer* value;
};

inline std::vector<sparse_term> nonzero_terms(const Series& s, std::size_t limit) {
    std::vector<sparse_term> out;
    for (std::size_t i = 0; i <= limit; ++i) {
        if (sgn(s.coeffs()[i]) != 0) {
            out.push_back({i, &s.coeffs()[i]});
        }
    }
    return out;
}

inline bool is_unit(const integer& c) { return c == 1 || c == -1; }

} // namespace detail

/// Cauchy product truncated to min(a.order, b.order). Zero coefficients of
/// the sparser operand are skipped, which makes products with f_r cheap.
inline Series mul(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    const Series* sparse = &a;
    const Series* dense = &b;
    auto ta = detail::nonzero_terms(a, n);
    auto tb = detail::nonzero_terms(b, n);
    if (tb.size() < ta.size()) {
        std::swap(ta, tb);
        std::swap(sparse, dense);
    }
    std::vector<integer> out(n + 1);
    for (const auto& s : ta) {
        for (const auto& d : tb) {
            if (s.index + d.index > n) {
                break;
            }
            mpz_addmul(out[s.index + d.index].get_mpz_t(), s.value->get_mpz_t(), d.value->get_mpz_t());
        }
    }
    return Series(std::move(out));
}

/// Solve b * d = a for d, to order min(a.order, b.order). The constant term of
/// b must be nonzero and every quotient step must divide exactly.
inline Series divide(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    const integer& lead = b.coeffs()[0];
    if (sgn(lead) == 0) {
        throw not_a_unit("division by a series with zero constant term");
    }
    const bool unit = detail::is_unit(lead);
    auto tb = detail::nonzero_terms(b, n);
    std::vector<integer> d(n + 1);
    integer acc;
    for (std::size_t i = 0; i <= n; ++i) {
        acc = a.coeffs()[i];
        for (std::size_t t = 1; t < tb.size() && tb[t].index <= i; ++t) {
            mpz_submul(acc.get_mpz_t(), tb[t].value->get_mpz_t(), d[i - tb[t].index].get_mpz_t());
        }
        if (unit) {
            d[i] = lead == 1 ? acc : integer(-acc);
        } else {
            if (!mpz_divisible_p(acc.get_mpz_t(), lead.get_mpz_t())) {
                throw non_exact_division("quotient coefficient of q^" + std::to_string(i) +
                                         " is not an integer");
            }
            mpz_divexact(d[i].get_mpz_t(), acc.get_mpz_t(), lead.get_mpz_t());
        }
    }
    return Series(std::move(d));
}

/// Reciprocal series. The constant term must be +1 or -1 so the result stays
/// over the integers.
inline Series invert(const Series& a) {
    if (!detail::is_unit(a.coeffs()[0])) {
        throw not_a_unit("constant term " + a.coeffs()[0].get_str() + " is not +1 or -1");
    }
    return divide(Series::one(a.order()), a);
}

/// a^k for any integer k; negative k requires a unit constant term.
inline Series pow(const Series& a, long k) {
    if (k < 0) {
        return pow(invert(a), -k);
    }
    Series result = Series::one(a.order());
    if (k == 0) {
        return result;
    }
    // A sparse base (e.g. a single f_r) is cheaper to multiply in repeatedly
    // than to square, because each step only touches its nonzero terms.
    const std::size_t nz = a.nonzero_count();
    if (nz * 8 <= a.order() + 1) {
        for (long i = 0; i < k; ++i) {
            result = mul(result, a);
        }
        return result;
    }
    Series base = a;
    unsigned long e = static_cast<unsigned long>(k);
    while (true) {
        if (e & 1U) {
            result = mul(result, base);
        }
        e >>= 1U;
        if (e == 0) {
            break;
        }
        base = mul(base, base);
    }
    return result;
}

/// Multiply by q^s, keeping the order.
inline Series shift(const Series& a, std::size_t s) {
    std::vector<integer> out(a.order() + 1);
    for (std::size_t i = s; i <= a.order(); ++i) {
        out[i] = a.coeffs()[i - s];
    }
    return Series(std::move(out));
}

/// Substitute q -> q^m. The coefficients between m*order and
/// m*(order+1) are known zeros, so the result order is m*order + m - 1.
inline Series inflate(const Series& a, std::size_t m) {
    if (m == 0) {
        throw domain_error("inflate factor must be positive");
    }
    std::vector<integer> out(m * a.order() + m);
    for (std::size_t i = 0; i <= a.order(); ++i) {
        out[i * m] = a.coeffs()[i];
    }
    return Series(std::move(out));
}

/// sum c(n) q^n -> sum c(m n + j) q^n, order floor((order - j) / m).
inline Series extract(const Series& a, std::size_t m, std::size_t j) {
    if (m == 0) {
        throw domain_error("extract modulus must be positive");
    }
    if (j >= m) {
        throw domain_error("extract residue " + std::to_string(j) + " must be below " + std::to_string(m));
    }
    if (j > a.order()) {
        throw out_of_range("residue " + std::to_string(j) + " lies beyond truncation order " +
                           std::to_string(a.order()));
    }
    const std::size_t n = (a.order() - j) / m;
    std::vector<integer> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = a.coeffs()[m * i + j];
    }
    return Series(std::move(out));
}

/// Least non-negative residues mod `modulus`.
inline Series reduce_mod(const Series& a, const integer& modulus) {
    if (modulus < 2) {
        throw domain_error("modulus must be at least 2");
    }
    std::vector<integer> out(a.order() + 1);
    for (std::size_t i = 0; i <= a.order(); ++i) {
        mpz_fdiv_r(out[i].get_mpz_t(), a.coeffs()[i].get_mpz_t(), modulus.get_mpz_t());
    }
    return Series(std::move(out));
}

inline const integer& coeff(const Series& a, std::size_t n) { return a.coeff(n); }

} // namespace qseries
