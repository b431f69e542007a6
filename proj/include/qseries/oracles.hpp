#pragma once

// Combinatorial ground truth computed by counting dynamic programs, with no
// series machinery involved.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace qseries {

enum class OracleKind {
    partitions,     // p(n)
    overpartitions, // overlined p(n)
    a_mod6,         // no part congruent to 3 mod 6
    a_oddtwice,     // odd parts repeated at most twice
    theta,          // g(n): 1 iff n = 3k^2 + 2k for some integer k
};

inline std::string_view to_string(OracleKind k) {
    switch (k) {
    case OracleKind::partitions: return "p";
    case OracleKind::overpartitions: return "overp";
    case OracleKind::a_mod6: return "a";
    case OracleKind::a_oddtwice: return "a-oddtwice";
    case OracleKind::theta: return "g";
    }
    return "?";
}

/// Accepts the CLI/corpus spellings: p, overp, a (= a-mod6), a-mod6, a-oddtwice, g.
inline OracleKind parse_oracle_kind(std::string_view s) {
    if (s == "p") return OracleKind::partitions;
    if (s == "overp") return OracleKind::overpartitions;
    if (s == "a" || s == "a-mod6") return OracleKind::a_mod6;
    if (s == "a-oddtwice") return OracleKind::a_oddtwice;
    if (s == "g") return OracleKind::theta;
    throw domain_error("unknown oracle kind '" + std::string(s) + "' (expected p, overp, a, a-mod6, a-oddtwice or g)");
}

class OracleTable {
public:
    OracleTable(OracleKind kind, std::vector<integer> values) : kind_(kind), values_(std::move(values)) {}

    OracleKind kind() const noexcept { return kind_; }
    std::size_t limit() const noexcept { return values_.size() - 1; }

    const integer& operator[](std::size_t n) const {
        if (n > limit()) {
            throw out_of_range("oracle table computed only up to n = " + std::to_string(limit()));
        }
        return values_[n];
    }

    /// Value at a possibly negative index; negatives are 0.
    integer at_signed(long n) const { return n < 0 ? integer(0) : (*this)[static_cast<std::size_t>(n)]; }

    const std::vector<integer>& values() const noexcept { return values_; }

private:
    OracleKind kind_;
    std::vector<integer> values_;
};

namespace detail {

// Unlimited copies of part size `part`.
inline void allow_part(std::vector<integer>& v, std::size_t part) {
    for (std::size_t n = part; n < v.size(); ++n) {
        v[n] += v[n - part];
    }
}

// At most `cap` copies of part size `part`.
inline void allow_part_capped(std::vector<integer>& v, std::size_t part, std::size_t cap) {
    for (std::size_t n = v.size(); n-- > 0;) {
        for (std::size_t c = 1; c <= cap && c * part <= n; ++c) {
            v[n] += v[n - c * part];
        }
    }
}

} // namespace detail

/// p(n) for n <= n_max by the bounded-part coin-counting recurrence.
inline OracleTable p_oracle(std::size_t n_max) {
    std::vector<integer> v(n_max + 1);
    v[0] = 1;
    for (std::size_t part = 1; part <= n_max; ++part) {
        detail::allow_part(v, part);
    }
    return {OracleKind::partitions, std::move(v)};
}

/// Overpartitions: every part size occurs any number of times, and its first
/// occurrence may be overlined. Each size i multiplies by (1 + q^i)/(1 - q^i).
inline OracleTable overp_oracle(std::size_t n_max) {
    std::vector<integer> v(n_max + 1);
    v[0] = 1;
    for (std::size_t part = 1; part <= n_max; ++part) {
        detail::allow_part(v, part);
        for (std::size_t n = n_max; n >= part; --n) {
            v[n] += v[n - part];
        }
    }
    return {OracleKind::overpartitions, std::move(v)};
}

enum class ADefinition { mod6, oddtwice };

inline OracleTable a_oracle(std::size_t n_max, ADefinition def) {
    std::vector<integer> v(n_max + 1);
    v[0] = 1;
    for (std::size_t part = 1; part <= n_max; ++part) {
        if (def == ADefinition::mod6) {
            if (part % 6 != 3) {
                detail::allow_part(v, part);
            }
        } else if (part % 2 == 0) {
            detail::allow_part(v, part);
        } else {
            detail::allow_part_capped(v, part, 2);
        }
    }
    return {def == ADefinition::mod6 ? OracleKind::a_mod6 : OracleKind::a_oddtwice, std::move(v)};
}

/// floor(sqrt(x)) exactly.
inline std::uint64_t isqrt(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) {
        --r;
    }
    while ((r + 1) * (r + 1) <= x) {
        ++r;
    }
    return r;
}

/// n = 3k^2 + 2k has an integer solution iff 3n + 1 = (3k + 1)^2 is a
/// square; any square root s is prime to 3, so s or -s is 1 mod 3.
inline bool is_theta_exponent(std::uint64_t n) {
    const std::uint64_t t = 3 * n + 1;
    const std::uint64_t s = isqrt(t);
    return s * s == t && (s % 3 == 1 || s % 3 == 2);
}

inline OracleTable g_oracle(std::size_t n_max) {
    std::vector<integer> v(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        v[n] = is_theta_exponent(n) ? 1 : 0;
    }
    return {OracleKind::theta, std::move(v)};
}

inline OracleTable make_oracle(OracleKind kind, std::size_t n_max) {
    switch (kind) {
    case OracleKind::partitions: return p_oracle(n_max);
    case OracleKind::overpartitions: return overp_oracle(n_max);
    case OracleKind::a_mod6: return a_oracle(n_max, ADefinition::mod6);
    case OracleKind::a_oddtwice: return a_oracle(n_max, ADefinition::oddtwice);
    case OracleKind::theta: return g_oracle(n_max);
    }
    throw domain_error("unknown oracle kind");
}

} // namespace qseries
