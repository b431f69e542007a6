#pragma once

// Test-only oracles, deliberately naive and independent of the library's
// fast paths: term-by-term products and exhaustive partition enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace qseries::testing {

/// prod_{i=1..N} (1 - q^{r i}) multiplied out factor by factor, to order N.
inline std::vector<std::int64_t> naive_f(std::size_t r, std::size_t order) {
    std::vector<std::int64_t> c(order + 1);
    c[0] = 1;
    for (std::size_t i = 1; r * i <= order; ++i) {
        const std::size_t step = r * i;
        for (std::size_t n = order; n >= step; --n) {
            c[n] -= c[n - step];
        }
    }
    return c;
}

/// Calls `visit` with every partition of n as a non-increasing part list.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> parts;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t max_part) {
        if (remaining == 0) {
            visit(parts);
            return;
        }
        for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            rec(remaining - p, p);
            parts.pop_back();
        }
    };
    rec(n, n);
}

inline std::uint64_t count_partitions(std::size_t n) {
    std::uint64_t count = 0;
    for_each_partition(n, [&](const auto&) { ++count; });
    return count;
}

/// Each distinct part size may have its first occurrence overlined.
inline std::uint64_t count_overpartitions(std::size_t n) {
    std::uint64_t count = 0;
    for_each_partition(n, [&](const std::vector<std::size_t>& parts) {
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i == 0 || parts[i] != parts[i - 1]) {
                ++distinct;
            }
        }
        count += std::uint64_t{1} << distinct;
    });
    return count;
}

inline std::uint64_t count_no_part_3_mod_6(std::size_t n) {
    std::uint64_t count = 0;
    for_each_partition(n, [&](const std::vector<std::size_t>& parts) {
        for (auto p : parts) {
            if (p % 6 == 3) {
                return;
            }
        }
        ++count;
    });
    return count;
}

inline std::uint64_t count_odd_parts_at_most_twice(std::size_t n) {
    std::uint64_t count = 0;
    for_each_partition(n, [&](const std::vector<std::size_t>& parts) {
        std::map<std::size_t, std::size_t> mult;
        for (auto p : parts) {
            if (p % 2 == 1 && ++mult[p] > 2) {
                return;
            }
        }
        ++count;
    });
    return count;
}

/// {3k^2 + 2k : k in Z} intersected with [0, limit], by scanning k.
inline std::vector<bool> theta_support_by_scan(std::int64_t limit) {
    std::vector<bool> hit(static_cast<std::size_t>(limit) + 1);
    // |3k^2 + 2k| >= k^2, so |k| <= sqrt(limit) + 1 covers the range.
    std::int64_t bound = 1;
    while (bound * bound <= limit) {
        ++bound;
    }
    for (std::int64_t k = -bound; k <= bound; ++k) {
        const std::int64_t e = 3 * k * k + 2 * k;
        if (e >= 0 && e <= limit) {
            hit[static_cast<std::size_t>(e)] = true;
        }
    }
    return hit;
}

} // namespace qseries::testing
