#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "series.hpp"

namespace qseries {

/// f_1 = prod_{i>=1} (1 - q^i) to order N via Euler's pentagonal number
/// theorem: sum_k (-1)^k q^{k(3k-1)/2} over all integers k.
inline Series euler_product(std::size_t order) {
    std::vector<integer> c(order + 1);
    c[0] = 1;
    for (std::size_t k = 1;; ++k) {
        const std::size_t lo = k * (3 * k - 1) / 2;
        if (lo > order) {
            break;
        }
        const int sign = (k % 2 == 0) ? 1 : -1;
        c[lo] = sign;
        const std::size_t hi = k * (3 * k + 1) / 2;
        if (hi <= order) {
            c[hi] = sign;
        }
    }
    return Series(std::move(c));
}

/// f_r = prod_{i>=1} (1 - q^{r i}) to order N.
inline Series expand_f(std::size_t r, std::size_t order) {
    if (r == 0) {
        throw domain_error("f_r needs r >= 1");
    }
    return truncate(inflate(euler_product(order / r), r), order);
}

} // namespace qseries
