#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "eta.hpp"
#include "expr.hpp"
#include "series.hpp"

namespace qseries {

/// Evaluates expression trees to truncated series.
///
/// Every call returns a series of exactly the requested order. Nodes that
/// lose precision (extract, inflate, division by q^v) evaluate their
/// children to the higher order they need. An Evaluator caches f_r
/// expansions and is not meant to be shared between threads; the free
/// function evaluate() builds a fresh one per call.
class Evaluator {
public:
    Series operator()(const Expr& e, std::size_t order) { return eval(e, order); }

    Series eval(const Expr& e, std::size_t order) {
        return std::visit([&](const auto& x) { return eval_node(x, order); }, e.node);
    }

    const Series& eta(std::size_t r, std::size_t order) {
        auto key = std::make_pair(r, order);
        auto it = eta_cache_.find(key);
        if (it == eta_cache_.end()) {
            it = eta_cache_.emplace(key, expand_f(r, order)).first;
        }
        return it->second;
    }

private:
    std::map<std::pair<std::size_t, std::size_t>, Series> eta_cache_;

    Series eval_node(const IntLiteral& x, std::size_t n) { return Series::constant(x.value, n); }

    Series eval_node(const QPower& x, std::size_t n) { return Series::monomial(x.exponent, n); }

    Series eval_node(const FAtom& x, std::size_t n) { return eta(x.r, n); }

    Series eval_node(const Neg& x, std::size_t n) { return neg(eval(*x.operand, n)); }

    Series eval_node(const Binary& x, std::size_t n) {
        switch (x.op) {
        case BinaryOp::add: return add(eval(*x.lhs, n), eval(*x.rhs, n));
        case BinaryOp::sub: return sub(eval(*x.lhs, n), eval(*x.rhs, n));
        case BinaryOp::mul: return mul(eval(*x.lhs, n), eval(*x.rhs, n));
        case BinaryOp::div: break;
        }
        return quotient([&](std::size_t m) { return eval(*x.lhs, m); }, *x.rhs, 1, n);
    }

    Series eval_node(const Pow& x, std::size_t n) {
        if (x.exponent >= 0) {
            return pow(eval(*x.base, n), x.exponent);
        }
        return quotient([](std::size_t m) { return Series::one(m); }, *x.base, -x.exponent, n);
    }

    Series eval_node(const Extract& x, std::size_t n) {
        return extract(eval(*x.child, x.m * n + x.j), x.m, x.j);
    }

    Series eval_node(const Inflate& x, std::size_t n) {
        return truncate(inflate(eval(*x.child, n / x.m), x.m), n);
    }

    Series eval_node(const ModRed& x, std::size_t n) { return reduce_mod(eval(*x.child, n), x.modulus); }

    // Collects the multiplicative factors of a denominator, so that
    // 1/(f1^4 f3 f12) becomes six successive divisions by sparse series.
    static void flatten(const Expr& e, long multiplicity, std::vector<std::pair<const Expr*, long>>& out) {
        if (const auto* b = std::get_if<Binary>(&e.node); b && b->op == BinaryOp::mul) {
            flatten(*b->lhs, multiplicity, out);
            flatten(*b->rhs, multiplicity, out);
            return;
        }
        if (const auto* p = std::get_if<Pow>(&e.node); p && p->exponent > 0) {
            flatten(*p->base, multiplicity * p->exponent, out);
            return;
        }
        out.emplace_back(&e, multiplicity);
    }

    // numerator(m) / denominator^multiplicity, to order n.
    Series quotient(const std::function<Series(std::size_t)>& numerator, const Expr& denominator, long multiplicity,
                    std::size_t n) {
        std::vector<std::pair<const Expr*, long>> factors;
        flatten(denominator, multiplicity, factors);
        std::vector<std::pair<Series, long>> values;
        bool all_units = true;
        for (const auto& [f, k] : factors) {
            Series s = eval(*f, n);
            all_units = all_units && detail::is_unit(s.coeffs()[0]);
            values.emplace_back(std::move(s), k);
        }
        if (all_units) {
            Series result = numerator(n);
            for (const auto& [s, k] : values) {
                for (long i = 0; i < k; ++i) {
                    result = divide(result, s);
                }
            }
            return result;
        }

        Series den = pow(eval(denominator, n), multiplicity);
        auto v = den.valuation();
        if (!v) {
            // Vanishes through order n; look further before giving up.
            const std::size_t probe = 2 * n + 64;
            v = pow(eval(denominator, probe), multiplicity).valuation();
            if (!v) {
                throw not_a_unit("division by a series that vanishes to order " + std::to_string(probe));
            }
        }
        if (*v == 0) {
            return divide(numerator(n), den);
        }
        // den = q^v * unit-ish; cancel q^v against the numerator.
        const std::size_t need = n + *v;
        den = pow(eval(denominator, need), multiplicity);
        Series num = numerator(need);
        const auto vn = num.valuation();
        if (vn && *vn < *v) {
            throw negative_valuation("quotient needs q^" + std::to_string(static_cast<long>(*vn) - static_cast<long>(*v)));
        }
        return divide(drop_low(num, *v), drop_low(den, *v));
    }

    static Series drop_low(const Series& s, std::size_t v) {
        auto c = s.coeffs();
        return Series(std::vector<integer>(c.begin() + static_cast<std::ptrdiff_t>(v), c.end()));
    }
};

inline Series evaluate(const Expr& e, std::size_t order) { return Evaluator{}(e, order); }

inline Series evaluate(const ExprPtr& e, std::size_t order) { return evaluate(*e, order); }

inline Series evaluate(std::string_view text, std::size_t order) { return evaluate(*parse(text), order); }

} // namespace qseries
