#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>

#include "ehi/types.hpp"

namespace ehi {

// Evaluatable complex-valued function on (C*)^n; the universal currency
// passed to operators and integrators.  Evaluators must be pure: handles are
// shared by value and may be evaluated concurrently.  BC_n symmetry of the
// built-in constructors is a tested property, not a structural guarantee.
//
// quad_depth counts the nested quadratures one evaluation triggers; operator
// application caps the total at 2.
struct FunctionHandle {
    int arity = 0;
    int quad_depth = 0;
    std::function<cx(std::span<const cx>)> f;
    std::string tag;

    cx operator()(std::span<const cx> z) const { return f(z); }
    cx operator()(std::initializer_list<cx> z) const {
        return f(std::span<const cx>(z.begin(), z.size()));
    }
};

inline FunctionHandle constant_one(int n) {
    return {n, 0, [](std::span<const cx>) { return cx(1.0); }, "1"};
}

inline FunctionHandle pointwise_product(const FunctionHandle& a, const FunctionHandle& b) {
    if (a.arity != b.arity)
        throw std::domain_error("pointwise_product: arity mismatch");
    return {a.arity, std::max(a.quad_depth, b.quad_depth),
            [a, b](std::span<const cx> z) { return a(z) * b(z); },
            a.tag + "*" + b.tag};
}

} // namespace ehi
