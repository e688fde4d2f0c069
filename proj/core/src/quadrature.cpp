#include "ehi/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace ehi {

void QuadratureDiag::absorb(const QuadratureDiag& inner) {
    points = std::max(points, inner.points);
    last_delta = std::max(last_delta, inner.last_delta);
    converged = converged && inner.converged;
    evaluations += inner.evaluations;
}

double grid_phase(int axis) {
    constexpr double golden = 0.6180339887498949;
    double x = (axis + 1) * golden + 0.1234567890123456;
    return x - std::floor(x);
}

cx pairwise_sum(std::span<const cx> xs) {
    if (xs.size() <= 4) {
        cx s = 0.0;
        for (cx x : xs)
            s += x;
        return s;
    }
    std::size_t h = xs.size() / 2;
    return pairwise_sum(xs.first(h)) + pairwise_sum(xs.subspan(h));
}

cx torus_mean_fixed(const TorusFn& f, int n, int M, double* mean_abs) {
    if (n == 0) {
        cx v = f({});
        if (mean_abs)
            *mean_abs = std::abs(v);
        return v;
    }
    const double tau = 2.0 * std::numbers::pi;
    std::vector<std::vector<cx>> grid((std::size_t)n);
    for (int a = 0; a < n; ++a) {
        grid[(std::size_t)a].resize((std::size_t)M);
        for (int k = 0; k < M; ++k) {
            double ang = tau * ((double)k / M + grid_phase(a));
            grid[(std::size_t)a][(std::size_t)k] = cx(std::cos(ang), std::sin(ang));
        }
    }
    std::vector<cx> z((std::size_t)n);
    std::vector<int> idx((std::size_t)n, 0);
    // innermost axis accumulates into a row buffer, rows are pairwise-summed
    std::vector<cx> row((std::size_t)M), outer;
    double abs_acc = 0.0;
    std::size_t outer_count = 1;
    for (int a = 0; a + 1 < n; ++a)
        outer_count *= (std::size_t)M;
    outer.reserve(outer_count);
    for (;;) {
        for (int a = 0; a + 1 < n; ++a)
            z[(std::size_t)a] = grid[(std::size_t)a][(std::size_t)idx[(std::size_t)a]];
        for (int k = 0; k < M; ++k) {
            z[(std::size_t)(n - 1)] = grid[(std::size_t)(n - 1)][(std::size_t)k];
            row[(std::size_t)k] = f(z);
            abs_acc += std::abs(row[(std::size_t)k]);
        }
        outer.push_back(pairwise_sum(row));
        int a = n - 2;
        for (; a >= 0; --a) {
            if (++idx[(std::size_t)a] < M)
                break;
            idx[(std::size_t)a] = 0;
        }
        if (a < 0)
            break;
    }
    double norm = 1.0;
    for (int a = 0; a < n; ++a)
        norm *= (double)M;
    if (mean_abs)
        *mean_abs = abs_acc / norm;
    return pairwise_sum(outer) / norm;
}

QuadratureResult torus_integrate(const TorusFn& f, int n, const QuadratureSpec& spec,
                                 bool throw_on_failure) {
    auto t0 = std::chrono::steady_clock::now();
    QuadratureResult res;
    int M = std::max(16, spec.initial_points);
    cx prev = torus_mean_fixed(f, n, M);
    long evals = 1;
    for (int a = 0; a < n; ++a)
        evals *= M;
    if (n == 0) {
        res.value = prev;
        res.diag = {M, 0.0, true, 0.0, (int)evals};
        return res;
    }
    for (;;) {
        int M2 = 2 * M;
        double mean_abs = 0.0;
        cx cur = torus_mean_fixed(f, n, M2, &mean_abs);
        long e2 = 1;
        for (int a = 0; a < n; ++a)
            e2 *= M2;
        evals += e2;
        double scale = std::max({std::abs(cur), std::abs(prev), 0.01 * mean_abs, 1e-300});
        double delta = std::abs(cur - prev) / scale;
        M = M2;
        prev = cur;
        if (delta < spec.tol) {
            res.diag.converged = true;
            res.diag.last_delta = delta;
            break;
        }
        if (2 * M > spec.max_points) {
            res.diag.converged = false;
            res.diag.last_delta = delta;
            if (throw_on_failure)
                throw convergence_error("torus_integrate: point cap reached (delta " +
                                        std::to_string(delta) + ")");
            break;
        }
    }
    res.value = prev;
    res.diag.points = M;
    res.diag.evaluations = (int)std::min<long>(evals, 1L << 30);
    res.diag.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace ehi
