#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ehi/types.hpp"

namespace ehi {

// Tensor-product trapezoid rule on the n-torus with point doubling.
// Spectrally accurate for integrands analytic in an annulus around the
// contour; the doubling certificate is the Richardson-style difference of
// successive refinements.
struct QuadratureSpec {
    int initial_points = 32; // per circle, >= 16
    double tol = 1e-10;      // target relative delta between refinements
    int max_points = 16384;  // per-circle cap (raise for near-degenerate pinches)
};

struct QuadratureDiag {
    int points = 0;        // final per-circle point count
    double last_delta = 0; // last relative refinement difference
    bool converged = false;
    double seconds = 0;
    int evaluations = 0;

    void absorb(const QuadratureDiag& inner); // keep the worse of two
};

struct QuadratureResult {
    cx value{};
    QuadratureDiag diag{};
};

using TorusFn = std::function<cx(std::span<const cx>)>;

// Grid phase offsets keep lattice-coincidence points (z_i = +-1, z_i z_j = 1,
// z_i/z_j = 1) off the grid for every axis combination; golden-ratio
// fractions of a full turn, fixed once so runs are reproducible.
double grid_phase(int axis);

// Mean of f over the M^n offset grid z_i = exp(2 pi I (k_i/M + phase_i)).
// Pairwise summation throughout.  mean_abs, when requested, receives the mean
// of |f| over the grid; the doubling criterion uses a small multiple of it as
// an absolute floor so that vanishing integrals converge.
cx torus_mean_fixed(const TorusFn& f, int n, int M, double* mean_abs = nullptr);

// Doubling loop; throws convergence_error if the cap is reached before the
// target, unless spec_tolerant (then returns with converged=false).
QuadratureResult torus_integrate(const TorusFn& f, int n, const QuadratureSpec& spec,
                                 bool throw_on_failure = true);

// Pairwise (cascade) sum of a buffer; deterministic and order-stable.
cx pairwise_sum(std::span<const cx> xs);

} // namespace ehi
