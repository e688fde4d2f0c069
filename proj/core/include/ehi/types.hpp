#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ehi {

using cx = std::complex<double>;

inline bool is_finite(cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Thrown when an argument sits on (or within tolerance of) a pole or zero
// lattice point p^{-j} q^{-k} where the requested value is undefined.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameter set violates a balancing condition (product-of-parameters
// constraint) beyond the admitted tolerance.
struct balance_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameter set places integrand poles on the wrong side of (or on) the
// torus contour; the integral is not represented by the plain torus rule.
struct contour_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Quadrature failed to meet its target before hitting the point cap, or a
// sampler exhausted its rejection budget.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator composition exceeded the nested-quadrature depth cap.
struct cost_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ehi
