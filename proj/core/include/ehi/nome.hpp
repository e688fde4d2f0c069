#pragma once

#include "ehi/types.hpp"

namespace ehi {

// Pair of modular parameters with |p|,|q| < 1 and the truncation depths all
// infinite products use.  K is the least integer with max(|p|,|q|)^K < eps;
// K2 and K3 are slightly deeper so that double and triple products (whose
// tails carry polynomial prefactors) meet the same bound.
//
// A single principal square root of each parameter is fixed at construction
// and threaded through every half-power shift; all identities checked here
// are invariant under the simultaneous negation of every parameter, so the
// branch choice is immaterial as long as it is used consistently.
struct Nome {
    cx p;
    cx q;
    double eps = 1e-15;
    int K = 0;   // single products
    int K2 = 0;  // double products (elliptic gamma)
    int K3 = 0;  // triple products (gamma_plus), before accounting for |t|
    cx sqrt_p;
    cx sqrt_q;

    Nome(cx p_, cx q_, double eps_ = 1e-15);

    // Same truncation policy with the roles of p and q exchanged.
    Nome swapped() const { return Nome(q, p, eps); }
};

// Least K with (K+1)^(order-1) * m^K < eps, for 0 < m < 1.
int truncation_depth(double m, double eps, int order = 1);

} // namespace ehi
