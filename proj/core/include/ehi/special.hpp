#pragma once

#include <span>
#include <vector>

#include "ehi/nome.hpp"

namespace ehi {

// theta(x;p) = prod_{k>=0} (1 - p^k x)(1 - p^{k+1}/x), truncated at depth K.
cx theta(cx x, cx p, int K);
inline cx theta_p(cx x, const Nome& nm) { return theta(x, nm.p, nm.K); }
inline cx theta_q(cx x, const Nome& nm) { return theta(x, nm.q, nm.K); }

// (x;p)_inf = prod_{k>=0} (1 - p^k x); depth chosen from |p| and eps.
cx pochhammer_inf(cx x, cx p, double eps = 1e-15);

// (x;p,q)_inf = prod_{i,j>=0} (1 - p^i q^j x), truncated over i+j < K2.
cx pochhammer_inf2(cx x, const Nome& nm);

// Gamma(x;p,q) = prod_{j,k>=0} (1 - p^{j+1} q^{k+1}/x) / (1 - p^j q^k x).
// Throws pole_error when some factor 1 - p^j q^k x is below 1e-13 in
// magnitude (x within roundoff of a pole p^{-j} q^{-k}).
cx elliptic_gamma(cx x, const Nome& nm);

// theta(x;p,q)_{l,m} = prod_{k<l} theta(p^k x;q) * prod_{k<m} theta(q^k x;p).
// Symmetric under simultaneous (p,l) <-> (q,m).  Requires l,m >= 0.
cx theta_factorial(cx x, long l, long m, const Nome& nm);

// Gamma^+(x;t,p,q) = prod_{i,j,k>=0} (1 - t^i p^j q^k x)(1 - t^{i+1} p^{j+1} q^{k+1}/x),
// truncated over i+j+k < K where max(|t|,|p|,|q|)^K meets eps.
cx gamma_plus(cx x, cx t, const Nome& nm);

// lim_{s->1} prod_i Gamma(s*num[i]) / prod_j Gamma(s*den[j]).
//
// Arguments within 1e-6 of a lattice pole p^{-j} q^{-k} are snapped to the
// exact lattice point, their simple-pole factor is dropped, and each such
// factor contributes one power of (1-s)^{-1}; the limit exists iff the
// numerator and denominator carry the same number of poles (pole_error
// otherwise).  This realizes the scale-factor limit convention used for the
// specialized Gamma ratios (inner-product norms, integral-operator
// eigenvalues) whose individual factors are singular.
cx gamma_ratio_regularized(std::span<const cx> num, std::span<const cx> den,
                           const Nome& nm);

} // namespace ehi
