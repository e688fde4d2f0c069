#include "ehi/special.hpp"

#include <algorithm>
#include <cmath>

namespace ehi {

int truncation_depth(double m, double eps, int order) {
    if (!(m > 0.0 && m < 1.0))
        throw std::domain_error("truncation_depth: modulus must lie in (0,1)");
    int K = std::max(2, (int)std::ceil(std::log(eps) / std::log(m)));
    auto tail_ok = [&](int k) {
        double lt = (order - 1) * std::log((double)k + 1) + k * std::log(m);
        return lt < std::log(eps);
    };
    while (!tail_ok(K))
        ++K;
    return K;
}

Nome::Nome(cx p_, cx q_, double eps_) : p(p_), q(q_), eps(eps_) {
    if (!is_finite(p) || !is_finite(q))
        throw std::domain_error("Nome: non-finite parameter");
    double ap = std::abs(p), aq = std::abs(q);
    if (!(ap > 0.0 && ap < 1.0 && aq > 0.0 && aq < 1.0))
        throw std::domain_error("Nome: need 0 < |p|,|q| < 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("Nome: eps out of range");
    double m = std::max(ap, aq);
    K = truncation_depth(m, eps, 1);
    K2 = truncation_depth(m, eps, 2);
    K3 = truncation_depth(m, eps, 3);
    sqrt_p = std::sqrt(p);
    sqrt_q = std::sqrt(q);
}

cx theta(cx x, cx p, int K) {
    if (x == cx(0.0) || !is_finite(x))
        throw std::domain_error("theta: argument must be finite and nonzero");
    cx r = 1.0, pk = 1.0, inv = 1.0 / x;
    for (int k = 0; k < K; ++k) {
        r *= (1.0 - pk * x) * (1.0 - pk * p * inv);
        pk *= p;
    }
    return r;
}

cx pochhammer_inf(cx x, cx p, double eps) {
    double ap = std::abs(p);
    if (!(ap < 1.0))
        throw std::domain_error("pochhammer_inf: need |p| < 1");
    if (x == cx(0.0))
        return 1.0;
    int K = truncation_depth(ap, eps, 1);
    cx r = 1.0, pk = 1.0;
    for (int k = 0; k < K; ++k) {
        r *= (1.0 - pk * x);
        pk *= p;
    }
    return r;
}

cx pochhammer_inf2(cx x, const Nome& nm) {
    if (x == cx(0.0))
        return 1.0;
    cx r = 1.0, pi = 1.0;
    for (int i = 0; i < nm.K2; ++i) {
        cx f = pi * x; // p^i q^j x, j ascending
        for (int j = 0; i + j < nm.K2; ++j) {
            r *= (1.0 - f);
            f *= nm.q;
        }
        pi *= nm.p;
    }
    return r;
}

namespace {

// Core of the elliptic Gamma double product.  When skip = (j0,k0) with
// j0,k0 >= 0, the denominator factor at that lattice index is omitted
// (finite part at a simple pole).
cx egamma_core(cx x, const Nome& nm, int skip_j, int skip_k) {
    if (x == cx(0.0) || !is_finite(x))
        throw std::domain_error("elliptic_gamma: argument must be finite and nonzero");
    cx r = 1.0, inv = nm.p * nm.q / x, pj = 1.0;
    for (int j = 0; j < nm.K2; ++j) {
        cx num = pj * inv; // p^{j+1} q^{k+1}/x with k ascending
        cx den = pj * x;   // p^j q^k x
        for (int k = 0; j + k < nm.K2; ++k) {
            r *= (1.0 - num);
            if (j == skip_j && k == skip_k) {
                // omitted simple-pole factor
            } else {
                cx d = 1.0 - den;
                if (std::abs(d) < 1e-13)
                    throw pole_error("elliptic_gamma: argument at pole p^-j q^-k");
                r /= d;
            }
            num *= nm.q;
            den *= nm.q;
        }
        pj *= nm.p;
    }
    return r;
}

} // namespace

cx elliptic_gamma(cx x, const Nome& nm) { return egamma_core(x, nm, -1, -1); }

cx theta_factorial(cx x, long l, long m, const Nome& nm) {
    if (l < 0 || m < 0)
        throw std::domain_error("theta_factorial: negative subscript");
    // two grouped subproducts so the (p,l) <-> (q,m) swap commutes exactly
    cx rl = 1.0, y = x;
    for (long k = 0; k < l; ++k) {
        rl *= theta(y, nm.q, nm.K);
        y *= nm.p;
    }
    cx rm = 1.0;
    y = x;
    for (long k = 0; k < m; ++k) {
        rm *= theta(y, nm.p, nm.K);
        y *= nm.q;
    }
    return rl * rm;
}

cx gamma_plus(cx x, cx t, const Nome& nm) {
    if (x == cx(0.0))
        throw std::domain_error("gamma_plus: argument must be nonzero");
    double mt = std::abs(t);
    if (!(mt < 1.0))
        throw std::domain_error("gamma_plus: need |t| < 1");
    double m = std::max({mt, std::abs(nm.p), std::abs(nm.q)});
    int K = truncation_depth(m, nm.eps, 3);
    cx r = 1.0, ti = 1.0, tpq = t * nm.p * nm.q;
    for (int i = 0; i < K; ++i) {
        cx pj = 1.0;
        for (int j = 0; i + j < K; ++j) {
            cx zer = ti * pj * x;             // t^i p^j q^k x
            cx inv = ti * pj * tpq / x;       // t^{i+1} p^{j+1} q^{k+1} / x
            for (int k = 0; i + j + k < K; ++k) {
                cx f = (1.0 - zer) * (1.0 - inv);
                if (std::abs(f) < 1e-13)
                    throw pole_error("gamma_plus: argument at lattice zero");
                r *= f;
                zer *= nm.q;
                inv *= nm.q;
            }
            pj *= nm.p;
        }
        ti *= t;
    }
    return r;
}

namespace {

struct PoleIndex {
    bool singular = false;
    int j = 0, k = 0;
};

PoleIndex locate_pole(cx x, const Nome& nm, double tol) {
    cx pj = 1.0;
    for (int j = 0; j < nm.K2; ++j) {
        cx f = pj * x;
        for (int k = 0; j + k < nm.K2; ++k) {
            if (std::abs(f - 1.0) < tol)
                return {true, j, k};
            f *= nm.q;
        }
        pj *= nm.p;
    }
    return {};
}

cx gamma_finite_part(cx x, const PoleIndex& pi, const Nome& nm) {
    if (!pi.singular)
        return elliptic_gamma(x, nm);
    // Snap to the exact lattice point so the omitted factor vanishes exactly.
    cx exact = 1.0 / (std::pow(nm.p, pi.j) * std::pow(nm.q, pi.k));
    return egamma_core(exact, nm, pi.j, pi.k);
}

} // namespace

cx gamma_ratio_regularized(std::span<const cx> num, std::span<const cx> den,
                           const Nome& nm) {
    constexpr double kSnapTol = 1e-6;
    cx rnum = 1.0, rden = 1.0;
    int poles_num = 0, poles_den = 0;
    for (cx x : num) {
        PoleIndex pi = locate_pole(x, nm, kSnapTol);
        poles_num += pi.singular ? 1 : 0;
        rnum *= gamma_finite_part(x, pi, nm);
    }
    for (cx x : den) {
        PoleIndex pi = locate_pole(x, nm, kSnapTol);
        poles_den += pi.singular ? 1 : 0;
        rden *= gamma_finite_part(x, pi, nm);
    }
    if (poles_num != poles_den)
        throw pole_error("gamma_ratio_regularized: unbalanced pole counts");
    return rnum / rden;
}

} // namespace ehi
