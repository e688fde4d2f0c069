// II-family integrals: Type II densities with interpolation-function
// insertions, the tilde normalization, and the Gamma^+ prefactors.

#include "ehi/biorth.hpp"
#include "ehi/integrals.hpp"

namespace ehi {

namespace {

// R*_lam(x;ta,tb) as a torus factor; rank n.
FunctionHandle ii_interp_factor(const IIParams& P, const PartitionPair& pp, cx ta, cx tb,
                                const QuadratureSpec& inner) {
    if (pp.empty())
        return constant_one(P.n);
    return interp_handle(pp, ta, tb, P.t, P.n, P.nm, inner);
}

} // namespace

cx eval_II(const IIParams& P, const QuadratureSpec& spec, QuadratureDiag* d) {
    const Nome& nm = P.nm;
    FunctionHandle rl = ii_interp_factor(P, P.lam, P.tr[0], P.tr[1], spec);
    FunctionHandle rm = ii_interp_factor(P, P.mu, P.tr[2], P.tr[3], spec);

    BCIntegrand f;
    f.axis = [&](cx z) {
        cx r = 1.0;
        for (cx tr : P.tr)
            r *= elliptic_gamma(tr * z, nm) * elliptic_gamma(tr / z, nm);
        return r / (elliptic_gamma(z * z, nm) * elliptic_gamma(1.0 / (z * z), nm));
    };
    f.pair = [&](cx w) {
        return elliptic_gamma(P.t * w, nm) * elliptic_gamma(P.t / w, nm) /
               (elliptic_gamma(w, nm) * elliptic_gamma(1.0 / w, nm));
    };
    f.extra = [&](std::span<const cx> z) { return rl(z) * rm(z); };
    QuadratureResult qr = bc_torus_integrate(f, P.n, spec);
    if (d)
        *d = qr.diag;
    double fact = 1.0;
    for (int k = 2; k <= P.n; ++k)
        fact *= k;
    cx pref = std::pow(euler_product(nm.p) * euler_product(nm.q) * elliptic_gamma(P.t, nm), P.n) /
              (std::pow(2.0, P.n) * fact);
    return pref * qr.value;
}

cx eval_II_tilde(const IIParams& P, const QuadratureSpec& spec, QuadratureDiag* d) {
    const Nome& nm = P.nm;
    cx pq = nm.p * nm.q;
    cx st = std::sqrt(P.t);
    std::array<cx, 8> shifted;
    for (std::size_t r = 0; r < 8; ++r)
        shifted[r] = st * P.tr[r];
    IIParams inner(P.n, P.lam, P.mu, P.t, shifted, nm, false);
    cx raw = eval_II(inner, spec, d);

    cx z_pref = 1.0;
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = a + 1; b < 8; ++b)
            z_pref *= gamma_plus(P.t * P.tr[a] * P.tr[b], P.t, nm);
    // Z_lam carries t_1 against the other parameters, Z_mu carries t_3.
    cx z_lam = c0_symbol(P.lam, std::pow(P.t, P.n), P.t, nm);
    for (std::size_t r : {2, 3, 4, 5, 6, 7})
        z_lam *= c0_symbol(P.lam, pq / (P.t * P.tr[1] * P.tr[r]), P.t, nm);
    cx z_mu = c0_symbol(P.mu, std::pow(P.t, P.n), P.t, nm);
    for (std::size_t r : {0, 1, 4, 5, 6, 7})
        z_mu *= c0_symbol(P.mu, pq / (P.t * P.tr[3] * P.tr[r]), P.t, nm);
    return z_pref * z_lam * z_mu * raw;
}

} // namespace ehi
