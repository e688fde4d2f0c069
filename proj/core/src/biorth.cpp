#include "ehi/biorth.hpp"

#include <cmath>

namespace ehi {

namespace {

constexpr double kBalanceTol = 1e-12;

PartitionPair drop_column(const PartitionPair& pp, int n, bool mu_side) {
    std::vector<long> l, m;
    for (int i = 1; i <= n; ++i) {
        l.push_back(pp.lambda.part((std::size_t)i) - (mu_side ? 0 : 1));
        m.push_back(pp.mu.part((std::size_t)i) - (mu_side ? 1 : 0));
    }
    return {Partition(std::move(l)), Partition(std::move(m))};
}

} // namespace

BiorthParams::BiorthParams(int n_, cx t0_, cx t1_, cx t2_, cx t3_, cx u0_, cx u1_, cx t_,
                           Nome nm_, bool validate)
    : n(n_), t0(t0_), t1(t1_), t2(t2_), t3(t3_), u0(u0_), u1(u1_), t(t_), nm(nm_) {
    if (n < 0)
        throw std::domain_error("BiorthParams: negative rank");
    if (validate) {
        cx bal = std::pow(t, 2 * n - 2) * t0 * t1 * t2 * t3 * u0 * u1;
        cx pq = nm.p * nm.q;
        if (std::abs(bal - pq) > kBalanceTol * std::abs(pq))
            throw balance_error("BiorthParams: t^{2n-2} t0 t1 t2 t3 u0 u1 != pq");
    }
}

BiorthParams BiorthParams::hatted() const {
    cx h0 = std::sqrt(t0 * t1 * t2 * t3 / (nm.p * nm.q));
    return BiorthParams(n, h0, t0 * t1 / h0, t0 * t2 / h0, t0 * t3 / h0, u0 * h0 / t0,
                        u1 * h0 / t0, t, nm);
}

TypeIIParams BiorthParams::density() const {
    return TypeIIParams(n, t, {t0, t1, t2, t3, u0, u1}, nm);
}

BiorthParams BiorthParams::with_u_swapped() const {
    return BiorthParams(n, t0, t1, t2, t3, u1, u0, t, nm);
}

BiorthFunction build_biorth(const BiorthParams& P, const PartitionPair& pp,
                            const QuadratureSpec& inner_spec) {
    if ((int)pp.length() > P.n)
        throw std::domain_error("build_biorth: pair longer than rank");
    const Nome& nm = P.nm;
    if (P.n == 0)
        return {P, pp, constant_one(0), {}};

    if ((int)pp.length() < P.n) {
        // trailing row is (0,0): strip it through I+
        cx st = std::sqrt(P.t);
        BiorthParams inner(P.n - 1, st * P.t0, st * P.t1, st * P.t2, st * P.t3, P.u0 / st,
                           st * P.u1, P.t, nm);
        BiorthFunction sub = build_biorth(inner, pp, inner_spec);
        BiorthFunction out{P, pp,
                           apply_Iplus(P.u0 / st, P.t, sub.handle, inner_spec, nm), sub.trace};
        out.trace.push_back({RaiseStep::strip, P.n});
        return out;
    }
    if (pp.mu.part((std::size_t)P.n) >= 1) {
        // (0,1)^n c= pp: q-raising
        cx sq = nm.sqrt_q;
        BiorthParams inner(P.n, sq * P.t0, sq * P.t1, sq * P.t2, sq * P.t3, P.u0 / sq,
                           P.u1 / (sq * nm.q), P.t, nm);
        BiorthFunction sub = build_biorth(inner, drop_column(pp, P.n, true), inner_spec);
        BiorthFunction out{P, pp,
                           apply_Dplus(P.n, P.u0, P.t0, P.t1, P.t2, P.t3, P.t, ShiftDir::q,
                                       sub.handle, nm),
                           sub.trace};
        out.trace.push_back({RaiseStep::q_raise, P.n});
        return out;
    }
    // (1,0)^n c= pp: p-raising
    cx sp = nm.sqrt_p;
    BiorthParams inner(P.n, sp * P.t0, sp * P.t1, sp * P.t2, sp * P.t3, P.u0 / sp,
                       P.u1 / (sp * nm.p), P.t, nm);
    BiorthFunction sub = build_biorth(inner, drop_column(pp, P.n, false), inner_spec);
    BiorthFunction out{P, pp,
                       apply_Dplus(P.n, P.u0, P.t0, P.t1, P.t2, P.t3, P.t, ShiftDir::p,
                                   sub.handle, nm),
                       sub.trace};
    out.trace.push_back({RaiseStep::p_raise, P.n});
    return out;
}

cx eval_F(cx u0, const PartitionPair& pp, std::span<const cx> z, cx t, const Nome& nm) {
    const Partition lc = pp.lambda.conjugate();
    const Partition mc = pp.mu.conjugate();
    cx r = 1.0;
    for (cx zi : z) {
        for (long j = 1; j <= pp.lambda.part(1); ++j) {
            cx base = std::pow(nm.p, (double)j) * nm.q / u0;
            cx tshift = std::pow(t, (double)-lc.part((std::size_t)j));
            r *= theta(base * tshift * zi, nm.q, nm.K) * theta(base * tshift / zi, nm.q, nm.K) /
                 (theta(base * zi, nm.q, nm.K) * theta(base / zi, nm.q, nm.K));
        }
        for (long j = 1; j <= pp.mu.part(1); ++j) {
            cx base = nm.p * std::pow(nm.q, (double)j) / u0;
            cx tshift = std::pow(t, (double)-mc.part((std::size_t)j));
            r *= theta(base * tshift * zi, nm.p, nm.K) * theta(base * tshift / zi, nm.p, nm.K) /
                 (theta(base * zi, nm.p, nm.K) * theta(base / zi, nm.p, nm.K));
        }
    }
    return r;
}

FunctionHandle make_F_handle(int n, cx u0, const PartitionPair& pp, cx t, const Nome& nm) {
    PartitionPair cap = pp;
    Nome nmc = nm;
    return {n, 0,
            [u0, cap, t, nmc](std::span<const cx> z) { return eval_F(u0, cap, z, t, nmc); },
            "F"};
}

FunctionHandle interp_handle(const PartitionPair& pp, cx t0, cx u0, cx t, int n, const Nome& nm,
                             const QuadratureSpec& inner_spec, const InterpAux& aux) {
    if (n < (int)pp.length())
        throw std::domain_error("interp_handle: rank too small");
    cx a3 = nm.p * nm.q / (std::pow(t, n - 1) * aux.a1 * aux.a2 * u0);
    BiorthParams P(n, aux.a1, t0, aux.a2, a3, u0, std::pow(t, 1 - n) / t0, t, nm);
    BiorthFunction rt = build_biorth(P, pp, inner_spec);
    cx pref = delta0(pp, std::pow(t, n - 1) * t0 / u0,
                     {std::pow(t, n - 1) * t0 * aux.a1, t0 / aux.a1}, t, nm);
    FunctionHandle h = rt.handle;
    return {n, h.quad_depth,
            [pref, h](std::span<const cx> z) { return pref * h(z); },
            "R*"};
}

cx eval_interp(const PartitionPair& pp, cx t0, cx u0, cx t, int n, std::span<const cx> z,
               const Nome& nm, const QuadratureSpec& inner_spec, const InterpAux& aux) {
    return interp_handle(pp, t0, u0, t, n, nm, inner_spec, aux)(z);
}

cx inner_product(const FunctionHandle& f, const FunctionHandle& g, const BiorthParams& P,
                 const QuadratureSpec& spec, QuadratureDiag* d) {
    if (f.arity != P.n || g.arity != P.n)
        throw std::domain_error("inner_product: arity mismatch");
    if (std::max(f.quad_depth, g.quad_depth) + 1 > 2)
        throw cost_error("inner_product: nested quadrature depth exceeds 2");
    const Nome& nm = P.nm;
    TypeIIParams dens = P.density();
    TorusFn extra = [&](std::span<const cx> z) { return f(z) * g(z); };
    cx raw = eval_type2_weighted(dens, extra, spec, d);
    cx norm = 1.0, ti = 1.0; // prod_i Gamma(t^i) prod_{r<s} Gamma(t^{n-i} t_r t_s)
    auto tr = P.density_params();
    for (int i = 1; i <= P.n; ++i) {
        ti *= P.t;
        norm *= elliptic_gamma(ti, nm);
        cx tp = std::pow(P.t, P.n - i);
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = a + 1; b < 6; ++b)
                norm *= elliptic_gamma(tp * tr[a] * tr[b], nm);
    }
    return raw / norm;
}

cx biorth_norm_closed(const BiorthParams& P, const PartitionPair& pp) {
    cx tn1 = std::pow(P.t, P.n - 1);
    cx a = 1.0 / (P.u0 * P.u1);
    std::array<cx, 6> bs{std::pow(P.t, P.n), tn1 * P.t0 * P.t1, tn1 * P.t0 * P.t2,
                         tn1 * P.t0 * P.t3, 1.0 / (tn1 * P.t0 * P.u0),
                         1.0 / (tn1 * P.t0 * P.u1)};
    return 1.0 / delta_full(pp, a, bs, P.t, P.nm);
}

cx biorth_norm_density_ratio(const BiorthParams& P, const PartitionPair& pp) {
    BiorthParams H = P.hatted();
    const Nome& nm = P.nm;
    auto zl = z_points(pp, H.t0, P.t, P.n, nm);
    auto z0 = z_points({}, H.t0, P.t, P.n, nm);
    auto pars = H.density_params();
    // Delta^(n)(z) = prod_{i<j} Gamma(t zi^± zj^±)/Gamma(zi^± zj^±)
    //               prod_i prod_r Gamma(t_r zi^±) / Gamma(zi^±2);
    // ratio Delta(z0)/Delta(zl) assembled as one regularized Gamma ratio.
    std::vector<cx> num, den;
    auto push_point = [&](std::span<const cx> z, std::vector<cx>& gnum, std::vector<cx>& gden) {
        for (std::size_t i = 0; i < z.size(); ++i) {
            for (cx r : pars) {
                gnum.push_back(r * z[i]);
                gnum.push_back(r / z[i]);
            }
            gden.push_back(z[i] * z[i]);
            gden.push_back(1.0 / (z[i] * z[i]));
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                for (cx w : {z[i] * z[j], z[i] / z[j], z[j] / z[i], 1.0 / (z[i] * z[j])}) {
                    gnum.push_back(P.t * w);
                    gden.push_back(w);
                }
            }
        }
    };
    std::vector<cx> n0, d0, nl, dl;
    push_point(z0, n0, d0);
    push_point(zl, nl, dl);
    num = n0;
    num.insert(num.end(), dl.begin(), dl.end());
    den = d0;
    den.insert(den.end(), nl.begin(), nl.end());
    return gamma_ratio_regularized(num, den, nm);
}

cx swap_t0t1_closed(const BiorthParams& P, const PartitionPair& pp) {
    cx tn1 = std::pow(P.t, P.n - 1);
    cx t1n = std::pow(P.t, 1 - P.n);
    cx pq = P.nm.p * P.nm.q;
    std::array<cx, 4> num{tn1 * P.t1 * P.t2, tn1 * P.t1 * P.t3, pq * tn1 * P.t0 / P.u0,
                          t1n / (P.t1 * P.u1)};
    std::array<cx, 4> den{tn1 * P.t0 * P.t2, tn1 * P.t0 * P.t3, pq * tn1 * P.t1 / P.u0,
                          t1n / (P.t0 * P.u1)};
    return c0_symbol(pp, num, P.t, P.nm) / c0_symbol(pp, den, P.t, P.nm);
}

cx eigen_ED(const PartitionPair& pp, cx v, cx w, cx t, int n, cx pnome, const Nome& nm) {
    auto zl = z_points(pp, w, t, n, nm);
    auto z0 = z_points({}, w, t, n, nm);
    cx r = 1.0;
    for (int i = 0; i < n; ++i) {
        r *= theta(v * zl[(std::size_t)i], pnome, nm.K) * theta(v / zl[(std::size_t)i], pnome, nm.K) /
             (theta(v * z0[(std::size_t)i], pnome, nm.K) * theta(v / z0[(std::size_t)i], pnome, nm.K));
    }
    return r;
}

cx eigen_EI(const PartitionPair& pp, cx v, cx w, cx t, int n, const Nome& nm) {
    auto zl = z_points(pp, w, t, n, nm);
    auto z0 = z_points({}, w, t, n, nm);
    std::vector<cx> num, den;
    for (int i = 0; i < n; ++i) {
        cx a = zl[(std::size_t)i], b = z0[(std::size_t)i];
        num.push_back(v * a);
        num.push_back(v / a);
        num.push_back(t * v * b);
        num.push_back(t * v / b);
        den.push_back(t * v * a);
        den.push_back(t * v / a);
        den.push_back(v * b);
        den.push_back(v / b);
    }
    return gamma_ratio_regularized(num, den, nm);
}

double check_eigen_equation(const BiorthParams& P, const PartitionPair& pp, EigenKind kind,
                            std::span<const cx> z, const QuadratureSpec& spec) {
    const Nome& nm = P.nm;
    BiorthParams H = P.hatted();
    if (kind == EigenKind::Dq || kind == EigenKind::Dp) {
        bool qcase = kind == EigenKind::Dq;
        cx s = qcase ? nm.q : nm.p;
        cx sh = qcase ? nm.sqrt_q : nm.sqrt_p;
        ShiftDir dir = qcase ? ShiftDir::q : ShiftDir::p;
        cx pn = theta_nome(dir, nm);
        BiorthParams shifted(P.n, P.t0, P.t1, P.t2, P.t3, s * P.u0, P.u1 / s, P.t, nm);
        BiorthFunction rshift = build_biorth(shifted, pp, spec);
        FunctionHandle inner =
            apply_calD(P.n, sh * P.u0, P.t2 / sh, P.t3 / sh, P.t, dir, rshift.handle, nm);
        FunctionHandle lhs = apply_calD(P.n, P.u0, P.t0, P.t1, P.t, dir, inner, nm);
        BiorthFunction rhs = build_biorth(P, pp, spec);
        cx ev = eigen_ED(pp, H.t1, H.t0, P.t, P.n, pn, nm) /
                eigen_ED(pp, H.u0, H.t0, P.t, P.n, pn, nm);
        cx a = lhs(z), b = ev * rhs.handle(z);
        return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
    }
    // It: I(t^{1/2}u0 : t^{-1/2}t2, t^{-1/2}t3) I(u0 : t0,t1) R~(P)
    //   = [EI(hat t1 : hat t0)/EI(hat u0 : hat t0)] R~(t u0, u1/t)
    cx st = std::sqrt(P.t);
    BiorthFunction base = build_biorth(P, pp, spec);
    FunctionHandle inner = apply_Imid(P.u0, P.t0, P.t1, P.t, base.handle, spec, nm);
    FunctionHandle lhs = apply_Imid(st * P.u0, P.t2 / st, P.t3 / st, P.t, inner, spec, nm);
    BiorthParams moved(P.n, P.t0, P.t1, P.t2, P.t3, P.t * P.u0, P.u1 / P.t, P.t, nm);
    BiorthFunction rhs = build_biorth(moved, pp, spec);
    cx ev = eigen_EI(pp, H.t1, H.t0, P.t, P.n, nm) / eigen_EI(pp, H.u0, H.t0, P.t, P.n, nm);
    cx a = lhs(z), b = ev * rhs.handle(z);
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

double check_evaluation_symmetry(const BiorthParams& P, const PartitionPair& lam,
                                 const PartitionPair& kap, const QuadratureSpec& spec) {
    const Nome& nm = P.nm;
    BiorthParams H = P.hatted();
    BiorthFunction rl = build_biorth(P, lam, spec);
    BiorthFunction rk = build_biorth(H, kap, spec);
    auto zk = z_points(kap, P.t0, P.t, P.n, nm);
    auto zl = z_points(lam, H.t0, P.t, P.n, nm);
    cx a = rl.handle(zk), b = rk.handle(zl);
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace ehi
