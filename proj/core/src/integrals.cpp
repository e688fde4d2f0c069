#include "ehi/integrals.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace ehi {

namespace {

constexpr double kBalanceTol = 1e-12;

void require_balanced(cx prod, cx target, const char* what) {
    if (std::abs(prod - target) > kBalanceTol * std::abs(target))
        throw balance_error(std::string(what) + ": balancing condition violated");
}

void require_inside_disc(std::span<const cx> ts, const char* what) {
    for (cx v : ts)
        if (!(std::abs(v) < 1.0))
            throw contour_error(std::string(what) + ": parameter modulus >= 1");
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k)
        r *= k;
    return r;
}

} // namespace

cx euler_product(cx x) { return pochhammer_inf(x, x); }

// ---- table-based BC-symmetric torus rule -----------------------------------

cx bc_torus_mean_fixed(const BCIntegrand& f, int n, int M) { return bc_torus_mean_fixed(f, n, M, nullptr); }

cx bc_torus_mean_fixed(const BCIntegrand& f, int n, int M, double* mean_abs) {
    if (n == 0) {
        cx v = f.extra ? f.extra({}) : cx(1.0);
        if (mean_abs)
            *mean_abs = std::abs(v);
        return v;
    }
    const double tau = 2.0 * std::numbers::pi;
    auto unit = [&](double phase) {
        double a = tau * phase;
        return cx(std::cos(a), std::sin(a));
    };

    std::vector<std::vector<cx>> zgrid((std::size_t)n), axis((std::size_t)n);
    for (int a = 0; a < n; ++a) {
        zgrid[(std::size_t)a].resize((std::size_t)M);
        axis[(std::size_t)a].resize((std::size_t)M);
        for (int k = 0; k < M; ++k) {
            cx z = unit((double)k / M + grid_phase(a));
            zgrid[(std::size_t)a][(std::size_t)k] = z;
            axis[(std::size_t)a][(std::size_t)k] = f.axis ? f.axis(z) : cx(1.0);
        }
    }

    // pair tables per unordered axis pair (a,b): products and ratios live on
    // phase-offset copies of the M-point grid
    struct PairTab {
        std::vector<cx> prod, diff;
    };
    std::vector<std::vector<PairTab>> pt;
    if (f.pair) {
        pt.resize((std::size_t)n);
        for (int a = 0; a < n; ++a) {
            pt[(std::size_t)a].resize((std::size_t)n);
            for (int b = a + 1; b < n; ++b) {
                PairTab& tab = pt[(std::size_t)a][(std::size_t)b];
                tab.prod.resize((std::size_t)M);
                tab.diff.resize((std::size_t)M);
                for (int r = 0; r < M; ++r) {
                    tab.prod[(std::size_t)r] =
                        f.pair(unit((double)r / M + grid_phase(a) + grid_phase(b)));
                    tab.diff[(std::size_t)r] =
                        f.pair(unit((double)r / M + grid_phase(a) - grid_phase(b)));
                }
            }
        }
    }

    std::vector<cx> z((std::size_t)n);
    std::vector<int> idx((std::size_t)n, 0);
    std::vector<cx> row((std::size_t)M), outer;
    double abs_acc = 0.0;
    for (;;) {
        // prefix product over the fixed outer axes
        cx pre = 1.0;
        for (int a = 0; a + 1 < n; ++a) {
            pre *= axis[(std::size_t)a][(std::size_t)idx[(std::size_t)a]];
            z[(std::size_t)a] = zgrid[(std::size_t)a][(std::size_t)idx[(std::size_t)a]];
            if (f.pair)
                for (int b = a + 1; b + 1 < n; ++b) {
                    const PairTab& tab = pt[(std::size_t)a][(std::size_t)b];
                    int s = (idx[(std::size_t)a] + idx[(std::size_t)b]) % M;
                    int d = (idx[(std::size_t)a] - idx[(std::size_t)b] + M) % M;
                    pre *= tab.prod[(std::size_t)s] * tab.diff[(std::size_t)d];
                }
        }
        for (int k = 0; k < M; ++k) {
            cx v = pre * axis[(std::size_t)(n - 1)][(std::size_t)k];
            if (f.pair)
                for (int a = 0; a + 1 < n; ++a) {
                    const PairTab& tab = pt[(std::size_t)a][(std::size_t)(n - 1)];
                    int s = (idx[(std::size_t)a] + k) % M;
                    int d = (idx[(std::size_t)a] - k + M) % M;
                    v *= tab.prod[(std::size_t)s] * tab.diff[(std::size_t)d];
                }
            if (f.extra) {
                z[(std::size_t)(n - 1)] = zgrid[(std::size_t)(n - 1)][(std::size_t)k];
                v *= f.extra(z);
            }
            row[(std::size_t)k] = v;
            abs_acc += std::abs(v);
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
    double norm = std::pow((double)M, n);
    if (mean_abs)
        *mean_abs = abs_acc / norm;
    return pairwise_sum(outer) / norm;
}

QuadratureResult bc_torus_integrate(const BCIntegrand& f, int n, const QuadratureSpec& spec,
                                    bool throw_on_failure) {
    auto t0 = std::chrono::steady_clock::now();
    QuadratureResult res;
    int M = std::max(16, spec.initial_points);
    cx prev = bc_torus_mean_fixed(f, n, M);
    if (n == 0) {
        res.value = prev;
        res.diag = {1, 0.0, true, 0.0, 1};
        return res;
    }
    for (;;) {
        double mean_abs = 0.0;
        cx cur = bc_torus_mean_fixed(f, n, 2 * M, &mean_abs);
        double scale = std::max({std::abs(cur), std::abs(prev), 0.01 * mean_abs, 1e-300});
        double delta = std::abs(cur - prev) / scale;
        M *= 2;
        prev = cur;
        res.diag.last_delta = delta;
        if (delta < spec.tol) {
            res.diag.converged = true;
            break;
        }
        if (2 * M > spec.max_points) {
            if (throw_on_failure)
                throw convergence_error("bc_torus_integrate: point cap reached (delta " +
                                        std::to_string(delta) + ")");
            break;
        }
    }
    res.value = prev;
    res.diag.points = M;
    res.diag.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

QuadratureResult torus_integrate_handle(const FunctionHandle& f, const QuadratureSpec& spec) {
    return torus_integrate([&](std::span<const cx> z) { return f(z); }, f.arity, spec);
}

// ---- parameter sets ----------------------------------------------------------

BCTypeIParams::BCTypeIParams(int m_, int n_, std::vector<cx> t_, Nome nm_)
    : m(m_), n(n_), t(std::move(t_)), nm(nm_) {
    if (m < 0 || n < 0 || (int)t.size() != 2 * m + 2 * n + 4)
        throw std::domain_error("BCTypeIParams: need 2m+2n+4 parameters");
    require_inside_disc(t, "BCTypeIParams");
    cx prod = 1.0;
    for (cx v : t)
        prod *= v;
    require_balanced(prod, std::pow(nm.p * nm.q, m + 1), "BCTypeIParams");
}

ATypeParams::ATypeParams(int m_, int n_, cx Z_, std::vector<cx> t_, std::vector<cx> u_, Nome nm_)
    : m(m_), n(n_), Z(Z_), t(std::move(t_)), u(std::move(u_)), nm(nm_) {
    if (m < 0 || n < 0 || (int)t.size() != m + n + 2 || (int)u.size() != m + n + 2)
        throw std::domain_error("ATypeParams: need m+n+2 lower and upper parameters");
    cx prod = 1.0;
    for (std::size_t r = 0; r < t.size(); ++r)
        prod *= t[r] * u[r];
    require_balanced(prod, std::pow(nm.p * nm.q, m + 1), "ATypeParams");
    double R = std::pow(std::abs(Z), 1.0 / (n + 1));
    for (std::size_t r = 0; r < t.size(); ++r) {
        if (!(std::abs(u[r]) < R && R < 1.0 / std::abs(t[r])))
            throw contour_error("ATypeParams: |u_r| < |Z|^{1/(n+1)} < 1/|t_r| violated");
    }
}

TypeIIParams::TypeIIParams(int n_, cx t_, std::array<cx, 6> tr_, Nome nm_)
    : n(n_), t(t_), tr(tr_), nm(nm_) {
    if (n < 1)
        throw std::domain_error("TypeIIParams: need n >= 1");
    if (!(std::abs(t) < 1.0))
        throw contour_error("TypeIIParams: |t| >= 1");
    require_inside_disc(tr, "TypeIIParams");
    cx prod = std::pow(t, 2 * n - 2);
    for (cx v : tr)
        prod *= v;
    require_balanced(prod, nm.p * nm.q, "TypeIIParams");
}

IIParams::IIParams(int n_, PartitionPair lam_, PartitionPair mu_, cx t_, std::array<cx, 8> tr_,
                   Nome nm_, bool tilde_balancing)
    : n(n_), lam(std::move(lam_)), mu(std::move(mu_)), t(t_), tr(tr_), nm(nm_) {
    if (n < 1)
        throw std::domain_error("IIParams: need n >= 1");
    if ((int)lam.length() > n || (int)mu.length() > n)
        throw std::domain_error("IIParams: partition pair longer than rank");
    if (!(std::abs(t) < 1.0))
        throw contour_error("IIParams: |t| >= 1");
    require_inside_disc(tr, "IIParams");
    cx prod = std::pow(t, tilde_balancing ? 2 * n + 2 : 2 * n - 2);
    for (cx v : tr)
        prod *= v;
    cx pq = nm.p * nm.q;
    require_balanced(prod, pq * pq, "IIParams");
}

// ---- evaluations --------------------------------------------------------------

cx eval_I_BC(const BCTypeIParams& P, const QuadratureSpec& spec, QuadratureDiag* d) {
    if (P.n == 0) {
        if (d)
            *d = {1, 0.0, true, 0.0, 0};
        return 1.0;
    }
    const Nome& nm = P.nm;
    BCIntegrand f;
    f.axis = [&](cx z) {
        cx r = 1.0;
        for (cx tr : P.t)
            r *= elliptic_gamma(tr * z, nm) * elliptic_gamma(tr / z, nm);
        return r / (elliptic_gamma(z * z, nm) * elliptic_gamma(1.0 / (z * z), nm));
    };
    f.pair = [&](cx w) { return 1.0 / (elliptic_gamma(w, nm) * elliptic_gamma(1.0 / w, nm)); };
    QuadratureResult qr = bc_torus_integrate(f, P.n, spec);
    if (d)
        *d = qr.diag;
    cx pref = std::pow(euler_product(nm.p) * euler_product(nm.q), P.n) /
              (std::pow(2.0, P.n) * factorial(P.n));
    return pref * qr.value;
}

cx type1_closed_form(const BCTypeIParams& P) {
    if (P.m != 0)
        throw std::domain_error("type1_closed_form: requires m = 0");
    cx r = 1.0;
    for (std::size_t a = 0; a < P.t.size(); ++a)
        for (std::size_t b = a + 1; b < P.t.size(); ++b)
            r *= elliptic_gamma(P.t[a] * P.t[b], P.nm);
    return r;
}

cx eval_I_A(const ATypeParams& P, const QuadratureSpec& spec, QuadratureDiag* d) {
    const Nome& nm = P.nm;
    auto axis = [&](cx z) {
        cx r = 1.0;
        for (std::size_t rr = 0; rr < P.t.size(); ++rr)
            r *= elliptic_gamma(P.t[rr] * z, nm) * elliptic_gamma(P.u[rr] / z, nm);
        return r;
    };
    if (P.n == 0) {
        if (d)
            *d = {1, 0.0, true, 0.0, 0};
        return axis(P.Z);
    }
    if (P.n != 1)
        throw cost_error("eval_I_A: ranks n >= 2 are outside the desk-scale cost cap");
    double R = std::pow(std::abs(P.Z), 0.5);
    const double tau = 2.0 * std::numbers::pi;
    auto integrand = [&](std::span<const cx> zz) {
        cx z1 = zz[0], z0 = P.Z / z1;
        return axis(z0) * axis(z1) /
               (elliptic_gamma(z0 / z1, nm) * elliptic_gamma(z1 / z0, nm));
    };
    // torus of radius |Z|^{1/(n+1)}
    auto scaled = [&](std::span<const cx> w) {
        cx z = R * w[0];
        std::array<cx, 1> arg{z};
        (void)tau;
        return integrand(arg);
    };
    QuadratureResult qr = torus_integrate(scaled, 1, spec);
    if (d)
        *d = qr.diag;
    return euler_product(nm.p) * euler_product(nm.q) / 2.0 * qr.value;
}

cx eval_type2_weighted(const TypeIIParams& P, const TorusFn& extra, const QuadratureSpec& spec,
                       QuadratureDiag* d) {
    const Nome& nm = P.nm;
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
    f.extra = extra;
    QuadratureResult qr = bc_torus_integrate(f, P.n, spec);
    if (d)
        *d = qr.diag;
    cx pref = std::pow(euler_product(nm.p) * euler_product(nm.q) * elliptic_gamma(P.t, nm), P.n) /
              (std::pow(2.0, P.n) * factorial(P.n));
    return pref * qr.value;
}

cx eval_type2(const TypeIIParams& P, const QuadratureSpec& spec, QuadratureDiag* d) {
    return eval_type2_weighted(P, nullptr, spec, d);
}

cx type2_closed_form(const TypeIIParams& P) {
    const Nome& nm = P.nm;
    cx r = 1.0, tj = 1.0;
    for (int j = 0; j < P.n; ++j) {
        r *= elliptic_gamma(tj * P.t, nm);
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = a + 1; b < 6; ++b)
                r *= elliptic_gamma(tj * P.tr[a] * P.tr[b], nm);
        tj *= P.t;
    }
    return r;
}

BBReductionReport verify_limit_bb_reduction(const BCTypeIParams& base, std::span<const double> hs,
                                            const QuadratureSpec& spec) {
    if (base.n < 1)
        throw std::domain_error("verify_limit_bb_reduction: need n >= 1");
    BBReductionReport rep;
    const Nome& nm = base.nm;
    cx target_bal = std::pow(nm.p * nm.q, base.m + 1);

    auto solved = [&](double h) {
        std::vector<cx> t = base.t;
        t[1] = (1.0 + h) / t[0];
        cx prod = 1.0;
        for (std::size_t r = 0; r + 1 < t.size(); ++r)
            prod *= t[r];
        t.back() = target_bal / prod;
        return t;
    };

    for (double h : hs) {
        std::vector<cx> t = solved(h);
        BCTypeIParams P(base.m, base.n, t, nm);
        cx I = eval_I_BC(P, spec);
        cx den = elliptic_gamma(t[0] * t[1], nm);
        for (std::size_t r = 2; r < t.size(); ++r)
            den *= elliptic_gamma(t[0] * t[r], nm) * elliptic_gamma(t[1] * t[r], nm);
        rep.hs.push_back(h);
        rep.ratios.push_back(I / den);
    }
    if (rep.ratios.size() >= 2) {
        double h1 = rep.hs[rep.hs.size() - 2], h2 = rep.hs.back();
        cx r1 = rep.ratios[rep.ratios.size() - 2], r2 = rep.ratios.back();
        rep.extrapolated = (r1 * h2 - r2 * h1) / (h2 - h1);
    } else {
        rep.extrapolated = rep.ratios.back();
    }
    // limit target with t_0 t_1 = 1 exactly
    {
        std::vector<cx> t = solved(0.0);
        std::vector<cx> rest(t.begin() + 2, t.end());
        BCTypeIParams limitP(base.m, base.n - 1, rest, nm);
        rep.target = eval_I_BC(limitP, spec);
    }
    rep.residual = std::abs(rep.extrapolated - rep.target) /
                   std::max(std::abs(rep.target), 1e-300);
    rep.extrap_spread = std::abs(rep.extrapolated - rep.ratios.back());
    rep.ill_conditioned = rep.residual > 10.0 * spec.tol && rep.extrap_spread > 10.0 * rep.residual;
    return rep;
}

} // namespace ehi
