#include "ehi/operators.hpp"

#include <cmath>

namespace ehi {

namespace {

constexpr double kPoleTol = 1e-13;

cx theta_guarded(cx x, cx P, int K) {
    cx v = theta(x, P, K);
    return v;
}

// Weyl-denominator factor of one sigma-term; throws if the evaluation point
// sits on a zero of theta(z^{2 sigma};P).
cx sigma_term(const DOpSpec& op, std::span<const cx> z, std::span<const int> sig, cx P, int K) {
    cx r = 1.0;
    for (int i = 0; i < op.n; ++i) {
        cx zi = sig[(std::size_t)i] > 0 ? z[(std::size_t)i] : 1.0 / z[(std::size_t)i];
        cx den = theta_guarded(zi * zi, P, K);
        if (std::abs(den) < kPoleTol)
            throw pole_error("difference operator: theta(z^{2 sigma};p) vanishes at point");
        cx num = 1.0;
        for (cx u : op.u)
            num *= theta_guarded(u * zi, P, K);
        r *= num / den;
    }
    for (int i = 0; i < op.n; ++i)
        for (int j = i + 1; j < op.n; ++j) {
            cx zi = sig[(std::size_t)i] > 0 ? z[(std::size_t)i] : 1.0 / z[(std::size_t)i];
            cx zj = sig[(std::size_t)j] > 0 ? z[(std::size_t)j] : 1.0 / z[(std::size_t)j];
            cx den = theta_guarded(zi * zj, P, K);
            if (std::abs(den) < kPoleTol)
                throw pole_error("difference operator: cross theta vanishes at point");
            r *= theta_guarded(op.t * zi * zj, P, K) / den;
        }
    return r;
}

} // namespace

FunctionHandle apply_D(const DOpSpec& op, const FunctionHandle& f, const Nome& nm) {
    if (f.arity != op.n)
        throw std::domain_error("apply_D: operator rank does not match handle arity");
    cx P = theta_nome(op.dir, nm);
    cx h = half_shift(op.dir, nm);
    int K = nm.K;
    DOpSpec cap = op;
    FunctionHandle g = f;
    return {op.n, f.quad_depth,
            [cap, g, P, h, K](std::span<const cx> z) {
                std::vector<int> sig((std::size_t)cap.n, 1);
                std::vector<cx> w((std::size_t)cap.n);
                cx total = 0.0;
                for (;;) {
                    cx term = sigma_term(cap, z, sig, P, K);
                    for (int i = 0; i < cap.n; ++i)
                        w[(std::size_t)i] = sig[(std::size_t)i] > 0 ? h * z[(std::size_t)i]
                                                                    : z[(std::size_t)i] / h;
                    total += term * g(w);
                    int i = 0;
                    for (; i < cap.n; ++i) {
                        if (sig[(std::size_t)i] > 0) {
                            sig[(std::size_t)i] = -1;
                            break;
                        }
                        sig[(std::size_t)i] = 1;
                    }
                    if (i == cap.n)
                        break;
                }
                return total;
            },
            "D[" + f.tag + "]"};
}

FunctionHandle apply_calD(int n, cx u0, cx u1, cx u2, cx t, ShiftDir dir,
                          const FunctionHandle& f, const Nome& nm) {
    cx P = theta_nome(dir, nm);
    cx u3 = std::pow(t, 1 - n) * P / (u0 * u1 * u2);
    DOpSpec op{n, {u0, u1, u2, u3}, t, dir};
    FunctionHandle d = apply_D(op, f, nm);
    cx norm = 1.0;
    for (int i = 1; i <= n; ++i) {
        cx tp = std::pow(t, n - i);
        norm *= theta(tp * u0 * u1, P, nm.K) * theta(tp * u0 * u2, P, nm.K) *
                theta(tp * u1 * u2, P, nm.K);
    }
    return {n, d.quad_depth,
            [d, norm](std::span<const cx> z) { return d(z) / norm; },
            "calD[" + f.tag + "]"};
}

FunctionHandle apply_Dminus(int n, cx u0, cx t, ShiftDir dir, const FunctionHandle& f,
                            const Nome& nm) {
    cx P = theta_nome(dir, nm);
    cx Q = shift_nome(dir, nm);
    DOpSpec op{n, {u0, Q * u0, P / u0, 1.0 / (std::pow(t, n - 1) * u0 * Q)}, t, dir};
    return apply_D(op, f, nm);
}

FunctionHandle apply_Dplus(int n, cx u0, cx u1, cx u2, cx u3, cx u4, cx t, ShiftDir dir,
                           const FunctionHandle& f, const Nome& nm) {
    if (f.arity != n)
        throw std::domain_error("apply_Dplus: rank does not match handle arity");
    cx P = theta_nome(dir, nm);
    cx Q = shift_nome(dir, nm);
    cx h = half_shift(dir, nm);
    int K = nm.K;
    cx u5 = P * P * Q / (std::pow(t, n - 1) * u0 * u1 * u2 * u3 * u4);
    std::array<cx, 5> us{u1, u2, u3, u4, u5};
    cx pref = 1.0;
    for (int i = 1; i <= n; ++i) {
        cx tp = std::pow(t, n - i);
        cx num = theta(P * Q * tp * u1 / u0, P, K);
        cx den = 1.0;
        for (std::size_t r = 1; r < 5; ++r)
            den *= theta(us[r] * tp * u1, P, K);
        pref *= num / den;
    }
    FunctionHandle g = f;
    cx tcap = t;
    int ncap = n;
    cx pq = P * Q;
    return {n, f.quad_depth,
            [g, us, u0, pref, tcap, ncap, P, pq, h, K](std::span<const cx> z) {
                std::vector<int> sig((std::size_t)ncap, 1);
                std::vector<cx> w((std::size_t)ncap);
                cx total = 0.0;
                for (;;) {
                    cx term = 1.0;
                    for (int i = 0; i < ncap; ++i) {
                        cx zi = sig[(std::size_t)i] > 0 ? z[(std::size_t)i]
                                                        : 1.0 / z[(std::size_t)i];
                        cx num = 1.0;
                        for (cx u : us)
                            num *= theta(u * zi, P, K);
                        cx den = theta(pq * zi / u0, P, K) * theta(zi * zi, P, K);
                        if (std::abs(den) < kPoleTol)
                            throw pole_error("apply_Dplus: denominator theta vanishes");
                        term *= num / den;
                    }
                    for (int i = 0; i < ncap; ++i)
                        for (int j = i + 1; j < ncap; ++j) {
                            cx zi = sig[(std::size_t)i] > 0 ? z[(std::size_t)i]
                                                            : 1.0 / z[(std::size_t)i];
                            cx zj = sig[(std::size_t)j] > 0 ? z[(std::size_t)j]
                                                            : 1.0 / z[(std::size_t)j];
                            term *= theta(tcap * zi * zj, P, K) / theta(zi * zj, P, K);
                        }
                    for (int i = 0; i < ncap; ++i)
                        w[(std::size_t)i] = sig[(std::size_t)i] > 0 ? h * z[(std::size_t)i]
                                                                    : z[(std::size_t)i] / h;
                    total += term * g(w);
                    int i = 0;
                    for (; i < ncap; ++i) {
                        if (sig[(std::size_t)i] > 0) {
                            sig[(std::size_t)i] = -1;
                            break;
                        }
                        sig[(std::size_t)i] = 1;
                    }
                    if (i == ncap)
                        break;
                }
                return pref * total;
            },
            "D+[" + f.tag + "]"};
}

FunctionHandle apply_Tshift(ShiftDir dir, const FunctionHandle& f, const Nome& nm) {
    cx h = half_shift(dir, nm);
    FunctionHandle g = f;
    return {f.arity, f.quad_depth,
            [g, h](std::span<const cx> z) {
                std::vector<cx> w(z.size());
                for (std::size_t i = 0; i < z.size(); ++i)
                    w[i] = h * z[i];
                return g(w);
            },
            "T[" + f.tag + "]"};
}

FunctionHandle apply_Dlm(int n, long l, long m, cx u0, cx u1, cx u2, cx t,
                         const FunctionHandle& f, const Nome& nm, DlmOrder order) {
    if (l < 0 || m < 0)
        throw std::domain_error("apply_Dlm: negative indices");
    if (l == 0 && m == 0)
        return f;
    auto base = [&](ShiftDir dir, cx a0, cx a1, cx a2, const FunctionHandle& g) {
        cx P = theta_nome(dir, nm);
        DOpSpec op{n, {a0, a1, a2, P / (std::pow(t, n - 1) * a0 * a1 * a2)}, t, dir};
        return apply_D(op, g, nm);
    };
    bool take_q = (order == DlmOrder::q_first) ? (m > 0) : (l == 0);
    cx s = take_q ? nm.sqrt_q : nm.sqrt_p;
    FunctionHandle inner = apply_Dlm(n, take_q ? l : l - 1, take_q ? m - 1 : m, s * u0, s * u1,
                                     s * u2, t, f, nm, order);
    return base(take_q ? ShiftDir::q : ShiftDir::p, u0, u1, u2, inner);
}

// ---- integral operators -------------------------------------------------------

cx apply_Istar(cx u0, const FunctionHandle& f, std::span<const cx> u_rest,
               const QuadratureSpec& spec, const Nome& nm, QuadratureDiag* d) {
    const int n = f.arity;
    if ((int)u_rest.size() != 2 * n + 3)
        throw std::domain_error("apply_Istar: need 2n+3 argument parameters");
    std::vector<cx> u;
    u.reserve((std::size_t)(2 * n + 4));
    u.push_back(u0);
    u.insert(u.end(), u_rest.begin(), u_rest.end());
    cx prod = 1.0;
    for (cx v : u) {
        if (!(std::abs(v) < 1.0))
            throw contour_error("apply_Istar: parameter modulus >= 1");
        prod *= v;
    }
    if (std::abs(prod - nm.p * nm.q) > 1e-10 * std::abs(nm.p * nm.q))
        throw balance_error("apply_Istar: prod u_r != pq");

    cx denom = 1.0;
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = a + 1; b < u.size(); ++b)
            denom *= elliptic_gamma(u[a] * u[b], nm);

    BCIntegrand g;
    g.axis = [&, u](cx z) {
        cx r = 1.0;
        for (cx v : u)
            r *= elliptic_gamma(v * z, nm) * elliptic_gamma(v / z, nm);
        return r / (elliptic_gamma(z * z, nm) * elliptic_gamma(1.0 / (z * z), nm));
    };
    g.pair = [&](cx w) { return 1.0 / (elliptic_gamma(w, nm) * elliptic_gamma(1.0 / w, nm)); };
    if (f.f)
        g.extra = [&](std::span<const cx> z) { return f(z); };
    QuadratureResult qr = bc_torus_integrate(g, n, spec);
    if (d)
        d->absorb(qr.diag);
    cx pref = std::pow(euler_product(nm.p) * euler_product(nm.q), n);
    double fact = 1.0;
    for (int k = 2; k <= n; ++k)
        fact *= k;
    return pref / (std::pow(2.0, n) * fact) * qr.value / denom;
}

namespace {

FunctionHandle make_int_op(int out_arity, cx u0, std::vector<cx> head, cx t,
                           const FunctionHandle& f, const QuadratureSpec& spec, const Nome& nm,
                           const char* name) {
    if (f.quad_depth + 1 > 2)
        throw cost_error("integral operator: nested quadrature depth exceeds 2");
    cx st = std::sqrt(t);
    FunctionHandle g = f;
    QuadratureSpec sp = spec;
    Nome nmc = nm;
    std::string tag = std::string(name) + "[" + f.tag + "]";
    return {out_arity, f.quad_depth + 1,
            [u0, head, st, g, sp, nmc](std::span<const cx> z) {
                std::vector<cx> rest = head;
                for (cx zi : z) {
                    rest.push_back(st * zi);
                    rest.push_back(st / zi);
                }
                return apply_Istar(u0, g, rest, sp, nmc);
            },
            tag};
}

} // namespace

FunctionHandle apply_Iplus(cx u0, cx t, const FunctionHandle& f, const QuadratureSpec& spec,
                           const Nome& nm) {
    const int n = f.arity;
    cx head = std::pow(t, -n - 1) * nm.p * nm.q / u0;
    return make_int_op(n + 1, u0, {head}, t, f, spec, nm, "I+");
}

FunctionHandle apply_Imid(cx u0, cx u1, cx u2, cx t, const FunctionHandle& f,
                          const QuadratureSpec& spec, const Nome& nm) {
    const int n = f.arity;
    cx solved = std::pow(t, -n) * nm.p * nm.q / (u0 * u1 * u2);
    return make_int_op(n, u0, {u1, u2, solved}, t, f, spec, nm, "I");
}

FunctionHandle apply_Iminus(cx u0, cx u1, cx u2, cx u3, cx u4, cx t, const FunctionHandle& f,
                            const QuadratureSpec& spec, const Nome& nm) {
    const int n = f.arity;
    cx solved = std::pow(t, 1 - n) * nm.p * nm.q / (u0 * u1 * u2 * u3 * u4);
    return make_int_op(n - 1, u0, {u1, u2, u3, u4, solved}, t, f, spec, nm, "I-");
}

// ---- finite-sum identities -----------------------------------------------------

cx diffeq_norm_closed(int n, const std::array<cx, 4>& u, cx t, ShiftDir dir, const Nome& nm,
                      int variant) {
    cx P = theta_nome(dir, nm);
    cx r = 1.0, ti = 1.0;
    for (int i = 0; i < n; ++i) {
        if (variant == 0)
            r *= theta(ti * u[0] * u[1], P, nm.K) * theta(ti * u[0] * u[2], P, nm.K) *
                 theta(ti * u[0] * u[3], P, nm.K);
        else
            r *= theta(ti * u[0] * u[1], P, nm.K) * theta(ti * u[0] * u[2], P, nm.K) *
                 theta(ti * u[1] * u[2], P, nm.K);
        ti *= t;
    }
    return r;
}

namespace {

// odometer over sigma in {+1,-1}^n
template <class F> void for_each_sigma(int n, F&& body) {
    std::vector<int> sig((std::size_t)n, 1);
    for (;;) {
        body(std::span<const int>(sig));
        int i = 0;
        for (; i < n; ++i) {
            if (sig[(std::size_t)i] > 0) {
                sig[(std::size_t)i] = -1;
                break;
            }
            sig[(std::size_t)i] = 1;
        }
        if (i == n)
            break;
    }
}

cx flip(cx z, int s) { return s > 0 ? z : 1.0 / z; }

} // namespace

cx remark_sum_lhs(int n, std::span<const cx> t, std::span<const cx> z, cx pnome, int K) {
    if ((int)t.size() != n + 2 || (int)z.size() != n)
        throw std::domain_error("remark_sum_lhs: need n+2 parameters and n points");
    cx T = 1.0;
    for (cx v : t)
        T *= v;
    cx total = 0.0;
    for_each_sigma(n, [&](std::span<const int> sig) {
        cx Zs = 1.0;
        for (int i = 0; i < n; ++i)
            Zs *= flip(z[(std::size_t)i], sig[(std::size_t)i]);
        cx num = theta(T / Zs, pnome, K);
        for (int i = 0; i < n; ++i)
            for (cx v : t)
                num *= theta(v * flip(z[(std::size_t)i], sig[(std::size_t)i]), pnome, K);
        cx den = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                den *= theta(flip(z[(std::size_t)i], sig[(std::size_t)i]) *
                                 flip(z[(std::size_t)j], sig[(std::size_t)j]),
                             pnome, K);
        total += num / den;
    });
    return total;
}

cx remark_sum_rhs(int, std::span<const cx> t, cx pnome, int K) {
    cx r = 1.0;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
            r *= theta(t[a] * t[b], pnome, K);
    return r;
}

cx vanishI_sum(cx v, cx w, std::span<const cx> qs, std::span<const cx> zs, cx pnome, int K) {
    const int n = (int)zs.size();
    cx total = 0.0;
    for_each_sigma(n, [&](std::span<const int> sig) {
        cx term = 1.0;
        for (int i = 0; i < n; ++i) {
            cx zi = flip(zs[(std::size_t)i], sig[(std::size_t)i]);
            term *= theta(v * qs[(std::size_t)i] * zi, pnome, K) *
                    theta(w * qs[(std::size_t)i] * zi, pnome, K) / theta(zi * zi, pnome, K);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cx zi = flip(zs[(std::size_t)i], sig[(std::size_t)i]);
                cx zj = flip(zs[(std::size_t)j], sig[(std::size_t)j]);
                cx qi = qs[(std::size_t)i], qj = qs[(std::size_t)j];
                term *= theta(qi * qj * zi * zj, pnome, K) * theta(qj * zi / (qi * zj), pnome, K) /
                        (qj * theta(zi * zj, pnome, K) * theta(zi / zj, pnome, K));
            }
        total += term;
    });
    return total;
}

cx vanish_tuvw_sum(cx t, cx u, cx v, cx w, std::span<const cx> qs, std::span<const cx> zs,
                   cx pnome, int K) {
    const int n = (int)zs.size();
    cx total = 0.0;
    for_each_sigma(n, [&](std::span<const int> sig) {
        cx term = 1.0;
        for (int i = 0; i < n; ++i) {
            cx zi = flip(zs[(std::size_t)i], sig[(std::size_t)i]);
            cx qi = qs[(std::size_t)i];
            term *= theta(t * zi / qi, pnome, K) * theta(u * qi * zi, pnome, K) *
                    theta(v * qi * zi, pnome, K) * theta(w * qi * zi, pnome, K) /
                    (zi * theta(zi * zi, pnome, K));
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cx zi = flip(zs[(std::size_t)i], sig[(std::size_t)i]);
                cx zj = flip(zs[(std::size_t)j], sig[(std::size_t)j]);
                cx qi = qs[(std::size_t)i], qj = qs[(std::size_t)j];
                term *= theta(qi * qj * zi * zj, pnome, K) * theta(qj * zi / (qi * zj), pnome, K) /
                        (qj * theta(zi * zj, pnome, K) * theta(zi / zj, pnome, K));
            }
        total += term;
    });
    return t * theta(u * v, pnome, K) * theta(u * w, pnome, K) * theta(v * w, pnome, K) * total;
}

cx vanishII_sum(cx ucoup, cx root, std::span<const cx> zs, std::span<const cx> ys, cx pnome,
                int K) {
    const int n = (int)ys.size();
    if ((int)zs.size() != n - 1)
        throw std::domain_error("vanishII_sum: need n-1 z parameters");
    cx su = root;
    cx total = 0.0;
    for_each_sigma(n, [&](std::span<const int> sig) {
        cx term = 1.0;
        for (int i = 0; i < n; ++i) {
            cx yi = flip(ys[(std::size_t)i], sig[(std::size_t)i]);
            cx num = 1.0;
            for (cx zr : zs)
                num *= theta(yi * zr / su, pnome, K) * theta(yi / (zr * su), pnome, K);
            term *= num / (std::pow(yi, n - 2) * theta(yi * yi, pnome, K));
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                cx yi = flip(ys[(std::size_t)i], sig[(std::size_t)i]);
                cx yj = flip(ys[(std::size_t)j], sig[(std::size_t)j]);
                term *= theta(ucoup * yi * yj, pnome, K) / theta(yi * yj, pnome, K);
            }
        total += term;
    });
    return total;
}

cx theta_transform_lhs(long l, long m, const std::array<cx, 4>& t, std::span<const cx> xs,
                       std::span<const cx> ys, cx qshift, cx pnome, int K) {
    if ((long)xs.size() != m || (long)ys.size() != l)
        throw std::domain_error("theta_transform_lhs: need m x's and l y's");
    cx sq = std::sqrt(qshift);
    cx total = 0.0;
    for_each_sigma((int)m, [&](std::span<const int> sig) {
        cx term = 1.0;
        for (long i = 0; i < m; ++i) {
            cx xi = flip(xs[(std::size_t)i], sig[(std::size_t)i]);
            cx num = 1.0;
            for (cx tr : t)
                num *= theta(tr * xi, pnome, K);
            for (cx yr : ys)
                num *= theta(xi * yr / sq, pnome, K) * theta(xi / (yr * sq), pnome, K);
            term *= num / (std::pow(xi, l + 1) * theta(xi * xi, pnome, K));
        }
        for (long i = 0; i < m; ++i)
            for (long j = i + 1; j < m; ++j) {
                cx xi = flip(xs[(std::size_t)i], sig[(std::size_t)i]);
                cx xj = flip(xs[(std::size_t)j], sig[(std::size_t)j]);
                term *= theta(qshift * xi * xj, pnome, K) / theta(xi * xj, pnome, K);
            }
        total += term;
    });
    return total;
}

cx theta_transform_rhs(long l, long m, const std::array<cx, 4>& t, std::span<const cx> xs,
                       std::span<const cx> ys, cx qshift, cx sqrt_qshift, cx pnome, int K) {
    cx sq = sqrt_qshift;
    cx pref = 1.0, qi = 1.0;
    for (long i = 0; i < m - l; ++i) {
        pref *= theta(qi * t[0] * t[1], pnome, K) * theta(qi * t[0] * t[2], pnome, K) *
                theta(qi * t[0] * t[3], pnome, K) /
                (std::pow(-sq, (double)(m - 1)) * t[0]);
        qi *= qshift;
    }
    cx total = 0.0;
    for_each_sigma((int)l, [&](std::span<const int> sig) {
        cx term = 1.0;
        for (long i = 0; i < l; ++i) {
            cx yi = flip(ys[(std::size_t)i], sig[(std::size_t)i]);
            cx num = 1.0;
            for (cx tr : t)
                num *= theta(sq * yi / tr, pnome, K);
            for (cx xr : xs)
                num *= theta(yi * xr / sq, pnome, K) * theta(yi / (xr * sq), pnome, K);
            term *= num / (std::pow(yi, m + 1) * theta(yi * yi, pnome, K));
        }
        for (long i = 0; i < l; ++i)
            for (long j = i + 1; j < l; ++j) {
                cx yi = flip(ys[(std::size_t)i], sig[(std::size_t)i]);
                cx yj = flip(ys[(std::size_t)j], sig[(std::size_t)j]);
                term *= theta(qshift * yi * yj, pnome, K) / theta(yi * yj, pnome, K);
            }
        total += term;
    });
    return pref * total;
}

FunctionHandle int_op_main_testfn(int n, cx u0, std::vector<cx> xs, std::vector<cx> ys,
                                  const Nome& nm) {
    Nome nmc = nm;
    long l = (long)xs.size(), m = (long)ys.size();
    return {n, 0,
            [n, u0, xs, ys, l, m, nmc](std::span<const cx> z) {
                cx r = 1.0;
                cx pq = nmc.p * nmc.q;
                for (int i = 0; i < n; ++i) {
                    cx zi = z[(std::size_t)i];
                    cx num = 1.0;
                    for (cx x : xs)
                        num *= theta(x * zi, nmc.q, nmc.K) * theta(x / zi, nmc.q, nmc.K) / x;
                    for (cx y : ys)
                        num *= theta(y * zi, nmc.p, nmc.K) * theta(y / zi, nmc.p, nmc.K) / y;
                    cx den = theta_factorial(pq * zi / u0, l, m, nmc) *
                             theta_factorial(pq / (zi * u0), l, m, nmc);
                    r *= num / den;
                }
                return r;
            },
            "intop_testfn"};
}

cx int_op_main_rhs(int n, cx u0, std::span<const cx> u_rest, std::span<const cx> xs,
                   std::span<const cx> ys, const Nome& nm) {
    const long l = (long)xs.size(), m = (long)ys.size();
    cx pq = nm.p * nm.q;
    cx pref = 1.0;
    for (cx ur : u_rest)
        pref /= theta_factorial(pq / (u0 * ur), l, m, nm);

    auto block = [&](std::span<const cx> vs, cx tn, cx qn, cx head_shift, long count) {
        // tn: theta nome of the block; qn: the other nome (cross-term shift);
        // head_shift: p^{-l} u_0 (x block) or q^{-m} u_0 (y block)
        cx total = 0.0;
        for_each_sigma((int)count, [&](std::span<const int> sig) {
            cx term = 1.0;
            for (long i = 0; i < count; ++i) {
                cx vi = flip(vs[(std::size_t)i], sig[(std::size_t)i]);
                cx num = theta(head_shift * vi, tn, nm.K);
                for (cx ur : u_rest)
                    num *= theta(ur * vi, tn, nm.K);
                term *= num / (std::pow(vi, (double)n) * theta(vi * vi, tn, nm.K));
            }
            for (long i = 0; i < count; ++i)
                for (long j = i + 1; j < count; ++j) {
                    cx vi = flip(vs[(std::size_t)i], sig[(std::size_t)i]);
                    cx vj = flip(vs[(std::size_t)j], sig[(std::size_t)j]);
                    term *= theta(qn * vi * vj, tn, nm.K) / theta(vi * vj, tn, nm.K);
                }
            total += term;
        });
        return total;
    };
    cx xblock = block(xs, nm.q, nm.p, u0 / std::pow(nm.p, (double)l), l);
    cx yblock = block(ys, nm.p, nm.q, u0 / std::pow(nm.q, (double)m), m);
    return pref * xblock * yblock;
}

namespace {

cx det_elimination(std::vector<std::vector<cx>> a) {
    const std::size_t n = a.size();
    cx det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        if (std::abs(a[piv][c]) == 0.0)
            return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            cx f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

} // namespace

double det_warnaar_residual(std::span<const cx> as, std::span<const cx> zs, cx qnome, int K) {
    const std::size_t n = as.size();
    if (zs.size() != n)
        throw std::domain_error("det_warnaar_residual: need equal counts");
    std::vector<std::vector<cx>> mat(n, std::vector<cx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mat[i][j] = as[i] / (theta(as[i] * zs[j], qnome, K) * theta(as[i] / zs[j], qnome, K));
    cx det = det_elimination(std::move(mat));
    cx closed = (n % 4 <= 1) ? 1.0 : -1.0; // (-1)^{n(n-1)/2}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            closed *= theta(as[i] * as[j], qnome, K) * theta(as[i] / as[j], qnome, K) / as[i] *
                      theta(zs[i] * zs[j], qnome, K) * theta(zs[i] / zs[j], qnome, K) / zs[i];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            closed /= theta(as[i] * zs[j], qnome, K) * theta(as[i] / zs[j], qnome, K) / as[i];
    return std::abs(det - closed) / std::max(std::abs(closed), 1e-300);
}

double det_frobenius_residual(cx t, std::span<const cx> xs, std::span<const cx> ys, cx pnome,
                              int K) {
    const std::size_t n = xs.size();
    if (ys.size() != n)
        throw std::domain_error("det_frobenius_residual: need equal counts");
    cx th_t = theta(t, pnome, K);
    std::vector<std::vector<cx>> mat(n, std::vector<cx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mat[i][j] = theta(t * xs[i] * ys[j], pnome, K) /
                        (th_t * theta(xs[i] * ys[j], pnome, K));
    cx det = det_elimination(std::move(mat));
    cx prodxy = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        prodxy *= xs[i] * ys[i];
    cx closed = theta(t * prodxy, pnome, K) / th_t;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            closed *= xs[j] * ys[j] * theta(xs[i] / xs[j], pnome, K) *
                      theta(ys[i] / ys[j], pnome, K);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            closed /= theta(xs[i] * ys[j], pnome, K);
    return std::abs(det - closed) / std::max(std::abs(closed), 1e-300);
}

double bc1_expansion_residual(cx v, std::span<const cx> nodes, std::span<const cx> xs, cx pnome,
                              int K) {
    const std::size_t n = xs.size();
    if (nodes.size() != n + 1)
        throw std::domain_error("bc1_expansion_residual: need n+1 nodes");
    auto f = [&](cx a) {
        cx r = 1.0;
        for (cx x : xs)
            r *= theta(a * x, pnome, K) * theta(a / x, pnome, K);
        return r;
    };
    cx lhs = f(v);
    cx rhs = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        // f with x-arguments replaced by the nodes other than j
        cx val = 1.0;
        for (std::size_t k = 0; k <= n; ++k)
            if (k != j)
                val *= theta(v * nodes[k], pnome, K) * theta(v / nodes[k], pnome, K);
        cx num = f(nodes[j]);
        cx den = 1.0;
        for (std::size_t k = 0; k <= n; ++k)
            if (k != j)
                den *= theta(nodes[j] * nodes[k], pnome, K) * theta(nodes[j] / nodes[k], pnome, K);
        rhs += val * num / den;
    }
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

} // namespace ehi
