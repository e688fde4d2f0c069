#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ehi/biorth.hpp"
#include "ehi/operators.hpp"
#include "ehi/sampling.hpp"

using namespace ehi;

namespace {
double rel(cx a, cx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }
} // namespace

TEST_CASE("diffeq_norm: z-independence and both closed forms, n = 1..3") {
    Rng rng(2);
    for (int n = 1; n <= 3; ++n) {
        Nome nm(rng.annulus(0.08, 0.3), rng.annulus(0.08, 0.3));
        cx t = rng.annulus(0.25, 0.6);
        std::array<cx, 4> u; // t^{n-1} u0 u1 u2 u3 = p
        cx prod = std::pow(t, n - 1);
        for (int r = 0; r < 3; ++r) {
            u[(std::size_t)r] = rng.annulus(0.3, 0.9);
            prod *= u[(std::size_t)r];
        }
        u[3] = nm.p / prod;
        DOpSpec op{n, u, t, ShiftDir::q};
        FunctionHandle D1 = apply_D(op, constant_one(n), nm);
        cx c0 = diffeq_norm_closed(n, u, t, ShiftDir::q, nm, 0);
        cx c1 = diffeq_norm_closed(n, u, t, ShiftDir::q, nm, 1);
        CHECK(rel(c0, c1) < 1e-12);
        for (int rep = 0; rep < 5; ++rep) {
            auto z = sample_generic_points(rng, n, nm.p, nm.K);
            CHECK(rel(D1(z), c0) < 1e-12);
        }
    }
}

TEST_CASE("remark theta sum identity, n = 1..3") {
    Rng rng(3);
    for (int n = 1; n <= 3; ++n) {
        cx pn = rng.annulus(0.08, 0.3);
        int K = truncation_depth(std::abs(pn), 1e-15);
        std::vector<cx> t((std::size_t)(n + 2));
        for (auto& v : t)
            v = rng.annulus(0.3, 1.1);
        auto z = sample_generic_points(rng, n, pn, K);
        cx lhs = remark_sum_lhs(n, t, z, pn, K);
        cx rhs = remark_sum_rhs(n, t, pn, K);
        CHECK(rel(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("vanishI at n = 2") {
    Rng rng(5);
    cx pn = rng.annulus(0.1, 0.3);
    int K = truncation_depth(std::abs(pn), 1e-15);
    std::vector<cx> qs{rng.annulus(0.5, 1.4), rng.annulus(0.5, 1.4)};
    auto zs = sample_generic_points(rng, 2, pn, K);
    cx v = rng.annulus(0.4, 1.2);
    cx w = 1.0 / (v * qs[0] * qs[0] * qs[1] * qs[1]);
    cx sum = vanishI_sum(v, w, qs, zs, pn, K);
    cx scale = vanishI_sum(v, w * 1.37, qs, zs, pn, K); // unbalanced reference
    CHECK(std::abs(sum) < 1e-12 * std::abs(scale));
}

TEST_CASE("tuvw corollary symmetric under permutations") {
    Rng rng(7);
    cx pn = rng.annulus(0.1, 0.3);
    int K = truncation_depth(std::abs(pn), 1e-15);
    std::vector<cx> qs{rng.annulus(0.5, 1.4), rng.annulus(0.5, 1.4)};
    auto zs = sample_generic_points(rng, 2, pn, K);
    cx t = rng.annulus(0.4, 1.2), u = rng.annulus(0.4, 1.2), v = rng.annulus(0.4, 1.2);
    cx w = 1.0 / (t * u * v * qs[0] * qs[0] * qs[1] * qs[1]);
    cx a = vanish_tuvw_sum(t, u, v, w, qs, zs, pn, K);
    cx b = vanish_tuvw_sum(w, v, u, t, qs, zs, pn, K);
    cx c = vanish_tuvw_sum(u, t, w, v, qs, zs, pn, K);
    CHECK(rel(a, b) < 1e-11);
    CHECK(rel(a, c) < 1e-11);
}

TEST_CASE("vanishII at n = 1 and n = 2") {
    Rng rng(9);
    cx pn = rng.annulus(0.1, 0.3);
    int K = truncation_depth(std::abs(pn), 1e-15);
    for (int n : {1, 2}) {
        cx u = rng.annulus(0.4, 0.9);
        cx root = std::sqrt(u);
        auto zs = sample_generic_points(rng, std::max(0, n - 1), pn, K);
        auto ys = sample_generic_points(rng, n, pn, K);
        cx sum = vanishII_sum(u, root, zs, ys, pn, K);
        cx ref = vanishII_sum(u, root * 1.23, zs, ys, pn, K); // structurally detuned
        if (n == 1) {
            // antisymmetric for any coupling; compare to one summand's size
            double termscale = std::abs(ys[0] / theta(ys[0] * ys[0], pn, K));
            CHECK(std::abs(sum) < 1e-13 * termscale);
        } else {
            CHECK(std::abs(sum) < 1e-12 * std::abs(ref));
        }
    }
}

TEST_CASE("theta transformation (l,m) = (0,1) and (1,2)") {
    Rng rng(11);
    cx pn = rng.annulus(0.1, 0.3);
    cx qs = rng.annulus(0.1, 0.3);
    int K = truncation_depth(std::max(std::abs(pn), std::abs(qs)), 1e-15);
    for (auto [l, m] : std::vector<std::pair<long, long>>{{0, 1}, {1, 2}}) {
        std::array<cx, 4> t;
        cx prod = std::pow(qs, (double)(m - l));
        for (int r = 0; r < 3; ++r) {
            t[(std::size_t)r] = rng.annulus(0.4, 1.2);
            prod *= t[(std::size_t)r];
        }
        t[3] = qs / prod;
        auto xs = sample_generic_points(rng, (int)m, pn, K);
        auto ys = sample_generic_points(rng, (int)l, pn, K);
        cx sq = std::sqrt(qs);
        cx lhs = theta_transform_lhs(l, m, t, xs, ys, qs, pn, K);
        cx rhs = theta_transform_rhs(l, m, t, xs, ys, qs, sq, pn, K);
        CHECK(rel(lhs, rhs) < 1e-11);
    }
}

TEST_CASE("determinant identities") {
    Rng rng(13);
    cx qn = rng.annulus(0.1, 0.3);
    int K = truncation_depth(std::abs(qn), 1e-15);
    {
        std::vector<cx> a1{rng.annulus(0.4, 0.9)};
        auto z1 = sample_generic_points(rng, 1, qn, K);
        CHECK(det_warnaar_residual(a1, z1, qn, K) < 1e-13);
        std::vector<cx> a3{rng.annulus(0.4, 0.9), rng.annulus(0.4, 0.9), rng.annulus(0.4, 0.9)};
        auto z3 = sample_generic_points(rng, 3, qn, K);
        CHECK(det_warnaar_residual(a3, z3, qn, K) < 1e-11);
    }
    {
        cx t = rng.annulus(0.4, 0.9);
        for (int n : {2, 3}) {
            auto xs = sample_generic_points(rng, n, qn, K, 0.5, 1.2);
            auto ys = sample_generic_points(rng, n, qn, K, 0.5, 1.2);
            CHECK(det_frobenius_residual(t, xs, ys, qn, K) < 1e-11);
        }
    }
    {
        cx v = rng.annulus(0.5, 1.1);
        auto nodes = sample_generic_points(rng, 3, qn, K, 0.5, 1.3);
        auto xs = sample_generic_points(rng, 2, qn, K);
        CHECK(bc1_expansion_residual(v, nodes, xs, qn, K) < 1e-11);
    }
}

TEST_CASE("Dlm base cases and order independence of D_{1,1}") {
    Rng rng(15);
    Nome nm(0.22, 0.13);
    cx t = rng.annulus(0.3, 0.6);
    cx u0 = rng.annulus(0.4, 0.8), u1 = rng.annulus(0.4, 0.8), u2 = rng.annulus(0.4, 0.8);
    int n = 1;
    FunctionHandle f = make_F_handle(n, cx(0.6, 0.1), {Partition{1}, Partition{}}, t, nm);
    FunctionHandle a = apply_Dlm(n, 1, 1, u0, u1, u2, t, f, nm, DlmOrder::q_first);
    FunctionHandle b = apply_Dlm(n, 1, 1, u0, u1, u2, t, f, nm, DlmOrder::p_first);
    DOpSpec base{n, {u0, u1, u2, nm.p / (u0 * u1 * u2)}, t, ShiftDir::q};
    FunctionHandle c = apply_Dlm(n, 0, 1, u0, u1, u2, t, f, nm);
    FunctionHandle d = apply_D(base, f, nm);
    for (int it = 0; it < 3; ++it) {
        auto z = sample_generic_points(rng, n, nm.p, nm.K, 0.85, 1.15);
        CHECK(rel(a(z), b(z)) < 1e-11);
        CHECK(rel(c(z), d(z)) < 1e-14);
    }
}

TEST_CASE("Istar maps 1 to 1") {
    QuadratureSpec spec{64, 1e-11, 4096};
    for (std::uint64_t seed : {1, 4}) {
        Rng rng(seed);
        Nome nm(rng.annulus(0.08, 0.25), rng.annulus(0.08, 0.25));
        SamplerConfig cfg;
        cfg.mod_lo = 0.2;
        cfg.mod_hi = 0.8;
        auto u = sample_balanced(rng, 6, nm.p * nm.q, nm, cfg);
        cx val = apply_Istar(u[0], constant_one(1), std::span<const cx>(u).subspan(1), spec, nm);
        CHECK(rel(val, cx(1.0)) < 1e-9);
    }
}

TEST_CASE("int_op_main finite-sum image at n=1") {
    QuadratureSpec spec{64, 1e-11, 8192};
    Rng rng(23);
    Nome nm(0.28, 0.22);
    for (auto [l, m] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
        // the test function lives in A(u_0) with poles u_0/p^l, u_0/q^m
        double cap = std::min(std::pow(std::abs(nm.p), l), std::pow(std::abs(nm.q), m));
        cx u0 = rng.on_circle(0.7 * cap);
        SamplerConfig cfg;
        cfg.mod_lo = 0.35;
        cfg.mod_hi = 0.9;
        cfg.solved_lo = 0.05;
        auto rest = sample_balanced(rng, 5, nm.p * nm.q / u0, nm, cfg);
        std::vector<cx> xs, ys;
        for (int i = 0; i < l; ++i)
            xs.push_back(rng.annulus(0.8, 1.2));
        for (int i = 0; i < m; ++i)
            ys.push_back(rng.annulus(0.8, 1.2));
        FunctionHandle f = int_op_main_testfn(1, u0, xs, ys, nm);
        cx lhs = apply_Istar(u0, f, rest, spec, nm);
        cx rhs = int_op_main_rhs(1, u0, rest, xs, ys, nm);
        CHECK(rel(lhs, rhs) < 1e-8);
    }
}

TEST_CASE("adjointness of the calD pair at n=1") {
    QuadratureSpec spec{64, 1e-11, 8192};
    Rng rng(29);
    // q-dominant window: the mu-direction test functions keep their poles
    // u/q inside while the primed density parameters stay in the disc
    Nome nm(0.04, 0.3);
    cx t = rng.annulus(0.3, 0.5);
    cx u0 = rng.on_circle(0.8 * std::abs(nm.q));                      // A(q^{1/2} u0) after raise
    cx u1 = rng.on_circle(0.8 * std::abs(nm.q) * std::sqrt(std::abs(nm.q)));
    SamplerConfig cfg;
    cfg.mod_lo = 0.5;
    cfg.mod_hi = 0.95;
    cfg.solved_lo = 0.05;
    auto ts = sample_balanced(rng, 4, nm.p * nm.q / (u0 * u1), nm, cfg);
    BiorthParams P(1, ts[0], ts[1], ts[2], ts[3], u0, u1, t, nm);

    FunctionHandle f = make_F_handle(1, nm.sqrt_q * u0, {Partition{}, Partition{1}}, t, nm);
    FunctionHandle g = make_F_handle(1, u1, {Partition{}, Partition{1}}, t, nm);

    FunctionHandle Df = apply_calD(1, u0, ts[0], ts[1], t, ShiftDir::q, f, nm);
    cx lhs = inner_product(Df, g, P, spec);

    cx sq = nm.sqrt_q;
    BiorthParams Pp(1, sq * ts[0], sq * ts[1], ts[2] / sq, ts[3] / sq, sq * u0, u1 / sq, t, nm);
    FunctionHandle Dg = apply_calD(1, u1 / sq, ts[2] / sq, ts[3] / sq, t, ShiftDir::q, g, nm);
    cx rhs = inner_product(f, Dg, Pp, spec);
    CHECK(rel(lhs, rhs) < 1e-8);
}

TEST_CASE("adjointness of the D+/D- pair at n=1 with constant C") {
    QuadratureSpec spec{64, 1e-11, 8192};
    Rng rng(31);
    Nome nm(0.03, 0.35);
    cx q = nm.q, sq = nm.sqrt_q;
    cx t = rng.annulus(0.3, 0.5);
    cx u0 = rng.on_circle(0.8 * std::abs(q) * std::abs(q));
    cx u1 = rng.on_circle(0.8 * std::abs(q) * std::sqrt(std::abs(q)));
    SamplerConfig cfg;
    cfg.mod_lo = 0.5;
    cfg.mod_hi = 0.95;
    cfg.solved_lo = 0.05;
    auto ts = sample_balanced(rng, 4, nm.p * nm.q / (u0 * u1), nm, cfg);
    BiorthParams P(1, ts[0], ts[1], ts[2], ts[3], u0, u1, t, nm);

    FunctionHandle f = make_F_handle(1, u0 / sq, {Partition{}, Partition{1}}, t, nm);
    FunctionHandle g = make_F_handle(1, u1, {Partition{}, Partition{1}}, t, nm);

    FunctionHandle Dplusf = apply_Dplus(1, u0, ts[0], ts[1], ts[2], ts[3], t, ShiftDir::q, f, nm);
    cx lhs = inner_product(Dplusf, g, P, spec);

    BiorthParams Pp(1, sq * ts[0], sq * ts[1], sq * ts[2], sq * ts[3], u0 / sq, u1 / (q * sq), t,
                    nm);
    FunctionHandle Dg = apply_Dminus(1, Pp.u1, t, ShiftDir::q, g, nm);
    cx rhs = inner_product(f, Dg, Pp, spec);

    cx C = theta_p(ts[1] * ts[2], nm) * theta_p(ts[1] * ts[3], nm) * theta_p(ts[2] * ts[3], nm) *
           theta_p(nm.p * nm.q * ts[0] / u0, nm) /
           (theta_p(ts[0] * u1 / q, nm) * theta_p(ts[1] * u1 / q, nm) *
            theta_p(ts[2] * u1 / q, nm) * theta_p(ts[3] * u1 / q, nm) *
            theta_p(u0 * u1 / q, nm) * theta_p(u0 * u1 / (q * q), nm) *
            theta_p(nm.p * ts[0] * u1 * t, nm));
    CHECK(rel(lhs, C * rhs) < 1e-8);
}

TEST_CASE("mp_chain: I- after D+ annihilates, n=1") {
    QuadratureSpec spec{64, 1e-10, 4096};
    Rng rng(37);
    Nome nm(0.05, 0.35);
    cx t = rng.annulus(0.3, 0.5);
    cx u0 = rng.on_circle(0.8 * std::abs(nm.q) * std::abs(nm.q));
    std::array<cx, 4> ts;
    for (auto& v : ts)
        v = rng.annulus(0.72, 0.92);
    FunctionHandle f = make_F_handle(1, u0 / nm.sqrt_q, {Partition{}, Partition{1}}, t, nm);
    FunctionHandle Dp = apply_Dplus(1, u0, ts[0], ts[1], ts[2], ts[3], t, ShiftDir::q, f, nm);
    FunctionHandle chain = apply_Iminus(u0, ts[0], ts[1], ts[2], ts[3], t, Dp, spec, nm);
    cx val = chain({});
    FunctionHandle ref = apply_Iminus(u0, ts[0] * 1.13, ts[1], ts[2], ts[3], t, Dp, spec, nm);
    cx scale = ref({});
    CHECK(std::abs(val) < 1e-8 * std::abs(scale));
}

TEST_CASE("mp_chain: D- after I+ annihilates, n=2") {
    QuadratureSpec spec{48, 1e-10, 2048};
    Rng rng(41);
    Nome nm(0.05, 0.35);
    cx t(0.3, 0.02);
    cx u0 = rng.on_circle(0.25);
    FunctionHandle f = make_F_handle(1, u0, {Partition{}, Partition{1}}, t, nm);
    FunctionHandle lifted = apply_Iplus(u0, t, f, spec, nm);
    FunctionHandle chain =
        apply_Dminus(2, std::sqrt(t) * u0 / (nm.q * nm.sqrt_q), t, ShiftDir::q, lifted, nm);
    auto z = sample_generic_points(rng, 2, nm.p, nm.K, 0.95, 1.05);
    cx val = chain(z);
    FunctionHandle ref =
        apply_Dminus(2, 1.17 * std::sqrt(t) * u0 / (nm.q * nm.sqrt_q), t, ShiftDir::q, lifted, nm);
    cx scale = ref(z);
    CHECK(std::abs(val) < 1e-7 * std::abs(scale));
}

TEST_CASE("commutation of integral and difference operators, n=1") {
    QuadratureSpec spec{64, 1e-10, 4096};
    Rng rng(43);
    Nome nm(0.05, 0.3);
    cx sq = nm.sqrt_q;
    cx u0 = rng.on_circle(0.45);
    cx t0 = rng.annulus(0.75, 0.9), t1 = rng.annulus(0.75, 0.9), t2 = rng.annulus(0.75, 0.9),
       t3 = rng.annulus(0.75, 0.9);
    std::array<cx, 1> z{rng.on_circle(1.0)};

    {
        cx t = rng.annulus(0.28, 0.35);
        cx st = std::sqrt(t);
        FunctionHandle f = make_F_handle(1, sq * u0, {Partition{}, Partition{1}}, t, nm);
        FunctionHandle lhs = apply_Imid(u0, t0, t1, t,
                                        apply_calD(1, u0, t0, t1, t, ShiftDir::q, f, nm), spec, nm);
        FunctionHandle rhs =
            apply_calD(1, st * u0, st * t0, st * t1, t, ShiftDir::q,
                       apply_Imid(sq * u0, sq * t0, sq * t1, t, f, spec, nm), nm);
        CHECK(rel(lhs(z), rhs(z)) < 1e-8);
    }
    {
        cx t = rng.annulus(0.28, 0.35);
        cx st = std::sqrt(t);
        FunctionHandle f = make_F_handle(1, sq * u0, {Partition{}, Partition{1}}, t, nm);
        FunctionHandle lhs = apply_Imid(u0, t0, t1, t,
                                        apply_calD(1, u0, t0, t2, t, ShiftDir::q, f, nm), spec, nm);
        FunctionHandle rhs =
            apply_calD(1, st * u0, st * t0, t2 / st, t, ShiftDir::q,
                       apply_Imid(sq * u0, sq * t0, t1 / sq, t, f, spec, nm), nm);
        CHECK(rel(lhs(z), rhs(z)) < 1e-8);
    }
    {
        cx t(0.26, 0.01);
        cx st = std::sqrt(t);
        FunctionHandle f = make_F_handle(1, sq * u0, {Partition{}, Partition{1}}, t, nm);
        FunctionHandle lhs =
            apply_Iplus(u0, t, apply_calD(1, u0, t0, t1, t, ShiftDir::q, f, nm), spec, nm);
        FunctionHandle rhs = apply_calD(2, st * u0, t0 / st, t1 / st, t, ShiftDir::q,
                                        apply_Iplus(sq * u0, t, f, spec, nm), nm);
        auto z2 = sample_generic_points(rng, 2, nm.p, nm.K, 0.95, 1.05);
        CHECK(rel(lhs(z2), rhs(z2)) < 1e-7);
    }
    {
        cx t(0.2, 0.01);
        cx st = std::sqrt(t);
        cx u0s = rng.on_circle(0.8 * std::pow(std::abs(nm.q), 1.5));
        FunctionHandle f = make_F_handle(1, u0s / sq, {Partition{}, Partition{1}}, t, nm);
        FunctionHandle lhs =
            apply_Imid(u0s, t0, t1, t,
                       apply_Dplus(1, u0s, t0, t1, t2, t3, t, ShiftDir::q, f, nm), spec, nm);
        FunctionHandle rhs =
            apply_Dplus(1, st * u0s, st * t0, st * t1, t2 / st, t3 / st, t, ShiftDir::q,
                        apply_Imid(u0s / sq, sq * t0, sq * t1, t, f, spec, nm), nm);
        CHECK(rel(lhs(z), rhs(z)) < 1e-8);
    }
}
