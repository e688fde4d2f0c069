#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ehi/sampling.hpp"
#include "ehi/special.hpp"

using namespace ehi;

namespace {

double rel(cx a, cx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

// direct products at long-double precision, independent of the library path
cx theta_oracle(cx x, cx p, int K = 200) {
    std::complex<long double> r = 1.0L, pk = 1.0L;
    std::complex<long double> xl(x.real(), x.imag()), pl(p.real(), p.imag());
    for (int k = 0; k < K; ++k) {
        r *= (1.0L - pk * xl) * (1.0L - pk * pl / xl);
        pk *= pl;
    }
    return cx((double)r.real(), (double)r.imag());
}

} // namespace

TEST_CASE("theta against frozen high-precision values") {
    // reference values from a 40-digit direct product
    CHECK(rel(theta(0.5, 0.1, 60), cx(0.3695093618569192580625478, 0)) < 1e-15);
    CHECK(rel(theta(cx(0.4, 0.2), 0.15, 60), cx(0.3963954953305635978109508, -0.04793677592947231161641865)) < 1e-15);
}

TEST_CASE("theta zero at x = p") {
    Nome nm(0.1, 0.2);
    CHECK(std::abs(theta_p(cx(0.1, 0.0), nm)) < 1e-15);
}

TEST_CASE("theta inversion identities on random samples") {
    Rng rng(7);
    for (int it = 0; it < 100; ++it) {
        cx p = rng.annulus(0.05, 0.35);
        cx x = rng.annulus(0.2, 2.0);
        int K = truncation_depth(std::abs(p), 1e-15);
        cx a = theta(x, p, K);
        CHECK(rel(a, theta(p / x, p, K)) < 1e-12);
        CHECK(rel(a, (-x) * theta(1.0 / x, p, K)) < 1e-12);
    }
}

TEST_CASE("theta against oracle on random samples") {
    Rng rng(11);
    for (int it = 0; it < 50; ++it) {
        cx p = rng.annulus(0.05, 0.35);
        cx x = rng.annulus(0.3, 1.5);
        int K = truncation_depth(std::abs(p), 1e-15);
        CHECK(rel(theta(x, p, K), theta_oracle(x, p)) < 1e-14);
    }
}

TEST_CASE("pochhammer products") {
    CHECK(rel(pochhammer_inf(0.3, 0.2), cx(0.6481546630616318793156096, 0)) < 1e-15);
    CHECK(pochhammer_inf(0.0, 0.2) == cx(1.0));
    Nome nm(0.2, 0.15);
    CHECK(rel(pochhammer_inf2(0.3, nm), cx(0.6059770543986740192287668, 0)) < 1e-14);
    // index split j=0 vs j>=1
    Rng rng(3);
    for (int it = 0; it < 20; ++it) {
        Nome m(rng.annulus(0.05, 0.3), rng.annulus(0.05, 0.3));
        cx x = rng.annulus(0.2, 0.9);
        CHECK(rel(pochhammer_inf2(x, m), pochhammer_inf(x, m.p, m.eps) * pochhammer_inf2(m.q * x, m)) < 1e-13);
    }
}

TEST_CASE("elliptic gamma frozen values and functional equations") {
    Nome nm(0.15, 0.2);
    CHECK(rel(elliptic_gamma(0.6, nm), cx(3.115706376537192574246859, 0)) < 1e-14);
    Nome nm2(0.1, 0.2);
    CHECK(rel(elliptic_gamma(0.5, nm2), cx(2.311976110953250342259472, 0)) < 1e-14);

    Rng rng(5);
    for (int it = 0; it < 100; ++it) {
        Nome m(rng.annulus(0.05, 0.35), rng.annulus(0.05, 0.35));
        cx x = rng.annulus(0.3, 1.2);
        cx g = elliptic_gamma(x, m);
        // reflection
        CHECK(rel(g * elliptic_gamma(m.p * m.q / x, m), cx(1.0)) < 1e-12);
        // quasi-periodicity in both directions
        CHECK(rel(elliptic_gamma(m.p * x, m), theta_q(x, m) * g) < 1e-12);
        CHECK(rel(elliptic_gamma(m.q * x, m), theta_p(x, m) * g) < 1e-12);
        // p <-> q symmetry
        CHECK(rel(g, elliptic_gamma(x, m.swapped())) < 1e-12);
    }
}

TEST_CASE("elliptic gamma at sqrt(pq) is 1") {
    for (double p : {0.1, 0.22}) {
        for (double q : {0.15, 0.3}) {
            Nome nm(p, q);
            CHECK(rel(elliptic_gamma(std::sqrt(p * q), nm), cx(1.0)) < 1e-13);
        }
    }
}

TEST_CASE("elliptic gamma pole detection") {
    Nome nm(0.1, 0.2);
    CHECK_THROWS_AS((void)elliptic_gamma(cx(1.0, 0.0), nm), pole_error);
    CHECK_THROWS_AS((void)elliptic_gamma(1.0 / (nm.p * nm.q), nm), pole_error);
}

TEST_CASE("theta factorial") {
    Nome nm(0.1, 0.2);
    CHECK(theta_factorial(cx(0.77, 0.1), 0, 0, nm) == cx(1.0));
    // frozen value; the (0.4,2,1) point sits on a lattice zero (p x = q^2)
    CHECK(std::abs(theta_factorial(0.4, 2, 1, nm)) < 1e-14);
    CHECK(rel(theta_factorial(0.45, 2, 1, nm), cx(-0.02727197501458423082520111, 0)) < 1e-14);
    CHECK(rel(theta_factorial(cx(0.55, 0.1), 1, 2, nm),
              cx(0.01087183528436141107674312, 0.007489011419040985107415489)) < 1e-14);

    // gamma-ratio identity and (p,l) <-> (q,m) swap
    Rng rng(13);
    for (int it = 0; it < 50; ++it) {
        Nome m(rng.annulus(0.05, 0.3), rng.annulus(0.05, 0.3));
        cx x = rng.annulus(0.3, 1.2);
        long l = (long)(rng.uniform() * 3), mm = (long)(rng.uniform() * 3);
        cx lhs = elliptic_gamma(std::pow(m.p, (double)l) * std::pow(m.q, (double)mm) * x, m) /
                 elliptic_gamma(x, m);
        cx rhs = std::pow(-x, (double)(-l * mm)) *
                 std::pow(m.p, -0.5 * (double)(l * mm * (l - 1))) *
                 std::pow(m.q, -0.5 * (double)(l * mm * (mm - 1))) *
                 theta_factorial(x, l, mm, m);
        CHECK(rel(lhs, rhs) < 1e-11);
        CHECK(theta_factorial(x, l, mm, m) == theta_factorial(x, mm, l, m.swapped()));
    }
}

TEST_CASE("gamma_plus") {
    Nome nm(0.1, 0.2);
    CHECK(rel(gamma_plus(0.5, 0.3, nm), cx(0.2921890378818190423501561, 0)) < 1e-13);
    // quasi-periodicity in t
    Rng rng(17);
    for (int it = 0; it < 20; ++it) {
        Nome m(rng.annulus(0.08, 0.3), rng.annulus(0.08, 0.3));
        cx t = rng.annulus(0.1, 0.35);
        cx x = rng.annulus(0.3, 1.0);
        CHECK(rel(gamma_plus(t * x, t, m), gamma_plus(x, t, m) * elliptic_gamma(x, m)) < 1e-12);
    }
    // t -> 0: the i=0 slice (x;p,q)_inf dominates and the 1/x factors drop out
    cx x = 0.45;
    cx tiny = 1e-9;
    cx approx = gamma_plus(x, tiny, nm);
    CHECK(rel(approx, pochhammer_inf2(x, nm)) < 1e-7);
}

TEST_CASE("truncation certificate: doubling K moves nothing") {
    Rng rng(19);
    for (int it = 0; it < 25; ++it) {
        Nome m(rng.annulus(0.05, 0.35), rng.annulus(0.05, 0.35));
        Nome deep(m.p, m.q, m.eps);
        deep.K *= 2;
        deep.K2 *= 2;
        cx x = rng.annulus(0.3, 1.1);
        CHECK(rel(theta(x, m.p, m.K), theta(x, m.p, 2 * m.K)) < 1e-13);
        CHECK(rel(elliptic_gamma(x, m), elliptic_gamma(x, deep)) < 1e-13);
        CHECK(rel(pochhammer_inf2(x, m), pochhammer_inf2(x, deep)) < 1e-13);
    }
}

TEST_CASE("gamma_ratio_regularized cancels constructed poles") {
    Nome nm(0.12, 0.27);
    // Gamma(s)/Gamma(s p^-1 q^-2) as s -> 1: both simple poles, finite ratio.
    cx y = 1.0 / (nm.p * nm.q * nm.q);
    std::vector<cx> num{cx(1.0)};
    std::vector<cx> den{y};
    cx r = gamma_ratio_regularized(num, den, nm);
    CHECK(is_finite(r));
    // cross-check: lim Gamma(s)/Gamma(s y) = lim (1-sy)/(1-s) * [reg parts]
    // computed by explicit small offset at much lower accuracy
    double h = 1e-7;
    cx approx = elliptic_gamma(cx(1.0 + h), nm) / elliptic_gamma((1.0 + h) * y, nm);
    CHECK(rel(r, approx) < 1e-5);
    // unbalanced pole counts must throw
    std::vector<cx> bad{cx(0.5)};
    CHECK_THROWS_AS((void)gamma_ratio_regularized(num, bad, nm), pole_error);
}

TEST_CASE("nome validation") {
    CHECK_THROWS_AS(Nome(1.2, 0.3), std::domain_error);
    CHECK_THROWS_AS(Nome(0.0, 0.3), std::domain_error);
    Nome nm(0.35, 0.35);
    CHECK(nm.K <= 35);
    CHECK_THROWS_AS((void)theta(cx(0.0), cx(0.1), 10), std::domain_error);
}
