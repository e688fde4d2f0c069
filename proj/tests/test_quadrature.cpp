#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ehi/integrals.hpp"

using namespace ehi;

TEST_CASE("constant integrates to one") {
    QuadratureSpec spec{16, 1e-12, 256};
    auto r = torus_integrate([](std::span<const cx>) { return cx(1.0); }, 2, spec);
    CHECK(std::abs(r.value - 1.0) < 1e-14);
    CHECK(r.diag.converged);
}

TEST_CASE("laurent monomials have no constant term") {
    QuadratureSpec spec{16, 1e-12, 256};
    auto r = torus_integrate(
        [](std::span<const cx> z) { return z[0] * z[0] * z[0] + 1.0 / z[0]; }, 1, spec);
    CHECK(std::abs(r.value) < 1e-13);
}

TEST_CASE("constant-term extraction in two variables") {
    QuadratureSpec spec{16, 1e-12, 256};
    auto r = torus_integrate(
        [](std::span<const cx> z) { return z[0] / z[1] + z[1] / z[0] + 2.0; }, 2, spec);
    CHECK(std::abs(r.value - 2.0) < 1e-13);
}

TEST_CASE("spectral convergence on an analytic integrand") {
    // f(z) = 1/(1 - a z) has mean 1 on |z|=1 for |a|<1; error decays
    // geometrically with the grid size
    auto f = [](std::span<const cx> z) { return 1.0 / (1.0 - 0.55 * z[0]); };
    double e32 = std::abs(torus_mean_fixed(f, 1, 32) - 1.0);
    double e64 = std::abs(torus_mean_fixed(f, 1, 64) - 1.0);
    CHECK(e32 < 1e-7);
    CHECK(e64 < 1e-14);
}

TEST_CASE("non-convergence reporting") {
    // pole extremely close to the contour defeats the cap
    auto f = [](std::span<const cx> z) { return 1.0 / (1.0 - 0.9999 * z[0]); };
    QuadratureSpec spec{16, 1e-12, 64};
    CHECK_THROWS_AS((void)torus_integrate(f, 1, spec), convergence_error);
    auto r = torus_integrate(f, 1, spec, false);
    CHECK(!r.diag.converged);
}

TEST_CASE("zero-dimensional integral is plain evaluation") {
    QuadratureSpec spec;
    auto r = torus_integrate([](std::span<const cx>) { return cx(3.5, -1.0); }, 0, spec);
    CHECK(r.value == cx(3.5, -1.0));
}

TEST_CASE("bc product path agrees with the generic path") {
    Nome nm(0.12, 0.21);
    BCIntegrand f;
    f.axis = [&](cx z) { return elliptic_gamma(0.5 * z, nm) * elliptic_gamma(0.5 / z, nm); };
    f.pair = [&](cx w) { return 1.0 / (elliptic_gamma(w, nm) * elliptic_gamma(1.0 / w, nm)); };
    auto direct = [&](std::span<const cx> z) {
        cx r = 1.0;
        for (cx zi : z)
            r *= f.axis(zi);
        r *= f.pair(z[0] * z[1]) * f.pair(z[0] / z[1]);
        return r;
    };
    cx a = bc_torus_mean_fixed(f, 2, 48);
    cx b = torus_mean_fixed(direct, 2, 48);
    CHECK(std::abs(a - b) / std::abs(b) < 1e-13);
}

TEST_CASE("pairwise sum is exact on cancellation patterns") {
    std::vector<cx> xs;
    for (int i = 0; i < 1000; ++i)
        xs.push_back(cx((i % 2) ? 1.0 : -1.0, 0.0));
    CHECK(std::abs(pairwise_sum(xs)) == 0.0);
}
