#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehi/nome.hpp"

namespace ehi {

// Deterministic splitmix64 stream; identical across platforms, unlike the
// standard-library distributions.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // log-uniform modulus in [lo,hi]
    double modulus(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
    cx on_circle(double r) {
        double a = uniform(0.0, 2.0 * 3.141592653589793);
        return cx(r * std::cos(a), r * std::sin(a));
    }
    cx annulus(double lo, double hi) { return on_circle(modulus(lo, hi)); }
};

std::uint64_t fnv1a(const std::string& s);

// Sampler knobs the config file / CLI can override.
struct SamplerConfig {
    double mod_lo = 0.3;  // free-parameter modulus band
    double mod_hi = 0.8;
    double nome_lo = 0.08; // |p|,|q| band
    double nome_hi = 0.35;
    double solved_lo = 0.05; // admitted band for solved parameters
    double solved_hi = 0.95;
    double degenerate_margin = 1e-3;
    int max_rejections = 1000;
};

// Rejects x whose product with some p^j q^k lies within margin of 1 (pole of
// a closed form at t_r t_s = p^{-j} q^{-k}).
bool near_lattice_pole(cx x, const Nome& nm, double margin);

// Draw a balanced tuple: k-1 free parameters from the band, last solved so
// the product equals target; retried until the solved modulus and the
// pairwise degeneracy margins pass.  Throws convergence_error on exhaustion.
std::vector<cx> sample_balanced(Rng& rng, int k, cx target, const Nome& nm,
                                const SamplerConfig& cfg);

Nome sample_nome(Rng& rng, const SamplerConfig& cfg);

// Generic evaluation points for the signed theta sums: rejects draws where
// any Weyl-denominator factor theta(z_i^2;P) or theta(z_i z_j^{+-1};P) is
// small, which would otherwise amplify the 2^n-term cancellation.
std::vector<cx> sample_generic_points(Rng& rng, int n, cx pnome, int K, double lo = 0.75,
                                      double hi = 1.3, double min_theta = 0.05);

} // namespace ehi
