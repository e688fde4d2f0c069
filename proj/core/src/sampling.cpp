#include "ehi/sampling.hpp"

#include <cmath>
#include <string>

#include "ehi/special.hpp"

namespace ehi {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool near_lattice_pole(cx x, const Nome& nm, double margin) {
    // only finitely many j,k can bring p^j q^k x near 1 when |x| < 1/margin
    cx pj = 1.0;
    for (int j = 0; j < nm.K; ++j) {
        cx f = pj * x;
        for (int k = 0; j + k < nm.K; ++k) {
            if (std::abs(f - 1.0) < margin)
                return true;
            f *= nm.q;
        }
        pj *= nm.p;
    }
    return false;
}

std::vector<cx> sample_balanced(Rng& rng, int k, cx target, const Nome& nm,
                                const SamplerConfig& cfg) {
    for (int attempt = 0; attempt < cfg.max_rejections; ++attempt) {
        std::vector<cx> t((std::size_t)k);
        cx prod = 1.0;
        for (int r = 0; r + 1 < k; ++r) {
            t[(std::size_t)r] = rng.annulus(cfg.mod_lo, cfg.mod_hi);
            prod *= t[(std::size_t)r];
        }
        t[(std::size_t)(k - 1)] = target / prod;
        double solved = std::abs(t.back());
        if (solved < cfg.solved_lo || solved > cfg.solved_hi)
            continue;
        bool ok = true;
        for (std::size_t a = 0; a < t.size() && ok; ++a)
            for (std::size_t b = a + 1; b < t.size() && ok; ++b)
                if (near_lattice_pole(t[a] * t[b], nm, cfg.degenerate_margin))
                    ok = false;
        if (ok)
            return t;
    }
    throw convergence_error("sample_balanced: rejection budget exhausted");
}

std::vector<cx> sample_generic_points(Rng& rng, int n, cx pnome, int K, double lo, double hi,
                                      double min_theta) {
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<cx> z((std::size_t)n);
        for (auto& v : z)
            v = rng.annulus(lo, hi);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (std::abs(theta(z[(std::size_t)i] * z[(std::size_t)i], pnome, K)) < min_theta)
                ok = false;
            for (int j = i + 1; j < n && ok; ++j)
                if (std::abs(theta(z[(std::size_t)i] * z[(std::size_t)j], pnome, K)) < min_theta ||
                    std::abs(theta(z[(std::size_t)i] / z[(std::size_t)j], pnome, K)) < min_theta)
                    ok = false;
        }
        if (ok)
            return z;
    }
    throw convergence_error("sample_generic_points: rejection budget exhausted");
}

Nome sample_nome(Rng& rng, const SamplerConfig& cfg) {
    cx p = rng.annulus(cfg.nome_lo, cfg.nome_hi);
    cx q = rng.annulus(cfg.nome_lo, cfg.nome_hi);
    return Nome(p, q);
}

} // namespace ehi
