#pragma once

// Shared plumbing for the identity-registry entry implementations.

#include "ehi/registry.hpp"

namespace ehi::detail {

inline Rng seeded_rng(const std::string& id, std::uint64_t seed) {
    return Rng(fnv1a(id) ^ (0x9e3779b97f4a7c15ULL * (seed + 1)));
}

inline VerificationReport start_report(const IdentityEntry& e, std::uint64_t seed,
                                       const Overrides& ov) {
    VerificationReport rep;
    rep.id = e.id;
    rep.seed = seed;
    rep.tolerance = ov.tol.value_or(e.tolerance);
    return rep;
}

inline QuadratureSpec spec_for(CostClass c, const Overrides& ov) {
    QuadratureSpec s;
    switch (c) {
    case CostClass::finite_sum: s = {16, 1e-12, 64}; break;
    case CostClass::quad1d: s = {64, 1e-10, 16384}; break;
    case CostClass::quad2d: s = {32, 5e-8, 512}; break;
    case CostClass::nested: s = {32, 1e-7, 512}; break;
    }
    if (ov.points)
        s.initial_points = *ov.points;
    s.initial_points *= ov.point_scale;
    return s;
}

inline SamplerConfig sampler_for(const Overrides& ov) {
    return ov.sampler.value_or(SamplerConfig{});
}

std::vector<IdentityEntry> entries_integrals();
std::vector<IdentityEntry> entries_operators();
std::vector<IdentityEntry> entries_biorth();
std::vector<IdentityEntry> entries_ii();

} // namespace ehi::detail
