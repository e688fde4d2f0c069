#pragma once

#include <functional>
#include <map>
#include <optional>

#include "ehi/report.hpp"
#include "ehi/sampling.hpp"

namespace ehi {

enum class CostClass { finite_sum, quad1d, quad2d, nested };

double default_tolerance(CostClass c);
const char* cost_class_name(CostClass c);

// Per-run overrides (CLI flags / config file).
struct Overrides {
    std::optional<double> tol;
    std::optional<int> points;      // fixed per-circle point floor
    int point_scale = 1;            // multiply every quadrature size (certificates)
    std::optional<SamplerConfig> sampler;
};

struct IdentityEntry {
    std::string id;
    std::string description;
    CostClass cost = CostClass::quad1d;
    double tolerance = 0; // >= class default
    std::function<VerificationReport(std::uint64_t seed, const Overrides&)> run;
};

const std::vector<IdentityEntry>& registry();
const IdentityEntry* find_identity(const std::string& id);

// Runs one identity; mathematical failure is reported, never thrown.
// Infrastructure failures (sampler exhaustion, non-convergence) mark the
// report instead of aborting the suite.
VerificationReport run_identity(const std::string& id, std::uint64_t seed,
                                const Overrides& ov = {});

struct SuiteSummary {
    int reports = 0;
    int passes = 0;
    int math_failures = 0;
    int infra_errors = 0;
    std::map<std::string, double> worst_rel_err;
    std::string to_json() const;
};

// One report per (matched id, seed); reports written to out_dir (empty: no
// files).  Exit-status policy: infrastructure health only; math failures are
// carried in the summary flag.
SuiteSummary run_suite(const std::string& filter_glob, std::span<const std::uint64_t> seeds,
                       const std::string& out_dir, const Overrides& ov = {}, int jobs = 0);

bool glob_match(const std::string& pattern, const std::string& text);

} // namespace ehi
