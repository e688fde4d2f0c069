#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ehi/quadrature.hpp"

namespace ehi {

// One verification record.  rel_err = |lhs-rhs| / max(|lhs|,|rhs|,1e-300);
// pass iff rel_err < tolerance.  Everything except the timestamp is a pure
// function of (id, seed, overrides).
struct VerificationReport {
    std::string id;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, cx>> params;
    cx lhs{};
    cx rhs{};
    double abs_err = 0;
    double rel_err = 0;
    double tolerance = 0;
    QuadratureDiag diag{};
    bool pass = false;
    bool infra_error = false;
    std::string note;
    std::string timestamp;

    void set_values(cx l, cx r);
    void add_param(const std::string& name, cx v) { params.emplace_back(name, v); }

    // Full JSON document (complex numbers as [re, im] pairs).
    std::string to_json() const;
    // JSON with the timestamp removed; the determinism contract compares
    // these bytes.
    std::string canonical_json() const;
};

std::string iso8601_now();

// Atomic write (temp file + rename) of a report document.
void write_report_file(const VerificationReport& rep, const std::string& dir);

} // namespace ehi
