#include "ehi/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace ehi {

using nlohmann::json;

void VerificationReport::set_values(cx l, cx r) {
    lhs = l;
    rhs = r;
    abs_err = std::abs(l - r);
    rel_err = abs_err / std::max({std::abs(l), std::abs(r), 1e-300});
    pass = rel_err < tolerance;
}

namespace {

json cx_json(cx v) { return json::array({v.real(), v.imag()}); }

json report_json(const VerificationReport& r, bool with_timestamp) {
    json par = json::object();
    for (const auto& [name, v] : r.params)
        par[name] = cx_json(v);
    json j{{"id", r.id},
           {"seed", r.seed},
           {"params", par},
           {"lhs", cx_json(r.lhs)},
           {"rhs", cx_json(r.rhs)},
           {"abs_err", r.abs_err},
           {"rel_err", r.rel_err},
           {"tolerance", r.tolerance},
           {"diagnostics",
            {{"points", r.diag.points},
             {"last_delta", r.diag.last_delta},
             {"converged", r.diag.converged},
             {"seconds", r.diag.seconds}}},
           {"pass", r.pass},
           {"infra_error", r.infra_error}};
    if (!r.note.empty())
        j["note"] = r.note;
    if (with_timestamp)
        j["timestamp"] = r.timestamp;
    return j;
}

} // namespace

std::string VerificationReport::to_json() const { return report_json(*this, true).dump(2); }

std::string VerificationReport::canonical_json() const {
    return report_json(*this, false).dump(2);
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_report_file(const VerificationReport& rep, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    fs::path final_path = fs::path(dir) / (rep.id + "_seed" + std::to_string(rep.seed) + ".json");
    fs::path tmp = final_path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << rep.to_json() << "\n";
    }
    fs::rename(tmp, final_path);
}

} // namespace ehi
