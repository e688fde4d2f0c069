#include "ehi/registry.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "ehi/binomial.hpp"
#include "ehi/registry_detail.hpp"

namespace ehi {

double default_tolerance(CostClass c) {
    switch (c) {
    case CostClass::finite_sum: return 1e-11;
    case CostClass::quad1d: return 1e-8;
    case CostClass::quad2d: return 1e-6;
    case CostClass::nested: return 1e-5;
    }
    return 1e-8;
}

const char* cost_class_name(CostClass c) {
    switch (c) {
    case CostClass::finite_sum: return "sum";
    case CostClass::quad1d: return "1d";
    case CostClass::quad2d: return "2d";
    case CostClass::nested: return "nested";
    }
    return "?";
}

const IdentityEntry* find_identity(const std::string& id) {
    for (const auto& e : registry())
        if (e.id == id)
            return &e;
    return nullptr;
}

VerificationReport run_identity(const std::string& id, std::uint64_t seed, const Overrides& ov) {
    const IdentityEntry* e = find_identity(id);
    if (!e)
        throw std::invalid_argument("run_identity: unknown id '" + id + "'");
    VerificationReport rep;
    try {
        rep = e->run(seed, ov);
    } catch (const convergence_error& ex) {
        rep.id = id;
        rep.seed = seed;
        rep.infra_error = true;
        rep.note = std::string("infrastructure: ") + ex.what();
    }
    rep.timestamp = iso8601_now();
    return rep;
}

bool glob_match(const std::string& pattern, const std::string& text) {
    if (pattern.empty())
        return true;
    std::size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

std::string SuiteSummary::to_json() const {
    nlohmann::json worst = nlohmann::json::object();
    for (const auto& [id, err] : worst_rel_err)
        worst[id] = err;
    nlohmann::json j{{"reports", reports},
                     {"passes", passes},
                     {"math_failures", math_failures},
                     {"infra_errors", infra_errors},
                     {"worst_rel_err", worst}};
    return j.dump(2);
}

SuiteSummary run_suite(const std::string& filter_glob, std::span<const std::uint64_t> seeds,
                       const std::string& out_dir, const Overrides& ov, int jobs) {
    std::vector<const IdentityEntry*> picked;
    for (const auto& e : registry())
        if (glob_match(filter_glob, e.id))
            picked.push_back(&e);

    struct Job {
        const IdentityEntry* e;
        std::uint64_t seed;
    };
    std::vector<Job> todo;
    for (const auto* e : picked)
        for (std::uint64_t s : seeds)
            todo.push_back({e, s});

    if (jobs <= 0)
        jobs = (int)std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, (int)std::max<std::size_t>(1, todo.size()));

    std::vector<VerificationReport> reports(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= todo.size())
                return;
            reports[i] = run_identity(todo[i].e->id, todo[i].seed, ov);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();

    SuiteSummary sum;
    for (const auto& rep : reports) {
        ++sum.reports;
        if (rep.infra_error)
            ++sum.infra_errors;
        else if (rep.pass)
            ++sum.passes;
        else
            ++sum.math_failures;
        auto it = sum.worst_rel_err.find(rep.id);
        if (it == sum.worst_rel_err.end())
            sum.worst_rel_err[rep.id] = rep.rel_err;
        else
            it->second = std::max(it->second, rep.rel_err);
        if (!out_dir.empty())
            write_report_file(rep, out_dir);
    }
    if (!out_dir.empty()) {
        VerificationReport dummy; // summary via plain file
        (void)dummy;
        std::string path = out_dir + "/summary.json";
        std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp);
            out << sum.to_json() << "\n";
        }
        std::filesystem::rename(tmp, path);
    }
    return sum;
}

} // namespace ehi
