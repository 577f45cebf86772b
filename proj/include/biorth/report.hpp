#pragma once

// Structured results of verification runs. A failed check carries a
// counterexample record (indices plus both values) so it can be reproduced
// from the report alone.

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "biorth/params.hpp"

namespace biorth {

struct Counterexample {
    std::vector<long> indices;
    std::string expected;
    std::string actual;
    std::string note;
};

struct Check {
    std::string name;
    bool pass = true;
    std::optional<Counterexample> first_failure;
};

struct VerificationReport {
    std::string suite;
    KeyValueMap params;
    long n = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    std::map<std::string, double> timings_ms;

    bool all_pass() const
    {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const Check* find(const std::string& name) const
    {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void pass(std::string name) { checks.push_back(Check{std::move(name), true, std::nullopt}); }

    void fail(std::string name, Counterexample cx) { checks.push_back(Check{std::move(name), false, std::move(cx)}); }

    void record(std::string name, bool ok, Counterexample cx = {})
    {
        if (ok)
            pass(std::move(name));
        else
            fail(std::move(name), std::move(cx));
    }

    void merge(const VerificationReport& other, const std::string& prefix = {})
    {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
        for (const auto& note : other.notes) notes.push_back(note);
        for (const auto& [k, v] : other.timings_ms) timings_ms[prefix + k] = v;
    }
};

inline nlohmann::ordered_json to_json(const Counterexample& cx)
{
    nlohmann::ordered_json j;
    j["indices"] = cx.indices;
    j["expected"] = cx.expected;
    j["actual"] = cx.actual;
    if (!cx.note.empty()) j["note"] = cx.note;
    return j;
}

/// Timings vary run to run, so they are only emitted on request.
inline nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timings = false)
{
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["params"] = r.params;
    j["n"] = r.n;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (c.first_failure) cj["first_failure"] = to_json(*c.first_failure);
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (include_timings) j["timings_ms"] = r.timings_ms;
    return j;
}

/// Wall-clock stopwatch for the timings_ms section.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace biorth
