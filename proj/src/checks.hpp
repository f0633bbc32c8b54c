#pragma once

#include "report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace spv::checks {

struct CheckDef {
    std::string id;
    std::string description;
    json default_params;
    VerificationReport (*run)(const json& params, std::uint64_t seed);
};

const std::vector<CheckDef>& registry();
const CheckDef* find_check(const std::string& id);

// Runs one check with defaults merged under the given overrides.
VerificationReport run_check(const std::string& id, const json& params);

struct SuiteResult {
    std::vector<VerificationReport> reports;
    int exit_code = 0; // 0 iff every report passed
};

// Descriptors: array of {"check": id, "params": {...}}.  Reports come back in
// config order; checks execute on a small worker pool bounded by jobs.
SuiteResult run_suite(const std::vector<json>& descriptors, int jobs);

std::vector<json> default_suite();

} // namespace spv::checks
