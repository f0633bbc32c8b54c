#include "spinverify.h"

#include "checks.hpp"

#include <cstring>
#include <string>

using spv::checks::json;

struct spv_result {
    std::vector<spv::checks::VerificationReport> reports;
    int exit_code = 0;
};

namespace {

thread_local std::string g_last_error = "";

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

spv_status fail(spv_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

} // namespace

extern "C" {

const char* spv_version(void) { return "1.0.0"; }

const char* spv_last_error(void) { return g_last_error.c_str(); }

char* spv_list_checks(void) {
    json arr = json::array();
    for (const auto& d : spv::checks::registry())
        arr.push_back(json{{"id", d.id}, {"description", d.description}, {"params", d.default_params}});
    return dup_string(arr.dump(2) + "\n");
}

spv_status spv_run_config(const char* config_json, int jobs, spv_result** out) {
    if (!config_json || !out) return fail(SPV_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    json cfg = json::parse(config_json, nullptr, false);
    if (cfg.is_discarded() || !cfg.is_array())
        return fail(SPV_ERR_BAD_CONFIG, "config must be a JSON array of descriptors");
    std::vector<json> descriptors(cfg.begin(), cfg.end());
    try {
        auto res = spv::checks::run_suite(descriptors, jobs);
        auto* handle = new spv_result{std::move(res.reports), res.exit_code};
        *out = handle;
        return SPV_OK;
    } catch (const std::exception& e) {
        return fail(SPV_ERR_INTERNAL, e.what());
    }
}

spv_status spv_run_default_suite(int jobs, spv_result** out) {
    if (!out) return fail(SPV_ERR_INVALID_ARGUMENT, "null argument");
    json cfg = spv::checks::default_suite();
    return spv_run_config(cfg.dump().c_str(), jobs, out);
}

spv_status spv_run_check(const char* check_id, const char* params_json, spv_result** out) {
    if (!check_id || !out) return fail(SPV_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    if (!spv::checks::find_check(check_id))
        return fail(SPV_ERR_UNKNOWN_CHECK, std::string("unknown check id '") + check_id + "'");
    json params = json::object();
    if (params_json && *params_json) {
        params = json::parse(params_json, nullptr, false);
        if (params.is_discarded() || !params.is_object())
            return fail(SPV_ERR_BAD_CONFIG, "params must be a JSON object");
    }
    try {
        auto report = spv::checks::run_check(check_id, params);
        auto* handle = new spv_result;
        handle->exit_code = report.status == "pass" ? 0 : 1;
        handle->reports.push_back(std::move(report));
        *out = handle;
        return SPV_OK;
    } catch (const std::exception& e) {
        return fail(SPV_ERR_INTERNAL, e.what());
    }
}

size_t spv_result_count(const spv_result* res) { return res ? res->reports.size() : 0; }

int spv_result_all_passed(const spv_result* res) {
    if (!res) return 0;
    return res->exit_code == 0 ? 1 : 0;
}

char* spv_result_render(const spv_result* res, const char* format, int include_runtime) {
    if (!res || !format) {
        g_last_error = "null argument";
        return nullptr;
    }
    try {
        return dup_string(spv::checks::emit_reports(res->reports, format, include_runtime != 0));
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return nullptr;
    }
}

void spv_result_free(spv_result* res) { delete res; }

void spv_string_free(char* s) { std::free(s); }

} // extern "C"
