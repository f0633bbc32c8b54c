#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace spv::checks {

using json = nlohmann::ordered_json;

// One verification record.  Failures always carry the first offending
// witness (coset, coefficient degree or sample point).
struct VerificationReport {
    std::string check_id;
    json params = json::object();
    std::string status = "pass"; // pass | fail | error
    json lhs, rhs;
    double max_discrepancy = 0.0;
    json witness;
    std::string message;
    std::int64_t runtime_ms = 0;
    std::uint64_t seed = 0;
};

json report_to_json(const VerificationReport& r, bool include_runtime = true);
std::string report_text_line(const VerificationReport& r);

std::string emit_reports(const std::vector<VerificationReport>& reports,
                         const std::string& format, bool include_runtime = true);

} // namespace spv::checks
