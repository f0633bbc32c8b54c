#include "report.hpp"

#include <sstream>

namespace spv::checks {

json report_to_json(const VerificationReport& r, bool include_runtime) {
    json j;
    j["schema"] = 1;
    j["check_id"] = r.check_id;
    j["params"] = r.params;
    j["status"] = r.status;
    if (!r.lhs.is_null()) j["lhs"] = r.lhs;
    if (!r.rhs.is_null()) j["rhs"] = r.rhs;
    j["max_discrepancy"] = r.max_discrepancy;
    if (!r.witness.is_null()) j["witness"] = r.witness;
    if (!r.message.empty()) j["message"] = r.message;
    j["runtime_ms"] = include_runtime ? r.runtime_ms : 0;
    j["seed"] = r.seed;
    return j;
}

std::string report_text_line(const VerificationReport& r) {
    std::ostringstream os;
    os << (r.status == "pass" ? "✓" : "✗") << " " << r.check_id;
    if (!r.params.empty()) os << " " << r.params.dump();
    os << " [" << r.status << "]";
    if (r.status != "pass" && !r.message.empty()) os << " " << r.message;
    if (r.status == "fail" && !r.witness.is_null()) os << " witness=" << r.witness.dump();
    return os.str();
}

std::string emit_reports(const std::vector<VerificationReport>& reports,
                         const std::string& format, bool include_runtime) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r, include_runtime));
        return arr.dump(2) + "\n";
    }
    if (format != "text") throw std::runtime_error("emit_reports: unknown format " + format);
    std::ostringstream os;
    for (const auto& r : reports) os << report_text_line(r) << "\n";
    return os.str();
}

} // namespace spv::checks
