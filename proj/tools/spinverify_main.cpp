// spinverify CLI: batch driver over the shared-library C API.

#include <spinverify.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

using json = nlohmann::ordered_json;

namespace {

int default_jobs() {
    if (const char* env = std::getenv("SPINVERIFY_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

struct FlagOverrides {
    std::optional<std::vector<long>> p, disc;
    std::optional<int> order, weight;
    std::optional<double> radius, tol;
    std::optional<std::uint64_t> seed;

    // Applies the flags on top of a params object; the check decides which
    // keys it understands.
    void apply(json& params, const json& defaults) const {
        auto set_list = [&](const char* key, const std::vector<long>& v) {
            if (!defaults.contains(key)) return;
            if (v.size() == 1)
                params[key] = v[0];
            else
                params[key] = v;
        };
        if (p) set_list("p", *p);
        if (disc) set_list("disc", *disc);
        if (order && defaults.contains("order")) params["order"] = *order;
        if (weight && defaults.contains("weight")) params["weight"] = *weight;
        if (radius && defaults.contains("radius")) params["radius"] = *radius;
        if (tol && defaults.contains("tol")) params["tol"] = *tol;
        if (seed) params["seed"] = *seed;
    }
};

json check_defaults(const std::string& id) {
    char* listing = spv_list_checks();
    json all = json::parse(listing);
    spv_string_free(listing);
    for (const auto& d : all)
        if (d.at("id") == id) return d.at("params");
    return json::object();
}

int render_and_exit(spv_result* res, const std::string& format) {
    char* text = spv_result_render(res, format.c_str(), 1);
    if (!text) {
        std::cerr << "render error: " << spv_last_error() << "\n";
        spv_result_free(res);
        return 2;
    }
    std::cout << text;
    spv_string_free(text);
    int code = spv_result_all_passed(res) ? 0 : 1;
    spv_result_free(res);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinverify: local identity checks for the GSp4 Spin Rankin-Selberg integral"};
    app.require_subcommand(1);

    std::string format = "text";
    int jobs = default_jobs();
    app.add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--jobs", jobs, "Worker threads (default: SPINVERIFY_JOBS or hardware)");

    FlagOverrides flags;
    std::vector<long> p_opt, disc_opt;
    int order_opt = 0, weight_opt = 0;
    double radius_opt = 0, tol_opt = 0;
    std::uint64_t seed_opt = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--p", p_opt, "Prime(s)");
        cmd->add_option("--disc", disc_opt, "Discriminant(s) D");
        cmd->add_option("--order", order_opt, "Series truncation order K");
        cmd->add_option("--weight", weight_opt, "Weight r");
        cmd->add_option("--radius", radius_opt, "Lattice shell radius");
        cmd->add_option("--tol", tol_opt, "Tolerance override");
        cmd->add_option("--seed", seed_opt, "Random seed (default 0)");
    };

    auto* list_cmd = app.add_subcommand("list", "List the registered checks");
    list_cmd->fallthrough();
    auto* check_cmd = app.add_subcommand("check", "Run a single check");
    check_cmd->fallthrough();
    std::string check_id;
    check_cmd->add_option("check_id", check_id, "Registered check id")->required();
    add_common(check_cmd);
    auto* run_cmd = app.add_subcommand("run", "Run a JSON config of checks (default: full suite)");
    run_cmd->fallthrough();
    std::string config_path;
    run_cmd->add_option("config", config_path, "Path to a JSON array of descriptors");
    add_common(run_cmd);

    CLI11_PARSE(app, argc, argv);

    auto collect_flags = [&](CLI::App* cmd) {
        if (cmd->count("--p")) flags.p = p_opt;
        if (cmd->count("--disc")) flags.disc = disc_opt;
        if (cmd->count("--order")) flags.order = order_opt;
        if (cmd->count("--weight")) flags.weight = weight_opt;
        if (cmd->count("--radius")) flags.radius = radius_opt;
        if (cmd->count("--tol")) flags.tol = tol_opt;
        if (cmd->count("--seed")) flags.seed = seed_opt;
    };

    if (list_cmd->parsed()) {
        char* listing = spv_list_checks();
        if (format == "json") {
            std::cout << listing;
        } else {
            json all = json::parse(listing);
            for (const auto& d : all)
                std::cout << d.at("id").get<std::string>() << "  -  "
                          << d.at("description").get<std::string>() << "\n";
        }
        spv_string_free(listing);
        return 0;
    }

    if (check_cmd->parsed()) {
        collect_flags(check_cmd);
        json params = json::object();
        flags.apply(params, check_defaults(check_id));
        spv_result* res = nullptr;
        spv_status st = spv_run_check(check_id.c_str(), params.dump().c_str(), &res);
        if (st != SPV_OK) {
            std::cerr << "error: " << spv_last_error() << "\n";
            return 2;
        }
        return render_and_exit(res, format);
    }

    // run
    collect_flags(run_cmd);
    json cfg;
    if (config_path.empty()) {
        cfg = json::array();
        char* listing = spv_list_checks();
        json all = json::parse(listing);
        spv_string_free(listing);
        for (const auto& d : all) cfg.push_back(json{{"check", d.at("id")}});
    } else {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = json::parse(ss.str(), nullptr, false);
        if (cfg.is_discarded() || !cfg.is_array()) {
            std::cerr << "error: config must be a JSON array of descriptors\n";
            return 2;
        }
    }
    // CLI flags override config fields for every descriptor
    for (auto& d : cfg) {
        if (!d.contains("params")) d["params"] = json::object();
        std::string id = d.value("check", "");
        flags.apply(d["params"], check_defaults(id));
    }
    spv_result* res = nullptr;
    spv_status st = spv_run_config(cfg.dump().c_str(), jobs, &res);
    if (st != SPV_OK) {
        std::cerr << "error: " << spv_last_error() << "\n";
        return 2;
    }
    return render_and_exit(res, format);
}
