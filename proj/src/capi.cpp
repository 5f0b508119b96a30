#include "superflat/superflat.h"

#include "experiments.hpp"
#include "report.hpp"

#include <chrono>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

using namespace superflat;

namespace {

thread_local std::string g_last_error;

sf_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_argument: return SF_ERROR_INVALID_ARGUMENT;
    case ErrorCode::config: return SF_ERROR_CONFIG;
    case ErrorCode::pole: return SF_ERROR_POLE;
    case ErrorCode::numerical: return SF_ERROR_NUMERICAL;
    case ErrorCode::io: return SF_ERROR_IO;
    }
    return SF_ERROR_INTERNAL;
}

template <typename Fn> sf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SF_OK;
    } catch (const Error& err) {
        g_last_error = err.what();
        return status_of(err.code());
    } catch (const std::exception& err) {
        g_last_error = err.what();
        return SF_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SF_ERROR_INTERNAL;
    }
}

sf_status reject_null(const char* what) {
    g_last_error = std::string(what) + " must not be null";
    return SF_ERROR_INVALID_ARGUMENT;
}

std::string check_line(const CheckResult& check) {
    std::string line = "[" + std::string(status_name(check.status)) + "] " + check.name;
    const std::string params = check.params_string();
    if (!params.empty()) line += " " + params;
    line += " residual=" + check.residual_string();
    if (!check.witness.empty()) line += " witness=" + check.witness;
    return line;
}

} // namespace

struct sf_verify_config {
    SuiteConfig config;
};

struct sf_report {
    std::string json;
    std::vector<std::string> lines;
    bool passed = false;
};

extern "C" {

const char* sf_version(void) { return "1.0.0"; }

const char* sf_status_name(sf_status status) {
    switch (status) {
    case SF_OK: return "ok";
    case SF_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case SF_ERROR_CONFIG: return "config";
    case SF_ERROR_POLE: return "pole";
    case SF_ERROR_NUMERICAL: return "numerical";
    case SF_ERROR_IO: return "io";
    case SF_ERROR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* sf_last_error(void) { return g_last_error.c_str(); }

sf_verify_config* sf_verify_config_new(void) {
    return new (std::nothrow) sf_verify_config();
}

void sf_verify_config_free(sf_verify_config* config) { delete config; }

sf_status sf_verify_config_load_file(sf_verify_config* config, const char* path) {
    if (!config) return reject_null("config");
    if (!path) return reject_null("path");
    return guarded([&] { config->config = parse_suite_config_file(path); });
}

sf_status sf_verify_config_add_case(sf_verify_config* config, int n, int m, int k) {
    if (!config) return reject_null("config");
    return guarded([&] { config->config.cases.push_back(SuperDims(n, m, k)); });
}

sf_status sf_verify_config_clear_cases(sf_verify_config* config) {
    if (!config) return reject_null("config");
    config->config.cases.clear();
    return SF_OK;
}

sf_status sf_verify_config_set_trials(sf_verify_config* config, int trials) {
    if (!config) return reject_null("config");
    config->config.trials = trials;
    return SF_OK;
}

sf_status sf_verify_config_set_seed(sf_verify_config* config, uint64_t seed) {
    if (!config) return reject_null("config");
    config->config.seed = seed;
    return SF_OK;
}

sf_status sf_verify_config_add_kappa(sf_verify_config* config, const char* kappa) {
    if (!config) return reject_null("config");
    if (!kappa) return reject_null("kappa");
    return guarded([&] { config->config.kappas.push_back(rat_parse(kappa)); });
}

sf_status sf_verify_config_clear_kappas(sf_verify_config* config) {
    if (!config) return reject_null("config");
    config->config.kappas.clear();
    return SF_OK;
}

sf_status sf_verify_config_add_check(sf_verify_config* config, const char* name) {
    if (!config) return reject_null("config");
    if (!name) return reject_null("name");
    config->config.checks.push_back(name);
    return SF_OK;
}

sf_status sf_verify_config_set_mutation(sf_verify_config* config, const char* name) {
    if (!config) return reject_null("config");
    if (!name) return reject_null("name");
    return guarded([&] { config->config.mutation = mutation_from_name(name); });
}

const char* sf_verify_config_output_path(const sf_verify_config* config) {
    return config ? config->config.output_path.c_str() : "";
}

void sf_report_free(sf_report* report) { delete report; }

int sf_report_passed(const sf_report* report) {
    return report && report->passed ? 1 : 0;
}

const char* sf_report_json(const sf_report* report) {
    return report ? report->json.c_str() : "";
}

sf_status sf_report_write(const sf_report* report, const char* path) {
    if (!report) return reject_null("report");
    if (!path) return reject_null("path");
    return guarded([&] { write_text_file(path, report->json); });
}

size_t sf_report_check_count(const sf_report* report) {
    return report ? report->lines.size() : 0;
}

const char* sf_report_check_line(const sf_report* report, size_t index) {
    if (!report || index >= report->lines.size()) return nullptr;
    return report->lines[index].c_str();
}

sf_status sf_run_verify(const sf_verify_config* config, sf_report** out_report) {
    if (!config) return reject_null("config");
    if (!out_report) return reject_null("out_report");
    *out_report = nullptr;
    return guarded([&] {
        const auto started = std::chrono::steady_clock::now();
        const SuiteResult result = run_suite(config->config);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

        auto report = std::make_unique<sf_report>();
        report->json =
            report_string(report_json(suite_config_json(config->config), result.checks, elapsed.count()));
        for (const CheckResult& check : result.checks) report->lines.push_back(check_line(check));
        report->passed = result.all_passed();
        *out_report = report.release();
    });
}

sf_status sf_run_mc(const sf_mc_params* params, sf_report** out_report) {
    if (!params) return reject_null("params");
    if (!out_report) return reject_null("out_report");
    *out_report = nullptr;
    return guarded([&] {
        const auto started = std::chrono::steady_clock::now();
        const SuperDims dims(params->n, params->m, params->n + params->m);
        const Rat kappa = rat_parse(params->kappa ? params->kappa : "2");
        const Mutation mut = mutation_from_name(params->mutation ? params->mutation : "none");
        const std::vector<CheckResult> checks =
            mc_experiment(dims, params->sector, params->trials, kappa, params->seed, mut);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

        nlohmann::ordered_json config;
        config["command"] = "mc";
        config["dims"] = dims.to_string();
        config["sector"] = params->sector;
        config["trials"] = params->trials;
        config["seed"] = params->seed;
        config["kappa"] = rat_string(kappa);
        config["mutation"] = mutation_name(mut);

        auto report = std::make_unique<sf_report>();
        report->json = report_string(report_json(config, checks, elapsed.count()));
        for (const CheckResult& check : checks) report->lines.push_back(check_line(check));
        report->passed = true;
        for (const CheckResult& check : checks)
            if (check.status == CheckResult::Status::fail) report->passed = false;
        *out_report = report.release();
    });
}

sf_status sf_run_flow(const sf_flow_params* params, sf_report** out_report) {
    if (!params) return reject_null("params");
    if (!out_report) return reject_null("out_report");
    *out_report = nullptr;
    return guarded([&] {
        const auto started = std::chrono::steady_clock::now();
        const SuperDims dims(params->n, params->m, params->k);
        const std::string mode = params->mode ? params->mode : "";
        const Rat kappa = rat_parse(params->kappa ? params->kappa : "2");
        const Mutation mut = mutation_from_name(params->mutation ? params->mutation : "none");
        const std::string trajectory = params->trajectory_path ? params->trajectory_path : "";

        std::vector<CheckResult> checks;
        if (mode == "loop") {
            checks = flow_loop_experiment(dims, kappa, params->step, params->seed, mut, trajectory);
        } else if (mode == "path") {
            checks = flow_path_experiment(dims, kappa, params->step, params->seed, mut);
        } else if (mode == "fdmc") {
            checks = flow_fdmc_experiment(dims, kappa, params->step, params->h, params->seed, mut);
        } else {
            throw ConfigError("unknown flow mode '" + mode + "', expected loop, path, or fdmc");
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

        nlohmann::ordered_json config;
        config["command"] = "flow";
        config["dims"] = dims.to_string();
        config["mode"] = mode;
        config["kappa"] = rat_string(kappa);
        config["step"] = params->step;
        if (mode == "fdmc") config["h"] = params->h;
        config["seed"] = params->seed;
        config["mutation"] = mutation_name(mut);

        auto report = std::make_unique<sf_report>();
        report->json = report_string(report_json(config, checks, elapsed.count()));
        for (const CheckResult& check : checks) report->lines.push_back(check_line(check));
        report->passed = true;
        for (const CheckResult& check : checks)
            if (check.status == CheckResult::Status::fail) report->passed = false;
        *out_report = report.release();
    });
}

} // extern "C"
