// command-line front end; talks to the core only through the C API
#include <superflat/superflat.h>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_check_failure = 1;
constexpr int exit_usage = 2;

int exit_code_for(sf_status status) {
    switch (status) {
    case SF_OK: return exit_pass;
    case SF_ERROR_INVALID_ARGUMENT:
    case SF_ERROR_CONFIG: return exit_usage;
    default: return exit_check_failure;
    }
}

int report_api_error(const char* context, sf_status status) {
    std::cerr << "superflat: " << context << ": " << sf_status_name(status) << ": "
              << sf_last_error() << "\n";
    return exit_code_for(status);
}

struct ReportHandle {
    sf_report* ptr = nullptr;
    ~ReportHandle() { sf_report_free(ptr); }
};

struct ConfigHandle {
    sf_verify_config* ptr = nullptr;
    ConfigHandle() : ptr(sf_verify_config_new()) {}
    ~ConfigHandle() { sf_verify_config_free(ptr); }
};

// prints per-check lines and a summary to stderr, the JSON document to
// --out or stdout; exit code reflects the worst check status
int emit_report(const sf_report* report, const std::string& out_path) {
    std::size_t passed = 0, failed = 0, skipped = 0;
    for (std::size_t i = 0; i < sf_report_check_count(report); ++i) {
        const std::string line = sf_report_check_line(report, i);
        std::cerr << line << "\n";
        if (line.rfind("[pass]", 0) == 0) ++passed;
        else if (line.rfind("[fail]", 0) == 0) ++failed;
        else ++skipped;
    }
    std::cerr << "checks: " << passed << " passed, " << failed << " failed, " << skipped
              << " skipped\n";

    if (out_path.empty()) {
        std::cout << sf_report_json(report);
    } else {
        const sf_status status = sf_report_write(report, out_path.c_str());
        if (status != SF_OK) return report_api_error("writing report", status);
        std::cerr << "report written to " << out_path << "\n";
    }
    return sf_report_passed(report) ? exit_pass : exit_check_failure;
}

bool parse_case_triple(const std::string& text, int& n, int& m, int& k) {
    int parts[3];
    std::size_t start = 0;
    for (int slot = 0; slot < 3; ++slot) {
        const std::size_t comma = text.find(',', start);
        const bool last = slot == 2;
        if (last != (comma == std::string::npos)) return false;
        const std::string piece = text.substr(start, last ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            parts[slot] = std::stoi(piece, &used);
            if (used != piece.size()) return false;
        } catch (const std::exception&) {
            return false;
        }
        start = comma + 1;
    }
    n = parts[0];
    m = parts[1];
    k = parts[2];
    return true;
}

struct VerifyArgs {
    std::vector<std::string> cases;
    std::string config_path;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> kappas;
    std::vector<std::string> checks;
    std::string mutation;
    std::string out_path;
};

int run_verify(const VerifyArgs& args, const CLI::App& cmd) {
    ConfigHandle config;
    if (!config.ptr) return report_api_error("allocating config", SF_ERROR_INTERNAL);

    if (!args.config_path.empty()) {
        const sf_status status = sf_verify_config_load_file(config.ptr, args.config_path.c_str());
        if (status != SF_OK) {
            // an unreadable config file is a usage problem, whatever the cause
            report_api_error("loading config file", status);
            return exit_usage;
        }
    }

    // explicit flags override whatever the config file supplied
    if (!args.cases.empty()) sf_verify_config_clear_cases(config.ptr);
    for (const std::string& text : args.cases) {
        int n = 0, m = 0, k = 0;
        if (!parse_case_triple(text, n, m, k)) {
            std::cerr << "superflat: bad --case '" << text << "', expected n,m,k\n";
            return exit_usage;
        }
        const sf_status status = sf_verify_config_add_case(config.ptr, n, m, k);
        if (status != SF_OK) return report_api_error("adding case", status);
    }
    if (cmd.count("--trials") > 0) sf_verify_config_set_trials(config.ptr, args.trials);
    if (cmd.count("--seed") > 0) sf_verify_config_set_seed(config.ptr, args.seed);
    if (!args.kappas.empty()) sf_verify_config_clear_kappas(config.ptr);
    for (const std::string& kappa : args.kappas) {
        const sf_status status = sf_verify_config_add_kappa(config.ptr, kappa.c_str());
        if (status != SF_OK) return report_api_error("adding kappa", status);
    }
    for (const std::string& name : args.checks) sf_verify_config_add_check(config.ptr, name.c_str());
    if (!args.mutation.empty()) {
        const sf_status status = sf_verify_config_set_mutation(config.ptr, args.mutation.c_str());
        if (status != SF_OK) return report_api_error("setting fault injection", status);
    }

    ReportHandle report;
    const sf_status status = sf_run_verify(config.ptr, &report.ptr);
    if (status != SF_OK) return report_api_error("verify", status);

    std::string out_path = args.out_path;
    if (out_path.empty()) out_path = sf_verify_config_output_path(config.ptr);
    return emit_report(report.ptr, out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical checks of the joint KZ/dynamical flat system for gl(n|m)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(sf_version()));

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the exact verification suite");
    verify->add_option("--case", verify_args.cases,
                       "dims triple n,m,k; repeatable, at least one required");
    verify->add_option("--config", verify_args.config_path, "key = value config file");
    verify->add_option("--trials", verify_args.trials, "random points per randomized check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_args.seed, "master seed for random rational points");
    verify->add_option("--kappa", verify_args.kappas,
                       "rational kappa, e.g. 2 or 1/3; repeatable, default {1, 2, 1/3}");
    verify->add_option("--checks", verify_args.checks, "restrict to named checks")
        ->delimiter(',');
    verify->add_option("--inject-fault", verify_args.mutation,
                       "deliberate sign mutation for negative controls");
    verify->add_option("--out", verify_args.out_path, "report path, default stdout");

    sf_mc_params mc{};
    mc.trials = 20;
    mc.seed = 1;
    std::string mc_kappa = "2";
    std::string mc_mutation = "none";
    std::string mc_out;
    CLI::App* mc_cmd = app.add_subcommand("mc", "focused Matsuo-Cherednik residual checks");
    mc_cmd->add_option("--n", mc.n, "even block size")->required();
    mc_cmd->add_option("--m", mc.m, "odd block size")->required();
    mc_cmd->add_option("--sector", mc.sector, "0 or 1")
        ->required()
        ->check(CLI::Range(0, 1));
    mc_cmd->add_option("--trials", mc.trials, "random points per check")
        ->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc.seed, "master seed");
    mc_cmd->add_option("--kappa", mc_kappa, "rational kappa");
    mc_cmd->add_option("--inject-fault", mc_mutation, "deliberate sign mutation");
    mc_cmd->add_option("--out", mc_out, "report path, default stdout");

    sf_flow_params flow{};
    flow.step = 1e-3;
    flow.h = 1e-3;
    flow.seed = 1;
    std::string flow_mode;
    std::string flow_kappa = "2";
    std::string flow_mutation = "none";
    std::string flow_trajectory;
    std::string flow_out;
    CLI::App* flow_cmd = app.add_subcommand("flow", "floating-point flow experiments");
    flow_cmd->set_help_flag("--help", "print this help message and exit");
    flow_cmd->add_option("--n", flow.n, "even block size")->required();
    flow_cmd->add_option("--m", flow.m, "odd block size")->required();
    flow_cmd->add_option("--k", flow.k, "tensor factors")->required();
    flow_cmd->add_option("--mode", flow_mode, "loop, path, or fdmc")
        ->required()
        ->check(CLI::IsMember({"loop", "path", "fdmc"}));
    flow_cmd->add_option("--kappa", flow_kappa, "rational kappa");
    flow_cmd->add_option("--step", flow.step, "RK4 step length, must be positive");
    flow_cmd->add_option("--h", flow.h, "fdmc stencil offset");
    flow_cmd->add_option("--seed", flow.seed, "seed for the random start vector");
    flow_cmd->add_option("--inject-fault", flow_mutation, "deliberate sign mutation");
    flow_cmd->add_option("--dump-trajectory", flow_trajectory, "CSV path for the first loop");
    flow_cmd->add_option("--out", flow_out, "report path, default stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::CallForVersion&) {
        std::cout << sf_version() << "\n";
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        std::cerr << "superflat: " << e.what() << "\n";
        return exit_usage;
    }

    if (verify->parsed()) return run_verify(verify_args, *verify);

    if (mc_cmd->parsed()) {
        mc.kappa = mc_kappa.c_str();
        mc.mutation = mc_mutation.c_str();
        ReportHandle report;
        const sf_status status = sf_run_mc(&mc, &report.ptr);
        if (status != SF_OK) return report_api_error("mc", status);
        return emit_report(report.ptr, mc_out);
    }

    if (flow_cmd->parsed()) {
        flow.mode = flow_mode.c_str();
        flow.kappa = flow_kappa.c_str();
        flow.mutation = flow_mutation.c_str();
        flow.trajectory_path = flow_trajectory.empty() ? nullptr : flow_trajectory.c_str();
        ReportHandle report;
        const sf_status status = sf_run_flow(&flow, &report.ptr);
        if (status != SF_OK) return report_api_error("flow", status);
        return emit_report(report.ptr, flow_out);
    }

    std::cerr << app.help();
    return exit_usage;
}
