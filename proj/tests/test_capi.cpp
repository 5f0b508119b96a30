#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <superflat/superflat.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Config {
    sf_verify_config* ptr = sf_verify_config_new();
    ~Config() { sf_verify_config_free(ptr); }
};

struct Report {
    sf_report* ptr = nullptr;
    ~Report() { sf_report_free(ptr); }
};

} // namespace

TEST_CASE("version and status names") {
    CHECK(sf_version() != nullptr);
    CHECK(std::string(sf_status_name(SF_OK)) == "ok");
    CHECK(std::string(sf_status_name(SF_ERROR_CONFIG)) == "config");
    CHECK(std::string(sf_status_name(SF_ERROR_POLE)) == "pole");
}

TEST_CASE("null handles are rejected with a message") {
    CHECK(sf_verify_config_add_case(nullptr, 1, 1, 2) == SF_ERROR_INVALID_ARGUMENT);
    CHECK(std::strlen(sf_last_error()) > 0);
    CHECK(sf_run_verify(nullptr, nullptr) == SF_ERROR_INVALID_ARGUMENT);
    Config config;
    CHECK(sf_run_verify(config.ptr, nullptr) == SF_ERROR_INVALID_ARGUMENT);
    CHECK(sf_verify_config_add_kappa(config.ptr, nullptr) == SF_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("config setters validate their input") {
    Config config;
    CHECK(sf_verify_config_add_case(config.ptr, 1, 1, 0) == SF_ERROR_INVALID_ARGUMENT);
    CHECK(sf_verify_config_add_kappa(config.ptr, "fast") == SF_ERROR_INVALID_ARGUMENT);
    CHECK(sf_verify_config_set_mutation(config.ptr, "wobble") == SF_ERROR_CONFIG);
    CHECK(sf_verify_config_set_mutation(config.ptr, "drop_cartan_term") == SF_OK);
    CHECK(sf_verify_config_load_file(config.ptr, "/no/such/config") == SF_ERROR_IO);
}

TEST_CASE("running without cases is a config error") {
    Config config;
    Report report;
    CHECK(sf_run_verify(config.ptr, &report.ptr) == SF_ERROR_CONFIG);
    CHECK(report.ptr == nullptr);
}

TEST_CASE("verify round-trips through the C surface") {
    Config config;
    REQUIRE(sf_verify_config_add_case(config.ptr, 1, 1, 2) == SF_OK);
    REQUIRE(sf_verify_config_set_trials(config.ptr, 2) == SF_OK);
    REQUIRE(sf_verify_config_set_seed(config.ptr, 77) == SF_OK);
    REQUIRE(sf_verify_config_add_kappa(config.ptr, "1/3") == SF_OK);
    REQUIRE(sf_verify_config_add_check(config.ptr, "curvature") == SF_OK);
    REQUIRE(sf_verify_config_add_check(config.ptr, "eigen") == SF_OK);

    Report report;
    REQUIRE(sf_run_verify(config.ptr, &report.ptr) == SF_OK);
    REQUIRE(report.ptr != nullptr);
    CHECK(sf_report_passed(report.ptr) == 1);
    CHECK(sf_report_check_count(report.ptr) > 0);
    CHECK(sf_report_check_line(report.ptr, 0) != nullptr);
    CHECK(sf_report_check_line(report.ptr, 1u << 20) == nullptr);

    const std::string json = sf_report_json(report.ptr);
    CHECK(json.find("\"schema\": 1") != std::string::npos);
    CHECK(json.find("\"curvature\"") != std::string::npos);
    CHECK(json.find("\"kappas\"") != std::string::npos);

    const std::string path =
        (std::filesystem::temp_directory_path() / "superflat_capi_report.json").string();
    CHECK(sf_report_write(report.ptr, path.c_str()) == SF_OK);
    std::ifstream in(path);
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line == "{");
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("config files load through the C surface") {
    const std::string path =
        (std::filesystem::temp_directory_path() / "superflat_capi_config.txt").string();
    std::ofstream out(path);
    out << "case = 1,1,2\ntrials = 2\nchecks = weight_space\n";
    out.close();

    Config config;
    REQUIRE(sf_verify_config_load_file(config.ptr, path.c_str()) == SF_OK);
    std::remove(path.c_str());

    Report report;
    REQUIRE(sf_run_verify(config.ptr, &report.ptr) == SF_OK);
    CHECK(sf_report_passed(report.ptr) == 1);
    CHECK(sf_report_check_count(report.ptr) == 1);
    CHECK(std::string(sf_report_check_line(report.ptr, 0)).find("weight_space") !=
          std::string::npos);
}

TEST_CASE("mutated verify fails through the C surface") {
    Config config;
    REQUIRE(sf_verify_config_add_case(config.ptr, 1, 1, 2) == SF_OK);
    REQUIRE(sf_verify_config_set_trials(config.ptr, 1) == SF_OK);
    REQUIRE(sf_verify_config_add_kappa(config.ptr, "2") == SF_OK);
    REQUIRE(sf_verify_config_add_check(config.ptr, "curvature") == SF_OK);
    REQUIRE(sf_verify_config_set_mutation(config.ptr, "drop_embed_signs") == SF_OK);

    Report report;
    REQUIRE(sf_run_verify(config.ptr, &report.ptr) == SF_OK);
    CHECK(sf_report_passed(report.ptr) == 0);
}

TEST_CASE("mc runs through the C surface") {
    sf_mc_params params{};
    params.n = 1;
    params.m = 1;
    params.sector = 0;
    params.trials = 3;
    params.seed = 5;

    Report report;
    REQUIRE(sf_run_mc(&params, &report.ptr) == SF_OK);
    CHECK(sf_report_passed(report.ptr) == 1);
    CHECK(sf_report_check_count(report.ptr) == 4);
    const std::string json = sf_report_json(report.ptr);
    CHECK(json.find("\"command\": \"mc\"") != std::string::npos);
    CHECK(json.find("\"kappa\": \"2/1\"") != std::string::npos);

    params.sector = 2;
    Report bad;
    CHECK(sf_run_mc(&params, &bad.ptr) == SF_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("flow runs through the C surface") {
    sf_flow_params params{};
    params.n = 1;
    params.m = 1;
    params.k = 2;
    params.mode = "loop";
    params.step = 1e-2;
    params.h = 1e-3;
    params.seed = 1;

    Report report;
    REQUIRE(sf_run_flow(&params, &report.ptr) == SF_OK);
    CHECK(sf_report_passed(report.ptr) == 1);
    const std::string json = sf_report_json(report.ptr);
    CHECK(json.find("\"mode\": \"loop\"") != std::string::npos);
    CHECK(json.find("loop_residual") != std::string::npos);
    CHECK(json.find("convergence_order") != std::string::npos);

    params.mode = "orbit";
    Report bad;
    CHECK(sf_run_flow(&params, &bad.ptr) == SF_ERROR_CONFIG);
    CHECK(std::string(sf_last_error()).find("orbit") != std::string::npos);

    params.mode = "loop";
    params.step = 0;
    Report zero;
    CHECK(sf_run_flow(&params, &zero.ptr) == SF_ERROR_CONFIG);
}

TEST_CASE("report json is identical across equal runs") {
    auto run = [] {
        Config config;
        sf_verify_config_add_case(config.ptr, 1, 1, 2);
        sf_verify_config_set_trials(config.ptr, 2);
        sf_verify_config_set_seed(config.ptr, 9);
        sf_verify_config_add_kappa(config.ptr, "2");
        sf_verify_config_add_check(config.ptr, "curvature");
        Report report;
        REQUIRE(sf_run_verify(config.ptr, &report.ptr) == SF_OK);
        std::string json = sf_report_json(report.ptr);
        // elapsed time is the one field allowed to differ between runs
        const auto cut = json.find("\"elapsed_seconds\"");
        REQUIRE(cut != std::string::npos);
        return json.substr(0, cut);
    };
    CHECK(run() == run());
}
