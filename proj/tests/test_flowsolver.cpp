#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "experiments.hpp"
#include "flowsolver.hpp"

#include <cmath>

using namespace superflat;

namespace {

double max_err(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("joint coordinates put z first") {
    const SuperDims dims(1, 1, 2);
    CHECK(joint_dim(dims) == 4);
    CHECK(joint_index(dims, VariableId::z(1)) == 0);
    CHECK(joint_index(dims, VariableId::z(2)) == 1);
    CHECK(joint_index(dims, VariableId::lambda(1)) == 2);
    CHECK(joint_index(dims, VariableId::lambda(2)) == 3);

    const EvaluationPoint pt = structured_point(dims, Rat(2));
    const std::vector<double> x = joint_coordinates(dims, pt);
    CHECK(x == std::vector<double>{0.0, 1.0, 0.5, 1.5});
}

TEST_CASE("structured points stay admissible") {
    for (const SuperDims& dims : {SuperDims(1, 1, 2), SuperDims(2, 1, 3), SuperDims(2, 2, 4)}) {
        const EvaluationPoint pt = structured_point(dims, Rat(1, 3));
        pt.validate(dims);
        for (std::size_t i = 1; i < pt.z.size(); ++i) CHECK(pt.z[i] - pt.z[i - 1] == 1);
        for (std::size_t a = 1; a < pt.lambda.size(); ++a)
            CHECK(pt.lambda[a] - pt.lambda[a - 1] == 1);
    }
}

TEST_CASE("rectangle loops close") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    const Path loop =
        rectangle_loop(dims, pt, VariableId::z(1), VariableId::lambda(2), 0.25, 0.25);
    REQUIRE(loop.waypoints.size() == 5);
    CHECK(loop.waypoints.front() == loop.waypoints.back());
    CHECK(loop.waypoints[1][0] == doctest::Approx(0.25));
    CHECK(loop.waypoints[2][3] == doctest::Approx(1.75));
}

TEST_CASE("path min gap detects a crossing") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    Path path;
    path.waypoints.push_back(joint_coordinates(dims, pt));
    auto crossed = path.waypoints.front();
    crossed[0] = 2.0; // z_1 sweeps through z_2 = 1
    path.waypoints.push_back(crossed);
    CHECK(path_min_gap(dims, path) == doctest::Approx(0.0));

    const std::vector<double> psi0 = random_state(dims.total_dim(), 4);
    CHECK_THROWS_AS(integrate(dims, path, psi0, 2.0, SolverConfig{}), PoleError);
}

TEST_CASE("integration over a zero-length path is the identity") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    Path path;
    path.waypoints = {joint_coordinates(dims, pt), joint_coordinates(dims, pt)};
    const std::vector<double> psi0 = random_state(dims.total_dim(), 4);
    const std::vector<double> end = integrate(dims, path, psi0, 2.0, SolverConfig{});
    CHECK(max_err(end, psi0) == 0.0);
}

TEST_CASE("solver guards its configuration") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    Path path;
    path.waypoints.push_back(joint_coordinates(dims, pt));
    auto shifted = path.waypoints.front();
    shifted[2] += 0.25;
    path.waypoints.push_back(shifted);
    const std::vector<double> psi0 = random_state(dims.total_dim(), 4);

    SolverConfig bad_step;
    bad_step.step_size = 0.0;
    CHECK_THROWS_AS(integrate(dims, path, psi0, 2.0, bad_step), ConfigError);

    SolverConfig tiny_budget;
    tiny_budget.step_size = 1e-4;
    tiny_budget.max_steps = 3;
    CHECK_THROWS_AS(integrate(dims, path, psi0, 2.0, tiny_budget), NumericalError);

    CHECK_THROWS_AS(integrate(dims, path, psi0, 0.0, SolverConfig{}), InputError);
}

TEST_CASE("loops in mixed planes transport back to the start") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    const std::vector<double> psi0 = random_state(dims.total_dim(), 11);
    SolverConfig cfg;
    cfg.step_size = 1e-2;
    const Path loop =
        rectangle_loop(dims, pt, VariableId::z(2), VariableId::lambda(1), 0.25, 0.25);
    CHECK(loop_residual(dims, loop, psi0, 2.0, cfg) < 1e-8);
}

TEST_CASE("endpoint state is path independent") {
    const SuperDims dims(1, 1, 2);
    const std::vector<double> base = joint_coordinates(dims, structured_point(dims, Rat(2)));
    const std::vector<double> psi0 = random_state(dims.total_dim(), 21);
    SolverConfig cfg;
    cfg.step_size = 1e-3;

    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const std::vector<double> offset = random_state(joint_dim(dims), 100 + trial);
        std::vector<double> target = base;
        std::vector<double> corner = base; // moves only the z block first
        for (std::size_t i = 0; i < target.size(); ++i) {
            target[i] += 0.2 * offset[i];
            if (i < static_cast<std::size_t>(dims.k)) corner[i] = target[i];
        }

        Path direct;
        direct.waypoints = {base, target};
        Path dogleg;
        dogleg.waypoints = {base, corner, target};
        REQUIRE(path_min_gap(dims, dogleg) > 0.5);

        const std::vector<double> a = integrate(dims, direct, psi0, 2.0, cfg);
        const std::vector<double> b = integrate(dims, dogleg, psi0, 2.0, cfg);
        CHECK(max_err(a, b) < 1e-8);
    }
}

TEST_CASE("measured convergence order is fourth order") {
    const SuperDims dims(1, 1, 2);
    const std::vector<double> base = joint_coordinates(dims, structured_point(dims, Rat(2)));
    std::vector<double> target = base;
    target[2] += 0.25;
    Path path;
    path.waypoints = {base, target};
    const std::vector<double> psi0 = random_state(dims.total_dim(), 31);
    const double order = convergence_order(dims, path, psi0, 2.0, 1.0 / 16.0);
    CHECK(order > 3.7);
    CHECK(order < 4.3);
}

TEST_CASE("weight block is invariant under transport") {
    const SuperDims dims(2, 1, 3);
    const std::vector<double> base = joint_coordinates(dims, structured_point(dims, Rat(2)));
    std::vector<double> target = base;
    target[0] += 0.25;
    target[4] -= 0.25;
    Path path;
    path.waypoints = {base, target};

    const std::vector<double> psi0 = random_block_state(dims, 8);
    SolverConfig cfg;
    cfg.step_size = 1e-2;
    const std::vector<double> end = integrate(dims, path, psi0, 2.0, cfg);

    std::vector<bool> in_block(dims.total_dim(), false);
    for (std::size_t code : weight_subspace(dims)) in_block[code] = true;
    for (std::size_t i = 0; i < end.size(); ++i)
        if (!in_block[i]) CHECK(std::abs(end[i]) <= 1e-10);
}

TEST_CASE("covector contraction matches the sparse form") {
    const SuperDims dims(1, 1, 2);
    const Covector om = omega(dims, 1);
    const std::vector<double> dense = covector_dense(om);
    REQUIRE(dense.size() == dims.total_dim());
    CHECK(dense[dims.encode({1, 2})] == 1.0);
    CHECK(dense[dims.encode({2, 1})] == -1.0);
    CHECK(dense[0] == 0.0);

    const std::vector<double> psi{4.0, 0.5, 2.0, -1.0};
    CHECK(covector_dot(dense, psi) == doctest::Approx(0.5 - 2.0));
}

TEST_CASE("finite difference stencil validates the eigenvalue identity") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = structured_point(dims, Rat(2));
    const std::vector<double> psi0 = random_block_state(dims, 13);
    SolverConfig cfg;
    cfg.step_size = 1e-3;

    for (const bool lambda_side : {true, false}) {
        const double residual = fd_mc_check(dims, 0, pt, 1e-3, psi0, cfg, lambda_side);
        CHECK(residual <= 1e-5);
        const double control = fd_mc_negative_control(dims, 0, pt, 1e-3, psi0, lambda_side);
        CHECK(control >= 1e-2);
    }
}

TEST_CASE("experiment wrappers succeed on the small case") {
    for (const CheckResult& check : flow_loop_experiment(SuperDims(1, 1, 2), Rat(2), 1e-2, 3))
        CHECK(check.status == CheckResult::Status::pass);
    for (const CheckResult& check : flow_path_experiment(SuperDims(1, 1, 2), Rat(2), 1e-2, 3))
        CHECK(check.status == CheckResult::Status::pass);
    for (const CheckResult& check :
         flow_fdmc_experiment(SuperDims(1, 1, 2), Rat(2), 1e-3, 1e-3, 3))
        CHECK(check.status == CheckResult::Status::pass);
}

TEST_CASE("experiment wrappers validate their inputs") {
    CHECK_THROWS_AS(flow_fdmc_experiment(SuperDims(1, 1, 3), Rat(2), 1e-3, 1e-3, 3),
                    ConfigError);
    CHECK_THROWS_AS(mc_experiment(SuperDims(1, 1, 2), 2, 5, Rat(2), 1), InputError);
    CHECK_THROWS_AS(mc_experiment(SuperDims(1, 1, 3), 0, 5, Rat(2), 1), ConfigError);
    CHECK_THROWS_AS(mc_experiment(SuperDims(1, 1, 2), 0, 0, Rat(2), 1), ConfigError);

    const std::vector<CheckResult> checks = mc_experiment(SuperDims(1, 1, 2), 1, 3, Rat(2), 9);
    REQUIRE(checks.size() == 4);
    for (const CheckResult& check : checks) CHECK(check.status == CheckResult::Status::pass);
}
