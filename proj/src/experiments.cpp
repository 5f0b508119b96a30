#include "experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace superflat {

namespace {

constexpr double loop_tolerance = 1e-8;
constexpr double path_tolerance = 1e-8;
constexpr double fdmc_tolerance = 1e-5;
constexpr double control_floor = 1e-2;
constexpr double order_low = 3.7;
constexpr double order_high = 4.3;
constexpr double excursion = 0.25; // side length of loops and staircase legs

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

CheckResult float_check(std::string name,
                        std::vector<std::pair<std::string, std::string>> params,
                        double residual, bool ok, const std::string& witness_on_fail) {
    CheckResult r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.status = ok ? CheckResult::Status::pass : CheckResult::Status::fail;
    r.residual = residual;
    if (!ok)
        r.witness = witness_on_fail;
    return r;
}

} // namespace

EvaluationPoint structured_point(const SuperDims& dims, const Rat& kappa) {
    EvaluationPoint pt;
    for (int i = 1; i <= dims.k; ++i)
        pt.z.emplace_back(i - 1);
    for (int a = 1; a <= dims.site_dim(); ++a)
        pt.lambda.push_back(Rat(2 * a - 1, 2));
    pt.kappa = kappa;
    pt.validate(dims);
    return pt;
}

std::vector<CheckResult> flow_loop_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, std::uint64_t seed, Mutation mut,
                                              const std::string& trajectory_path) {
    const EvaluationPoint pt = structured_point(dims, kappa);
    const double kd = rat_to_double(kappa);
    const std::vector<double> psi0 =
        random_state(dims.total_dim(), task_seed(seed, "flow_loop_psi"));
    SolverConfig cfg;
    cfg.step_size = step;

    std::vector<CheckResult> out;
    bool first = true;
    for (int i = 1; i <= dims.k; ++i)
        for (int a = 1; a <= dims.site_dim(); ++a) {
            const Path loop = rectangle_loop(dims, pt, VariableId::z(i), VariableId::lambda(a),
                                             excursion, excursion);
            if (first && !trajectory_path.empty()) {
                std::ofstream csv(trajectory_path);
                if (!csv)
                    throw IoError("cannot write '" + trajectory_path + "'");
                integrate(dims, loop, psi0, kd, cfg, mut, &csv);
            }
            first = false;
            const double residual = loop_residual(dims, loop, psi0, kd, cfg, mut);
            out.push_back(float_check(
                "loop_residual",
                {{"dims", dims.to_string()},
                 {"plane", "z" + std::to_string(i) + ",lambda" + std::to_string(a)},
                 {"kappa", rat_string(kappa)},
                 {"step", format_double(step)},
                 {"min_gap", format_double(path_min_gap(dims, loop))},
                 {"seed", std::to_string(seed)}},
                residual, residual <= loop_tolerance,
                "holonomy above " + format_double(loop_tolerance)));
        }

    Path order_path;
    order_path.waypoints.assign(2, joint_coordinates(dims, pt));
    order_path.waypoints[1][joint_index(dims, VariableId::lambda(1))] += excursion;
    const double order = convergence_order(dims, order_path, psi0, kd, 1.0 / 16);
    out.push_back(float_check("convergence_order",
                              {{"dims", dims.to_string()},
                               {"kappa", rat_string(kappa)},
                               {"base_step", format_double(1.0 / 16)},
                               {"seed", std::to_string(seed)}},
                              order, order >= order_low && order <= order_high,
                              "observed order outside [" + format_double(order_low) + ", " +
                                  format_double(order_high) + "]"));
    return out;
}

std::vector<CheckResult> flow_path_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, std::uint64_t seed, Mutation mut) {
    const EvaluationPoint pt = structured_point(dims, kappa);
    const double kd = rat_to_double(kappa);
    const std::vector<double> psi0 =
        random_state(dims.total_dim(), task_seed(seed, "flow_path_psi"));
    SolverConfig cfg;
    cfg.step_size = step;

    const std::vector<double> base = joint_coordinates(dims, pt);
    const std::size_t nj = joint_dim(dims);
    auto staircase = [&](bool reversed) {
        Path path;
        path.waypoints.push_back(base);
        std::vector<double> current = base;
        for (std::size_t c = 0; c < nj; ++c) {
            const std::size_t idx = reversed ? nj - 1 - c : c;
            current[idx] += excursion;
            path.waypoints.push_back(current);
        }
        return path;
    };

    const std::vector<double> end_a = integrate(dims, staircase(false), psi0, kd, cfg, mut);
    const std::vector<double> end_b = integrate(dims, staircase(true), psi0, kd, cfg, mut);
    double diff2 = 0, norm2 = 0;
    for (std::size_t c = 0; c < end_a.size(); ++c) {
        diff2 += (end_a[c] - end_b[c]) * (end_a[c] - end_b[c]);
        norm2 += end_a[c] * end_a[c];
    }
    const double residual = std::sqrt(diff2 / norm2);
    return {float_check("path_independence",
                        {{"dims", dims.to_string()},
                         {"kappa", rat_string(kappa)},
                         {"step", format_double(step)},
                         {"min_gap",
                          format_double(std::min(path_min_gap(dims, staircase(false)),
                                                 path_min_gap(dims, staircase(true))))},
                         {"seed", std::to_string(seed)}},
                        residual, residual <= path_tolerance,
                        "staircase endpoints differ above " + format_double(path_tolerance))};
}

std::vector<CheckResult> flow_fdmc_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, double h, std::uint64_t seed,
                                              Mutation mut) {
    if (dims.k != dims.site_dim())
        throw ConfigError("fdmc needs k = n+m, got k=" + std::to_string(dims.k) + " with n+m=" +
                          std::to_string(dims.site_dim()));
    const EvaluationPoint pt = structured_point(dims, kappa);
    const std::vector<double> psi0 = random_block_state(dims, task_seed(seed, "fdmc_psi"));
    SolverConfig cfg;
    cfg.step_size = step;

    std::vector<CheckResult> out;
    for (int sector = 0; sector <= 1; ++sector) {
        std::vector<std::pair<std::string, std::string>> params{
            {"dims", dims.to_string()},     {"sector", std::to_string(sector)},
            {"kappa", rat_string(kappa)},   {"step", format_double(step)},
            {"h", format_double(h)},        {"seed", std::to_string(seed)}};
        const double lam = fd_mc_check(dims, sector, pt, h, psi0, cfg, true, mut);
        out.push_back(float_check("fd_mc_lambda", params, lam, lam <= fdmc_tolerance,
                                  "residual above " + format_double(fdmc_tolerance)));
        const double zres = fd_mc_check(dims, sector, pt, h, psi0, cfg, false, mut);
        out.push_back(float_check("fd_mc_z", params, zres, zres <= fdmc_tolerance,
                                  "residual above " + format_double(fdmc_tolerance)));
        const double control = fd_mc_negative_control(dims, sector, pt, h, psi0, true);
        out.push_back(float_check("fd_mc_negative_control", params, control,
                                  control >= control_floor,
                                  "unevolved stencil fell below " +
                                      format_double(control_floor)));
    }
    return out;
}

std::vector<CheckResult> mc_experiment(const SuperDims& dims, int sector, int trials,
                                       const Rat& kappa, std::uint64_t seed, Mutation mut) {
    if (sector != 0 && sector != 1)
        throw InputError("sector must be 0 or 1, got " + std::to_string(sector));
    if (dims.k != dims.site_dim())
        throw ConfigError("mc checks need k = n+m");
    if (trials < 1)
        throw ConfigError("trials must be >= 1");
    if (kappa == 0)
        throw ConfigError("kappa must be nonzero");
    std::vector<CheckResult> out;
    out.push_back(check_eigen(dims, sector, mut));
    out.push_back(check_mixed_anticommutator(dims, sector, trials, seed, mut));
    out.push_back(check_mc_side(dims, sector, kappa, true, trials, seed, mut));
    out.push_back(check_mc_side(dims, sector, kappa, false, trials, seed, mut));
    return out;
}

} // namespace superflat
