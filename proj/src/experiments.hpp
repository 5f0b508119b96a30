#pragma once

#include "flowsolver.hpp"
#include "verifier.hpp"

namespace superflat {

// well-separated exact base point: z_i = i-1, lambda_a = a - 1/2; keeps
// every coordinate gap at 1 so short excursions stay admissible
EvaluationPoint structured_point(const SuperDims& dims, const Rat& kappa);

// rectangle loops in every mixed (z_i, lambda_a) plane plus one RK4
// convergence-order measurement; optional trajectory CSV of the first loop
std::vector<CheckResult> flow_loop_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, std::uint64_t seed,
                                              Mutation mut = Mutation::none,
                                              const std::string& trajectory_path = {});

// two homotopic staircase paths to a common endpoint must agree
std::vector<CheckResult> flow_path_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, std::uint64_t seed,
                                              Mutation mut = Mutation::none);

// finite-difference eigenvalue residuals for both sectors and both sides,
// with the unevolved-stencil negative control; needs k = n+m
std::vector<CheckResult> flow_fdmc_experiment(const SuperDims& dims, const Rat& kappa,
                                              double step, double h, std::uint64_t seed,
                                              Mutation mut = Mutation::none);

// the focused mc run: one sector, one kappa, k forced to n+m by the caller
std::vector<CheckResult> mc_experiment(const SuperDims& dims, int sector, int trials,
                                       const Rat& kappa, std::uint64_t seed,
                                       Mutation mut = Mutation::none);

} // namespace superflat
