#pragma once

#include "mcmap.hpp"

#include <cstdint>
#include <iosfwd>

namespace superflat {

// joint coordinate space: (z_1..z_k, lambda_1..lambda_{n+m}) as doubles
std::size_t joint_dim(const SuperDims& dims);
std::size_t joint_index(const SuperDims& dims, VariableId v);
std::vector<double> joint_coordinates(const SuperDims& dims, const EvaluationPoint& pt);

// piecewise-linear path through the joint space; kappa fixed along it
struct Path {
    std::vector<std::vector<double>> waypoints;
};

// axis-aligned rectangle loop from pt in the (u, v) plane, back to start
Path rectangle_loop(const SuperDims& dims, const EvaluationPoint& pt, VariableId u,
                    VariableId v, double du, double dv);

struct SolverConfig {
    double step_size = 1e-3; // physical length of one RK4 step
    std::size_t max_steps = 4000000;
};

// smallest |z_i - z_j| or |lambda_a - lambda_b| attained anywhere on the path
double path_min_gap(const SuperDims& dims, const Path& path);

// deterministic start vectors, components in [-1, 1]
std::vector<double> random_state(std::size_t dim, std::uint64_t seed);
// supported on the weight basis only; needs k = n+m
std::vector<double> random_block_state(const SuperDims& dims, std::uint64_t seed);

// fixed-step classical RK4 for kappa d_v psi = A_v psi summed along the
// path tangent; refuses paths whose min gap drops below 1e-6; optional
// trajectory CSV (t, coordinates, vector components per accepted step)
std::vector<double> integrate(const SuperDims& dims, const Path& path,
                              std::vector<double> psi, double kappa, const SolverConfig& cfg,
                              Mutation mut = Mutation::none,
                              std::ostream* trajectory = nullptr);

// ||psi_end - psi_0|| / ||psi_0|| around a closed path
double loop_residual(const SuperDims& dims, const Path& loop, const std::vector<double>& psi0,
                     double kappa, const SolverConfig& cfg, Mutation mut = Mutation::none);

// observed order from endpoint differences at step h, h/2, h/4
double convergence_order(const SuperDims& dims, const Path& path,
                         const std::vector<double>& psi0, double kappa, double base_step,
                         Mutation mut = Mutation::none);

std::vector<double> covector_dense(const Covector& om);
double covector_dot(const std::vector<double>& bra, const std::vector<double>& psi);

// u-values of <Omega^sector | Psi> on the central stencil pt +- h e_a
struct StencilValues {
    double center = 0;
    std::vector<double> plus;
    std::vector<double> minus;
};

// integrates psi0 from pt to every stencil point; lambda_side selects the
// lambda_a +- h stencil, otherwise z_j +- h
StencilValues integrate_mc_stencil(const SuperDims& dims, int sector,
                                   const EvaluationPoint& pt, double h,
                                   const std::vector<double>& psi0, const SolverConfig& cfg,
                                   bool lambda_side, Mutation mut = Mutation::none);

// relative residual of the eigenvalue equation from second differences:
// kappa^2 sum_a d2_a u + (sum_{a!=b} ((-1)^i kappa - 1)/gap^2) u = (sum c^2) u
double mc_stencil_residual(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                           double h, const StencilValues& values, bool lambda_side);

// full check: integrate the stencil, then form the residual
double fd_mc_check(const SuperDims& dims, int sector, const EvaluationPoint& pt, double h,
                   const std::vector<double>& psi0, const SolverConfig& cfg,
                   bool lambda_side = true, Mutation mut = Mutation::none);

// same stencil arithmetic with the center vector plugged in unevolved;
// large residual expected (the identity needs a flat section)
double fd_mc_negative_control(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                              double h, const std::vector<double>& psi0,
                              bool lambda_side = true);

} // namespace superflat
