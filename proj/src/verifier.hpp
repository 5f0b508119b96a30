#pragma once

#include "mcmap.hpp"
#include "rng.hpp"

#include <cstdint>
#include <variant>

namespace superflat {

// names one member of the joint flat system: KZ(i) pairs with z_i,
// DYN(a) pairs with lambda_a
struct FlowId {
    enum class Kind { kz, dyn };
    Kind kind = Kind::kz;
    int index = 1;

    static FlowId kz(int i) { return {Kind::kz, i}; }
    static FlowId dyn(int a) { return {Kind::dyn, a}; }

    bool operator==(const FlowId& other) const = default;
    VariableId flow_variable() const;
    std::string name() const; // "KZ(1)" / "DYN(2)"
    Connection build(const SuperDims& dims, Mutation mut = Mutation::none) const;
};

// F = kappa d_X A_Y - kappa d_Y A_X - [A_X, A_Y]; zero for a flat pair
GradedOperator curvature(const SuperDims& dims, FlowId x, FlowId y, const EvaluationPoint& pt,
                         Mutation mut = Mutation::none);

// 1/(l_ab l_ac) + 1/(l_ba l_bc) + 1/(l_ca l_cb) over the given labels; zero
Rat scalar_triple_identity(const std::vector<Rat>& lambda, int a, int b, int c);

// [P_ij, E_ab E_ba]; zero
GradedOperator permutation_commutation_check(const SuperDims& dims, int i, int j, int a, int b,
                                             Mutation mut = Mutation::none);

struct CheckResult {
    enum class Status { pass, fail, skipped };

    std::string name;
    // ordered key/value pairs, serialized into the report verbatim
    std::vector<std::pair<std::string, std::string>> params;
    Status status = Status::pass;
    // exact checks carry a rational residual, float checks a double
    std::variant<Rat, double> residual = Rat(0);
    std::string witness; // first offending entry, empty on pass

    std::string residual_string() const;
    std::string params_string() const; // "key=value key=value"
};

const char* status_name(CheckResult::Status status);

struct SuiteConfig {
    std::vector<SuperDims> cases;
    int trials = 20;
    std::uint64_t seed = 1;
    std::vector<Rat> kappas;         // empty selects the default {1, 2, 1/3}
    std::vector<std::string> checks; // empty selects every check
    std::string output_path;         // empty writes to stdout
    Mutation mutation = Mutation::none;

    std::vector<Rat> effective_kappas() const;
};

// names accepted by SuiteConfig::checks
const std::vector<std::string>& known_check_names();

// single-result runners shared by the suite and the focused mc command;
// the master seed is mixed with the check identity into a sub-seed
CheckResult check_eigen(const SuperDims& dims, int sector, Mutation mut = Mutation::none);
CheckResult check_mixed_anticommutator(const SuperDims& dims, int sector, int trials,
                                       std::uint64_t master_seed,
                                       Mutation mut = Mutation::none);
CheckResult check_mc_side(const SuperDims& dims, int sector, const Rat& kappa,
                          bool lambda_side, int trials, std::uint64_t master_seed,
                          Mutation mut = Mutation::none);

struct SuiteResult {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    std::size_t count(CheckResult::Status status) const;
};

// runs every selected check over every case; deterministic for a fixed
// config, parallel across independent checks
SuiteResult run_suite(const SuiteConfig& config);

} // namespace superflat
