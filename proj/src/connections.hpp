#pragma once

#include "supertensor.hpp"

#include <variant>

namespace superflat {

// one coordinate of the joint parameter space
struct VariableId {
    enum class Kind { z, lambda };
    Kind kind = Kind::z;
    int index = 1; // 1-based; z: 1..k, lambda: 1..n+m

    static VariableId z(int i) { return {Kind::z, i}; }
    static VariableId lambda(int a) { return {Kind::lambda, a}; }

    bool operator==(const VariableId& other) const = default;
    std::string name() const;
};

// exact coordinates; admissible points keep z's pairwise distinct, lambda's
// pairwise distinct and kappa nonzero
struct EvaluationPoint {
    std::vector<Rat> z;
    std::vector<Rat> lambda;
    Rat kappa = 1;

    // throws PoleError naming the coincident pair, InputError on shape mismatch
    void validate(const SuperDims& dims) const;
    const Rat& value(VariableId v) const;
};

// one summand of a connection: a coefficient shape times a constant matrix
struct ConnectionTerm {
    struct Constant {
        Rat value;
    };
    struct Coordinate {
        VariableId var;
    };
    struct InversePole {
        VariableId v1, v2; // distinct, same kind; coefficient 1/(v1 - v2)
    };
    using CoeffShape = std::variant<Constant, Coordinate, InversePole>;

    CoeffShape shape;
    GradedOperator matrix;

    Rat coefficient(const EvaluationPoint& pt) const;
    // d coeff / d v, exact
    Rat coefficient_partial(VariableId v, const EvaluationPoint& pt) const;
    std::string shape_string() const;
};

ConnectionTerm::InversePole make_inverse_pole(VariableId v1, VariableId v2);

// a connection matrix A_v as a symbolic term list, carrying the coordinate v
// it differentiates against in the flat system kappa*d_v psi = A_v psi
struct Connection {
    SuperDims dims;
    VariableId flow_variable;
    std::vector<ConnectionTerm> terms;

    std::string dump_string() const; // per-term coefficient descriptor + matrix dump
};

// KZ matrix A_i = sum_c lambda_c e^(i)_cc + sum_{j!=i} P_ij / (z_i - z_j)
Connection kz_matrix(const SuperDims& dims, int site, Mutation mut = Mutation::none);

// dynamical matrix
// B_a = sum_j z_j e^(j)_aa + sum_{b!=a} (-1)^p(b) (E_ab E_ba - E_aa) / (lambda_a - lambda_b)
Connection dyn_matrix(const SuperDims& dims, int label, Mutation mut = Mutation::none);

GradedOperator eval_connection(const Connection& conn, const EvaluationPoint& pt);
GradedOperator eval_partial(const Connection& conn, VariableId v, const EvaluationPoint& pt);

} // namespace superflat
