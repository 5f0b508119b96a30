#pragma once

#include "connections.hpp"

#include <iosfwd>
#include <map>

namespace superflat {

// ordered basis of the weight space V[1]: all label tuples that are a
// permutation of (1..n+m), lexicographic; requires k = n+m
std::vector<std::size_t> weight_subspace(const SuperDims& dims);

// linear functional on the tensor space, stored sparsely over basis codes
class Covector {
  public:
    Covector(const SuperDims& dims, int sector);

    const SuperDims& dims() const { return dims_; }
    int sector() const { return sector_; }

    Rat coefficient(std::size_t code) const;
    void set_coefficient(std::size_t code, const Rat& value);
    void add_coefficient(std::size_t code, const Rat& value);

    bool is_zero() const { return entries_.empty(); }
    std::size_t nonzero_count() const { return entries_.size(); }
    const std::map<std::size_t, Rat>& coefficients() const { return entries_; }

    Covector& operator+=(const Covector& other);
    Covector& operator-=(const Covector& other);
    Covector& operator*=(const Rat& scalar);

    // <v| M, the right action on a bra
    Covector applied(const GradedOperator& op) const;

    Rat max_abs_coefficient() const;
    // first nonzero as "a_1 ... a_k value", empty when zero
    std::string witness() const;

    // one "a_1 a_2 ... a_k  num/den" line per entry, lexicographic order
    void dump(std::ostream& out) const;
    std::string dump_string() const;

  private:
    SuperDims dims_;
    int sector_;
    std::map<std::size_t, Rat> entries_;
};

// reduced-word construction used when expanding permutations into adjacent
// transpositions; the two strategies must give the same covectors
enum class WordStrategy {
    bubble,    // left-to-right bubble passes
    insertion, // place the largest out-of-order value by a falling run
};

std::vector<int> reduced_word(const std::vector<int>& arrangement, WordStrategy strategy);

// the projecting covectors: Omega^sector = sum_sigma (+-1)^(sector*sgn sigma) <base| P_sigma
Covector omega(const SuperDims& dims, int sector, Mutation mut = Mutation::none,
               WordStrategy strategy = WordStrategy::bubble);

// <Omega^i| (E_ab E_ba - E_aa) - (-1)^(p(b)+i) <Omega^i|, exactly zero
Covector eigen_residual(const SuperDims& dims, int sector, int a, int b,
                        Mutation mut = Mutation::none);

// <Omega^i| ({Z_a, G_ab} - {Z_b, G_ba}) with Z_a = sum_j z_j e^(j)_aa and
// G_ab = (-1)^p(b) (E_ab E_ba - E_aa), exactly zero for every z
Covector mixed_anticommutator_residual(const SuperDims& dims, int sector, int a, int b,
                                       const std::vector<Rat>& z, Mutation mut = Mutation::none);

// dual Calogero-Moser eigenvalue identity in the lambda variables:
// <Omega^i| ( sum_a [kappa dB_a/dlambda_a + B_a^2]
//             + sum_{a!=b} ((-1)^i kappa - 1)/(lambda_a-lambda_b)^2
//             - sum_j z_j^2 ), exactly zero
Covector mc_residual_lambda(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                            Mutation mut = Mutation::none);

// mirror identity in the z variables with coupling over z pairs and
// eigenvalue sum_c lambda_c^2
Covector mc_residual_z(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                       Mutation mut = Mutation::none);

} // namespace superflat
