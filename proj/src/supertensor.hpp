#pragma once

#include "graded_operator.hpp"

#include <string>
#include <vector>

namespace superflat {

// Deliberate single-sign mutations of the operator construction. The suite's
// sensitivity checks and the CLI's negative controls build operators with one
// of these enabled and assert that the identity checks notice. `none` is the
// correct build and the default everywhere.
enum class Mutation {
    none,
    drop_pole_parity_sign, // omit the per-pole parity sign in the dynamical matrix
    drop_cartan_term,      // omit the Cartan subtraction in the dynamical matrix
    drop_embed_signs,      // omit the Koszul sign in embeddings
};

Mutation mutation_from_name(const std::string& name); // "none" or an enumerator name
const char* mutation_name(Mutation mut);

int parity(const SuperDims& dims, int label);
int basis_parity(const SuperDims& dims, std::size_t code);

// matrix unit e_ab on a single factor (k treated as 1)
GradedOperator matrix_unit(const SuperDims& dims, int a, int b);

// e^(site)_ab on the full tensor space. The Koszul sign accumulates the
// parities of the factors strictly left of the acted slot:
// on (a_1..a_k) with a_site = b the image is
// (-1)^(p(e_ab)*(p(a_1)+...+p(a_{site-1}))) times the tuple with a_site -> a.
GradedOperator embed(const SuperDims& dims, int site, int a, int b,
                     Mutation mut = Mutation::none);

// P_ij = sum_{a,b} (-1)^p(b) e^(i)_ab e^(j)_ba; on homogeneous x (x) y in slots
// i,j it acts as (-1)^(p(x)p(y)) y (x) x
GradedOperator graded_permutation(const SuperDims& dims, int i, int j,
                                  Mutation mut = Mutation::none);

// product P_{s_{w_1}} ... P_{s_{w_l}} for a word of adjacent transpositions,
// each w in 1..k-1 meaning the swap of slots (w, w+1)
GradedOperator permutation_rep(const SuperDims& dims, const std::vector<int>& word,
                               Mutation mut = Mutation::none);

// E_ab = sum_{j=1..k} e^(j)_ab
GradedOperator total_generator(const SuperDims& dims, int a, int b,
                               Mutation mut = Mutation::none);

} // namespace superflat
