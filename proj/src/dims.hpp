#pragma once

#include "errors.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace superflat {

// Shape of the graded tensor space: n bosonic plus m fermionic basis
// directions per factor, k factors. Basis vectors are label tuples
// (a_1,...,a_k) with a_j in 1..n+m, encoded big-endian:
// code = sum_j (a_j - 1) * (n+m)^(k-j).
struct SuperDims {
    int n = 0;
    int m = 0;
    int k = 1;

    SuperDims(int n_, int m_, int k_);

    int site_dim() const { return n + m; }
    std::size_t total_dim() const { return total_dim_; }

    // 0 for bosonic labels (a <= n), 1 for fermionic (a > n)
    int parity(int label) const;
    // sum of label parities mod 2
    int basis_parity(std::size_t code) const;

    std::size_t encode(const std::vector<int>& labels) const;
    std::vector<int> decode(std::size_t code) const;

    void require_site(int site) const;
    void require_label(int label) const;

    std::string to_string() const; // "n,m,k"

    bool operator==(const SuperDims& other) const {
        return n == other.n && m == other.m && k == other.k;
    }

  private:
    std::size_t total_dim_ = 0;
};

} // namespace superflat
