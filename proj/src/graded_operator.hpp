#pragma once

#include "dims.hpp"
#include "rational.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

namespace superflat {

// Sparse square matrix over exact rationals on the full tensor space.
// Exact zeros are never stored. An optional parity tag records the declared
// Z/2 degree of a homogeneous operator; arithmetic propagates it when the
// result is still homogeneous.
class GradedOperator {
  public:
    explicit GradedOperator(const SuperDims& dims);

    static GradedOperator identity(const SuperDims& dims);

    const SuperDims& dims() const { return dims_; }
    std::size_t dim() const { return rows_.size(); }

    // 0 when the entry is absent
    Rat entry(std::size_t row, std::size_t col) const;
    void set_entry(std::size_t row, std::size_t col, const Rat& value);
    void add_entry(std::size_t row, std::size_t col, const Rat& value);

    bool is_zero() const { return nnz_ == 0; }
    std::size_t nonzero_count() const { return nnz_; }

    GradedOperator& operator+=(const GradedOperator& other);
    GradedOperator& operator-=(const GradedOperator& other);
    GradedOperator& operator*=(const Rat& scalar);

    friend GradedOperator operator+(GradedOperator lhs, const GradedOperator& rhs) {
        lhs += rhs;
        return lhs;
    }
    friend GradedOperator operator-(GradedOperator lhs, const GradedOperator& rhs) {
        lhs -= rhs;
        return lhs;
    }
    friend GradedOperator operator*(GradedOperator op, const Rat& scalar) {
        op *= scalar;
        return op;
    }
    friend GradedOperator operator*(const Rat& scalar, GradedOperator op) {
        op *= scalar;
        return op;
    }
    GradedOperator operator*(const GradedOperator& other) const;

    bool operator==(const GradedOperator& other) const;

    std::optional<int> parity_tag() const { return parity_tag_; }
    void set_parity_tag(std::optional<int> tag);
    // true when every stored entry respects the declared tag (or no tag is set)
    bool parity_tag_consistent() const;

    Rat max_abs_entry() const;

    struct Entry {
        std::size_t row = 0;
        std::size_t col = 0;
        Rat value;
    };
    std::optional<Entry> first_nonzero() const;

    const std::map<std::size_t, Rat>& row(std::size_t r) const;

    template <class Fn> void for_each_entry(Fn&& fn) const {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r])
                fn(r, c, v);
    }

    // one "row col num/den" line per stored entry, rows in encoding order
    void dump(std::ostream& out) const;
    std::string dump_string() const;

  private:
    SuperDims dims_;
    std::vector<std::map<std::size_t, Rat>> rows_;
    std::optional<int> parity_tag_;
    std::size_t nnz_ = 0;

    void require_index(std::size_t row, std::size_t col) const;
};

GradedOperator commutator(const GradedOperator& a, const GradedOperator& b);
GradedOperator anticommutator(const GradedOperator& a, const GradedOperator& b);

} // namespace superflat
