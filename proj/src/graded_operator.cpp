#include "graded_operator.hpp"

#include <ostream>
#include <sstream>

namespace superflat {

GradedOperator::GradedOperator(const SuperDims& dims) : dims_(dims), rows_(dims.total_dim()) {}

GradedOperator GradedOperator::identity(const SuperDims& dims) {
    GradedOperator op(dims);
    for (std::size_t i = 0; i < op.dim(); ++i)
        op.rows_[i].emplace(i, Rat(1));
    op.nnz_ = op.dim();
    op.parity_tag_ = 0;
    return op;
}

Rat GradedOperator::entry(std::size_t row, std::size_t col) const {
    require_index(row, col);
    const auto& r = rows_[row];
    auto it = r.find(col);
    return it == r.end() ? Rat(0) : it->second;
}

void GradedOperator::set_entry(std::size_t row, std::size_t col, const Rat& value) {
    require_index(row, col);
    auto& r = rows_[row];
    auto it = r.find(col);
    if (value == 0) {
        if (it != r.end()) {
            r.erase(it);
            --nnz_;
        }
        return;
    }
    if (it == r.end()) {
        r.emplace(col, value);
        ++nnz_;
    } else {
        it->second = value;
    }
}

void GradedOperator::add_entry(std::size_t row, std::size_t col, const Rat& value) {
    require_index(row, col);
    if (value == 0)
        return;
    auto& r = rows_[row];
    auto [it, inserted] = r.try_emplace(col, value);
    if (inserted) {
        ++nnz_;
        return;
    }
    it->second += value;
    if (it->second == 0) {
        r.erase(it);
        --nnz_;
    }
}

GradedOperator& GradedOperator::operator+=(const GradedOperator& other) {
    if (!(dims_ == other.dims_))
        throw InputError("operator shape mismatch: " + dims_.to_string() + " vs " +
                         other.dims_.to_string());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : other.rows_[r])
            add_entry(r, c, v);
    if (!(parity_tag_ && other.parity_tag_ && *parity_tag_ == *other.parity_tag_))
        parity_tag_.reset();
    return *this;
}

GradedOperator& GradedOperator::operator-=(const GradedOperator& other) {
    if (!(dims_ == other.dims_))
        throw InputError("operator shape mismatch: " + dims_.to_string() + " vs " +
                         other.dims_.to_string());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : other.rows_[r])
            add_entry(r, c, -v);
    if (!(parity_tag_ && other.parity_tag_ && *parity_tag_ == *other.parity_tag_))
        parity_tag_.reset();
    return *this;
}

GradedOperator& GradedOperator::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        for (auto& r : rows_)
            r.clear();
        nnz_ = 0;
        return *this;
    }
    for (auto& r : rows_)
        for (auto& [c, v] : r)
            v *= scalar;
    return *this;
}

GradedOperator GradedOperator::operator*(const GradedOperator& other) const {
    if (!(dims_ == other.dims_))
        throw InputError("operator shape mismatch: " + dims_.to_string() + " vs " +
                         other.dims_.to_string());
    GradedOperator out(dims_);
    Rat prod;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (const auto& [mid, va] : rows_[r]) {
            for (const auto& [c, vb] : other.rows_[mid]) {
                prod = va * vb;
                out.add_entry(r, c, prod);
            }
        }
    }
    if (parity_tag_ && other.parity_tag_)
        out.parity_tag_ = (*parity_tag_ + *other.parity_tag_) % 2;
    return out;
}

bool GradedOperator::operator==(const GradedOperator& other) const {
    return dims_ == other.dims_ && rows_ == other.rows_;
}

void GradedOperator::set_parity_tag(std::optional<int> tag) {
    if (tag && (*tag < 0 || *tag > 1))
        throw InputError("parity tag must be 0 or 1");
    parity_tag_ = tag;
}

bool GradedOperator::parity_tag_consistent() const {
    if (!parity_tag_)
        return true;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r])
            if ((dims_.basis_parity(r) + dims_.basis_parity(c)) % 2 != *parity_tag_)
                return false;
    return true;
}

Rat GradedOperator::max_abs_entry() const {
    Rat best(0);
    for (const auto& r : rows_)
        for (const auto& [c, v] : r) {
            Rat a = abs(v);
            if (a > best)
                best = a;
        }
    return best;
}

std::optional<GradedOperator::Entry> GradedOperator::first_nonzero() const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (!rows_[r].empty()) {
            const auto& [c, v] = *rows_[r].begin();
            return Entry{r, c, v};
        }
    return std::nullopt;
}

const std::map<std::size_t, Rat>& GradedOperator::row(std::size_t r) const {
    if (r >= rows_.size())
        throw InputError("row " + std::to_string(r) + " out of range");
    return rows_[r];
}

void GradedOperator::dump(std::ostream& out) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r])
            out << r << " " << c << " " << rat_string(v) << "\n";
}

std::string GradedOperator::dump_string() const {
    std::ostringstream out;
    dump(out);
    return out.str();
}

void GradedOperator::require_index(std::size_t row, std::size_t col) const {
    if (row >= rows_.size() || col >= rows_.size())
        throw InputError("entry (" + std::to_string(row) + "," + std::to_string(col) +
                         ") out of range for dimension " + std::to_string(rows_.size()));
}

GradedOperator commutator(const GradedOperator& a, const GradedOperator& b) {
    return a * b - b * a;
}

GradedOperator anticommutator(const GradedOperator& a, const GradedOperator& b) {
    return a * b + b * a;
}

} // namespace superflat
