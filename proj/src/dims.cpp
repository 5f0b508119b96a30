#include "dims.hpp"

#include <limits>

namespace superflat {

SuperDims::SuperDims(int n_, int m_, int k_) : n(n_), m(m_), k(k_) {
    if (n < 0 || m < 0 || n + m < 1)
        throw InputError("invalid superdimensions n=" + std::to_string(n) +
                         " m=" + std::to_string(m) + " (need n,m >= 0 and n+m >= 1)");
    if (k < 1)
        throw InputError("invalid factor count k=" + std::to_string(k));
    const auto d = static_cast<std::size_t>(n + m);
    std::size_t dim = 1;
    for (int j = 0; j < k; ++j) {
        if (dim > std::numeric_limits<std::size_t>::max() / d)
            throw InputError("tensor space dimension overflows for " + to_string());
        dim *= d;
    }
    total_dim_ = dim;
}

int SuperDims::parity(int label) const {
    require_label(label);
    return label <= n ? 0 : 1;
}

int SuperDims::basis_parity(std::size_t code) const {
    if (code >= total_dim_)
        throw InputError("basis code " + std::to_string(code) + " out of range for " + to_string());
    const auto d = static_cast<std::size_t>(site_dim());
    int p = 0;
    for (int j = 0; j < k; ++j) {
        const int label = static_cast<int>(code % d) + 1;
        if (label > n)
            p ^= 1;
        code /= d;
    }
    return p;
}

std::size_t SuperDims::encode(const std::vector<int>& labels) const {
    if (static_cast<int>(labels.size()) != k)
        throw InputError("basis tuple has " + std::to_string(labels.size()) + " labels, expected " +
                         std::to_string(k));
    std::size_t code = 0;
    for (int a : labels) {
        require_label(a);
        code = code * static_cast<std::size_t>(site_dim()) + static_cast<std::size_t>(a - 1);
    }
    return code;
}

std::vector<int> SuperDims::decode(std::size_t code) const {
    if (code >= total_dim_)
        throw InputError("basis code " + std::to_string(code) + " out of range for " + to_string());
    std::vector<int> labels(static_cast<std::size_t>(k));
    const auto d = static_cast<std::size_t>(site_dim());
    for (int j = k - 1; j >= 0; --j) {
        labels[static_cast<std::size_t>(j)] = static_cast<int>(code % d) + 1;
        code /= d;
    }
    return labels;
}

void SuperDims::require_site(int site) const {
    if (site < 1 || site > k)
        throw InputError("site " + std::to_string(site) + " out of range 1.." + std::to_string(k));
}

void SuperDims::require_label(int label) const {
    if (label < 1 || label > site_dim())
        throw InputError("label " + std::to_string(label) + " out of range 1.." +
                         std::to_string(site_dim()));
}

std::string SuperDims::to_string() const {
    return std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k);
}

} // namespace superflat
