#include "supertensor.hpp"

namespace superflat {

Mutation mutation_from_name(const std::string& name) {
    if (name.empty() || name == "none")
        return Mutation::none;
    if (name == "drop_pole_parity_sign")
        return Mutation::drop_pole_parity_sign;
    if (name == "drop_cartan_term")
        return Mutation::drop_cartan_term;
    if (name == "drop_embed_signs")
        return Mutation::drop_embed_signs;
    throw ConfigError("unknown mutation '" + name + "'");
}

const char* mutation_name(Mutation mut) {
    switch (mut) {
    case Mutation::none: return "none";
    case Mutation::drop_pole_parity_sign: return "drop_pole_parity_sign";
    case Mutation::drop_cartan_term: return "drop_cartan_term";
    case Mutation::drop_embed_signs: return "drop_embed_signs";
    }
    return "none";
}

int parity(const SuperDims& dims, int label) {
    return dims.parity(label);
}

int basis_parity(const SuperDims& dims, std::size_t code) {
    return dims.basis_parity(code);
}

GradedOperator matrix_unit(const SuperDims& dims, int a, int b) {
    dims.require_label(a);
    dims.require_label(b);
    SuperDims site_dims(dims.n, dims.m, 1);
    GradedOperator op(site_dims);
    op.set_entry(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1), Rat(1));
    op.set_parity_tag((dims.parity(a) + dims.parity(b)) % 2);
    return op;
}

GradedOperator embed(const SuperDims& dims, int site, int a, int b, Mutation mut) {
    dims.require_site(site);
    dims.require_label(a);
    dims.require_label(b);
    const int op_parity = (dims.parity(a) + dims.parity(b)) % 2;
    const bool keep_signs = mut != Mutation::drop_embed_signs;
    const auto d = static_cast<std::size_t>(dims.site_dim());
    // stride of the acted slot in the big-endian encoding
    std::size_t stride = 1;
    for (int j = dims.k; j > site; --j)
        stride *= d;

    GradedOperator op(dims);
    std::vector<int> labels;
    for (std::size_t col = 0; col < dims.total_dim(); ++col) {
        labels = dims.decode(col);
        if (labels[static_cast<std::size_t>(site - 1)] != b)
            continue;
        int left = 0;
        for (int j = 0; j < site - 1; ++j)
            left ^= dims.parity(labels[static_cast<std::size_t>(j)]);
        const std::size_t row =
            col - stride * static_cast<std::size_t>(b - 1) + stride * static_cast<std::size_t>(a - 1);
        const bool negative = keep_signs && op_parity == 1 && left == 1;
        op.set_entry(row, col, Rat(negative ? -1 : 1));
    }
    op.set_parity_tag(keep_signs ? std::optional<int>(op_parity) : std::nullopt);
    return op;
}

GradedOperator graded_permutation(const SuperDims& dims, int i, int j, Mutation mut) {
    dims.require_site(i);
    dims.require_site(j);
    if (i == j)
        throw InputError("graded permutation needs two distinct sites, got i=j=" +
                         std::to_string(i));
    GradedOperator op(dims);
    for (int a = 1; a <= dims.site_dim(); ++a) {
        for (int b = 1; b <= dims.site_dim(); ++b) {
            GradedOperator term = embed(dims, i, a, b, mut) * embed(dims, j, b, a, mut);
            if (dims.parity(b) == 1)
                term *= Rat(-1);
            op += term;
        }
    }
    op.set_parity_tag(mut == Mutation::drop_embed_signs ? std::nullopt : std::optional<int>(0));
    return op;
}

GradedOperator permutation_rep(const SuperDims& dims, const std::vector<int>& word,
                               Mutation mut) {
    GradedOperator op = GradedOperator::identity(dims);
    for (int w : word) {
        if (w < 1 || w > dims.k - 1)
            throw InputError("transposition index " + std::to_string(w) + " out of range 1.." +
                             std::to_string(dims.k - 1));
        op = op * graded_permutation(dims, w, w + 1, mut);
    }
    return op;
}

GradedOperator total_generator(const SuperDims& dims, int a, int b, Mutation mut) {
    dims.require_label(a);
    dims.require_label(b);
    GradedOperator op(dims);
    for (int site = 1; site <= dims.k; ++site)
        op += embed(dims, site, a, b, mut);
    if (mut != Mutation::drop_embed_signs)
        op.set_parity_tag((dims.parity(a) + dims.parity(b)) % 2);
    return op;
}

} // namespace superflat
