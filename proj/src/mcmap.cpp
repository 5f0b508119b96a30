#include "mcmap.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace superflat {

namespace {

void require_weight_dims(const SuperDims& dims) {
    if (dims.k != dims.site_dim())
        throw ConfigError("weight space V[1] needs k = n+m, got k=" + std::to_string(dims.k) +
                          " with n+m=" + std::to_string(dims.site_dim()));
}

void require_sector(int sector) {
    if (sector != 0 && sector != 1)
        throw InputError("sector must be 0 or 1, got " + std::to_string(sector));
}

} // namespace

std::vector<std::size_t> weight_subspace(const SuperDims& dims) {
    require_weight_dims(dims);
    std::vector<int> arrangement(static_cast<std::size_t>(dims.k));
    for (int i = 0; i < dims.k; ++i)
        arrangement[static_cast<std::size_t>(i)] = i + 1;
    std::vector<std::size_t> basis;
    do {
        basis.push_back(dims.encode(arrangement));
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return basis;
}

Covector::Covector(const SuperDims& dims, int sector) : dims_(dims), sector_(sector) {
    require_sector(sector);
}

Rat Covector::coefficient(std::size_t code) const {
    auto it = entries_.find(code);
    return it == entries_.end() ? Rat(0) : it->second;
}

void Covector::set_coefficient(std::size_t code, const Rat& value) {
    if (code >= dims_.total_dim())
        throw InputError("basis code " + std::to_string(code) + " out of range");
    if (value == 0)
        entries_.erase(code);
    else
        entries_[code] = value;
}

void Covector::add_coefficient(std::size_t code, const Rat& value) {
    if (code >= dims_.total_dim())
        throw InputError("basis code " + std::to_string(code) + " out of range");
    if (value == 0)
        return;
    auto [it, inserted] = entries_.try_emplace(code, value);
    if (!inserted) {
        it->second += value;
        if (it->second == 0)
            entries_.erase(it);
    }
}

Covector& Covector::operator+=(const Covector& other) {
    for (const auto& [code, v] : other.entries_)
        add_coefficient(code, v);
    return *this;
}

Covector& Covector::operator-=(const Covector& other) {
    for (const auto& [code, v] : other.entries_)
        add_coefficient(code, -v);
    return *this;
}

Covector& Covector::operator*=(const Rat& scalar) {
    if (scalar == 0) {
        entries_.clear();
        return *this;
    }
    for (auto& [code, v] : entries_)
        v *= scalar;
    return *this;
}

Covector Covector::applied(const GradedOperator& op) const {
    if (!(op.dims() == dims_))
        throw InputError("operator shape mismatch in covector application");
    Covector out(dims_, sector_);
    for (const auto& [row, v] : entries_)
        for (const auto& [col, w] : op.row(row))
            out.add_coefficient(col, v * w);
    return out;
}

Rat Covector::max_abs_coefficient() const {
    Rat best(0);
    for (const auto& [code, v] : entries_) {
        Rat a = abs(v);
        if (a > best)
            best = a;
    }
    return best;
}

std::string Covector::witness() const {
    if (entries_.empty())
        return {};
    const auto& [code, v] = *entries_.begin();
    std::ostringstream out;
    for (int a : dims_.decode(code))
        out << a << " ";
    out << rat_string(v);
    return out.str();
}

void Covector::dump(std::ostream& out) const {
    for (const auto& [code, v] : entries_) {
        const auto labels = dims_.decode(code);
        for (std::size_t i = 0; i < labels.size(); ++i)
            out << (i ? " " : "") << labels[i];
        out << "  " << rat_string(v) << "\n";
    }
}

std::string Covector::dump_string() const {
    std::ostringstream out;
    dump(out);
    return out.str();
}

std::vector<int> reduced_word(const std::vector<int>& arrangement, WordStrategy strategy) {
    std::vector<int> a = arrangement;
    std::vector<int> word;
    if (strategy == WordStrategy::bubble) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < a.size(); ++i) {
                if (a[i] > a[i + 1]) {
                    std::swap(a[i], a[i + 1]);
                    word.push_back(static_cast<int>(i) + 1);
                    changed = true;
                }
            }
        }
    } else {
        // sort by repeatedly sinking the leftmost out-of-place value
        for (std::size_t target = a.size(); target-- > 0;) {
            const int value = static_cast<int>(target) + 1;
            auto pos = static_cast<std::size_t>(
                std::find(a.begin(), a.end(), value) - a.begin());
            while (pos < target) {
                std::swap(a[pos], a[pos + 1]);
                word.push_back(static_cast<int>(pos) + 1);
                ++pos;
            }
        }
    }
    // the recorded swaps sort `arrangement` to identity; the word that builds
    // the arrangement from identity is the reverse
    std::reverse(word.begin(), word.end());
    return word;
}

Covector omega(const SuperDims& dims, int sector, Mutation mut, WordStrategy strategy) {
    require_weight_dims(dims);
    require_sector(sector);

    std::vector<GradedOperator> adjacent;
    adjacent.reserve(static_cast<std::size_t>(dims.k > 0 ? dims.k - 1 : 0));
    for (int i = 1; i <= dims.k - 1; ++i)
        adjacent.push_back(graded_permutation(dims, i, i + 1, mut));

    std::vector<int> identity_arrangement(static_cast<std::size_t>(dims.k));
    for (int i = 0; i < dims.k; ++i)
        identity_arrangement[static_cast<std::size_t>(i)] = i + 1;
    const std::size_t base = dims.encode(identity_arrangement);

    Covector out(dims, sector);
    std::vector<int> arrangement = identity_arrangement;
    do {
        const auto word = reduced_word(arrangement, strategy);
        const bool odd = word.size() % 2 == 1;
        Covector bra(dims, sector);
        bra.set_coefficient(base, Rat(1));
        for (int w : word)
            bra = bra.applied(adjacent[static_cast<std::size_t>(w - 1)]);
        if (sector == 1 && odd)
            bra *= Rat(-1);
        out += bra;
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    return out;
}

Covector eigen_residual(const SuperDims& dims, int sector, int a, int b, Mutation mut) {
    require_weight_dims(dims);
    dims.require_label(a);
    dims.require_label(b);
    if (a == b)
        throw InputError("eigen residual needs distinct labels, got a=b=" + std::to_string(a));
    const Covector om = omega(dims, sector, mut);
    GradedOperator op = total_generator(dims, a, b, mut) * total_generator(dims, b, a, mut);
    op -= total_generator(dims, a, a, mut);
    Covector out = om.applied(op);
    const int eigen_sign = (dims.parity(b) + sector) % 2 == 0 ? 1 : -1;
    Covector scaled = om;
    scaled *= Rat(eigen_sign);
    out -= scaled;
    return out;
}

Covector mixed_anticommutator_residual(const SuperDims& dims, int sector, int a, int b,
                                       const std::vector<Rat>& z, Mutation mut) {
    require_weight_dims(dims);
    dims.require_label(a);
    dims.require_label(b);
    if (a == b)
        throw InputError("mixed anticommutator needs distinct labels, got a=b=" +
                         std::to_string(a));
    if (static_cast<int>(z.size()) != dims.k)
        throw InputError("z vector has " + std::to_string(z.size()) + " entries, expected " +
                         std::to_string(dims.k));

    auto weighted_cartan = [&](int label) {
        GradedOperator out(dims);
        for (int j = 1; j <= dims.k; ++j) {
            GradedOperator t = embed(dims, j, label, label, mut);
            t *= z[static_cast<std::size_t>(j - 1)];
            out += t;
        }
        return out;
    };
    auto pole_matrix = [&](int x, int y) {
        GradedOperator matrix = total_generator(dims, x, y, mut) * total_generator(dims, y, x, mut);
        if (mut != Mutation::drop_cartan_term)
            matrix -= total_generator(dims, x, x, mut);
        if (dims.parity(y) == 1 && mut != Mutation::drop_pole_parity_sign)
            matrix *= Rat(-1);
        return matrix;
    };

    const GradedOperator za = weighted_cartan(a);
    const GradedOperator zb = weighted_cartan(b);
    const GradedOperator gab = pole_matrix(a, b);
    const GradedOperator gba = pole_matrix(b, a);

    GradedOperator op = anticommutator(za, gab);
    op -= anticommutator(zb, gba);
    return omega(dims, sector, mut).applied(op);
}

Covector mc_residual_lambda(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                            Mutation mut) {
    require_weight_dims(dims);
    pt.validate(dims);
    const Covector om = omega(dims, sector, mut);

    Covector out(dims, sector);
    for (int a = 1; a <= dims.site_dim(); ++a) {
        const Connection conn = dyn_matrix(dims, a, mut);
        const GradedOperator evaluated = eval_connection(conn, pt);
        GradedOperator deriv = eval_partial(conn, VariableId::lambda(a), pt);
        deriv *= pt.kappa;
        out += om.applied(deriv);
        out += om.applied(evaluated).applied(evaluated);
    }

    const int coupling_sign = sector == 0 ? 1 : -1;
    Rat scalar(0);
    for (int a = 1; a <= dims.site_dim(); ++a)
        for (int b = 1; b <= dims.site_dim(); ++b) {
            if (a == b)
                continue;
            Rat diff = pt.lambda[static_cast<std::size_t>(a - 1)] -
                       pt.lambda[static_cast<std::size_t>(b - 1)];
            scalar += (Rat(coupling_sign) * pt.kappa - 1) / (diff * diff);
        }
    for (const Rat& zj : pt.z)
        scalar -= zj * zj;

    Covector scaled = om;
    scaled *= scalar;
    out += scaled;
    return out;
}

Covector mc_residual_z(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                       Mutation mut) {
    require_weight_dims(dims);
    pt.validate(dims);
    const Covector om = omega(dims, sector, mut);

    Covector out(dims, sector);
    for (int j = 1; j <= dims.k; ++j) {
        const Connection conn = kz_matrix(dims, j, mut);
        const GradedOperator evaluated = eval_connection(conn, pt);
        GradedOperator deriv = eval_partial(conn, VariableId::z(j), pt);
        deriv *= pt.kappa;
        out += om.applied(deriv);
        out += om.applied(evaluated).applied(evaluated);
    }

    const int coupling_sign = sector == 0 ? 1 : -1;
    Rat scalar(0);
    for (int a = 1; a <= dims.k; ++a)
        for (int b = 1; b <= dims.k; ++b) {
            if (a == b)
                continue;
            Rat diff =
                pt.z[static_cast<std::size_t>(a - 1)] - pt.z[static_cast<std::size_t>(b - 1)];
            scalar += (Rat(coupling_sign) * pt.kappa - 1) / (diff * diff);
        }
    for (const Rat& lam : pt.lambda)
        scalar -= lam * lam;

    Covector scaled = om;
    scaled *= scalar;
    out += scaled;
    return out;
}

} // namespace superflat
