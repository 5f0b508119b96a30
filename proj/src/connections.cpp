#include "connections.hpp"

#include <sstream>

namespace superflat {

std::string VariableId::name() const {
    return (kind == Kind::z ? "z" : "lambda") + std::to_string(index);
}

void EvaluationPoint::validate(const SuperDims& dims) const {
    if (static_cast<int>(z.size()) != dims.k)
        throw InputError("point has " + std::to_string(z.size()) + " z coordinates, expected " +
                         std::to_string(dims.k));
    if (static_cast<int>(lambda.size()) != dims.site_dim())
        throw InputError("point has " + std::to_string(lambda.size()) +
                         " lambda coordinates, expected " + std::to_string(dims.site_dim()));
    if (kappa == 0)
        throw InputError("kappa must be nonzero");
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j)
            if (z[i] == z[j])
                throw PoleError("coincident coordinates z" + std::to_string(i + 1) + " = z" +
                                std::to_string(j + 1) + " = " + rat_string(z[i]));
    for (std::size_t a = 0; a < lambda.size(); ++a)
        for (std::size_t b = a + 1; b < lambda.size(); ++b)
            if (lambda[a] == lambda[b])
                throw PoleError("coincident coordinates lambda" + std::to_string(a + 1) +
                                " = lambda" + std::to_string(b + 1) + " = " +
                                rat_string(lambda[a]));
}

const Rat& EvaluationPoint::value(VariableId v) const {
    const auto& coords = v.kind == VariableId::Kind::z ? z : lambda;
    const auto idx = static_cast<std::size_t>(v.index - 1);
    if (v.index < 1 || idx >= coords.size())
        throw InputError("coordinate " + v.name() + " out of range");
    return coords[idx];
}

Rat ConnectionTerm::coefficient(const EvaluationPoint& pt) const {
    if (const auto* c = std::get_if<Constant>(&shape))
        return c->value;
    if (const auto* c = std::get_if<Coordinate>(&shape))
        return pt.value(c->var);
    const auto& pole = std::get<InversePole>(shape);
    Rat denom = pt.value(pole.v1) - pt.value(pole.v2);
    if (denom == 0)
        throw PoleError("pole hit: " + pole.v1.name() + " = " + pole.v2.name() + " = " +
                        rat_string(pt.value(pole.v1)));
    return Rat(1) / denom;
}

Rat ConnectionTerm::coefficient_partial(VariableId v, const EvaluationPoint& pt) const {
    if (std::holds_alternative<Constant>(shape))
        return Rat(0);
    if (const auto* c = std::get_if<Coordinate>(&shape))
        return Rat(c->var == v ? 1 : 0);
    const auto& pole = std::get<InversePole>(shape);
    int sign = 0;
    if (v == pole.v1)
        sign = -1;
    else if (v == pole.v2)
        sign = 1;
    if (sign == 0)
        return Rat(0);
    Rat denom = pt.value(pole.v1) - pt.value(pole.v2);
    if (denom == 0)
        throw PoleError("pole hit: " + pole.v1.name() + " = " + pole.v2.name() + " = " +
                        rat_string(pt.value(pole.v1)));
    return Rat(sign) / (denom * denom);
}

std::string ConnectionTerm::shape_string() const {
    if (const auto* c = std::get_if<Constant>(&shape))
        return "const " + rat_string(c->value);
    if (const auto* c = std::get_if<Coordinate>(&shape))
        return "coord " + c->var.name();
    const auto& pole = std::get<InversePole>(shape);
    return "pole 1/(" + pole.v1.name() + "-" + pole.v2.name() + ")";
}

ConnectionTerm::InversePole make_inverse_pole(VariableId v1, VariableId v2) {
    if (v1.kind != v2.kind)
        throw InputError("pole coordinates must be of the same kind: " + v1.name() + " vs " +
                         v2.name());
    if (v1 == v2)
        throw InputError("pole coordinates must be distinct: " + v1.name());
    return {v1, v2};
}

std::string Connection::dump_string() const {
    std::ostringstream out;
    for (const auto& term : terms) {
        out << "term " << term.shape_string() << "\n";
        term.matrix.dump(out);
    }
    return out.str();
}

Connection kz_matrix(const SuperDims& dims, int site, Mutation mut) {
    dims.require_site(site);
    Connection conn{dims, VariableId::z(site), {}};
    for (int c = 1; c <= dims.site_dim(); ++c)
        conn.terms.push_back({ConnectionTerm::Coordinate{VariableId::lambda(c)},
                              embed(dims, site, c, c, mut)});
    for (int j = 1; j <= dims.k; ++j) {
        if (j == site)
            continue;
        conn.terms.push_back(
            {make_inverse_pole(VariableId::z(site), VariableId::z(j)),
             graded_permutation(dims, site, j, mut)});
    }
    return conn;
}

Connection dyn_matrix(const SuperDims& dims, int label, Mutation mut) {
    dims.require_label(label);
    Connection conn{dims, VariableId::lambda(label), {}};
    for (int j = 1; j <= dims.k; ++j)
        conn.terms.push_back({ConnectionTerm::Coordinate{VariableId::z(j)},
                              embed(dims, j, label, label, mut)});
    for (int b = 1; b <= dims.site_dim(); ++b) {
        if (b == label)
            continue;
        GradedOperator mat =
            total_generator(dims, label, b, mut) * total_generator(dims, b, label, mut);
        if (mut != Mutation::drop_cartan_term)
            mat -= total_generator(dims, label, label, mut);
        if (mut != Mutation::drop_pole_parity_sign && dims.parity(b) == 1)
            mat *= Rat(-1);
        conn.terms.push_back(
            {make_inverse_pole(VariableId::lambda(label), VariableId::lambda(b)),
             std::move(mat)});
    }
    return conn;
}

GradedOperator eval_connection(const Connection& conn, const EvaluationPoint& pt) {
    pt.validate(conn.dims);
    GradedOperator out(conn.dims);
    for (const auto& term : conn.terms) {
        Rat coeff = term.coefficient(pt);
        if (coeff == 0)
            continue;
        out += term.matrix * coeff;
    }
    return out;
}

GradedOperator eval_partial(const Connection& conn, VariableId v, const EvaluationPoint& pt) {
    pt.validate(conn.dims);
    GradedOperator out(conn.dims);
    for (const auto& term : conn.terms) {
        Rat coeff = term.coefficient_partial(v, pt);
        if (coeff == 0)
            continue;
        out += term.matrix * coeff;
    }
    return out;
}

} // namespace superflat
