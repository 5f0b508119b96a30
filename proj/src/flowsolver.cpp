#include "flowsolver.hpp"

#include "rng.hpp"
#include "verifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace superflat {

std::size_t joint_dim(const SuperDims& dims) {
    return static_cast<std::size_t>(dims.k + dims.site_dim());
}

std::size_t joint_index(const SuperDims& dims, VariableId v) {
    if (v.kind == VariableId::Kind::z) {
        dims.require_site(v.index);
        return static_cast<std::size_t>(v.index - 1);
    }
    dims.require_label(v.index);
    return static_cast<std::size_t>(dims.k + v.index - 1);
}

std::vector<double> joint_coordinates(const SuperDims& dims, const EvaluationPoint& pt) {
    pt.validate(dims);
    std::vector<double> x;
    x.reserve(joint_dim(dims));
    for (const Rat& v : pt.z)
        x.push_back(rat_to_double(v));
    for (const Rat& v : pt.lambda)
        x.push_back(rat_to_double(v));
    return x;
}

Path rectangle_loop(const SuperDims& dims, const EvaluationPoint& pt, VariableId u,
                    VariableId v, double du, double dv) {
    if (u == v)
        throw InputError("rectangle loop needs two distinct coordinates");
    const std::vector<double> base = joint_coordinates(dims, pt);
    const std::size_t ui = joint_index(dims, u);
    const std::size_t vi = joint_index(dims, v);
    Path loop;
    loop.waypoints.assign(5, base);
    loop.waypoints[1][ui] += du;
    loop.waypoints[2][ui] += du;
    loop.waypoints[2][vi] += dv;
    loop.waypoints[3][vi] += dv;
    return loop;
}

namespace {

// min |f| on [0,1] for linear f
double linear_min_abs(double f0, double f1) {
    if ((f0 <= 0 && f1 >= 0) || (f0 >= 0 && f1 <= 0))
        return 0;
    return std::min(std::fabs(f0), std::fabs(f1));
}

double segment_min_gap(const SuperDims& dims, const std::vector<double>& p,
                       const std::vector<double>& q) {
    double gap = HUGE_VAL;
    auto scan = [&](std::size_t off, int count) {
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j) {
                const double f0 = p[off + static_cast<std::size_t>(i)] -
                                  p[off + static_cast<std::size_t>(j)];
                const double f1 = q[off + static_cast<std::size_t>(i)] -
                                  q[off + static_cast<std::size_t>(j)];
                gap = std::min(gap, linear_min_abs(f0, f1));
            }
    };
    scan(0, dims.k);
    scan(static_cast<std::size_t>(dims.k), dims.site_dim());
    return gap;
}

void require_path_shape(const SuperDims& dims, const Path& path) {
    if (path.waypoints.empty())
        throw InputError("path has no waypoints");
    for (const auto& w : path.waypoints)
        if (w.size() != joint_dim(dims))
            throw InputError("path waypoint has " + std::to_string(w.size()) +
                             " coordinates, expected " + std::to_string(joint_dim(dims)));
}

// one connection with double coefficients, matrices cast once
struct FloatTerm {
    enum class Shape { constant, coordinate, pole } shape = Shape::constant;
    double constant = 0;
    std::size_t i1 = 0, i2 = 0; // joint indices for coordinate/pole shapes
    std::vector<std::tuple<std::size_t, std::size_t, double>> entries;

    double coefficient(const std::vector<double>& x) const {
        switch (shape) {
        case Shape::constant: return constant;
        case Shape::coordinate: return x[i1];
        case Shape::pole: return 1.0 / (x[i1] - x[i2]);
        }
        return 0;
    }
};

struct FlowSystem {
    SuperDims dims;
    std::vector<std::vector<FloatTerm>> flows; // per joint coordinate

    FlowSystem(const SuperDims& d, Mutation mut) : dims(d) {
        flows.reserve(joint_dim(dims));
        for (int i = 1; i <= dims.k; ++i)
            flows.push_back(cast_connection(kz_matrix(dims, i, mut)));
        for (int a = 1; a <= dims.site_dim(); ++a)
            flows.push_back(cast_connection(dyn_matrix(dims, a, mut)));
    }

    std::vector<FloatTerm> cast_connection(const Connection& conn) const {
        std::vector<FloatTerm> terms;
        terms.reserve(conn.terms.size());
        for (const auto& term : conn.terms) {
            FloatTerm ft;
            if (const auto* c = std::get_if<ConnectionTerm::Constant>(&term.shape)) {
                ft.shape = FloatTerm::Shape::constant;
                ft.constant = rat_to_double(c->value);
            } else if (const auto* c = std::get_if<ConnectionTerm::Coordinate>(&term.shape)) {
                ft.shape = FloatTerm::Shape::coordinate;
                ft.i1 = joint_index(dims, c->var);
            } else {
                const auto& pole = std::get<ConnectionTerm::InversePole>(term.shape);
                ft.shape = FloatTerm::Shape::pole;
                ft.i1 = joint_index(dims, pole.v1);
                ft.i2 = joint_index(dims, pole.v2);
            }
            term.matrix.for_each_entry([&](std::size_t r, std::size_t c, const Rat& v) {
                ft.entries.emplace_back(r, c, rat_to_double(v));
            });
            terms.push_back(std::move(ft));
        }
        return terms;
    }

    // out = (1/kappa) sum_v delta_v A_v(x) psi over coordinates with delta != 0
    void derivative(const std::vector<double>& x, const std::vector<double>& delta,
                    double kappa, const std::vector<double>& psi,
                    std::vector<double>& out) const {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t v = 0; v < flows.size(); ++v) {
            if (delta[v] == 0)
                continue;
            const double scale = delta[v] / kappa;
            for (const FloatTerm& term : flows[v]) {
                const double c = scale * term.coefficient(x);
                for (const auto& [r, col, val] : term.entries)
                    out[r] += c * val * psi[col];
            }
        }
    }
};

void write_trajectory_row(std::ostream& out, double t, const std::vector<double>& x,
                          const std::vector<double>& psi) {
    out << t;
    for (double v : x)
        out << "," << v;
    for (double v : psi)
        out << "," << v;
    out << "\n";
}

} // namespace

double path_min_gap(const SuperDims& dims, const Path& path) {
    require_path_shape(dims, path);
    double gap = HUGE_VAL;
    for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s)
        gap = std::min(gap, segment_min_gap(dims, path.waypoints[s], path.waypoints[s + 1]));
    if (path.waypoints.size() == 1)
        gap = segment_min_gap(dims, path.waypoints[0], path.waypoints[0]);
    return gap;
}

std::vector<double> random_state(std::size_t dim, std::uint64_t seed) {
    DetRng rng(seed);
    std::vector<double> out(dim);
    for (double& v : out)
        v = static_cast<double>(rng.uniform(-1000000, 1000000)) / 1e6;
    return out;
}

std::vector<double> random_block_state(const SuperDims& dims, std::uint64_t seed) {
    DetRng rng(seed);
    std::vector<double> out(dims.total_dim(), 0.0);
    for (std::size_t code : weight_subspace(dims))
        out[code] = static_cast<double>(rng.uniform(-1000000, 1000000)) / 1e6;
    return out;
}

std::vector<double> integrate(const SuperDims& dims, const Path& path, std::vector<double> psi,
                              double kappa, const SolverConfig& cfg, Mutation mut,
                              std::ostream* trajectory) {
    require_path_shape(dims, path);
    if (psi.size() != dims.total_dim())
        throw InputError("state vector has " + std::to_string(psi.size()) +
                         " components, expected " + std::to_string(dims.total_dim()));
    if (!(cfg.step_size > 0))
        throw ConfigError("step size must be positive");
    if (kappa == 0)
        throw InputError("kappa must be nonzero");
    const double gap = path_min_gap(dims, path);
    if (gap < 1e-6)
        throw PoleError("path reaches minimum coordinate gap " + std::to_string(gap) +
                        ", below the 1e-6 guard");

    const FlowSystem system(dims, mut);
    const std::size_t nj = joint_dim(dims);
    std::vector<double> x(nj), delta(nj);
    std::vector<double> k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size());
    std::vector<double> tmp(psi.size());

    if (trajectory) {
        *trajectory << "t";
        for (int i = 1; i <= dims.k; ++i)
            *trajectory << ",z" << i;
        for (int a = 1; a <= dims.site_dim(); ++a)
            *trajectory << ",lambda" << a;
        for (std::size_t c = 0; c < psi.size(); ++c)
            *trajectory << ",c" << c;
        *trajectory << "\n";
        write_trajectory_row(*trajectory, 0.0, path.waypoints.front(), psi);
    }

    std::size_t steps_used = 0;
    for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s) {
        const auto& p = path.waypoints[s];
        const auto& q = path.waypoints[s + 1];
        double len2 = 0;
        for (std::size_t v = 0; v < nj; ++v) {
            delta[v] = q[v] - p[v];
            len2 += delta[v] * delta[v];
        }
        const double len = std::sqrt(len2);
        const auto steps = static_cast<std::size_t>(
            std::max(1.0, std::ceil(len / cfg.step_size)));
        steps_used += steps;
        if (steps_used > cfg.max_steps)
            throw NumericalError("step budget exceeded: needs more than " +
                                 std::to_string(cfg.max_steps) + " steps");
        const double h = 1.0 / static_cast<double>(steps);

        auto at = [&](double t) -> const std::vector<double>& {
            for (std::size_t v = 0; v < nj; ++v)
                x[v] = p[v] + t * delta[v];
            return x;
        };
        auto axpy = [&](const std::vector<double>& base, double a,
                        const std::vector<double>& dir) {
            for (std::size_t c = 0; c < tmp.size(); ++c)
                tmp[c] = base[c] + a * dir[c];
        };

        for (std::size_t step = 0; step < steps; ++step) {
            const double t = static_cast<double>(step) * h;
            system.derivative(at(t), delta, kappa, psi, k1);
            axpy(psi, h / 2, k1);
            system.derivative(at(t + h / 2), delta, kappa, tmp, k2);
            axpy(psi, h / 2, k2);
            system.derivative(at(t + h / 2), delta, kappa, tmp, k3);
            axpy(psi, h, k3);
            system.derivative(at(t + h), delta, kappa, tmp, k4);
            for (std::size_t c = 0; c < psi.size(); ++c)
                psi[c] += h / 6 * (k1[c] + 2 * k2[c] + 2 * k3[c] + k4[c]);
            if (trajectory)
                write_trajectory_row(*trajectory,
                                     static_cast<double>(s) + static_cast<double>(step + 1) * h,
                                     at(static_cast<double>(step + 1) * h), psi);
        }
        for (double c : psi)
            if (!std::isfinite(c))
                throw NumericalError("non-finite state after segment " + std::to_string(s + 1));
    }
    return psi;
}

double loop_residual(const SuperDims& dims, const Path& loop, const std::vector<double>& psi0,
                     double kappa, const SolverConfig& cfg, Mutation mut) {
    require_path_shape(dims, loop);
    if (loop.waypoints.front() != loop.waypoints.back())
        throw InputError("loop path does not return to its start");
    const std::vector<double> end = integrate(dims, loop, psi0, kappa, cfg, mut);
    double diff2 = 0, norm2 = 0;
    for (std::size_t c = 0; c < psi0.size(); ++c) {
        diff2 += (end[c] - psi0[c]) * (end[c] - psi0[c]);
        norm2 += psi0[c] * psi0[c];
    }
    if (norm2 == 0)
        throw InputError("loop residual needs a nonzero start vector");
    return std::sqrt(diff2 / norm2);
}

double convergence_order(const SuperDims& dims, const Path& path,
                         const std::vector<double>& psi0, double kappa, double base_step,
                         Mutation mut) {
    SolverConfig cfg;
    cfg.step_size = base_step;
    const std::vector<double> coarse = integrate(dims, path, psi0, kappa, cfg, mut);
    cfg.step_size = base_step / 2;
    const std::vector<double> medium = integrate(dims, path, psi0, kappa, cfg, mut);
    cfg.step_size = base_step / 4;
    const std::vector<double> fine = integrate(dims, path, psi0, kappa, cfg, mut);

    double d1 = 0, d2 = 0;
    for (std::size_t c = 0; c < psi0.size(); ++c) {
        d1 += (coarse[c] - medium[c]) * (coarse[c] - medium[c]);
        d2 += (medium[c] - fine[c]) * (medium[c] - fine[c]);
    }
    d1 = std::sqrt(d1);
    d2 = std::sqrt(d2);
    if (d1 == 0 || d2 == 0)
        throw NumericalError("step-halving differences vanished; pick a coarser base step");
    return std::log2(d1 / d2);
}

std::vector<double> covector_dense(const Covector& om) {
    std::vector<double> out(om.dims().total_dim(), 0.0);
    for (const auto& [code, value] : om.coefficients())
        out[code] = rat_to_double(value);
    return out;
}

double covector_dot(const std::vector<double>& bra, const std::vector<double>& psi) {
    if (bra.size() != psi.size())
        throw InputError("covector and state dimensions differ");
    double acc = 0;
    for (std::size_t c = 0; c < bra.size(); ++c)
        acc += bra[c] * psi[c];
    return acc;
}

StencilValues integrate_mc_stencil(const SuperDims& dims, int sector,
                                   const EvaluationPoint& pt, double h,
                                   const std::vector<double>& psi0, const SolverConfig& cfg,
                                   bool lambda_side, Mutation mut) {
    if (!(h > 0))
        throw InputError("stencil step h must be positive");
    pt.validate(dims);
    const std::vector<double> base = joint_coordinates(dims, pt);
    const std::vector<double> bra = covector_dense(omega(dims, sector, mut));

    StencilValues values;
    values.center = covector_dot(bra, psi0);
    const int count = lambda_side ? dims.site_dim() : dims.k;
    const std::size_t offset = lambda_side ? static_cast<std::size_t>(dims.k) : 0;
    const double kappa = rat_to_double(pt.kappa);
    for (int a = 0; a < count; ++a) {
        for (const double sign : {+1.0, -1.0}) {
            Path leg;
            leg.waypoints.assign(2, base);
            leg.waypoints[1][offset + static_cast<std::size_t>(a)] += sign * h;
            const std::vector<double> end = integrate(dims, leg, psi0, kappa, cfg, mut);
            (sign > 0 ? values.plus : values.minus).push_back(covector_dot(bra, end));
        }
    }
    return values;
}

double mc_stencil_residual(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                           double h, const StencilValues& values, bool lambda_side) {
    pt.validate(dims);
    const int count = lambda_side ? dims.site_dim() : dims.k;
    if (values.plus.size() != static_cast<std::size_t>(count) ||
        values.minus.size() != static_cast<std::size_t>(count))
        throw InputError("stencil has wrong arity");

    const double kappa = rat_to_double(pt.kappa);
    std::vector<double> coords;
    for (const Rat& v : lambda_side ? pt.lambda : pt.z)
        coords.push_back(rat_to_double(v));

    double second = 0;
    for (int a = 0; a < count; ++a)
        second += values.plus[static_cast<std::size_t>(a)] - 2 * values.center +
                  values.minus[static_cast<std::size_t>(a)];
    second /= h * h;

    const double coupling_sign = sector == 0 ? 1.0 : -1.0;
    double coupling = 0;
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            if (a == b)
                continue;
            const double gap = coords[static_cast<std::size_t>(a)] -
                               coords[static_cast<std::size_t>(b)];
            coupling += (coupling_sign * kappa - 1) / (gap * gap);
        }

    double eigenvalue = 0;
    for (const Rat& v : lambda_side ? pt.z : pt.lambda) {
        const double d = rat_to_double(v);
        eigenvalue += d * d;
    }

    const double lhs = kappa * kappa * second + coupling * values.center;
    const double rhs = eigenvalue * values.center;
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    if (scale < 1e-300)
        return 0;
    return std::fabs(lhs - rhs) / scale;
}

double fd_mc_check(const SuperDims& dims, int sector, const EvaluationPoint& pt, double h,
                   const std::vector<double>& psi0, const SolverConfig& cfg, bool lambda_side,
                   Mutation mut) {
    const StencilValues values =
        integrate_mc_stencil(dims, sector, pt, h, psi0, cfg, lambda_side, mut);
    return mc_stencil_residual(dims, sector, pt, h, values, lambda_side);
}

double fd_mc_negative_control(const SuperDims& dims, int sector, const EvaluationPoint& pt,
                              double h, const std::vector<double>& psi0, bool lambda_side) {
    pt.validate(dims);
    const std::vector<double> bra = covector_dense(omega(dims, sector));
    StencilValues values;
    values.center = covector_dot(bra, psi0);
    const int count = lambda_side ? dims.site_dim() : dims.k;
    values.plus.assign(static_cast<std::size_t>(count), values.center);
    values.minus.assign(static_cast<std::size_t>(count), values.center);
    return mc_stencil_residual(dims, sector, pt, h, values, lambda_side);
}

} // namespace superflat
