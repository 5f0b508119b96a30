#include "verifier.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

namespace superflat {

VariableId FlowId::flow_variable() const {
    return kind == Kind::kz ? VariableId::z(index) : VariableId::lambda(index);
}

std::string FlowId::name() const {
    return (kind == Kind::kz ? "KZ(" : "DYN(") + std::to_string(index) + ")";
}

Connection FlowId::build(const SuperDims& dims, Mutation mut) const {
    return kind == Kind::kz ? kz_matrix(dims, index, mut) : dyn_matrix(dims, index, mut);
}

GradedOperator curvature(const SuperDims& dims, FlowId x, FlowId y, const EvaluationPoint& pt,
                         Mutation mut) {
    if (x == y)
        throw InputError("curvature needs two distinct flows, got " + x.name() + " twice");
    const Connection ax = x.build(dims, mut);
    const Connection ay = y.build(dims, mut);
    GradedOperator f = eval_partial(ay, x.flow_variable(), pt);
    f -= eval_partial(ax, y.flow_variable(), pt);
    f *= pt.kappa;
    f -= commutator(eval_connection(ax, pt), eval_connection(ay, pt));
    return f;
}

Rat scalar_triple_identity(const std::vector<Rat>& lambda, int a, int b, int c) {
    if (a == b || b == c || a == c)
        throw InputError("scalar triple needs three distinct labels");
    auto at = [&](int i) -> const Rat& {
        if (i < 1 || i > static_cast<int>(lambda.size()))
            throw InputError("label " + std::to_string(i) + " out of range 1.." +
                             std::to_string(lambda.size()));
        return lambda[static_cast<std::size_t>(i - 1)];
    };
    const Rat& la = at(a);
    const Rat& lb = at(b);
    const Rat& lc = at(c);
    if (la == lb || lb == lc || la == lc)
        throw PoleError("coincident lambda values in scalar triple");
    return 1 / ((la - lb) * (la - lc)) + 1 / ((lb - la) * (lb - lc)) +
           1 / ((lc - la) * (lc - lb));
}

GradedOperator permutation_commutation_check(const SuperDims& dims, int i, int j, int a, int b,
                                             Mutation mut) {
    const GradedOperator p = graded_permutation(dims, i, j, mut);
    const GradedOperator g =
        total_generator(dims, a, b, mut) * total_generator(dims, b, a, mut);
    return commutator(p, g);
}

std::string CheckResult::residual_string() const {
    if (const Rat* r = std::get_if<Rat>(&residual))
        return rat_string(*r);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", std::get<double>(residual));
    return buf;
}

std::string CheckResult::params_string() const {
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty())
            out += " ";
        out += key + "=" + value;
    }
    return out;
}

const char* status_name(CheckResult::Status status) {
    switch (status) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "fail";
    case CheckResult::Status::skipped: return "skipped";
    }
    return "fail";
}

std::vector<Rat> SuiteConfig::effective_kappas() const {
    if (!kappas.empty())
        return kappas;
    return {Rat(1), Rat(2), Rat(1, 3)};
}

const std::vector<std::string>& known_check_names() {
    static const std::vector<std::string> names = {
        "super_commutation",
        "defining_relations_site",
        "defining_relations_global",
        "permutation_involution",
        "braid_relations",
        "permutation_commutation",
        "parity_tags",
        "connection_blocks",
        "curvature",
        "scalar_triple",
        "weight_space",
        "eigen",
        "mixed_anticommutator",
        "mc_lambda",
        "mc_z",
        "covector_words",
        "f_sign_recursion",
    };
    return names;
}

bool SuiteResult::all_passed() const {
    return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) {
        return c.status == CheckResult::Status::fail;
    });
}

std::size_t SuiteResult::count(CheckResult::Status status) const {
    return static_cast<std::size_t>(std::count_if(
        checks.begin(), checks.end(),
        [status](const CheckResult& c) { return c.status == status; }));
}

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;

std::string point_string(const EvaluationPoint& pt) {
    std::string out = "z=(";
    for (std::size_t i = 0; i < pt.z.size(); ++i)
        out += (i ? "," : "") + rat_string(pt.z[i]);
    out += ") lambda=(";
    for (std::size_t i = 0; i < pt.lambda.size(); ++i)
        out += (i ? "," : "") + rat_string(pt.lambda[i]);
    out += ")";
    return out;
}

// folds many exact sub-checks into one result: max residual + first witness
struct ExactCheck {
    Rat max_res{0};
    std::string witness;
    bool forced_fail = false;

    void note_matrix(const GradedOperator& residual, const std::string& context) {
        if (residual.is_zero())
            return;
        const Rat mx = residual.max_abs_entry();
        if (mx > max_res)
            max_res = mx;
        if (witness.empty()) {
            const auto e = residual.first_nonzero();
            witness = context + (context.empty() ? "" : " ") + "row=" + std::to_string(e->row) +
                      " col=" + std::to_string(e->col) + " value=" + rat_string(e->value);
        }
    }

    void note_covector(const Covector& residual, const std::string& context) {
        if (residual.is_zero())
            return;
        const Rat mx = residual.max_abs_coefficient();
        if (mx > max_res)
            max_res = mx;
        if (witness.empty())
            witness = context + (context.empty() ? "" : " ") + "entry " + residual.witness();
    }

    void note_value(const Rat& value, const std::string& context) {
        if (value == 0)
            return;
        const Rat a = abs(value);
        if (a > max_res)
            max_res = a;
        if (witness.empty())
            witness = context + " value=" + rat_string(value);
    }

    // non-numeric defect (wrong count, missing tag); residual reported as 1
    void fail_text(const std::string& message) {
        forced_fail = true;
        if (witness.empty())
            witness = message;
    }

    CheckResult finish(std::string name, Params params) const {
        CheckResult r;
        r.name = std::move(name);
        r.params = std::move(params);
        const bool failed = forced_fail || max_res != 0;
        r.status = failed ? CheckResult::Status::fail : CheckResult::Status::pass;
        r.residual = (forced_fail && max_res == 0) ? Rat(1) : max_res;
        r.witness = witness;
        return r;
    }
};

CheckResult skipped_result(std::string name, Params params, const std::string& reason) {
    params.emplace_back("reason", reason);
    CheckResult r;
    r.name = std::move(name);
    r.params = std::move(params);
    r.status = CheckResult::Status::skipped;
    r.residual = Rat(0);
    return r;
}

std::vector<CheckResult> run_super_commutation(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    if (dims.total_dim() > 256)
        return {skipped_result("super_commutation", params, "tensor dimension above 256")};

    const int d = dims.site_dim();
    std::vector<GradedOperator> units;
    units.reserve(static_cast<std::size_t>(dims.k * d * d));
    for (int site = 1; site <= dims.k; ++site)
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b)
                units.push_back(embed(dims, site, a, b, mut));
    auto unit = [&](int site, int a, int b) -> const GradedOperator& {
        return units[static_cast<std::size_t>(((site - 1) * d + (a - 1)) * d + (b - 1))];
    };

    ExactCheck acc;
    for (int i = 1; i <= dims.k; ++i)
        for (int j = i + 1; j <= dims.k; ++j)
            for (int a = 1; a <= d; ++a)
                for (int b = 1; b <= d; ++b)
                    for (int c = 1; c <= d; ++c)
                        for (int f = 1; f <= d; ++f) {
                            const int pa = (dims.parity(a) + dims.parity(b)) % 2;
                            const int pb = (dims.parity(c) + dims.parity(f)) % 2;
                            GradedOperator lhs = unit(i, a, b) * unit(j, c, f);
                            GradedOperator rhs = unit(j, c, f) * unit(i, a, b);
                            if (pa == 1 && pb == 1)
                                rhs *= Rat(-1);
                            lhs -= rhs;
                            acc.note_matrix(lhs, "i=" + std::to_string(i) + " j=" +
                                                     std::to_string(j) + " A=e" +
                                                     std::to_string(a) + std::to_string(b) +
                                                     " B=e" + std::to_string(c) +
                                                     std::to_string(f));
                        }
    return {acc.finish("super_commutation", params)};
}

std::vector<CheckResult> run_defining_relations(
    const SuperDims& dims, bool global, Mutation mut) {
    const std::string name = global ? "defining_relations_global" : "defining_relations_site";
    Params params{{"dims", dims.to_string()}};

    const int d = dims.site_dim();
    const SuperDims gen_dims = global ? dims : SuperDims(dims.n, dims.m, 1);
    std::vector<GradedOperator> gens;
    gens.reserve(static_cast<std::size_t>(d * d));
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            gens.push_back(global ? total_generator(gen_dims, a, b, mut)
                                  : matrix_unit(gen_dims, a, b));
    auto gen = [&](int a, int b) -> const GradedOperator& {
        return gens[static_cast<std::size_t>((a - 1) * d + (b - 1))];
    };

    ExactCheck acc;
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            for (int c = 1; c <= d; ++c)
                for (int f = 1; f <= d; ++f) {
                    const int pab = (dims.parity(a) + dims.parity(b)) % 2;
                    const int pcf = (dims.parity(c) + dims.parity(f)) % 2;
                    const bool odd = pab == 1 && pcf == 1;
                    GradedOperator lhs = gen(a, b) * gen(c, f);
                    GradedOperator rhs = gen(c, f) * gen(a, b);
                    if (odd)
                        rhs *= Rat(-1);
                    lhs -= rhs;
                    if (b == c)
                        lhs -= gen(a, f);
                    if (f == a) {
                        GradedOperator t = gen(c, b);
                        if (!odd)
                            t *= Rat(-1);
                        lhs -= t;
                    }
                    acc.note_matrix(lhs, "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                             " c=" + std::to_string(c) + " d=" +
                                             std::to_string(f));
                }
    return {acc.finish(name, params)};
}

std::vector<CheckResult> run_permutation_involution(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    ExactCheck acc;
    const GradedOperator id = GradedOperator::identity(dims);
    for (int i = 1; i <= dims.k; ++i)
        for (int j = i + 1; j <= dims.k; ++j) {
            const GradedOperator p = graded_permutation(dims, i, j, mut);
            GradedOperator sq = p * p;
            sq -= id;
            acc.note_matrix(sq, "i=" + std::to_string(i) + " j=" + std::to_string(j));
        }
    return {acc.finish("permutation_involution", params)};
}

std::vector<CheckResult> run_braid_relations(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    ExactCheck acc;
    std::vector<GradedOperator> adj;
    for (int s = 1; s <= dims.k - 1; ++s)
        adj.push_back(graded_permutation(dims, s, s + 1, mut));
    for (int s = 1; s + 1 <= dims.k - 1; ++s) {
        const GradedOperator& p = adj[static_cast<std::size_t>(s - 1)];
        const GradedOperator& q = adj[static_cast<std::size_t>(s)];
        GradedOperator lhs = p * q * p;
        lhs -= q * p * q;
        acc.note_matrix(lhs, "braid s=" + std::to_string(s));
    }
    for (int s = 1; s <= dims.k - 1; ++s)
        for (int t = s + 2; t <= dims.k - 1; ++t)
            acc.note_matrix(commutator(adj[static_cast<std::size_t>(s - 1)],
                                       adj[static_cast<std::size_t>(t - 1)]),
                            "distant s=" + std::to_string(s) + " t=" + std::to_string(t));
    return {acc.finish("braid_relations", params)};
}

std::vector<CheckResult> run_permutation_commutation(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    const int d = dims.site_dim();
    std::vector<GradedOperator> pole_matrices; // E_ab E_ba per ordered (a,b)
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b)
            pole_matrices.push_back(total_generator(dims, a, b, mut) *
                                    total_generator(dims, b, a, mut));
    ExactCheck acc;
    for (int i = 1; i <= dims.k; ++i)
        for (int j = i + 1; j <= dims.k; ++j) {
            const GradedOperator p = graded_permutation(dims, i, j, mut);
            for (int a = 1; a <= d; ++a)
                for (int b = 1; b <= d; ++b)
                    acc.note_matrix(
                        commutator(p, pole_matrices[static_cast<std::size_t>((a - 1) * d +
                                                                             (b - 1))]),
                        "i=" + std::to_string(i) + " j=" + std::to_string(j) + " a=" +
                            std::to_string(a) + " b=" + std::to_string(b));
        }
    return {acc.finish("permutation_commutation", params)};
}

std::vector<CheckResult> run_parity_tags(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    ExactCheck acc;
    const int d = dims.site_dim();
    const bool expect_tags = mut != Mutation::drop_embed_signs;
    auto require_tag = [&](const GradedOperator& op, int expected, const std::string& what) {
        if (!op.parity_tag_consistent())
            acc.fail_text(what + " has entries violating its parity tag");
        if (!expect_tags)
            return;
        if (!op.parity_tag())
            acc.fail_text(what + " lost its parity tag");
        else if (*op.parity_tag() != expected)
            acc.fail_text(what + " tagged " + std::to_string(*op.parity_tag()) + ", expected " +
                          std::to_string(expected));
    };
    for (int site = 1; site <= dims.k; ++site)
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b)
                require_tag(embed(dims, site, a, b, mut), (dims.parity(a) + dims.parity(b)) % 2,
                            "embed(" + std::to_string(site) + "," + std::to_string(a) + "," +
                                std::to_string(b) + ")");
    for (int a = 1; a <= d; ++a)
        for (int b = 1; b <= d; ++b) {
            const int tag = (dims.parity(a) + dims.parity(b)) % 2;
            const GradedOperator e = total_generator(dims, a, b, mut);
            require_tag(e, tag, "E(" + std::to_string(a) + "," + std::to_string(b) + ")");
            require_tag(e * total_generator(dims, b, a, mut), 0,
                        "E(" + std::to_string(a) + "," + std::to_string(b) + ")E(" +
                            std::to_string(b) + "," + std::to_string(a) + ")");
        }
    for (int i = 1; i <= dims.k; ++i)
        for (int j = i + 1; j <= dims.k; ++j)
            require_tag(graded_permutation(dims, i, j, mut), 0,
                        "P(" + std::to_string(i) + "," + std::to_string(j) + ")");
    return {acc.finish("parity_tags", params)};
}

std::vector<CheckResult> run_connection_blocks(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    ExactCheck acc;
    std::vector<std::vector<int>> content_cache(dims.total_dim());
    auto content = [&](std::size_t code) -> const std::vector<int>& {
        auto& slot = content_cache[code];
        if (slot.empty()) {
            slot = dims.decode(code);
            std::sort(slot.begin(), slot.end());
        }
        return slot;
    };
    auto check_connection = [&](const Connection& conn, const std::string& what) {
        for (const auto& term : conn.terms)
            term.matrix.for_each_entry([&](std::size_t r, std::size_t c, const Rat&) {
                if (content(r) != content(c))
                    acc.fail_text(what + " term " + term.shape_string() +
                                  " mixes weight blocks at row=" + std::to_string(r) +
                                  " col=" + std::to_string(c));
            });
    };
    for (int i = 1; i <= dims.k; ++i)
        check_connection(kz_matrix(dims, i, mut), "KZ(" + std::to_string(i) + ")");
    for (int a = 1; a <= dims.site_dim(); ++a)
        check_connection(dyn_matrix(dims, a, mut), "DYN(" + std::to_string(a) + ")");
    return {acc.finish("connection_blocks", params)};
}

std::vector<CheckResult> run_curvature_pair(const SuperDims& dims, FlowId x, FlowId y,
                                            Mutation mut, int trials,
                                            const std::vector<Rat>& kappas,
                                            std::uint64_t master_seed) {
    const std::string tag = "curvature/" + dims.to_string() + "/" + x.name() + "/" + y.name();
    const std::uint64_t seed = task_seed(master_seed, tag);
    DetRng rng(seed);
    const Connection cx = x.build(dims, mut);
    const Connection cy = y.build(dims, mut);

    std::vector<ExactCheck> accs(kappas.size());
    for (int t = 0; t < trials; ++t) {
        const EvaluationPoint pt = rng.admissible_point(dims, Rat(1));
        GradedOperator deriv = eval_partial(cy, x.flow_variable(), pt);
        deriv -= eval_partial(cx, y.flow_variable(), pt);
        const GradedOperator comm =
            commutator(eval_connection(cx, pt), eval_connection(cy, pt));
        for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
            GradedOperator f = deriv;
            f *= kappas[ki];
            f -= comm;
            accs[ki].note_matrix(f, "trial=" + std::to_string(t) + " " + point_string(pt));
        }
    }

    std::vector<CheckResult> out;
    for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
        Params params{{"dims", dims.to_string()},
                      {"x", x.name()},
                      {"y", y.name()},
                      {"kappa", rat_string(kappas[ki])},
                      {"trials", std::to_string(trials)},
                      {"seed", std::to_string(seed)}};
        out.push_back(accs[ki].finish("curvature", params));
    }
    return out;
}

std::vector<CheckResult> run_scalar_triple(const SuperDims& dims, int trials,
                                           std::uint64_t master_seed) {
    Params base{{"dims", dims.to_string()}};
    if (dims.site_dim() < 3)
        return {skipped_result("scalar_triple", base, "needs at least three labels")};
    const std::uint64_t seed = task_seed(master_seed, "scalar_triple/" + dims.to_string());
    DetRng rng(seed);
    ExactCheck acc;
    for (int t = 0; t < trials; ++t) {
        const std::vector<Rat> lambda = rng.distinct_values(dims.site_dim());
        for (int a = 1; a <= dims.site_dim(); ++a)
            for (int b = a + 1; b <= dims.site_dim(); ++b)
                for (int c = b + 1; c <= dims.site_dim(); ++c)
                    acc.note_value(scalar_triple_identity(lambda, a, b, c),
                                   "trial=" + std::to_string(t) + " a=" + std::to_string(a) +
                                       " b=" + std::to_string(b) + " c=" + std::to_string(c));
    }
    base.emplace_back("trials", std::to_string(trials));
    base.emplace_back("seed", std::to_string(seed));
    return {acc.finish("scalar_triple", base)};
}

std::vector<CheckResult> run_weight_space(const SuperDims& dims, Mutation mut) {
    Params params{{"dims", dims.to_string()}};
    ExactCheck acc;
    const auto basis = weight_subspace(dims);
    std::size_t factorial = 1;
    for (int j = 2; j <= dims.site_dim(); ++j)
        factorial *= static_cast<std::size_t>(j);
    if (basis.size() != factorial)
        acc.fail_text("weight basis has " + std::to_string(basis.size()) + " elements, expected " +
                      std::to_string(factorial));
    if (!std::is_sorted(basis.begin(), basis.end()))
        acc.fail_text("weight basis is not in lexicographic order");
    for (int a = 1; a <= dims.site_dim(); ++a) {
        const GradedOperator cartan = total_generator(dims, a, a, mut);
        for (std::size_t code : basis)
            acc.note_value(cartan.entry(code, code) - 1,
                           "a=" + std::to_string(a) + " code=" + std::to_string(code));
    }
    return {acc.finish("weight_space", params)};
}

std::vector<CheckResult> run_covector_words(const SuperDims& dims, int sector, Mutation mut) {
    Params params{{"dims", dims.to_string()}, {"sector", std::to_string(sector)}};
    ExactCheck acc;
    const Covector bubble = omega(dims, sector, mut, WordStrategy::bubble);
    Covector diff = bubble;
    diff -= omega(dims, sector, mut, WordStrategy::insertion);
    acc.note_covector(diff, "bubble vs insertion");

    std::vector<int> identity_arrangement(static_cast<std::size_t>(dims.k));
    for (int i = 0; i < dims.k; ++i)
        identity_arrangement[static_cast<std::size_t>(i)] = i + 1;
    acc.note_value(bubble.coefficient(dims.encode(identity_arrangement)) - 1,
                   "base arrangement coefficient");
    const auto basis = weight_subspace(dims);
    for (std::size_t code : basis)
        if (bubble.coefficient(code) == 0)
            acc.fail_text("arrangement code " + std::to_string(code) +
                          " has zero coefficient in omega");
    if (bubble.nonzero_count() != basis.size())
        acc.fail_text("omega has support outside the weight basis");
    return {acc.finish("covector_words", params)};
}

std::vector<CheckResult> run_f_sign_recursion(const SuperDims& dims, int sector, Mutation mut) {
    Params params{{"dims", dims.to_string()}, {"sector", std::to_string(sector)}};
    ExactCheck acc;
    const Covector om = omega(dims, sector, mut);
    for (std::size_t code : weight_subspace(dims)) {
        const std::vector<int> arr = dims.decode(code);
        const Rat f = om.coefficient(code);
        for (int pos = 0; pos + 1 < dims.k; ++pos) {
            std::vector<int> swapped = arr;
            std::swap(swapped[static_cast<std::size_t>(pos)],
                      swapped[static_cast<std::size_t>(pos + 1)]);
            const int a = arr[static_cast<std::size_t>(pos)];
            const int b = arr[static_cast<std::size_t>(pos + 1)];
            const int sign = (sector + dims.parity(a) * dims.parity(b)) % 2 == 0 ? 1 : -1;
            acc.note_value(om.coefficient(dims.encode(swapped)) - Rat(sign) * f,
                           "code=" + std::to_string(code) + " pos=" + std::to_string(pos + 1));
        }
    }
    return {acc.finish("f_sign_recursion", params)};
}

struct Task {
    std::string name;
    Params base_params;
    std::function<std::vector<CheckResult>()> run;
};

} // namespace

CheckResult check_eigen(const SuperDims& dims, int sector, Mutation mut) {
    Params params{{"dims", dims.to_string()}, {"sector", std::to_string(sector)}};
    ExactCheck acc;
    for (int a = 1; a <= dims.site_dim(); ++a)
        for (int b = 1; b <= dims.site_dim(); ++b) {
            if (a == b)
                continue;
            acc.note_covector(eigen_residual(dims, sector, a, b, mut),
                              "a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
    return acc.finish("eigen", params);
}

CheckResult check_mixed_anticommutator(const SuperDims& dims, int sector, int trials,
                                       std::uint64_t master_seed, Mutation mut) {
    const std::uint64_t seed = task_seed(
        master_seed, "mixed_anticommutator/" + dims.to_string() + "/" + std::to_string(sector));
    DetRng rng(seed);
    Params params{{"dims", dims.to_string()},
                  {"sector", std::to_string(sector)},
                  {"trials", std::to_string(trials)},
                  {"seed", std::to_string(seed)}};
    ExactCheck acc;
    for (int a = 1; a <= dims.site_dim(); ++a)
        for (int b = 1; b <= dims.site_dim(); ++b) {
            if (a == b)
                continue;
            for (int t = 0; t < trials; ++t) {
                const std::vector<Rat> z = rng.values(dims.k);
                acc.note_covector(mixed_anticommutator_residual(dims, sector, a, b, z, mut),
                                  "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                      " trial=" + std::to_string(t));
            }
        }
    return acc.finish("mixed_anticommutator", params);
}

CheckResult check_mc_side(const SuperDims& dims, int sector, const Rat& kappa, bool lambda_side,
                          int trials, std::uint64_t master_seed, Mutation mut) {
    const std::string name = lambda_side ? "mc_lambda" : "mc_z";
    const std::uint64_t seed =
        task_seed(master_seed, name + "/" + dims.to_string() + "/" + std::to_string(sector) +
                                   "/" + rat_string(kappa));
    DetRng rng(seed);
    Params params{{"dims", dims.to_string()},
                  {"sector", std::to_string(sector)},
                  {"kappa", rat_string(kappa)},
                  {"trials", std::to_string(trials)},
                  {"seed", std::to_string(seed)}};
    ExactCheck acc;
    for (int t = 0; t < trials; ++t) {
        const EvaluationPoint pt = rng.admissible_point(dims, kappa);
        const Covector residual = lambda_side ? mc_residual_lambda(dims, sector, pt, mut)
                                              : mc_residual_z(dims, sector, pt, mut);
        acc.note_covector(residual, "trial=" + std::to_string(t) + " " + point_string(pt));
    }
    return acc.finish(name, params);
}

SuiteResult run_suite(const SuiteConfig& config) {
    for (const std::string& c : config.checks) {
        const auto& known = known_check_names();
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            std::string names;
            for (const auto& k : known)
                names += (names.empty() ? "" : ", ") + k;
            throw ConfigError("unknown check '" + c + "' (known: " + names + ")");
        }
    }
    if (config.cases.empty())
        throw ConfigError("at least one case (n,m,k) is required");
    if (config.trials < 1)
        throw ConfigError("trials must be >= 1, got " + std::to_string(config.trials));
    const std::vector<Rat> kappas = config.effective_kappas();
    for (const Rat& kappa : kappas)
        if (kappa == 0)
            throw ConfigError("kappa must be nonzero");
    for (const SuperDims& dims : config.cases)
        if (dims.total_dim() > 4096)
            throw ConfigError("case " + dims.to_string() +
                              " too large: tensor dimension must stay at or below 4096");

    auto selected = [&](const char* name) {
        return config.checks.empty() ||
               std::find(config.checks.begin(), config.checks.end(), name) !=
                   config.checks.end();
    };
    const Mutation mut = config.mutation;
    const int trials = config.trials;
    const std::uint64_t seed = config.seed;

    std::vector<Task> tasks;
    auto add = [&](std::string name, Params base,
                   std::function<std::vector<CheckResult>()> fn) {
        tasks.push_back({std::move(name), std::move(base), std::move(fn)});
    };

    for (const SuperDims& dims : config.cases) {
        Params base{{"dims", dims.to_string()}};

        if (selected("super_commutation"))
            add("super_commutation", base, [dims, mut] { return run_super_commutation(dims, mut); });
        if (selected("defining_relations_site"))
            add("defining_relations_site", base,
                [dims, mut] { return run_defining_relations(dims, false, mut); });
        if (selected("defining_relations_global"))
            add("defining_relations_global", base,
                [dims, mut] { return run_defining_relations(dims, true, mut); });
        if (selected("permutation_involution"))
            add("permutation_involution", base,
                [dims, mut] { return run_permutation_involution(dims, mut); });
        if (selected("braid_relations"))
            add("braid_relations", base, [dims, mut] { return run_braid_relations(dims, mut); });
        if (selected("permutation_commutation"))
            add("permutation_commutation", base,
                [dims, mut] { return run_permutation_commutation(dims, mut); });
        if (selected("parity_tags"))
            add("parity_tags", base, [dims, mut] { return run_parity_tags(dims, mut); });
        if (selected("connection_blocks"))
            add("connection_blocks", base,
                [dims, mut] { return run_connection_blocks(dims, mut); });

        if (selected("curvature")) {
            std::vector<FlowId> flows;
            for (int i = 1; i <= dims.k; ++i)
                flows.push_back(FlowId::kz(i));
            for (int a = 1; a <= dims.site_dim(); ++a)
                flows.push_back(FlowId::dyn(a));
            for (std::size_t xi = 0; xi < flows.size(); ++xi)
                for (std::size_t yi = xi + 1; yi < flows.size(); ++yi) {
                    const FlowId x = flows[xi];
                    const FlowId y = flows[yi];
                    Params p = base;
                    p.emplace_back("x", x.name());
                    p.emplace_back("y", y.name());
                    add("curvature", p, [dims, x, y, mut, trials, kappas, seed] {
                        return run_curvature_pair(dims, x, y, mut, trials, kappas, seed);
                    });
                }
        }
        if (selected("scalar_triple"))
            add("scalar_triple", base,
                [dims, trials, seed] { return run_scalar_triple(dims, trials, seed); });

        const bool mc_applicable = dims.k == dims.site_dim();
        auto add_mc = [&](const char* name, Params p,
                          std::function<std::vector<CheckResult>()> fn) {
            if (!selected(name))
                return;
            if (mc_applicable)
                add(name, std::move(p), std::move(fn));
            else
                add(name, p, [name, p] {
                    return std::vector<CheckResult>{skipped_result(name, p, "k != n+m")};
                });
        };

        add_mc("weight_space", base, [dims, mut] { return run_weight_space(dims, mut); });
        for (int sector = 0; sector <= 1; ++sector) {
            Params sp = base;
            sp.emplace_back("sector", std::to_string(sector));
            add_mc("eigen", sp, [dims, sector, mut] {
                return std::vector<CheckResult>{check_eigen(dims, sector, mut)};
            });
            add_mc("mixed_anticommutator", sp, [dims, sector, trials, mut, seed] {
                return std::vector<CheckResult>{
                    check_mixed_anticommutator(dims, sector, trials, seed, mut)};
            });
            for (const Rat& kappa : kappas) {
                Params kp = sp;
                kp.emplace_back("kappa", rat_string(kappa));
                add_mc("mc_lambda", kp, [dims, sector, kappa, trials, mut, seed] {
                    return std::vector<CheckResult>{
                        check_mc_side(dims, sector, kappa, true, trials, seed, mut)};
                });
                add_mc("mc_z", kp, [dims, sector, kappa, trials, mut, seed] {
                    return std::vector<CheckResult>{
                        check_mc_side(dims, sector, kappa, false, trials, seed, mut)};
                });
            }
            add_mc("covector_words", sp,
                   [dims, sector, mut] { return run_covector_words(dims, sector, mut); });
            add_mc("f_sign_recursion", sp,
                   [dims, sector, mut] { return run_f_sign_recursion(dims, sector, mut); });
        }
    }

    std::vector<std::vector<CheckResult>> buckets(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        try {
            buckets[i] = tasks[i].run();
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = tasks[i].name;
            r.params = tasks[i].base_params;
            r.status = CheckResult::Status::fail;
            r.residual = Rat(1);
            r.witness = std::string("exception: ") + e.what();
            buckets[i] = {std::move(r)};
        }
    });

    SuiteResult result;
    for (auto& bucket : buckets)
        for (auto& check : bucket)
            result.checks.push_back(std::move(check));
    std::stable_sort(result.checks.begin(), result.checks.end(),
                     [](const CheckResult& a, const CheckResult& b) {
                         if (a.name != b.name)
                             return a.name < b.name;
                         return a.params_string() < b.params_string();
                     });
    return result;
}

} // namespace superflat
