#include "rng.hpp"

#include <algorithm>

namespace superflat {

std::int64_t DetRng::uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi)
        throw InputError("empty draw range");
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0)
        return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t draw;
    do {
        draw = engine_();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % range);
}

Rat DetRng::rational() {
    const long num = static_cast<long>(uniform(-100, 100));
    const long den = static_cast<long>(uniform(1, 20));
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::vector<Rat> DetRng::distinct_values(int count) {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rat q = rational();
        while (std::find(out.begin(), out.end(), q) != out.end())
            q = rational();
        out.push_back(q);
    }
    return out;
}

std::vector<Rat> DetRng::values(int count) {
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(rational());
    return out;
}

EvaluationPoint DetRng::admissible_point(const SuperDims& dims, const Rat& kappa) {
    EvaluationPoint pt;
    pt.z = distinct_values(dims.k);
    pt.lambda = distinct_values(dims.site_dim());
    pt.kappa = kappa;
    pt.validate(dims);
    return pt;
}

std::uint64_t task_seed(std::uint64_t master, std::string_view tag) {
    // FNV-1a over the tag, then a splitmix64 finalizer mixed with the master
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t x = master ^ h;
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace superflat
