#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mcmap.hpp"
#include "rng.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace superflat;

namespace {

// sign oracle for the omega coefficients, computed purely from inversion
// counts of the arrangement: the plain sign for the odd sector times a
// factor of -1 per out-of-order fermionic pair
Rat coefficient_oracle(const SuperDims& dims, const std::vector<int>& arrangement, int sector) {
    int inversions = 0;
    int fermionic_inversions = 0;
    for (std::size_t i = 0; i < arrangement.size(); ++i)
        for (std::size_t j = i + 1; j < arrangement.size(); ++j)
            if (arrangement[i] > arrangement[j]) {
                ++inversions;
                if (dims.parity(arrangement[i]) == 1 && dims.parity(arrangement[j]) == 1)
                    ++fermionic_inversions;
            }
    const bool negative = (sector * inversions + fermionic_inversions) % 2 == 1;
    return negative ? Rat(-1) : Rat(1);
}

std::vector<std::vector<int>> arrangements(int count) {
    std::vector<int> identity(count);
    std::iota(identity.begin(), identity.end(), 1);
    std::vector<std::vector<int>> all;
    do
        all.push_back(identity);
    while (std::next_permutation(identity.begin(), identity.end()));
    return all;
}

EvaluationPoint random_point(const SuperDims& dims, std::uint64_t seed) {
    DetRng rng(seed);
    return rng.admissible_point(dims, Rat(2));
}

} // namespace

TEST_CASE("weight subspace enumerates permutation tuples in order") {
    const SuperDims dims(1, 1, 2);
    const std::vector<std::size_t> codes = weight_subspace(dims);
    REQUIRE(codes.size() == 2);
    CHECK(codes[0] == dims.encode({1, 2}));
    CHECK(codes[1] == dims.encode({2, 1}));

    const SuperDims big(2, 2, 4);
    const std::vector<std::size_t> big_codes = weight_subspace(big);
    CHECK(big_codes.size() == 24);
    CHECK(std::is_sorted(big_codes.begin(), big_codes.end()));

    CHECK_THROWS_AS(weight_subspace(SuperDims(1, 1, 3)), ConfigError);
}

TEST_CASE("reduced words rebuild their arrangement") {
    for (WordStrategy strategy : {WordStrategy::bubble, WordStrategy::insertion}) {
        for (const std::vector<int>& target : arrangements(4)) {
            const std::vector<int> word = reduced_word(target, strategy);

            // count inversions; a reduced word has exactly that many letters
            int inversions = 0;
            for (std::size_t i = 0; i < target.size(); ++i)
                for (std::size_t j = i + 1; j < target.size(); ++j)
                    if (target[i] > target[j]) ++inversions;
            CHECK(word.size() == static_cast<std::size_t>(inversions));

            std::vector<int> built{1, 2, 3, 4};
            for (int letter : word) std::swap(built[letter - 1], built[letter]);
            CHECK(built == target);
        }
    }
}

TEST_CASE("omega coefficients match the inversion oracle") {
    for (const SuperDims& dims :
         {SuperDims(1, 1, 2), SuperDims(2, 1, 3), SuperDims(1, 2, 3), SuperDims(0, 2, 2),
          SuperDims(2, 0, 2), SuperDims(2, 2, 4)}) {
        for (int sector : {0, 1}) {
            const Covector om = omega(dims, sector);
            CHECK(om.nonzero_count() == weight_subspace(dims).size());
            for (const std::vector<int>& arr : arrangements(dims.site_dim()))
                CHECK(om.coefficient(dims.encode(arr)) == coefficient_oracle(dims, arr, sector));
        }
    }
}

TEST_CASE("omega dumps match the golden files") {
    CHECK(omega(SuperDims(1, 1, 2), 0).dump_string() == golden("omega_dims11_sector0.txt"));
    CHECK(omega(SuperDims(1, 1, 2), 1).dump_string() == golden("omega_dims11_sector1.txt"));
    CHECK(omega(SuperDims(2, 1, 3), 0).dump_string() == golden("omega_dims21_sector0.txt"));
    CHECK(omega(SuperDims(2, 1, 3), 1).dump_string() == golden("omega_dims21_sector1.txt"));
    CHECK(omega(SuperDims(1, 2, 3), 0).dump_string() == golden("omega_dims12_sector0.txt"));
    CHECK(omega(SuperDims(1, 2, 3), 1).dump_string() == golden("omega_dims12_sector1.txt"));
}

TEST_CASE("purely fermionic omega antisymmetrizes in the even sector") {
    // two fermionic labels: the even covector is <12| - <21|
    const SuperDims dims(0, 2, 2);
    const Covector om = omega(dims, 0);
    CHECK(om.coefficient(dims.encode({1, 2})) == 1);
    CHECK(om.coefficient(dims.encode({2, 1})) == -1);
}

TEST_CASE("word strategy does not change omega") {
    for (const SuperDims& dims : {SuperDims(2, 1, 3), SuperDims(2, 2, 4)})
        for (int sector : {0, 1})
            CHECK(omega(dims, sector, Mutation::none, WordStrategy::bubble).dump_string() ==
                  omega(dims, sector, Mutation::none, WordStrategy::insertion).dump_string());
}

TEST_CASE("covector right action applies matrices to the bra") {
    const SuperDims dims(1, 1, 2);

    // <21| e^(1)_21 = <11| since e^(1)_21 |1,1> = |2,1>
    Covector bra(dims, 0);
    bra.set_coefficient(dims.encode({2, 1}), Rat(3));
    const Covector moved = bra.applied(embed(dims, 1, 2, 1));
    CHECK(moved.nonzero_count() == 1);
    CHECK(moved.coefficient(dims.encode({1, 1})) == 3);

    // <22| e^(2)_21 = -<21|: the image e^(2)_21 |2,1> = -|2,2> carries the
    // Koszul sign of the fermionic first slot
    Covector top(dims, 0);
    top.set_coefficient(dims.encode({2, 2}), Rat(1));
    const Covector signed_move = top.applied(embed(dims, 2, 2, 1));
    CHECK(signed_move.coefficient(dims.encode({2, 1})) == -1);
    CHECK(signed_move.nonzero_count() == 1);
}

TEST_CASE("eigen residual vanishes and flags mutated builds") {
    for (const SuperDims& dims : {SuperDims(1, 1, 2), SuperDims(2, 1, 3), SuperDims(1, 2, 3)})
        for (int sector : {0, 1})
            for (int a = 1; a <= dims.site_dim(); ++a)
                for (int b = 1; b <= dims.site_dim(); ++b) {
                    if (a == b) continue;
                    CHECK(eigen_residual(dims, sector, a, b).is_zero());
                }

    bool mutated_breaks = false;
    const SuperDims dims(1, 1, 2);
    for (int sector : {0, 1})
        for (int a = 1; a <= 2; ++a)
            for (int b = 1; b <= 2; ++b)
                if (a != b && !eigen_residual(dims, sector, a, b, Mutation::drop_embed_signs)
                                   .is_zero())
                    mutated_breaks = true;
    CHECK(mutated_breaks);
}

TEST_CASE("mixed anticommutator residual vanishes for every z") {
    const SuperDims dims(2, 1, 3);
    for (int sector : {0, 1}) {
        const std::vector<Rat> z{Rat(5, 7), Rat(-3), Rat(11, 2)};
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) {
                if (a == b) continue;
                CHECK(mixed_anticommutator_residual(dims, sector, a, b, z).is_zero());
            }
    }
}

TEST_CASE("mc residuals vanish at random admissible points") {
    for (const SuperDims& dims : {SuperDims(1, 1, 2), SuperDims(2, 1, 3)}) {
        for (int sector : {0, 1}) {
            const EvaluationPoint pt = random_point(dims, 99 + sector);
            CHECK(mc_residual_lambda(dims, sector, pt).is_zero());
            CHECK(mc_residual_z(dims, sector, pt).is_zero());
        }
    }
}

TEST_CASE("mc residual notices a dropped cartan term") {
    const SuperDims dims(1, 1, 2);
    const EvaluationPoint pt = random_point(dims, 7);
    CHECK_FALSE(mc_residual_lambda(dims, 0, pt, Mutation::drop_cartan_term).is_zero());
}

TEST_CASE("covector arithmetic stays sparse") {
    const SuperDims dims(1, 1, 2);
    Covector a(dims, 0);
    a.set_coefficient(1, Rat(2));
    Covector b(dims, 0);
    b.set_coefficient(1, Rat(-2));
    b.set_coefficient(2, Rat(1));
    a += b;
    CHECK(a.nonzero_count() == 1);
    CHECK(a.coefficient(1) == 0);
    CHECK(a.coefficient(2) == 1);
    a *= Rat(0);
    CHECK(a.is_zero());
}
