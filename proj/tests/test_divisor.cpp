#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fatlines/divisor.hpp"

using namespace fatlines;

namespace {

DivisorClass random_class(BlowupModel model, std::mt19937_64& rng) {
    std::vector<long long> c(model.basis_size());
    for (auto& x : c) x = static_cast<long long>(rng() % 21) - 10;
    return DivisorClass(model, std::move(c));
}

}  // namespace

TEST_CASE("triple product table values") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    const auto H = DivisorClass::basis(cubo, 0);
    const auto E1 = DivisorClass::basis(cubo, 1);
    const auto E2 = DivisorClass::basis(cubo, 2);
    const auto T1 = DivisorClass::basis(cubo, 5);
    CHECK(triple_product(H, H, H) == 1);
    CHECK(triple_product(H, E1, E1) == -1);
    CHECK(triple_product(E1, E1, E1) == -2);
    CHECK(triple_product(H, T1, T1) == -1);
    CHECK(triple_product(E1, T1, T1) == -1);
    CHECK(triple_product(T1, T1, T1) == 2);
    CHECK(triple_product(H, E1, E2) == 0);
    CHECK(triple_product(E1, E1, T1) == 0);
}

TEST_CASE("anticanonical cube of the cubo-cubic system is again a cubic") {
    // (3H - E - T)^3 = 1: the image of a plane meets the transform in degree 1
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    const DivisorClass hp(cubo, {3, -1, -1, -1, -1, -1, -1});
    CHECK(triple_product(hp, hp, hp) == 1);
}

TEST_CASE("canonical self-intersection of the resolved duodecic") {
    // (8H - 2E + E_7)^2 . (12H - 3E + E_7) on the blowup of seven lines
    const BlowupModel model = BlowupModel::lines(7);
    const DivisorClass a(model, {8, -2, -2, -2, -2, -2, -2, -1});
    const DivisorClass b(model, {12, -3, -3, -3, -3, -3, -3, -2});
    CHECK(triple_product(a, a, b) == 8);
}

TEST_CASE("triple product mismatched models throw") {
    const auto h4 = DivisorClass::basis(BlowupModel::lines(4), 0);
    const auto h5 = DivisorClass::basis(BlowupModel::lines(5), 0);
    CHECK_THROWS_AS(triple_product(h4, h4, h5), std::invalid_argument);
    const auto ht = DivisorClass::basis(BlowupModel::todd(), 0);
    const auto hl = DivisorClass::basis(BlowupModel::lines(6), 0);
    CHECK_THROWS_AS(triple_product(ht, ht, hl), std::invalid_argument);
}

TEST_CASE("triple product is symmetric and trilinear") {
    std::mt19937_64 rng(5);
    for (BlowupModel model : {BlowupModel::cubo_cubic(), BlowupModel::lines(7)}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto a = random_class(model, rng);
            const auto b = random_class(model, rng);
            const auto c = random_class(model, rng);
            const long long ref = triple_product(a, b, c);
            CHECK(triple_product(a, c, b) == ref);
            CHECK(triple_product(b, a, c) == ref);
            CHECK(triple_product(b, c, a) == ref);
            CHECK(triple_product(c, a, b) == ref);
            CHECK(triple_product(c, b, a) == ref);

            const auto d = random_class(model, rng);
            CHECK(triple_product(a + d, b, c) ==
                  ref + triple_product(d, b, c));
        }
    }
}

TEST_CASE("gamma_cubo images of the basis") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    CHECK(gamma_cubo(DivisorClass::basis(cubo, 0)) ==
          DivisorClass(cubo, {3, -1, -1, -1, -1, -1, -1}));
    CHECK(gamma_cubo(DivisorClass::basis(cubo, 1)) ==
          DivisorClass(cubo, {2, 0, -1, -1, -1, -1, -1}));
    CHECK(gamma_cubo(DivisorClass::basis(cubo, 5)) ==
          DivisorClass::basis(cubo, 5));
}

TEST_CASE("gamma_cubo maps the sextic through four lines to a decic") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    const DivisorClass sextic(cubo, {6, -1, -1, -1, -1, 0, 0});
    CHECK(gamma_cubo(sextic) ==
          DivisorClass(cubo, {10, -3, -3, -3, -3, -2, -2}));
}

TEST_CASE("gamma_cubo is an involution") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    for (std::size_t i = 0; i < cubo.basis_size(); ++i) {
        const auto b = DivisorClass::basis(cubo, i);
        CHECK(gamma_cubo(gamma_cubo(b)) == b);
    }
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_class(cubo, rng);
        CHECK(gamma_cubo(gamma_cubo(x)) == x);
    }
    CHECK_THROWS_AS(gamma_cubo(DivisorClass::basis(BlowupModel::lines(4), 0)),
                    std::invalid_argument);
}

TEST_CASE("gamma_cubo preserves triple products") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    for (std::size_t i = 0; i < cubo.basis_size(); ++i)
        for (std::size_t j = 0; j < cubo.basis_size(); ++j)
            for (std::size_t k = 0; k < cubo.basis_size(); ++k) {
                const auto bi = DivisorClass::basis(cubo, i);
                const auto bj = DivisorClass::basis(cubo, j);
                const auto bk = DivisorClass::basis(cubo, k);
                CHECK(triple_product(gamma_cubo(bi), gamma_cubo(bj),
                                     gamma_cubo(bk)) ==
                      triple_product(bi, bj, bk));
            }
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_class(cubo, rng);
        const auto b = random_class(cubo, rng);
        const auto c = random_class(cubo, rng);
        CHECK(triple_product(gamma_cubo(a), gamma_cubo(b), gamma_cubo(c)) ==
              triple_product(a, b, c));
    }
}

TEST_CASE("gamma_todd images of the basis") {
    const BlowupModel todd = BlowupModel::todd();
    CHECK(gamma_todd(DivisorClass::basis(todd, 0)) ==
          DivisorClass(todd, {19, -5, -5, -5, -5, -5, -5}));
    // 12H - 3E - E_1: coefficient -4 on E_1, -3 elsewhere
    CHECK(gamma_todd(DivisorClass::basis(todd, 1)) ==
          DivisorClass(todd, {12, -4, -3, -3, -3, -3, -3}));
}

TEST_CASE("gamma_todd of aH - E follows the closed form") {
    const BlowupModel todd = BlowupModel::todd();
    for (long long a = 1; a <= 50; ++a) {
        const DivisorClass cls(todd, {a, -1, -1, -1, -1, -1, -1});
        const long long h = 19 * a - 72;
        const long long e = 5 * a - 19;
        CHECK(gamma_todd(cls) ==
              DivisorClass(todd, {h, -e, -e, -e, -e, -e, -e}));
    }
}

TEST_CASE("gamma_todd is an involution") {
    const BlowupModel todd = BlowupModel::todd();
    for (std::size_t i = 0; i < todd.basis_size(); ++i) {
        const auto b = DivisorClass::basis(todd, i);
        CHECK(gamma_todd(gamma_todd(b)) == b);
    }
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = random_class(todd, rng);
        CHECK(gamma_todd(gamma_todd(x)) == x);
    }
    CHECK_THROWS_AS(gamma_todd(DivisorClass::basis(BlowupModel::lines(6), 0)),
                    std::invalid_argument);
}

TEST_CASE("symmetric proper transforms match the lattice maps") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const long long d = 1 + static_cast<long long>(rng() % 40);

        std::vector<long long> m4(4);
        for (auto& m : m4) m = static_cast<long long>(rng() % 10);
        std::vector<long long> c4{d, -m4[0], -m4[1], -m4[2], -m4[3], 0, 0};
        CHECK(proper_transform_symmetric(CremonaMap::CuboCubic, d, m4) ==
              gamma_cubo(DivisorClass(BlowupModel::cubo_cubic(), c4)));

        std::vector<long long> m6(6);
        for (auto& m : m6) m = static_cast<long long>(rng() % 10);
        std::vector<long long> c6{d, -m6[0], -m6[1], -m6[2], -m6[3], -m6[4], -m6[5]};
        CHECK(proper_transform_symmetric(CremonaMap::Todd, d, m6) ==
              gamma_todd(DivisorClass(BlowupModel::todd(), c6)));
    }
}

TEST_CASE("symmetric transform closed forms") {
    for (long long a = 1; a <= 20; ++a) {
        const auto todd_img = proper_transform_symmetric(
            CremonaMap::Todd, a, {1, 1, 1, 1, 1, 1});
        CHECK(todd_img.h_coefficient() == 19 * a - 72);
        for (std::size_t i = 1; i <= 6; ++i) {
            CHECK(todd_img.coeff(i) == -(5 * a - 19));
        }

        const auto cubo_img = proper_transform_symmetric(
            CremonaMap::CuboCubic, a, {1, 1, 1, 1});
        CHECK(cubo_img.h_coefficient() == 3 * a - 8);
        for (std::size_t i = 1; i <= 4; ++i) CHECK(cubo_img.coeff(i) == -(a - 3));
        CHECK(cubo_img.coeff(5) == -(a - 4));
        CHECK(cubo_img.coeff(6) == -(a - 4));
    }
    CHECK_THROWS_AS(
        proper_transform_symmetric(CremonaMap::CuboCubic, 3, {1, 1, 1}),
        std::invalid_argument);
    CHECK_THROWS_AS(proper_transform_symmetric(CremonaMap::Todd, 3, {1, 1, 1, 1}),
                    std::invalid_argument);
}

TEST_CASE("the degree-72m-1 family transforms to fixed negative degree") {
    for (long long m = 1; m <= 100; ++m) {
        const auto img = proper_transform_symmetric(
            CremonaMap::Todd, 72 * m - 1, std::vector<long long>(6, 19 * m));
        CHECK(img.h_coefficient() == -19);
        CHECK(is_obviously_noneffective(img));
    }
}

TEST_CASE("obvious non-effectivity test") {
    const BlowupModel todd = BlowupModel::todd();
    CHECK(is_obviously_noneffective(DivisorClass(todd, {-19, 6, 6, 6, 6, 6, 6})));
    CHECK_FALSE(is_obviously_noneffective(DivisorClass::zero(todd)));
    CHECK_FALSE(
        is_obviously_noneffective(DivisorClass(todd, {3, -1, -1, -1, -1, -1, -1})));
}

TEST_CASE("anticanonical class of the six-line blowup") {
    const auto m = anticanonical_lines6();
    CHECK(m.coeffs() == std::vector<long long>{4, -1, -1, -1, -1, -1, -1});
    CHECK_NOTHROW(triple_product(m, m, m));
    CHECK(m.negated().negated() == m);
}

TEST_CASE("drop_auxiliary projects and warns") {
    const BlowupModel cubo = BlowupModel::cubo_cubic();
    const auto with_t = drop_auxiliary(DivisorClass(cubo, {10, -3, -3, -3, -3, -2, -2}));
    CHECK(with_t.dropped_nonzero);
    CHECK(with_t.projected.coeffs() == std::vector<long long>{10, -3, -3, -3, -3});
    const auto without_t =
        drop_auxiliary(DivisorClass(cubo, {6, -1, -1, -1, -1, 0, 0}));
    CHECK_FALSE(without_t.dropped_nonzero);
    CHECK_THROWS_AS(drop_auxiliary(DivisorClass::basis(BlowupModel::lines(4), 0)),
                    std::invalid_argument);
}
