#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fatlines/interpolation.hpp"

using namespace fatlines;

namespace {

const PrimeModulus kP{};

Line coordinate_line_identity_frame(const PrimeField& F) {
    const Point p{Fp{0}, Fp{0}, Fp{1}, Fp{0}};
    const Point q{Fp{0}, Fp{0}, Fp{0}, Fp{1}};
    Frame frame{};
    for (std::size_t i = 0; i < 4; ++i) frame[i][i] = Fp{1};
    return Line(p, q, frame, F);
}

}  // namespace

TEST_CASE("conditions_count closed form matches known values") {
    for (unsigned d : {1u, 5u, 12u, 20u}) CHECK(conditions_count(1, d) == d + 1);
    CHECK(conditions_count(2, 12) == 37);  // 3d + 1
    CHECK(conditions_count(3, 12) == 70);  // 6d - 2
    CHECK(conditions_count(6, 20) == 371);
    CHECK_THROWS_AS(conditions_count(3, 2), std::domain_error);
    CHECK_THROWS_AS(conditions_count(0, 2), std::domain_error);
}

TEST_CASE("conditions_count closed form equals the summation for 1<=m<=d<=30") {
    for (unsigned d = 1; d <= 30; ++d)
        for (unsigned m = 1; m <= d; ++m)
            CHECK(conditions_count(m, d) == conditions_count_summation(m, d));
}

TEST_CASE("virtual dimension golden values") {
    CHECK(virtual_dimension(FatFlatSystem(4, {2, 2, 2})) == -4);
    CHECK(virtual_dimension(FatFlatSystem(8, {3, 3, 3, 3})) == -19);
    CHECK(virtual_dimension(FatFlatSystem(12, {3, 3, 3, 3, 3, 3, 2})) == -2);
    CHECK(virtual_dimension(FatFlatSystem(16, {4, 4, 4, 4, 4, 4, 2})) == 20);
    CHECK(virtual_dimension(FatFlatSystem(4, {1, 1, 1, 1, 1, 1})) == 5);
}

TEST_CASE("expected dimension truncates at zero") {
    CHECK(expected_dimension(FatFlatSystem(12, {3, 3, 3, 3, 3, 3, 2})) == 0);
    CHECK(expected_dimension(FatFlatSystem(10, {3, 3, 3, 3})) == 54);
    CHECK(expected_dimension(FatFlatSystem(3, {1, 1, 1, 1})) == 4);
}

TEST_CASE("FatFlatSystem validates input") {
    CHECK_THROWS_AS(FatFlatSystem(2, {3}), std::invalid_argument);
    CHECK_THROWS_AS(FatFlatSystem(4, {2, 0}), std::invalid_argument);
    const FatFlatSystem sorted(5, {1, 3, 2});
    CHECK(sorted.mults() == std::vector<unsigned>{3, 2, 1});
}

TEST_CASE("sample_lines yields pairwise skew lines deterministically") {
    const PrimeField F{kP};
    const auto one = sample_lines(1, F, 42);
    REQUIRE(one.size() == 1);

    const auto lines = sample_lines(7, F, 1);
    REQUIRE(lines.size() == 7);
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            CHECK(skew(lines[i], lines[j], F));

    const auto again = sample_lines(7, F, 1);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        CHECK(lines[i].p() == again[i].p());
        CHECK(lines[i].q() == again[i].q());
        CHECK(lines[i].frame() == again[i].frame());
    }

    // prefix stability
    const auto fewer = sample_lines(3, F, 1);
    for (std::size_t i = 0; i < fewer.size(); ++i) {
        CHECK(fewer[i].p() == lines[i].p());
        CHECK(fewer[i].q() == lines[i].q());
    }
}

TEST_CASE("condition_rows for a plane through a line") {
    const PrimeField F{kP};
    const auto lines = sample_lines(1, F, 5);
    const MonomialIndexer idx(1);
    const DenseMatrix rows = condition_rows(lines[0], 1, 1, idx, F);
    CHECK(rows.rows() == 2);
    // the pencil of planes through the line
    CHECK(kernel_dimension(rows, F) == 2);
}

TEST_CASE("condition_rows on the coordinate line with identity frame") {
    const PrimeField F{kP};
    const Line line = coordinate_line_identity_frame(F);
    const MonomialIndexer idx(2);
    const DenseMatrix rows = condition_rows(line, 2, 2, idx, F);
    REQUIRE(rows.rows() == conditions_count(2, 2));
    CHECK(rows.rows() == 7);

    // identity substitution: the rows select exactly the coefficients of the
    // monomials with x-exponent + y-exponent < 2
    for (std::size_t col = 0; col < idx.size(); ++col) {
        const Exponents& e = idx.exponents(col);
        unsigned ones = 0, others = 0;
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            if (rows.at(r, col) == Fp{1})
                ++ones;
            else if (rows.at(r, col) != Fp{0})
                ++others;
        }
        CHECK(others == 0);
        CHECK(ones == (e[0] + e[1] < 2 ? 1u : 0u));
    }
    CHECK(rank(rows, F) == 7);
}

TEST_CASE("condition_rows row count always equals conditions_count") {
    const PrimeField F{kP};
    const auto lines = sample_lines(1, F, 9);
    for (unsigned d = 1; d <= 6; ++d) {
        const MonomialIndexer idx(d);
        for (unsigned m = 1; m <= d; ++m) {
            const DenseMatrix rows = condition_rows(lines[0], m, d, idx, F);
            CHECK(rows.rows() == conditions_count(m, d));
            CHECK(rows.cols() == idx.size());
        }
    }
}

TEST_CASE("oracle row count and point-evaluation shape") {
    const PrimeField F{kP};
    const auto lines = sample_lines(1, F, 13);
    const MonomialIndexer idx(5);
    // m = 1: plain point evaluations at d+1 points
    const DenseMatrix rows = condition_rows_oracle(lines[0], 1, 5, idx, F);
    CHECK(rows.rows() == 6);
    for (unsigned m = 1; m <= 5; ++m) {
        const DenseMatrix r = condition_rows_oracle(lines[0], m, 5, idx, F);
        CHECK(r.rows() == binomial(m + 2, 3) * (5 - m + 2));
    }
}

TEST_CASE("builder and oracle span spaces of equal rank") {
    const PrimeField F{kP};
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const unsigned d = 1 + static_cast<unsigned>(rng() % 8);
        const unsigned m = 1 + static_cast<unsigned>(rng() % d);
        const auto lines = sample_lines(1, F, rng());
        const MonomialIndexer idx(d);
        const DenseMatrix a = condition_rows(lines[0], m, d, idx, F);
        const DenseMatrix b = condition_rows_oracle(lines[0], m, d, idx, F);
        CHECK(rank(a, F) == rank(b, F));
    }
}

TEST_CASE("full multiplicity on a quadric leaves the squared pencil") {
    const PrimeField F{kP};
    const auto lines = sample_lines(1, F, 77);
    const MonomialIndexer idx(2);
    // forms of degree 2 vanishing to order 2 along a line are exactly the
    // squares from the line's pencil of planes: dimension 3
    const DenseMatrix a = condition_rows(lines[0], 2, 2, idx, F);
    const DenseMatrix b = condition_rows_oracle(lines[0], 2, 2, idx, F);
    CHECK(kernel_dimension(a, F) == 3);
    CHECK(kernel_dimension(b, F) == 3);
}

TEST_CASE("actual dimension golden values") {
    const PrimeField F{kP};
    CHECK(actual_dimension(FatFlatSystem(2, {1, 1, 1}), F, 1) == 1);
    CHECK(actual_dimension(FatFlatSystem(3, {1, 1, 1, 1}), F, 1) == 4);
    // no lines: the whole space of forms
    CHECK(actual_dimension(FatFlatSystem(4, {}), F, 1) == 35);
}

TEST_CASE("analyze flags the multiple-of-a-quadric system") {
    const auto report = analyze(FatFlatSystem(4, {2, 2, 2}), kP, {1, 2, 3});
    CHECK(report.virtual_dim == -4);
    CHECK(report.expected_dim == 0);
    CHECK(report.consensus_actual == 1);
    CHECK(report.special);
    for (auto a : report.actual_per_seed) CHECK(a >= report.expected_dim);
    CHECK_FALSE(report.caveats.empty());
}

TEST_CASE("analyze flags the union-of-four-quadrics system") {
    const auto report = analyze(FatFlatSystem(8, {3, 3, 3, 3}), kP, {1, 2});
    CHECK(report.virtual_dim == -19);
    CHECK(report.expected_dim == 0);
    CHECK(report.consensus_actual == 1);
    CHECK(report.special);
}

TEST_CASE("simple lines never give special systems") {
    for (auto [d, s] : {std::pair<unsigned, unsigned>{5, 7},
                        {8, 12},
                        {6, 4},
                        {3, 6}}) {
        const auto report =
            analyze(FatFlatSystem(d, std::vector<unsigned>(s, 1)), kP, {1, 2});
        CHECK_FALSE(report.special);
        CHECK(report.consensus_actual == report.expected_dim);
    }
}

TEST_CASE("analyze is deterministic") {
    const FatFlatSystem sys(6, {2, 2, 1});
    const auto a = analyze(sys, kP, {3, 4});
    const auto b = analyze(sys, kP, {3, 4});
    CHECK(a.actual_per_seed == b.actual_per_seed);
    CHECK(a.consensus_actual == b.consensus_actual);
    CHECK(a.special == b.special);
}

TEST_CASE("dimension never increases when conditions grow") {
    const PrimeField F{kP};
    // appending a simple line (same seed prefix)
    const auto base = actual_dimension(FatFlatSystem(6, {2, 2}), F, 8);
    const auto more = actual_dimension(FatFlatSystem(6, {2, 2, 1}), F, 8);
    CHECK(more <= base);
    // raising a multiplicity on the same configuration
    const auto raised = actual_dimension(FatFlatSystem(6, {3, 2}), F, 8);
    CHECK(raised <= base);
}

TEST_CASE("analyze requires at least one seed") {
    CHECK_THROWS_AS(analyze(FatFlatSystem(2, {1}), kP, {}),
                    std::invalid_argument);
}

TEST_CASE("mults notation parses and formats") {
    CHECK(parse_mults("3^6,2") ==
          std::vector<unsigned>{3, 3, 3, 3, 3, 3, 2});
    CHECK(parse_mults("3,3,2") == std::vector<unsigned>{3, 3, 2});
    CHECK(parse_mults("") == std::vector<unsigned>{});
    CHECK(format_mults({3, 3, 3, 3, 3, 3, 2}) == "3^6,2");
    CHECK(format_mults({1}) == "1");
    CHECK_THROWS_AS(parse_mults("3^x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mults("a,b"), std::invalid_argument);
    CHECK(system_label(FatFlatSystem(12, {3, 3, 3, 3, 3, 3, 2})) ==
          "L12(3^6,2)");
}
