#include <catch2/catch_amalgamated.hpp>

#include "fatlines/monomial.hpp"

using namespace fatlines;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(3, 3) == 1);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(15, 3) == 455);
    CHECK(binomial(23, 3) == 1771);
    CHECK(binomial(2, 3) == 0);
}

TEST_CASE("indexer size is binom(d+3,3)") {
    for (unsigned d : {0u, 1u, 2u, 5u, 12u, 20u}) {
        CHECK(MonomialIndexer(d).size() == binomial(d + 3ull, 3));
    }
}

TEST_CASE("index and exponents are mutually inverse") {
    for (unsigned d : {0u, 1u, 2u, 3u, 7u, 10u}) {
        const MonomialIndexer idx(d);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const Exponents& e = idx.exponents(i);
            CHECK(static_cast<unsigned>(e[0] + e[1] + e[2] + e[3]) == d);
            CHECK(idx.index(e) == i);
        }
    }
}

TEST_CASE("order starts at x^d and ends at w^d") {
    const MonomialIndexer idx(6);
    CHECK(idx.exponents(0) == Exponents{6, 0, 0, 0});
    CHECK(idx.exponents(idx.size() - 1) == Exponents{0, 0, 0, 6});
}

TEST_CASE("index rejects wrong-degree input") {
    const MonomialIndexer idx(4);
    CHECK_THROWS_AS(idx.index(Exponents{1, 1, 1, 0}), std::invalid_argument);
}
