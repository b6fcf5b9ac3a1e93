#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fatlines {

inline std::uint64_t binomial(std::uint64_t n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at every step
    }
    return r;
}

/// Exponent vector (x, y, z, w) of a monomial in four variables.
using Exponents = std::array<std::uint16_t, 4>;

/// Fixed bijection between [0, binom(d+3,3)) and the exponent vectors of
/// total degree d, ordered lexicographically descending with x > y > z > w.
class MonomialIndexer {
  public:
    explicit MonomialIndexer(unsigned degree) : degree_(degree) {
        exps_.reserve(static_cast<std::size_t>(binomial(degree + 3ull, 3)));
        for (int a = static_cast<int>(degree); a >= 0; --a) {
            for (int b = static_cast<int>(degree) - a; b >= 0; --b) {
                for (int c = static_cast<int>(degree) - a - b; c >= 0; --c) {
                    const int e = static_cast<int>(degree) - a - b - c;
                    exps_.push_back({static_cast<std::uint16_t>(a),
                                     static_cast<std::uint16_t>(b),
                                     static_cast<std::uint16_t>(c),
                                     static_cast<std::uint16_t>(e)});
                }
            }
        }
    }

    unsigned degree() const { return degree_; }
    std::size_t size() const { return exps_.size(); }

    /// Rank of an exponent vector in the fixed order; O(1).
    std::size_t index(const Exponents& e) const {
        const std::uint64_t t = degree_;
        if (std::uint64_t(e[0]) + e[1] + e[2] + e[3] != t) {
            throw std::invalid_argument("MonomialIndexer::index: wrong degree");
        }
        return static_cast<std::size_t>(binomial(t - e[0] + 2, 3) +
                                        binomial(t - e[0] - e[1] + 1, 2) + e[3]);
    }

    const Exponents& exponents(std::size_t i) const { return exps_[i]; }

  private:
    unsigned degree_;
    std::vector<Exponents> exps_;
};

}  // namespace fatlines
