#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatlines/divisor.hpp"
#include "fatlines/interpolation.hpp"
#include "fatlines/rational.hpp"

namespace fatlines {

inline constexpr std::uint64_t kDefaultBudgetCols = 75000;

/// Raised when an initial-degree search would need a monomial basis beyond
/// the configured column budget.
class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(unsigned degree, std::uint64_t cols, std::uint64_t budget)
        : std::runtime_error("out of desk-scale budget: degree " +
                             std::to_string(degree) + " needs " +
                             std::to_string(cols) + " columns (budget " +
                             std::to_string(budget) + ")"),
          limiting_degree(degree) {}

    unsigned limiting_degree;
};

/// Initial degree of the m-th symbolic power of the ideal of s general lines:
/// least d with L_d(m^s) nonempty, by multi-seed consensus rank over random
/// configurations.
inline unsigned alpha_symbolic(unsigned s, unsigned m, PrimeModulus prime,
                               const std::vector<std::uint64_t>& seeds,
                               std::uint64_t budget_cols = kDefaultBudgetCols,
                               ActualDimensionCache* cache = nullptr) {
    if (s < 1 || m < 1) {
        throw std::invalid_argument("alpha_symbolic: need s >= 1 and m >= 1");
    }
    for (unsigned d = m;; ++d) {
        const std::uint64_t cols = binomial(d + 3ull, 3);
        if (cols > budget_cols) throw BudgetExceeded(d, cols, budget_cols);
        const FatFlatSystem sys(d, std::vector<unsigned>(s, m));
        const DimensionReport report = analyze(sys, prime, seeds, cache);
        if (report.consensus_actual > 0) return d;
    }
}

/// One verified bound with its provenance.
struct BoundInfo {
    Rational value;
    bool certified;  // lattice arithmetic (exact) vs sampled evidence
    std::string source;
};

/// Upper bound 72/19 for six lines, justified by the six degree-12 surfaces
/// with multiplicities (4, 3^5): their sum has degree 72 and order 19 along
/// every line. Verified computationally by checking dim L_12(4,3^5) = 1.
inline BoundInfo waldschmidt_upper_bound_6lines(
    PrimeModulus prime, const std::vector<std::uint64_t>& seeds,
    ActualDimensionCache* cache = nullptr) {
    const DimensionReport report =
        analyze(FatFlatSystem(12, {4, 3, 3, 3, 3, 3}), prime, seeds, cache);
    const bool verified = report.consensus_actual == 1;
    return BoundInfo{Rational(72, 19), verified,
                     verified ? "six symmetrized duodecics: 6*12 = 72, order "
                                "5*3+4 = 19 along each line"
                              : "bound unverified: dim L_12(4,3^5) != 1 in the "
                                "random model"};
}

/// Lower bound 72/19 for six lines: for every m, the transform of
/// (72m-1)H - 19m E has H-coefficient -19, so no surface of degree 72m-1 can
/// have order 19m along all six lines. Exact lattice arithmetic.
inline BoundInfo waldschmidt_lower_bound_6lines(unsigned m_max) {
    if (m_max < 1) {
        throw std::invalid_argument("waldschmidt_lower_bound_6lines: m_max >= 1");
    }
    for (unsigned m = 1; m <= m_max; ++m) {
        const auto img = proper_transform_symmetric(
            CremonaMap::Todd, 72ll * m - 1, std::vector<long long>(6, 19ll * m));
        if (!is_obviously_noneffective(img)) {
            throw std::logic_error(
                "waldschmidt_lower_bound_6lines: transform of degree " +
                std::to_string(72ll * m - 1) + " is not visibly non-effective");
        }
    }
    return BoundInfo{
        Rational(72, 19), true,
        "transform of (72m-1)H - 19m*E has degree -19 for every m <= " +
            std::to_string(m_max) +
            " (image is -19H + (m+5)E by the transformation rules; the "
            "negative degree is what matters)"};
}

/// Known exact values for up to six lines.
inline const std::map<unsigned, Rational>& known_table() {
    static const std::map<unsigned, Rational> table{
        {1, Rational(1)},     {2, Rational(2)},      {3, Rational(2)},
        {4, Rational(8, 3)},  {5, Rational(10, 3)},  {6, Rational(72, 19)}};
    return table;
}

/// Conjectured value for s >= 7: 21/5 when s = 7, otherwise the largest real
/// root of t^3 - 3 s t + 2 s.
struct ConjecturedValue {
    std::optional<Rational> rational;  // s = 7
    std::optional<double> root;        // s >= 8
};

/// Largest real root of t^3 - 3 s t + 2 s by bisection on [sqrt(s), sqrt(3s)];
/// the cubic is increasing there, so the bracket pins the largest root.
inline double conjectured_root(unsigned s, double tolerance = 1e-12) {
    const double sd = static_cast<double>(s);
    auto f = [&](double t) { return t * t * t - 3 * sd * t + 2 * sd; };
    double lo = std::sqrt(sd);
    double hi = std::sqrt(3 * sd);
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

inline ConjecturedValue conjectured_value(unsigned s) {
    if (s < 7) {
        throw std::invalid_argument(
            "conjectured_value: exact values exist for s <= 6; use known_table");
    }
    if (s == 7) return ConjecturedValue{Rational(21, 5), std::nullopt};
    return ConjecturedValue{std::nullopt, conjectured_root(s)};
}

struct AlphaSample {
    unsigned m;
    unsigned alpha;
    Rational ratio;  // alpha / m
};

struct WaldschmidtReport {
    unsigned s;
    std::uint32_t prime;
    std::vector<std::uint64_t> seeds;
    std::vector<AlphaSample> samples;
    std::optional<BoundInfo> upper_bound;
    std::optional<BoundInfo> lower_bound;
    std::optional<Rational> exact;
    std::optional<Rational> conjectured_rational;
    std::optional<double> conjectured_root_value;
    std::vector<std::string> notes;    // skipped samples and similar events
    std::vector<std::string> caveats;
};

/// Samples alpha(I^(m))/m for m = 1..m_max within budget and attaches the
/// known exact value (s <= 6) or the conjectured one (s >= 7). For six lines
/// the two bound arguments are run and reported; otherwise the smallest
/// sampled ratio serves as the evidence-grade upper bound.
inline WaldschmidtReport bound_report(unsigned s, unsigned m_max,
                                      PrimeModulus prime,
                                      const std::vector<std::uint64_t>& seeds,
                                      std::uint64_t budget_cols = kDefaultBudgetCols,
                                      ActualDimensionCache* cache = nullptr) {
    if (s < 1) throw std::invalid_argument("bound_report: need s >= 1");
    WaldschmidtReport report;
    report.s = s;
    report.prime = prime.value();
    report.seeds = seeds;
    report.caveats = {kRandomPositionCaveat, kCharacteristicCaveat};

    for (unsigned m = 1; m <= m_max; ++m) {
        try {
            const unsigned a = alpha_symbolic(s, m, prime, seeds, budget_cols, cache);
            report.samples.push_back(
                {m, a, Rational(static_cast<long long>(a), m)});
        } catch (const BudgetExceeded& e) {
            report.notes.push_back("m = " + std::to_string(m) +
                                   " skipped: " + e.what());
        }
    }

    if (const auto it = known_table().find(s); it != known_table().end()) {
        report.exact = it->second;
    }
    if (s == 6) {
        report.upper_bound = waldschmidt_upper_bound_6lines(prime, seeds, cache);
        report.lower_bound = waldschmidt_lower_bound_6lines(100);
    } else if (!report.samples.empty()) {
        Rational best = report.samples.front().ratio;
        for (const auto& smp : report.samples) {
            if (smp.ratio < best) best = smp.ratio;
        }
        report.upper_bound =
            BoundInfo{best, false, "smallest sampled ratio alpha(I^(m))/m"};
    }
    if (s >= 7) {
        const ConjecturedValue cv = conjectured_value(s);
        report.conjectured_rational = cv.rational;
        report.conjectured_root_value = cv.root;
    }
    return report;
}

}  // namespace fatlines
