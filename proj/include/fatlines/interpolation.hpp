#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatlines/dense_matrix.hpp"
#include "fatlines/lines.hpp"
#include "fatlines/monomial.hpp"
#include "fatlines/prime_field.hpp"
#include "fatlines/system.hpp"
#include "fatlines/version.hpp"

namespace fatlines {

/// Number of linear conditions that vanishing to order m along one line
/// imposes on degree-d forms: m(m+1)(3d+5-2m)/6.
inline std::uint64_t conditions_count(unsigned m, unsigned d) {
    if (m < 1 || m > d) {
        throw std::domain_error("conditions_count: need 1 <= m <= d");
    }
    const std::uint64_t mm = m, dd = d;
    return mm * (mm + 1) * (3 * dd + 5 - 2 * mm) / 6;
}

/// The same count as an explicit sum over derivative orders; kept as an
/// independent cross-check of the closed form.
inline std::uint64_t conditions_count_summation(unsigned m, unsigned d) {
    if (m < 1 || m > d) {
        throw std::domain_error("conditions_count_summation: need 1 <= m <= d");
    }
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < m; ++i) {
        total += (d + 1 - i) * (i + 1);
    }
    return total;
}

/// binom(d+3,3) minus the total conditions count; may be negative.
inline std::int64_t virtual_dimension(const FatFlatSystem& sys) {
    std::int64_t v = static_cast<std::int64_t>(binomial(sys.degree() + 3ull, 3));
    for (unsigned m : sys.mults()) {
        v -= static_cast<std::int64_t>(conditions_count(m, sys.degree()));
    }
    return v;
}

inline std::uint64_t expected_dimension(const FatFlatSystem& sys) {
    const std::int64_t v = virtual_dimension(sys);
    return v > 0 ? static_cast<std::uint64_t>(v) : 0;
}

namespace detail {

inline constexpr std::size_t kNoTarget = std::numeric_limits<std::size_t>::max();

/// Degree-t monomials in u0..u3 with u0-exp + u1-exp <= qmax, ordered by
/// q = u0+u1 ascending, then u0 descending, then u2 descending. Images of
/// monomials under a line's coordinate change are stored on this basis, which
/// is exactly the row set of the line's condition matrix when qmax = m-1.
struct TruncatedBasis {
    unsigned t;
    unsigned qmax;
    std::vector<Exponents> exps;
    std::vector<std::size_t> offsets;  // offsets[q] = first position of block q

    TruncatedBasis(unsigned t_, unsigned qmax_) : t(t_), qmax(qmax_) {
        const unsigned qtop = std::min(qmax, t);
        offsets.assign(qtop + 2, 0);
        for (unsigned q = 0; q <= qtop; ++q) {
            offsets[q + 1] = offsets[q] + (q + 1) * (t - q + 1);
            for (int i = static_cast<int>(q); i >= 0; --i) {
                const int j = static_cast<int>(q) - i;
                for (int a = static_cast<int>(t - q); a >= 0; --a) {
                    const int b = static_cast<int>(t - q) - a;
                    exps.push_back({static_cast<std::uint16_t>(i),
                                    static_cast<std::uint16_t>(j),
                                    static_cast<std::uint16_t>(a),
                                    static_cast<std::uint16_t>(b)});
                }
            }
        }
    }

    std::size_t size() const { return exps.size(); }

    std::size_t index(unsigned i, unsigned j, unsigned a) const {
        const unsigned q = i + j;
        return offsets[q] + (q - i) * (t - q + 1) + (t - q - a);
    }
};

/// Per-variable shift tables: where multiplying a stored monomial by u_k
/// lands in the next level's basis (kNoTarget once the truncation drops it).
inline std::array<std::vector<std::size_t>, 4> shift_tables(
    const TruncatedBasis& from, const TruncatedBasis& to) {
    std::array<std::vector<std::size_t>, 4> step;
    for (auto& s : step) s.assign(from.size(), kNoTarget);
    for (std::size_t rho = 0; rho < from.size(); ++rho) {
        const Exponents& e = from.exps[rho];
        const unsigned q = e[0] + e[1];
        if (q + 1 <= to.qmax) {
            step[0][rho] = to.index(e[0] + 1u, e[1], e[2]);
            step[1][rho] = to.index(e[0], e[1] + 1u, e[2]);
        }
        step[2][rho] = to.index(e[0], e[1], e[2] + 1u);
        step[3][rho] = to.index(e[0], e[1], e[2]);
    }
    return step;
}

}  // namespace detail

/// Linear conditions a line with multiplicity m imposes on degree-d forms.
///
/// The rows express, per coefficient vector over `indexer`'s monomial basis,
/// the coefficients of the transformed form F(A u) on the monomials u^b with
/// b0 + b1 < m, A being the line's frame. A form satisfies every row iff it
/// lies in the m-th power of the line's ideal. Images of the monomial basis
/// are built by dynamic programming over the degree: each degree-t monomial
/// image is a degree-(t-1) image times one substituted linear form, computed
/// on the truncated basis throughout.
inline DenseMatrix condition_rows(const Line& line, unsigned m, unsigned d,
                                  const MonomialIndexer& indexer,
                                  const PrimeField& F) {
    if (m < 1 || m > d) {
        throw std::domain_error("condition_rows: need 1 <= m <= d");
    }
    if (indexer.degree() != d) {
        throw std::invalid_argument("condition_rows: indexer degree mismatch");
    }
    const unsigned qmax = m - 1;

    std::vector<std::uint32_t> prev{1u};  // level 0: image of the constant 1
    detail::TruncatedBasis prev_basis(0, qmax);
    MonomialIndexer prev_idx(0);

    for (unsigned t = 1; t <= d; ++t) {
        MonomialIndexer cur_idx(t);
        detail::TruncatedBasis cur_basis(t, qmax);
        const auto step = detail::shift_tables(prev_basis, cur_basis);
        const std::size_t r_prev = prev_basis.size();
        const std::size_t r_cur = cur_basis.size();
        std::vector<std::uint32_t> cur(cur_idx.size() * r_cur, 0u);

        for (std::size_t col = 0; col < cur_idx.size(); ++col) {
            Exponents e = cur_idx.exponents(col);
            unsigned k = 0;
            while (e[k] == 0) ++k;
            --e[k];
            const std::size_t pcol = prev_idx.index(e);
            const std::uint32_t* src = prev.data() + pcol * r_prev;
            std::uint32_t* dst = cur.data() + col * r_cur;
            const auto& form = line.substitution_form(k);
            for (std::size_t rho = 0; rho < r_prev; ++rho) {
                const std::uint32_t cv = src[rho];
                if (cv == 0) continue;
                for (unsigned k2 = 0; k2 < 4; ++k2) {
                    const std::uint32_t w = form[k2].v;
                    if (w == 0) continue;
                    const std::size_t target = step[k2][rho];
                    if (target == detail::kNoTarget) continue;
                    dst[target] =
                        F.reduce(dst[target] + static_cast<std::uint64_t>(cv) * w);
                }
            }
        }
        prev = std::move(cur);
        prev_basis = std::move(cur_basis);
        prev_idx = std::move(cur_idx);
    }

    const std::size_t n_rows = prev_basis.size();
    if (n_rows != conditions_count(m, d)) {
        throw std::logic_error("condition_rows: row count mismatch");
    }
    DenseMatrix rows(n_rows, indexer.size());
    for (std::size_t col = 0; col < indexer.size(); ++col) {
        for (std::size_t rho = 0; rho < n_rows; ++rho) {
            rows.at(rho, col) = Fp{prev[col * n_rows + rho]};
        }
    }
    return rows;
}

/// Independent brute-force builder of the same condition space: rows evaluate
/// every order-(m-1) partial derivative of the generic degree-d form at
/// d-m+2 distinct points of the line. The row span has the same rank as
/// condition_rows, which the test suite exercises; row count is
/// binom(m+2,3) * (d-m+2).
inline DenseMatrix condition_rows_oracle(const Line& line, unsigned m,
                                         unsigned d,
                                         const MonomialIndexer& indexer,
                                         const PrimeField& F) {
    if (m < 1 || m > d) {
        throw std::domain_error("condition_rows_oracle: need 1 <= m <= d");
    }
    if (indexer.degree() != d) {
        throw std::invalid_argument(
            "condition_rows_oracle: indexer degree mismatch");
    }

    // points P + t*Q for t = 0..d-m, plus Q itself
    std::vector<Point> pts;
    pts.reserve(d - m + 2);
    for (unsigned t = 0; t + m <= d; ++t) {
        const Fp tv = F.from_uint(t);
        Point pt;
        for (std::size_t r = 0; r < 4; ++r) {
            pt[r] = F.add(line.p()[r], F.mul(tv, line.q()[r]));
        }
        pts.push_back(pt);
    }
    pts.push_back(line.q());

    // falling factorial table: fall[x][y] = x (x-1) ... (x-y+1) mod p
    std::vector<std::vector<Fp>> fall(d + 1, std::vector<Fp>(m, F.one()));
    for (unsigned x = 0; x <= d; ++x) {
        for (unsigned y = 1; y < m; ++y) {
            const std::int64_t factor = static_cast<std::int64_t>(x) - (y - 1);
            fall[x][y] = F.mul(fall[x][y - 1], F.from_int(factor));
        }
    }

    const MonomialIndexer gammas(m - 1);
    DenseMatrix rows(gammas.size() * pts.size(), indexer.size());

    for (std::size_t pi = 0; pi < pts.size(); ++pi) {
        // coordinate powers of this point up to degree d
        std::array<std::vector<Fp>, 4> pw;
        for (std::size_t r = 0; r < 4; ++r) {
            pw[r].assign(d + 1, F.one());
            for (unsigned e = 1; e <= d; ++e) {
                pw[r][e] = F.mul(pw[r][e - 1], pts[pi][r]);
            }
        }
        for (std::size_t gi = 0; gi < gammas.size(); ++gi) {
            const Exponents& g = gammas.exponents(gi);
            Fp* row = rows.row(gi * pts.size() + pi);
            for (std::size_t col = 0; col < indexer.size(); ++col) {
                const Exponents& a = indexer.exponents(col);
                if (a[0] < g[0] || a[1] < g[1] || a[2] < g[2] || a[3] < g[3]) {
                    continue;
                }
                Fp val = F.one();
                for (std::size_t r = 0; r < 4; ++r) {
                    val = F.mul(val, fall[a[r]][g[r]]);
                    val = F.mul(val, pw[r][a[r] - g[r]]);
                }
                row[col] = val;
            }
        }
    }
    return rows;
}

/// Stacked condition matrix of a system for a concrete line configuration;
/// lines are matched to multiplicities positionally.
inline DenseMatrix conditions_matrix(const FatFlatSystem& sys,
                                     const std::vector<Line>& lines,
                                     const PrimeField& F) {
    if (lines.size() != sys.line_count()) {
        throw std::invalid_argument("conditions_matrix: line count mismatch");
    }
    const MonomialIndexer indexer(sys.degree());
    std::uint64_t total_rows = 0;
    for (unsigned m : sys.mults()) total_rows += conditions_count(m, sys.degree());

    DenseMatrix stacked(static_cast<std::size_t>(total_rows), indexer.size());
    std::size_t base = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const DenseMatrix block =
            condition_rows(lines[i], sys.mults()[i], sys.degree(), indexer, F);
        for (std::size_t r = 0; r < block.rows(); ++r) {
            std::copy(block.row(r), block.row(r) + block.cols(),
                      stacked.row(base + r));
        }
        base += block.rows();
    }
    return stacked;
}

/// Affine dimension of the system for the seeded random line configuration:
/// kernel dimension of the stacked condition matrix.
inline std::uint64_t actual_dimension(const FatFlatSystem& sys,
                                      const PrimeField& F, std::uint64_t seed) {
    const MonomialIndexer indexer(sys.degree());
    if (sys.line_count() == 0) return indexer.size();
    const std::vector<Line> lines = sample_lines(sys.line_count(), F, seed);
    const DenseMatrix conditions = conditions_matrix(sys, lines, F);
    return indexer.size() - rank(conditions, F);
}

/// Lookup/store hook for memoizing per-seed actual dimensions; the CLI's
/// file-backed cache implements it.
struct ActualDimensionCache {
    virtual ~ActualDimensionCache() = default;
    virtual bool lookup(const std::string& key, std::uint64_t& value) = 0;
    virtual void store(const std::string& key, std::uint64_t value) = 0;
};

inline std::string actual_dimension_cache_key(const FatFlatSystem& sys,
                                              std::uint32_t prime,
                                              std::uint64_t seed) {
    return std::string("actual_dimension|") + canonical_system_string(sys) +
           "|p=" + std::to_string(prime) + "|seed=" + std::to_string(seed) +
           "|v=" + kToolVersion;
}

inline constexpr const char* kRandomPositionCaveat =
    "actual dimensions come from seeded pseudo-random line configurations; "
    "they upper-bound the general-position value and agree with it away from "
    "a measure-zero locus";
inline constexpr const char* kCharacteristicCaveat =
    "computed in characteristic p; agreement with characteristic 0 is "
    "evidence, not a certificate";

/// Virtual/expected/actual dimensions of one system with per-seed detail.
struct DimensionReport {
    FatFlatSystem system;
    std::uint32_t prime;
    std::vector<std::uint64_t> seeds;
    std::int64_t virtual_dim;
    std::uint64_t expected_dim;
    std::vector<std::uint64_t> actual_per_seed;
    std::uint64_t consensus_actual;  // minimum over seeds
    bool special;                    // consensus_actual > expected_dim
    std::vector<std::string> caveats;
};

/// Runs actual_dimension per seed (concurrently) and aggregates. Consensus is
/// the minimum: dimension only inflates in special position, so the minimum
/// is the best upper estimate of the generic value.
inline DimensionReport analyze(const FatFlatSystem& sys, PrimeModulus prime,
                               const std::vector<std::uint64_t>& seeds,
                               ActualDimensionCache* cache = nullptr) {
    if (seeds.empty()) {
        throw std::invalid_argument("analyze: need at least one seed");
    }
    const PrimeField F(prime);

    std::vector<std::uint64_t> actual(seeds.size(), 0);
    std::vector<std::future<std::uint64_t>> pending(seeds.size());
    std::vector<bool> from_cache(seeds.size(), false);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const std::string key =
            actual_dimension_cache_key(sys, prime.value(), seeds[i]);
        if (cache != nullptr && cache->lookup(key, actual[i])) {
            from_cache[i] = true;
            continue;
        }
        pending[i] = std::async(std::launch::async, [&sys, &F, seed = seeds[i]] {
            return actual_dimension(sys, F, seed);
        });
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (from_cache[i]) continue;
        actual[i] = pending[i].get();
        if (cache != nullptr) {
            cache->store(actual_dimension_cache_key(sys, prime.value(), seeds[i]),
                         actual[i]);
        }
    }

    DimensionReport report{
        sys,
        prime.value(),
        seeds,
        virtual_dimension(sys),
        expected_dimension(sys),
        actual,
        *std::min_element(actual.begin(), actual.end()),
        false,
        {kRandomPositionCaveat, kCharacteristicCaveat}};
    report.special = report.consensus_actual > report.expected_dim;
    return report;
}

}  // namespace fatlines
