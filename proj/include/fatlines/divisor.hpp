#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatlines {

/// Divisor-class lattices of the blowups of P^3 used by the two Cremona
/// transformations, each with its triple-intersection table.
///
/// Basis layout: index 0 is H, then the E_i; the cubo-cubic model appends the
/// two transversal classes T_1, T_2. The six-line model for the degree-19
/// transformation omits the transversal and cubic exceptional classes: the
/// transformation rules and every use here live in the span of H, E_1..E_6,
/// and no product table exists for the others.
class BlowupModel {
  public:
    enum class Kind { CuboCubic, Todd, Lines };

    static BlowupModel cubo_cubic() { return BlowupModel(Kind::CuboCubic, 4); }
    static BlowupModel todd() { return BlowupModel(Kind::Todd, 6); }
    static BlowupModel lines(unsigned n) { return BlowupModel(Kind::Lines, n); }

    Kind kind() const { return kind_; }
    unsigned line_count() const { return lines_; }
    unsigned transversal_count() const {
        return kind_ == Kind::CuboCubic ? 2u : 0u;
    }
    std::size_t basis_size() const { return 1 + lines_ + transversal_count(); }

    bool is_exceptional_line(std::size_t i) const {
        return i >= 1 && i <= lines_;
    }
    bool is_transversal(std::size_t i) const {
        return i > lines_ && i < basis_size();
    }

    /// Triple product of three basis classes.
    /// All models: H^3 = 1, H E_i^2 = -1, E_i^3 = -2.
    /// Cubo-cubic additionally: H T_j^2 = -1, E_i T_j^2 = -1, T_j^3 = 2.
    /// Every other monomial triple is 0.
    long long basis_triple(std::size_t i, std::size_t j, std::size_t k) const {
        // sort the three indices
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
        if (i == 0 && j == 0 && k == 0) return 1;
        if (i == 0 && j == k && is_exceptional_line(j)) return -1;
        if (i == 0 && j == k && is_transversal(j)) return -1;
        if (is_exceptional_line(i) && j == k && is_transversal(j)) return -1;
        if (i == j && j == k && is_exceptional_line(i)) return -2;
        if (i == j && j == k && is_transversal(i)) return 2;
        return 0;
    }

    std::string basis_name(std::size_t i) const {
        if (i == 0) return "H";
        if (is_exceptional_line(i)) return "E" + std::to_string(i);
        return "T" + std::to_string(i - lines_);
    }

    bool operator==(const BlowupModel& o) const {
        return kind_ == o.kind_ && lines_ == o.lines_;
    }
    bool operator!=(const BlowupModel& o) const { return !(*this == o); }

  private:
    BlowupModel(Kind kind, unsigned lines) : kind_(kind), lines_(lines) {
        if (lines_ == 0) {
            throw std::invalid_argument("BlowupModel: need at least one line");
        }
    }

    Kind kind_;
    unsigned lines_;
};

/// Integer combination of a model's basis classes.
class DivisorClass {
  public:
    DivisorClass(BlowupModel model, std::vector<long long> coeffs)
        : model_(model), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != model_.basis_size()) {
            throw std::invalid_argument(
                "DivisorClass: coefficient count does not match the basis");
        }
    }

    static DivisorClass zero(BlowupModel model) {
        std::vector<long long> c(model.basis_size(), 0);
        return DivisorClass(model, std::move(c));
    }

    static DivisorClass basis(BlowupModel model, std::size_t i) {
        DivisorClass cls = zero(model);
        cls.coeffs_.at(i) = 1;
        return cls;
    }

    const BlowupModel& model() const { return model_; }
    const std::vector<long long>& coeffs() const { return coeffs_; }
    long long coeff(std::size_t i) const { return coeffs_.at(i); }
    long long h_coefficient() const { return coeffs_[0]; }

    DivisorClass negated() const {
        DivisorClass out = *this;
        for (auto& c : out.coeffs_) c = -c;
        return out;
    }

    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
        if (a.model_ != b.model_) {
            throw std::invalid_argument("DivisorClass: model mismatch");
        }
        DivisorClass out = a;
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
            out.coeffs_[i] += b.coeffs_[i];
        }
        return out;
    }

    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) {
        return a + b.negated();
    }

    friend DivisorClass operator*(long long s, const DivisorClass& a) {
        DivisorClass out = a;
        for (auto& c : out.coeffs_) c *= s;
        return out;
    }

    bool operator==(const DivisorClass& o) const {
        return model_ == o.model_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const DivisorClass& o) const { return !(*this == o); }

    std::string pretty() const {
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const long long c = coeffs_[i];
            if (c == 0) continue;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            const long long a = c < 0 ? -c : c;
            if (a != 1) out += std::to_string(a);
            out += model_.basis_name(i);
        }
        return out.empty() ? "0" : out;
    }

  private:
    BlowupModel model_;
    std::vector<long long> coeffs_;
};

/// Trilinear extension of the model's product table.
inline long long triple_product(const DivisorClass& a, const DivisorClass& b,
                                const DivisorClass& c) {
    if (a.model() != b.model() || b.model() != c.model()) {
        throw std::invalid_argument("triple_product: model mismatch");
    }
    const std::size_t n = a.model().basis_size();
    __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeff(i) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeff(j) == 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                const long long t = a.model().basis_triple(i, j, k);
                if (t == 0) continue;
                acc += static_cast<__int128>(a.coeff(i)) * b.coeff(j) *
                       c.coeff(k) * t;
            }
        }
    }
    if (acc > std::numeric_limits<long long>::max() ||
        acc < std::numeric_limits<long long>::min()) {
        throw std::overflow_error("triple_product: result overflows");
    }
    return static_cast<long long>(acc);
}

namespace detail {

inline DivisorClass apply_lattice_map(
    const DivisorClass& cls, const std::vector<DivisorClass>& basis_images) {
    DivisorClass out = DivisorClass::zero(basis_images.front().model());
    for (std::size_t i = 0; i < cls.coeffs().size(); ++i) {
        if (cls.coeff(i) == 0) continue;
        out = out + cls.coeff(i) * basis_images[i];
    }
    return out;
}

}  // namespace detail

/// Lattice map of the cubo-cubic transformation (an involution):
/// H -> 3H - E - T, E_i -> 2H - E + E_i - T, T_j -> T_j,
/// with E = E_1+..+E_4 and T = T_1+T_2.
inline DivisorClass gamma_cubo(const DivisorClass& cls) {
    if (cls.model().kind() != BlowupModel::Kind::CuboCubic) {
        throw std::invalid_argument("gamma_cubo: class not on the cubo-cubic model");
    }
    const BlowupModel model = cls.model();
    std::vector<DivisorClass> images;
    images.reserve(7);
    images.push_back(
        DivisorClass(model, {3, -1, -1, -1, -1, -1, -1}));  // image of H
    for (std::size_t i = 1; i <= 4; ++i) {
        std::vector<long long> c{2, -1, -1, -1, -1, -1, -1};
        c[i] += 1;
        images.push_back(DivisorClass(model, std::move(c)));
    }
    images.push_back(DivisorClass::basis(model, 5));
    images.push_back(DivisorClass::basis(model, 6));
    return detail::apply_lattice_map(cls, images);
}

/// Lattice map of the degree-19 six-line transformation (an involution):
/// H -> 19H - 5E, E_i -> 12H - 3E - E_i, with E = E_1+..+E_6.
inline DivisorClass gamma_todd(const DivisorClass& cls) {
    if (cls.model().kind() != BlowupModel::Kind::Todd) {
        throw std::invalid_argument("gamma_todd: class not on the Todd model");
    }
    const BlowupModel model = cls.model();
    std::vector<DivisorClass> images;
    images.reserve(7);
    images.push_back(
        DivisorClass(model, {19, -5, -5, -5, -5, -5, -5}));  // image of H
    for (std::size_t i = 1; i <= 6; ++i) {
        std::vector<long long> c{12, -3, -3, -3, -3, -3, -3};
        c[i] -= 1;
        images.push_back(DivisorClass(model, std::move(c)));
    }
    return detail::apply_lattice_map(cls, images);
}

enum class CremonaMap { CuboCubic, Todd };

/// Image of dH - sum m_i E_i under the chosen map, via the closed forms
/// (M = sum m_i):
///   cubo: (3d-2M)H - sum (d-M+m_i) E_i - (d-M)(T_1+T_2)
///   todd: (19d-12M)H - sum (5d-3M-m_i) E_i
inline DivisorClass proper_transform_symmetric(CremonaMap map, long long degree,
                                               const std::vector<long long>& mults) {
    if (map == CremonaMap::CuboCubic) {
        if (mults.size() != 4) {
            throw std::invalid_argument(
                "proper_transform_symmetric: cubo-cubic map needs 4 multiplicities");
        }
        long long total = 0;
        for (long long m : mults) total += m;
        std::vector<long long> c(7, 0);
        c[0] = 3 * degree - 2 * total;
        for (std::size_t i = 0; i < 4; ++i) c[i + 1] = -(degree - total + mults[i]);
        c[5] = c[6] = -(degree - total);
        return DivisorClass(BlowupModel::cubo_cubic(), std::move(c));
    }
    if (mults.size() != 6) {
        throw std::invalid_argument(
            "proper_transform_symmetric: six-line map needs 6 multiplicities");
    }
    long long total = 0;
    for (long long m : mults) total += m;
    std::vector<long long> c(7, 0);
    c[0] = 19 * degree - 12 * total;
    for (std::size_t i = 0; i < 6; ++i) {
        c[i + 1] = -(5 * degree - 3 * total - mults[i]);
    }
    return DivisorClass(BlowupModel::todd(), std::move(c));
}

/// A class with negative H-coefficient maps to a surface of negative degree
/// in P^3, so it can never be effective.
inline bool is_obviously_noneffective(const DivisorClass& cls) {
    return cls.h_coefficient() < 0;
}

/// Anti-canonical class 4H - E on the blowup of six lines; the canonical
/// class is its negation.
inline DivisorClass anticanonical_lines6() {
    return DivisorClass(BlowupModel::lines(6), {4, -1, -1, -1, -1, -1, -1});
}

/// Projection of a cubo-cubic class onto the span of H and the E_i;
/// `dropped_nonzero` warns when transversal coefficients were discarded.
struct AuxiliaryProjection {
    DivisorClass projected;
    bool dropped_nonzero;
};

inline AuxiliaryProjection drop_auxiliary(const DivisorClass& cls) {
    if (cls.model().kind() != BlowupModel::Kind::CuboCubic) {
        throw std::invalid_argument("drop_auxiliary: class not on the cubo-cubic model");
    }
    std::vector<long long> c(cls.coeffs().begin(), cls.coeffs().begin() + 5);
    const bool dropped = cls.coeff(5) != 0 || cls.coeff(6) != 0;
    return AuxiliaryProjection{DivisorClass(BlowupModel::lines(4), std::move(c)),
                               dropped};
}

}  // namespace fatlines
