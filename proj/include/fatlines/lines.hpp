#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "fatlines/dense_matrix.hpp"
#include "fatlines/prime_field.hpp"

namespace fatlines {

/// Homogeneous coordinates of a point of P^3(F_p).
using Point = std::array<Fp, 4>;

/// 4x4 coordinate frame, frame[row][col].
using Frame = std::array<std::array<Fp, 4>, 4>;

namespace detail {

inline DenseMatrix stack_points(const std::vector<Point>& pts) {
    DenseMatrix m(pts.size(), 4);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = pts[i][j];
    return m;
}

inline DenseMatrix frame_matrix(const Frame& f) {
    DenseMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.at(r, c) = f[r][c];
    return m;
}

}  // namespace detail

/// A line of P^3(F_p): two spanning points plus a completed coordinate frame.
/// The frame's last two columns are exactly P and Q, so the inverse frame
/// carries the line onto the coordinate line {x = y = 0}.
class Line {
  public:
    Line(Point p, Point q, Frame frame, const PrimeField& F)
        : p_(p), q_(q), frame_(frame) {
        for (std::size_t r = 0; r < 4; ++r) {
            if (frame_[r][2] != p_[r] || frame_[r][3] != q_[r]) {
                throw std::invalid_argument(
                    "Line: frame columns 2,3 must be the spanning points");
            }
        }
        if (rank(detail::stack_points({p_, q_}), F) != 2) {
            throw std::invalid_argument("Line: spanning points are dependent");
        }
        if (rank(detail::frame_matrix(frame_), F) != 4) {
            throw std::invalid_argument("Line: frame is not invertible");
        }
    }

    const Point& p() const { return p_; }
    const Point& q() const { return q_; }
    const Frame& frame() const { return frame_; }

    /// Linear form the coordinate change substitutes for variable `var`:
    /// row `var` of the frame.
    const std::array<Fp, 4>& substitution_form(unsigned var) const {
        return frame_[var];
    }

  private:
    Point p_;
    Point q_;
    Frame frame_;
};

/// Two lines are skew iff their four spanning points span all of P^3.
inline bool skew(const Line& a, const Line& b, const PrimeField& F) {
    return rank(detail::stack_points({a.p(), a.q(), b.p(), b.q()}), F) == 4;
}

namespace detail {

inline constexpr int kFrameRetryCap = 64;
inline constexpr int kSkewRetryCap = 256;

class LineSampler {
  public:
    LineSampler(const PrimeField& F, std::uint64_t seed) : field_(F), rng_(seed) {}

    Point random_point() {
        for (;;) {
            Point pt;
            bool nonzero = false;
            for (auto& c : pt) {
                c = Fp{static_cast<std::uint32_t>(rng_() % field_.p())};
                nonzero = nonzero || c.v != 0;
            }
            if (nonzero) return pt;
        }
    }

    /// Next line of the stream, skew to every line already accepted. The
    /// stream is prefix-stable: earlier lines never depend on later draws.
    Line next_line(const std::vector<Line>& existing) {
        for (int attempt = 0; attempt < kSkewRetryCap; ++attempt) {
            const Point p = random_point();
            const Point q = random_point();
            if (rank(stack_points({p, q}), field_) != 2) continue;
            Line candidate(p, q, complete_frame(p, q), field_);
            bool ok = true;
            for (const Line& prior : existing) {
                if (!skew(prior, candidate, field_)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return candidate;
        }
        throw std::runtime_error("could not sample skew configuration");
    }

  private:
    Frame complete_frame(const Point& p, const Point& q) {
        for (int attempt = 0; attempt < kFrameRetryCap; ++attempt) {
            const Point v0 = random_point();
            const Point v1 = random_point();
            Frame f;
            for (std::size_t r = 0; r < 4; ++r) {
                f[r] = {v0[r], v1[r], p[r], q[r]};
            }
            if (rank(frame_matrix(f), field_) == 4) return f;
        }
        throw std::runtime_error("could not complete line frame");
    }

    const PrimeField& field_;
    std::mt19937_64 rng_;
};

}  // namespace detail

/// `count` pairwise-skew lines, deterministic in (count, p, seed). The first
/// s lines for seed k coincide with sample_lines(s, ..., k) for any larger
/// count (prefix stability), which monotonicity tests rely on.
inline std::vector<Line> sample_lines(std::size_t count, const PrimeField& F,
                                      std::uint64_t seed) {
    detail::LineSampler sampler(F, seed);
    std::vector<Line> lines;
    lines.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        lines.push_back(sampler.next_line(lines));
    }
    return lines;
}

}  // namespace fatlines
