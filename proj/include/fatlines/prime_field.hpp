#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fatlines {

/// Canonical residue in [0, p). Plain value type so matrices can store rows
/// as flat arrays.
struct Fp {
    std::uint32_t v = 0;

    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    for (std::uint64_t f = 11; f * f <= n; f += 6) {
        if (n % f == 0 || n % (f + 2) == 0) return false;
    }
    return true;
}

}  // namespace detail

/// A verified prime p >= 5; the modulus all exact computations run over.
class PrimeModulus {
  public:
    static constexpr std::uint32_t kDefault = 32003;

    explicit PrimeModulus(std::uint64_t p = kDefault) {
        if (p < 5) {
            throw std::invalid_argument("PrimeModulus: p must be >= 5");
        }
        if (p > 0x7fffffffull) {
            throw std::invalid_argument("PrimeModulus: p must fit in 31 bits");
        }
        if (!detail::is_prime_u64(p)) {
            throw std::invalid_argument("PrimeModulus: " + std::to_string(p) +
                                        " is not prime");
        }
        p_ = static_cast<std::uint32_t>(p);
    }

    std::uint32_t value() const { return p_; }

    friend bool operator==(PrimeModulus a, PrimeModulus b) { return a.p_ == b.p_; }

  private:
    std::uint32_t p_;
};

/// Arithmetic context for F_p. Reduction uses a precomputed Barrett factor,
/// so the elimination inner loop never executes a hardware division.
class PrimeField {
  public:
    explicit PrimeField(PrimeModulus m) : p_(m.value()) {
        barrett_ = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(1) << 64) / p_);
    }

    std::uint32_t p() const { return p_; }

    /// Reduce x mod p; valid for any x < 2^63, which covers a + b*c with
    /// a, b, c < p < 2^31.
    std::uint32_t reduce(std::uint64_t x) const {
        const std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * barrett_) >> 64);
        std::uint64_t r = x - q * p_;
        if (r >= p_) r -= p_;
        if (r >= p_) r -= p_;
        return static_cast<std::uint32_t>(r);
    }

    Fp zero() const { return Fp{0}; }
    Fp one() const { return Fp{1}; }

    Fp from_int(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return Fp{static_cast<std::uint32_t>(r)};
    }

    Fp from_uint(std::uint64_t x) const {
        return Fp{static_cast<std::uint32_t>(x % p_)};
    }

    Fp add(Fp a, Fp b) const {
        std::uint32_t s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Fp{s};
    }

    Fp sub(Fp a, Fp b) const {
        return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }

    Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }

    Fp mul(Fp a, Fp b) const {
        return Fp{reduce(static_cast<std::uint64_t>(a.v) * b.v)};
    }

    Fp pow(Fp a, std::uint64_t e) const {
        Fp r = one();
        Fp x = a;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    /// Multiplicative inverse; zero has none.
    Fp inv(Fp a) const {
        if (a.v == 0) {
            throw std::domain_error("PrimeField::inv: division by zero");
        }
        return pow(a, p_ - 2);
    }

  private:
    std::uint32_t p_;
    std::uint64_t barrett_;  // floor(2^64 / p)
};

}  // namespace fatlines
