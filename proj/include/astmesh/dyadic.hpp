#ifndef ASTMESH_DYADIC_HPP
#define ASTMESH_DYADIC_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "astmesh/error.hpp"

namespace astmesh {

/// Exact dyadic rational: numerator / 2^exponent.
///
/// All mesh coordinates, midpoints, distances and patch radii are dyadic, so
/// every geometric comparison in the library is exact. Stored normalized:
/// the numerator is odd, or zero with exponent zero. The 128-bit numerator
/// leaves ample headroom for the supported level range.
class Dyadic {
public:
    using Int = __int128;

    Dyadic() : num_(0), exp_(0) {}

    static Dyadic from_int(std::int64_t n) { return Dyadic(Int(n), 0); }

    /// n / 2^e, normalized.
    static Dyadic from_fraction(std::int64_t n, int e) { return Dyadic(Int(n), e); }

    /// 2^e for any (possibly negative) e.
    static Dyadic pow2(int e) {
        return e >= 0 ? Dyadic(shifted(1, e), 0) : Dyadic(1, -e);
    }

    /// Smallest multiple of 2^-granularity that is >= v (plus one extra step
    /// to absorb floating-point error in v). Used for the witness-distance
    /// bound, which is irrational; everywhere else values are exact.
    static Dyadic from_double_round_up(double v, int granularity = 30) {
        const double scaled = std::ldexp(v, granularity);
        if (!(std::abs(scaled) < 9.2e18))
            throw Error("dyadic round-up out of range");
        return Dyadic(Int(std::ceil(scaled)) + 1, granularity);
    }

    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_integer() const { return exp_ == 0; }

    /// Exact integer value; throws unless is_integer().
    std::int64_t to_int() const {
        if (exp_ != 0) throw Error("dyadic is not an integer");
        return narrow(num_);
    }

    std::int64_t floor_int() const {
        return narrow(num_ >= 0 ? num_ >> exp_ : -((-num_ + mask()) >> exp_));
    }

    std::int64_t ceil_int() const {
        return narrow(num_ >= 0 ? (num_ + mask()) >> exp_ : -((-num_) >> exp_));
    }

    Dyadic operator-() const { return Dyadic::raw(-num_, exp_); }

    Dyadic operator+(const Dyadic& o) const {
        const int e = std::max(exp_, o.exp_);
        return Dyadic(shifted(num_, e - exp_) + shifted(o.num_, e - o.exp_), e);
    }

    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }

    /// Multiply by 2^shift (shift may be negative).
    Dyadic mul_pow2(int shift) const {
        if (num_ == 0) return Dyadic();
        if (shift >= 0) {
            const int drop = std::min(shift, exp_);
            return Dyadic::raw(shifted(num_, shift - drop), exp_ - drop);
        }
        return Dyadic::raw(num_, exp_ - shift);
    }

    Dyadic half() const { return mul_pow2(-1); }

    Dyadic abs() const { return num_ < 0 ? -*this : *this; }

    std::strong_ordering operator<=>(const Dyadic& o) const {
        const int e = std::max(exp_, o.exp_);
        return shifted(num_, e - exp_) <=> shifted(o.num_, e - o.exp_);
    }
    bool operator==(const Dyadic& o) const = default;

    std::int64_t numerator() const { return narrow(num_); }
    int exponent() const { return exp_; }

    double to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

    /// Exact text form "n" or "n/2^e".
    std::string to_string() const;

    static const Dyadic& min(const Dyadic& a, const Dyadic& b) { return b < a ? b : a; }
    static const Dyadic& max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

private:
    Dyadic(Int n, int e) : num_(n), exp_(e) { normalize(); }

    static Dyadic raw(Int n, int e) {
        Dyadic d;
        d.num_ = n;
        d.exp_ = e;
        if (n == 0) d.exp_ = 0;
        return d;
    }

    void normalize() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        while (exp_ > 0 && (num_ & 1) == 0) {
            num_ >>= 1;
            --exp_;
        }
    }

    Int mask() const { return (Int(1) << exp_) - 1; }

    static Int shifted(Int n, int by) {
        if (n != 0 && by >= 120 - bit_length(n))
            throw Error("dyadic overflow");
        return n << by;
    }

    static int bit_length(Int n) {
        if (n < 0) n = -n;
        int bits = 0;
        while (n > 0) {
            ++bits;
            n >>= 1;
        }
        return bits;
    }

    static std::int64_t narrow(Int n) {
        if (n > INT64_MAX || n < INT64_MIN) throw Error("dyadic numerator too large");
        return static_cast<std::int64_t>(n);
    }

    Int num_;
    int exp_;
};

/// A point of the index domain.
struct Point {
    Dyadic x, y;

    bool operator==(const Point&) const = default;
    auto operator<=>(const Point&) const = default;
};

inline std::string Dyadic::to_string() const {
    const bool neg = num_ < 0;
    Int n = neg ? -num_ : num_;
    std::string digits;
    if (n == 0) digits = "0";
    while (n > 0) {
        digits.insert(digits.begin(), static_cast<char>('0' + int(n % 10)));
        n /= 10;
    }
    std::string out = neg ? "-" + digits : digits;
    if (exp_ != 0) out += "/2^" + std::to_string(exp_);
    return out;
}

} // namespace astmesh

#endif
