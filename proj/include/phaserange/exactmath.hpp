#ifndef PHASERANGE_EXACTMATH_HPP
#define PHASERANGE_EXACTMATH_HPP

// Exact integer and rational arithmetic. Integers are arbitrary precision;
// nothing in here ever rounds.

#include <cctype>
#include <compare>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "phaserange/errors.hpp"

namespace phaserange {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

/// Greatest common divisor, always nonnegative; gcd(0, 0) = 0.
inline BigInt gcd(BigInt a, BigInt b) {
    a = abs(a);
    b = abs(b);
    while (b != 0) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

/// Floor division (rounds toward negative infinity), b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct Bezout {
    BigInt g;
    BigInt s;
    BigInt t;
};

/// Extended Euclid: g = gcd(a, b) >= 0 and s*a + t*b = g.
///
/// When b != 0 the coefficient s is normalised into the half-open window
/// (-|b|/(2g), |b|/(2g)], the minimal-magnitude Bezout pair. Ties at the
/// window edge (b/g even) resolve to the positive s. When b == 0 the result
/// is (|a|, sign(a), 0), and (0, 0, 0) for a == b == 0.
inline Bezout extended_gcd(const BigInt& a, const BigInt& b) {
    BigInt r0 = a, r1 = b;
    BigInt s0 = 1, s1 = 0;
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt s2 = s0 - q * s1;
        BigInt t2 = t0 - q * t1;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    if (r0 == 0) return {0, 0, 0};
    if (b == 0) return {r0, s0, 0};

    // Shift along the solution family s + k*(b/g), t - k*(a/g).
    const BigInt step_s = abs(b) / r0;
    const BigInt step_t = (b < 0 ? BigInt(-a) : a) / r0;
    // Integer form of 2s in (-step_s, step_s].
    BigInt k = -floor_div(2 * s0 + step_s - 1, 2 * step_s);
    BigInt s = s0 + k * step_s;
    BigInt t = t0 - k * step_t;
    detail::ensure(s * a + t * b == r0, "extended_gcd: Bezout identity violated");
    return {r0, std::move(s), std::move(t)};
}

/// Exact fraction num/den, always stored in lowest terms with den > 0.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
        detail::require(den_ != 0, "Rational: zero denominator");
        normalise();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_.sign(); }

    /// Nearest double to the exact value.
    double to_double() const {
        static const BigInt two53 = BigInt(1) << 53;
        if (abs(num_) <= two53 && den_ <= two53) {
            return static_cast<double>(num_) / static_cast<double>(den_);
        }
        boost::multiprecision::cpp_rational q(num_, den_);
        return q.convert_to<double>();
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const {
        if (is_integer()) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Parses "p" or "p/q" in base 10 with an optional leading sign on p.
    /// Surrounding whitespace is ignored.
    static Rational parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
            return s;
        };
        auto parse_int = [](std::string_view s, bool allow_sign) {
            std::string_view digits = s;
            if (allow_sign && !digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
                digits.remove_prefix(1);
            }
            bool ok = !digits.empty();
            for (char c : digits) ok = ok && c >= '0' && c <= '9';
            if (!ok) throw InputError("not an integer: '" + std::string(s) + "'");
            std::string owned(s.front() == '+' ? s.substr(1) : s);
            return BigInt(owned);
        };
        const std::string_view body = trim(text);
        if (body.empty()) throw InputError("empty rational");
        const auto slash = body.find('/');
        if (slash == std::string_view::npos) return Rational(parse_int(body, true));
        BigInt n = parse_int(trim(body.substr(0, slash)), true);
        BigInt d = parse_int(trim(body.substr(slash + 1)), false);
        if (d == 0) throw InputError("zero denominator in '" + std::string(body) + "'");
        return Rational(std::move(n), std::move(d));
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        detail::require(b.num_ != 0, "Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void normalise() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_ = 0;
    BigInt den_ = 1;
};

/// Floor of an exact rational.
inline BigInt floor(const Rational& x) { return floor_div(x.num(), x.den()); }

namespace detail {

inline void require_positive(std::span<const Rational> ws, const char* who) {
    require(!ws.empty(), std::string(who) + ": empty wavelength list");
    for (std::size_t i = 0; i < ws.size(); ++i) {
        require(ws[i].sign() > 0, std::string(who) + ": element " + std::to_string(i) + " (" + ws[i].str() +
                                      ") is not strictly positive");
    }
}

} // namespace detail

/// Smallest positive P with P / w integral for every w.
/// For reduced n_i/d_i this is lcm(n) / gcd(d).
inline Rational lcm_rationals(std::span<const Rational> ws) {
    detail::require_positive(ws, "lcm_rationals");
    BigInt n = ws.front().num();
    BigInt d = ws.front().den();
    for (const Rational& w : ws.subspan(1)) {
        n = lcm(n, w.num());
        d = gcd(d, w.den());
    }
    return Rational(std::move(n), std::move(d));
}

/// Largest positive g with w / g integral for every w: gcd(n) / lcm(d).
inline Rational gcd_rationals(std::span<const Rational> ws) {
    detail::require_positive(ws, "gcd_rationals");
    BigInt n = ws.front().num();
    BigInt d = ws.front().den();
    for (const Rational& w : ws.subspan(1)) {
        n = gcd(n, w.num());
        d = lcm(d, w.den());
    }
    return Rational(std::move(n), std::move(d));
}

struct IntegerScaling {
    Rational factor;              // smallest c > 0 with c*w integral for all w
    std::vector<BigInt> scaled;   // c*w
};

inline IntegerScaling minimal_integer_scaling(std::span<const Rational> ws) {
    IntegerScaling out{Rational(1) / gcd_rationals(ws), {}};
    out.scaled.reserve(ws.size());
    for (const Rational& w : ws) {
        Rational s = out.factor * w;
        detail::ensure(s.is_integer(), "minimal_integer_scaling: non-integral result");
        out.scaled.push_back(s.num());
    }
    return out;
}

/// True iff the minimal integer scaling of ws is pairwise relatively prime,
/// i.e. the set can be scaled to pairwise coprime integers at all.
inline bool scale_to_coprime_check(std::span<const Rational> ws) {
    const IntegerScaling s = minimal_integer_scaling(ws);
    for (std::size_t i = 0; i < s.scaled.size(); ++i) {
        for (std::size_t j = i + 1; j < s.scaled.size(); ++j) {
            if (gcd(s.scaled[i], s.scaled[j]) != 1) return false;
        }
    }
    return true;
}

/// Converts to long long, throwing if out of range.
inline long long to_int64(const BigInt& x) {
    detail::ensure(x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max(),
                   "integer " + x.str() + " does not fit in 64 bits");
    return static_cast<long long>(x);
}

} // namespace phaserange

#endif
