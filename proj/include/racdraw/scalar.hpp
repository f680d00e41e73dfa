#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace racdraw {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline int sign(const Rational& r) { return r.sign(); }

/// Exact element a + b*sqrt(3) of the quadratic field Q(sqrt 3).
///
/// Both parts are kept in lowest terms by the GMP backend, so two equal
/// values always have identical components and lexicographic ordering on
/// the parts is a valid strict weak order for containers.
class Scalar {
public:
    Scalar() = default;
    Scalar(std::int64_t v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational rat) : rat_(std::move(rat)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational rat, Rational root3) : rat_(std::move(rat)), root3_(std::move(root3)) {}

    static Scalar sqrt3() { return Scalar(Rational(0), Rational(1)); }
    static Scalar frac(std::int64_t p, std::int64_t q) { return Scalar(Rational(p, q)); }

    const Rational& rat_part() const { return rat_; }
    const Rational& root3_part() const { return root3_; }
    bool is_rational() const { return root3_ == 0; }

    /// Exact sign. When the parts have opposite signs the magnitudes are
    /// compared through a^2 versus 3 b^2.
    int sign() const {
        const int sa = rat_.sign();
        const int sb = root3_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        const Rational a2 = rat_ * rat_;
        const Rational b2 = root3_ * root3_ * 3;
        if (a2 > b2) return sa;
        if (a2 < b2) return sb;
        return 0;  // unreachable: 3 is not a rational square
    }
    bool is_zero() const { return rat_ == 0 && root3_ == 0; }

    Scalar operator-() const { return Scalar(-rat_, -root3_); }

    Scalar& operator+=(const Scalar& o) {
        rat_ += o.rat_;
        root3_ += o.root3_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        rat_ -= o.rat_;
        root3_ -= o.root3_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (o.root3_ == 0) {
            rat_ *= o.rat_;
            root3_ *= o.rat_;
            return *this;
        }
        Rational a = rat_ * o.rat_ + root3_ * o.root3_ * 3;
        Rational b = rat_ * o.root3_ + root3_ * o.rat_;
        rat_ = std::move(a);
        root3_ = std::move(b);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw std::domain_error("Scalar division by zero");
        if (o.root3_ == 0) {
            rat_ /= o.rat_;
            root3_ /= o.rat_;
            return *this;
        }
        // multiply by the conjugate: (c - d sqrt3) / (c^2 - 3 d^2)
        const Rational norm = o.rat_ * o.rat_ - o.root3_ * o.root3_ * 3;
        *this *= Scalar(o.rat_ / norm, -o.root3_ / norm);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.rat_ == b.rat_ && a.root3_ == b.root3_;
    }
    /// Numeric order (not the storage order).
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        const int s = (a - b).sign();
        return s < 0 ? std::strong_ordering::less
                     : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    double to_double() const {
        return rat_.convert_to<double>() + root3_.convert_to<double>() * 1.7320508075688772;
    }

    /// "p/q" when rational, otherwise "p/q+r/s*sqrt3".
    std::string str() const {
        if (root3_ == 0) return rat_.str();
        std::string out;
        if (rat_ != 0) out = rat_.str() + (root3_.sign() > 0 ? "+" : "");
        return out + root3_.str() + "*sqrt3";
    }

private:
    Rational rat_{0};
    Rational root3_{0};
};

inline int scalar_sign(const Scalar& s) { return s.sign(); }

/// Storage order on the canonical parts; cheaper than numeric order and
/// only meant for keying maps by exact values.
struct ScalarKeyLess {
    bool operator()(const Scalar& a, const Scalar& b) const {
        if (a.rat_part() != b.rat_part()) return a.rat_part() < b.rat_part();
        return a.root3_part() < b.root3_part();
    }
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses an integer "12", "-7" or a fraction "p/q". Whitespace is not
/// accepted and a zero denominator is an error.
inline Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto to_int = [](std::string_view s) {
        if (s[0] == '+') s.remove_prefix(1);
        return Integer(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw ParseError("malformed rational '" + std::string(text) + "'");
        return Rational(to_int(text));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer d = to_int(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(to_int(num), d);
}

}  // namespace racdraw
