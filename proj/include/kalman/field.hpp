#pragma once

// Exact scalar fields: the rationals Q and the Gaussian rationals Q(i).

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "bigint.hpp"
#include "errors.hpp"

namespace kalman {

using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

/// Parse "p", "p/q" or "-p/q" exactly. The result is reduced with positive denominator.
inline Rational parse_rational(std::string_view s) {
    auto trim = [](std::string_view t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '\t'))
            t.remove_prefix(1);
        while (!t.empty() && (t.back() == ' ' || t.back() == '\t'))
            t.remove_suffix(1);
        return t;
    };
    auto parse_int = [](std::string_view t) {
        if (t.empty())
            throw ParseError("empty integer");
        std::size_t i = (t.front() == '-' || t.front() == '+') ? 1 : 0;
        if (i == t.size())
            throw ParseError("bad integer '" + std::string(t) + "'");
        for (std::size_t j = i; j < t.size(); ++j)
            if (t[j] < '0' || t[j] > '9')
                throw ParseError("bad integer '" + std::string(t) + "'");
        return BigInt(std::string(t.front() == '+' ? t.substr(1) : t));
    };
    s = trim(s);
    const auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(s));
    const BigInt num = parse_int(trim(s.substr(0, slash)));
    const BigInt den = parse_int(trim(s.substr(slash + 1)));
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
}

inline std::string to_string(const Rational& x) {
    const auto num = boost::multiprecision::numerator(x);
    const auto den = boost::multiprecision::denominator(x);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

/// Exact square root in Q, if one exists.
inline std::optional<Rational> rational_sqrt(const Rational& x) {
    if (x < 0)
        return std::nullopt;
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    const BigInt sn = boost::multiprecision::sqrt(num);
    const BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den)
        return std::nullopt;
    return Rational(sn, sd);
}

/// a + b i with a, b rational.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(int re) : re_(re) {}
    GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        const Rational n = b.norm();
        if (n.is_zero())
            throw ArithmeticError("division by zero in Q(i)");
        const GaussianRational t = a * b.conj();
        return {t.re_ / n, t.im_ / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational&, const GaussianRational&) = default;

private:
    Rational re_{0};
    Rational im_{0};
};

inline bool is_zero(const GaussianRational& x) { return x.re().is_zero() && x.im().is_zero(); }

inline std::string to_string(const GaussianRational& x) {
    if (x.im().is_zero())
        return to_string(x.re());
    const std::string im = x.im() == 1 ? "i" : x.im() == -1 ? "-i" : to_string(x.im()) + "*i";
    if (x.re().is_zero())
        return im;
    return to_string(x.re()) + (x.im() < 0 ? " - " : " + ") +
           (x.im() < 0 ? to_string(GaussianRational(0, -x.im())) : im);
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << to_string(x); }

/// Exact square root in Q(i), if one exists.
inline std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
    const Rational& a = z.re();
    const Rational& b = z.im();
    if (b.is_zero()) {
        if (a >= 0) {
            if (auto s = rational_sqrt(a))
                return GaussianRational(*s);
            return std::nullopt;
        }
        if (auto s = rational_sqrt(-a))
            return GaussianRational(Rational(0), *s);
        return std::nullopt;
    }
    // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|) / 2, y = b / (2x).
    const auto r = rational_sqrt(z.norm());
    if (!r)
        return std::nullopt;
    const auto x = rational_sqrt((a + *r) / 2);
    if (!x || x->is_zero())
        return std::nullopt;
    return GaussianRational(*x, b / (2 * *x));
}

/// Field element types usable by the exact linear algebra templates.
template <class F>
concept ExactField = requires(const F& a, const F& b) {
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { is_zero(a) } -> std::convertible_to<bool>;
    F(0);
    F(1);
};

template <class F>
inline constexpr bool is_gaussian_v = std::is_same_v<F, GaussianRational>;

} // namespace kalman
