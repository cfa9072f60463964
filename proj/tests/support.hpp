#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <random>
#include <string>
#include <vector>

#include "kalman/exactlin.hpp"
#include "kalman/ring.hpp"

namespace support {

using namespace kalman;

struct RingCase {
    RingPtr ring;
    std::vector<std::string> names;
    std::vector<unsigned> caps;
};

/// 1..4 variables, "h" first about half the time, caps in [1, 4].
inline RingCase random_ring(std::mt19937& rng) {
    std::uniform_int_distribution<int> nv(1, 4), cap(1, 4), coin(0, 1);
    RingCase rc;
    const int n = nv(rng);
    const bool with_h = coin(rng) == 1;
    for (int i = 0; i < n; ++i) {
        rc.names.push_back(with_h && i == 0 ? "h" : "v" + std::to_string(i + 1));
        rc.caps.push_back(static_cast<unsigned>(cap(rng)));
    }
    rc.ring = make_ring(rc.names, rc.caps);
    return rc;
}

/// Up to max_terms random terms, coefficients in [-5, 5].
inline TruncatedPolynomial random_poly(std::mt19937& rng, const RingPtr& ring, int max_terms = 5) {
    std::uniform_int_distribution<int> nt(0, max_terms), coef(-5, 5);
    auto p = TruncatedPolynomial::zero(ring);
    const int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
        std::vector<unsigned> e(ring->num_vars());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = std::uniform_int_distribution<unsigned>(0, ring->cap(i) - 1)(rng);
        p += TruncatedPolynomial::monomial(ring, Monomial(e), coef(rng));
    }
    return p;
}

/// Random polynomial with constant term +1 or -1.
inline TruncatedPolynomial random_unit(std::mt19937& rng, const RingPtr& ring) {
    auto p = random_poly(rng, ring);
    const BigInt c0 = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    return p - TruncatedPolynomial::constant(ring, p.constant_term()) + TruncatedPolynomial::constant(ring, c0);
}

inline Rational random_rational(std::mt19937& rng, bool fractional = false) {
    std::uniform_int_distribution<int> e(-5, 5), den(1, 3);
    return fractional ? Rational(e(rng), den(rng)) : Rational(e(rng));
}

/// Integer entries in [-5, 5]; with probability 1/3 forced low rank as a product of thin factors.
inline Matrix<Rational> random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    Matrix<Rational> a(rows, cols);
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0 && std::min(rows, cols) > 1) {
        const std::size_t r = std::uniform_int_distribution<std::size_t>(0, std::min(rows, cols) - 1)(rng);
        Matrix<Rational> x(rows, r), y(r, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < r; ++j)
                x(i, j) = random_rational(rng);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                y(i, j) = random_rational(rng);
        return r == 0 ? a : x * y;
    }
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a(i, j) = random_rational(rng);
    return a;
}

inline Vector<Rational> random_nonzero_vector(std::mt19937& rng, std::size_t n) {
    Vector<Rational> v(n);
    do {
        for (auto& x : v)
            x = random_rational(rng);
    } while (is_zero_vector(v));
    return v;
}

/// A (n x m) with an exact eigenvector v of A A^t and its eigenvalue mu.
struct EigenCase {
    Matrix<Rational> a;
    Vector<Rational> v;
    Rational mu;
};

/// A = c v x^t + B with B^t v = 0 and B x = 0, so A A^t v = c^2 |v|^2 |x|^2 v.
/// c = 0 exercises the A^t v = 0 branch.
inline EigenCase random_eigen_case(std::mt19937& rng, std::size_t n, std::size_t m) {
    for (;;) {
        const auto v = random_nonzero_vector(rng, n);
        const auto x = random_nonzero_vector(rng, m);
        Matrix<Rational> b = random_matrix(rng, n, m);
        const Rational xx = [&] { Rational s = 0; for (auto& c : x) s += c * c; return s; }();
        const Rational vv = [&] { Rational s = 0; for (auto& c : v) s += c * c; return s; }();
        if (xx == 0 || vv == 0)
            continue;
        // B <- (I - v v^t / vv) B (I - x x^t / xx)
        Matrix<Rational> pv = Matrix<Rational>::identity(n), px = Matrix<Rational>::identity(m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                pv(i, j) -= v[i] * v[j] / vv;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                px(i, j) -= x[i] * x[j] / xx;
        b = pv * b * px;
        const Rational c = std::uniform_int_distribution<int>(0, 3)(rng);
        Matrix<Rational> a = b;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                a(i, j) += c * v[i] * x[j];
        return {a, v, c * c * vv * xx};
    }
}

} // namespace support
