#pragma once

// Degrees of Kalman varieties by coefficient extraction in truncated Chow rings.
//
// General tensors in K^{n_1} x ... x K^{n_k}, subspace L of dimension d in K^{n_1}:
// the degree is the coefficient of h^{n_1-d} v_1^{d-1} prod_{i>=2} v_i^{n_i-1} in
//   prod_i [(vt_i + h)^{n_i} - v_i^{n_i}] / (vt_i + h - v_i),    vt_i = sum_{j != i} v_j,
// or equivalently in the inhomogeneous Chern series prod_i (1+vt_i+h)^{n_i} / (1+vt_i-v_i+h).
// Symmetric tensors of order k on K^n: coefficient of h^{n-d} v^{d-1} in
//   (1+(k-1)v+h)^n / (1+(k-2)v+h).
//
// The homogeneous routes use geom_sum only; the Chern routes use series inversion only.

#include <optional>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "instance.hpp"
#include "ring.hpp"

namespace kalman {

enum class Route { closed_form, chern_series, homogeneous_sum };

inline std::string route_name(Route r) {
    switch (r) {
    case Route::closed_form:
        return "closed";
    case Route::chern_series:
        return "chern";
    case Route::homogeneous_sum:
        return "homogeneous";
    }
    return "?";
}

struct DegreeReport {
    KalmanInstance instance;
    BigInt degree;
    Route route = Route::closed_form;
    RingPtr ring;    // null for closed forms
    Monomial target; // empty for closed forms
};

namespace detail {

// Ring h, v1..vk and the target monomial h^{n_1-d} v_1^{d-1} prod_{i>=2} v_i^{n_i-1}.
// Caps sit one above the target exponents: h^{n_1-d+1}, v_1^d, v_i^{n_i} (i >= 2). Only
// nonnegative exponents ever appear, so a monomial past the target in any variable
// cannot reach the target coefficient.
inline std::pair<RingPtr, Monomial> general_ring(const KalmanInstance& inst) {
    const auto& dims = inst.dims;
    std::vector<std::string> names{"h"};
    std::vector<unsigned> caps{dims.front() - inst.d + 1};
    std::vector<unsigned> target{dims.front() - inst.d};
    for (std::size_t i = 0; i < dims.size(); ++i) {
        names.push_back("v" + std::to_string(i + 1));
        caps.push_back(i == 0 ? inst.d : dims[i]);
        target.push_back(i == 0 ? inst.d - 1 : dims[i] - 1);
    }
    return {make_ring(std::move(names), std::move(caps)), Monomial(std::move(target))};
}

// vt_i + h, the sum of h and every v_j except v_i.
inline TruncatedPolynomial complement_sum(const RingPtr& ring, std::size_t k, std::size_t i) {
    auto p = TruncatedPolynomial::variable(ring, "h");
    for (std::size_t j = 0; j < k; ++j)
        if (j != i)
            p += TruncatedPolynomial::variable(ring, "v" + std::to_string(j + 1));
    return p;
}

// Coefficient of target in the product of factors; the last multiplication is a dot product.
inline BigInt extract(const std::vector<TruncatedPolynomial>& factors, const Monomial& target) {
    auto acc = factors.front();
    for (std::size_t i = 1; i + 1 < factors.size(); ++i)
        acc *= factors[i];
    if (factors.size() == 1)
        return acc.coefficient(target);
    return product_coefficient(acc, factors.back(), target);
}

inline std::pair<RingPtr, Monomial> symmetric_ring(const KalmanInstance& inst) {
    auto ring = make_ring({"h", "v"}, {inst.n - inst.d + 1, inst.n});
    return {ring, Monomial({inst.n - inst.d, inst.d - 1})};
}

} // namespace detail

/// Symmetric degree from the Chern series (1+(k-1)v+h)^n * inverse(1+(k-2)v+h).
inline DegreeReport symmetric_degree_chern(unsigned d, unsigned n, unsigned k) {
    const auto inst = KalmanInstance::symmetric_tensor(d, n, k);
    auto [ring, target] = detail::symmetric_ring(inst);
    const auto one = TruncatedPolynomial::one(ring);
    const auto h = TruncatedPolynomial::variable(ring, "h");
    const auto v = TruncatedPolynomial::variable(ring, "v");
    const auto numer = poly_pow(one + v.scaled(k - 1) + h, n);
    const auto denom = one + v.scaled(BigInt(k) - 2) + h;
    return {inst, product_coefficient(numer, poly_inverse(denom), target), Route::chern_series, ring, target};
}

/// Symmetric degree from the top-degree part sum_j ((k-1)v+h)^{n-1-j} v^j.
inline DegreeReport symmetric_degree_homogeneous(unsigned d, unsigned n, unsigned k) {
    const auto inst = KalmanInstance::symmetric_tensor(d, n, k);
    auto [ring, target] = detail::symmetric_ring(inst);
    const auto h = TruncatedPolynomial::variable(ring, "h");
    const auto v = TruncatedPolynomial::variable(ring, "v");
    const auto sum = geom_sum(v.scaled(k - 1) + h, v, n);
    return {inst, sum.coefficient(target), Route::homogeneous_sum, ring, target};
}

/// General-tensor degree from prod_i geom_sum(vt_i + h, v_i, n_i).
inline DegreeReport general_degree_homogeneous(unsigned d, const std::vector<unsigned>& dims) {
    const auto inst = KalmanInstance::general(d, dims);
    auto [ring, target] = detail::general_ring(inst);
    std::vector<TruncatedPolynomial> factors;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const auto vi = TruncatedPolynomial::variable(ring, "v" + std::to_string(i + 1));
        factors.push_back(geom_sum(detail::complement_sum(ring, dims.size(), i), vi, dims[i]));
    }
    return {inst, detail::extract(factors, target), Route::homogeneous_sum, ring, target};
}

/// General-tensor degree from prod_i (1+vt_i+h)^{n_i} * inverse(1+vt_i-v_i+h).
inline DegreeReport general_degree_chern(unsigned d, const std::vector<unsigned>& dims) {
    const auto inst = KalmanInstance::general(d, dims);
    auto [ring, target] = detail::general_ring(inst);
    const auto one = TruncatedPolynomial::one(ring);
    std::vector<TruncatedPolynomial> factors;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const auto vi = TruncatedPolynomial::variable(ring, "v" + std::to_string(i + 1));
        const auto base = one + detail::complement_sum(ring, dims.size(), i);
        factors.push_back(poly_pow(base, dims[i]));
        factors.push_back(poly_inverse(base - vi));
    }
    return {inst, detail::extract(factors, target), Route::chern_series, ring, target};
}

struct StabilizationReport {
    unsigned d = 1;
    std::vector<unsigned> prefix;
    unsigned boundary = 1; // 1 + sum_i (n_i - 1)
    std::vector<std::pair<unsigned, BigInt>> degrees; // (m, degree) in input order
    bool stabilized = false; // all degrees with m >= boundary coincide
    std::optional<BigInt> stable_degree;
};

/// Degrees of (d; prefix..., m) for each candidate last dimension m.
inline StabilizationReport stabilization_check(unsigned d, const std::vector<unsigned>& prefix,
                                               const std::vector<unsigned>& m_values,
                                               Route route = Route::homogeneous_sum) {
    if (prefix.empty())
        throw ParameterError("stabilization: prefix must be nonempty");
    if (route == Route::closed_form)
        throw ParameterError("stabilization: closed route is not defined for tensors");
    StabilizationReport rep;
    rep.d = d;
    rep.prefix = prefix;
    for (auto ni : prefix) {
        if (ni < 1)
            throw ParameterError("stabilization: dimensions must be >= 1");
        rep.boundary += ni - 1;
    }
    rep.stabilized = true;
    for (auto m : m_values) {
        if (m < 1)
            throw ParameterError("stabilization: m must be >= 1");
        auto dims = prefix;
        dims.push_back(m);
        auto deg = route == Route::chern_series ? general_degree_chern(d, dims).degree
                                                : general_degree_homogeneous(d, dims).degree;
        if (m >= rep.boundary) {
            if (!rep.stable_degree)
                rep.stable_degree = deg;
            else if (*rep.stable_degree != deg)
                rep.stabilized = false;
        }
        rep.degrees.emplace_back(m, std::move(deg));
    }
    return rep;
}

} // namespace kalman
