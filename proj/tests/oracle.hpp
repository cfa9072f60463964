#pragma once

// Test-only oracles. Nothing here uses the truncated ring or the degree routes: polynomials are
// expanded without truncation in a plain std::map, so agreement with the library is meaningful.

#include <map>
#include <vector>

#include "kalman/bigint.hpp"

namespace oracle {

using kalman::BigInt;
using Exps = std::vector<unsigned>;

struct Poly {
    std::size_t nvars = 0;
    std::map<Exps, BigInt> terms;

    explicit Poly(std::size_t n) : nvars(n) {}

    static Poly constant(std::size_t n, const BigInt& c) {
        Poly p(n);
        if (c != 0)
            p.terms[Exps(n, 0)] = c;
        return p;
    }
    static Poly var(std::size_t n, std::size_t i, const BigInt& c = 1) {
        Poly p(n);
        Exps e(n, 0);
        e[i] = 1;
        p.terms[e] = c;
        return p;
    }

    BigInt coeff(const Exps& e) const {
        auto it = terms.find(e);
        return it == terms.end() ? BigInt(0) : it->second;
    }

    friend Poly operator+(Poly a, const Poly& b) {
        for (const auto& [e, c] : b.terms) {
            a.terms[e] += c;
            if (a.terms[e] == 0)
                a.terms.erase(e);
        }
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.nvars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                Exps e(a.nvars);
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.terms[e] += ca * cb;
            }
        for (auto it = r.terms.begin(); it != r.terms.end();)
            it = it->second == 0 ? r.terms.erase(it) : std::next(it);
        return r;
    }

    Poly pow(unsigned k) const {
        Poly r = constant(nvars, 1);
        for (unsigned i = 0; i < k; ++i)
            r = r * *this;
        return r;
    }

    /// Drop every term with some exponent >= caps[i].
    Poly truncate(const Exps& caps) const {
        Poly r(nvars);
        for (const auto& [e, c] : terms) {
            bool keep = true;
            for (std::size_t i = 0; i < e.size(); ++i)
                keep = keep && e[i] < caps[i];
            if (keep)
                r.terms[e] = c;
        }
        return r;
    }

    Poly drop_above_degree(unsigned deg) const {
        Poly r(nvars);
        for (const auto& [e, c] : terms) {
            unsigned s = 0;
            for (auto x : e)
                s += x;
            if (s <= deg)
                r.terms[e] = c;
        }
        return r;
    }
};

/// Untruncated coefficient of h^{n_1-d} v_1^{d-1} prod_{i>=2} v_i^{n_i-1} in
/// prod_i sum_{j<n_i} (vt_i + h)^{n_i-1-j} v_i^j. Variables: index 0 = h, i+1 = v_{i+1}.
inline BigInt general_degree_expansion(unsigned d, const std::vector<unsigned>& dims) {
    const std::size_t nv = dims.size() + 1;
    Poly product = Poly::constant(nv, 1);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        Poly a = Poly::var(nv, 0);
        for (std::size_t j = 0; j < dims.size(); ++j)
            if (j != i)
                a = a + Poly::var(nv, j + 1);
        const Poly b = Poly::var(nv, i + 1);
        Poly factor(nv);
        for (unsigned j = 0; j < dims[i]; ++j)
            factor = factor + a.pow(dims[i] - 1 - j) * b.pow(j);
        product = product * factor;
    }
    Exps target(nv);
    target[0] = dims[0] - d;
    target[1] = d - 1;
    for (std::size_t i = 1; i < dims.size(); ++i)
        target[i + 1] = dims[i] - 1;
    return product.coeff(target);
}

/// Untruncated coefficient of h^{n-d} v^{d-1} in sum_j ((k-1) v + h)^{n-1-j} v^j.
inline BigInt symmetric_degree_expansion(unsigned d, unsigned n, unsigned k) {
    const Poly a = Poly::var(2, 0) + Poly::var(2, 1, k - 1);
    const Poly b = Poly::var(2, 1);
    Poly sum(2);
    for (unsigned j = 0; j < n; ++j)
        sum = sum + a.pow(n - 1 - j) * b.pow(j);
    return sum.coeff({n - d, d - 1});
}

/// 1 / (1 + u) up to total degree deg, for u without constant term: sum_j (-u)^j.
inline Poly series_inverse(const Poly& u, unsigned deg) {
    const Poly neg = u * Poly::constant(u.nvars, -1);
    Poly sum = Poly::constant(u.nvars, 1);
    Poly p = sum;
    for (unsigned j = 1; j <= deg; ++j) {
        p = (p * neg).drop_above_degree(deg);
        sum = sum + p;
    }
    return sum;
}

} // namespace oracle
