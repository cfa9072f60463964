#pragma once

// Exact predicates for eigenvectors and singular tuples, and decision procedures for
// matrices having a singular pair (v, w) with v in a given line.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "exactlin.hpp"
#include "field.hpp"

namespace kalman {

/// Singular pair of a matrix A: A w = lambda1 v, A^t v = lambda2 w, v != 0, w != 0.
/// Only constructible through certify(), which checks the equations exactly.
template <ExactField F>
class SingularPair {
public:
    static SingularPair certify(const Matrix<F>& a, Vector<F> v, Vector<F> w, F lambda1, F lambda2) {
        if (!verifies(a, v, w, lambda1, lambda2))
            throw CertificationError("singular pair failed exact certification");
        return SingularPair(std::move(v), std::move(w), std::move(lambda1), std::move(lambda2));
    }

    static bool verifies(const Matrix<F>& a, const Vector<F>& v, const Vector<F>& w, const F& lambda1,
                         const F& lambda2) {
        if (v.size() != a.rows() || w.size() != a.cols())
            return false;
        if (is_zero_vector(v) || is_zero_vector(w))
            return false;
        return a * w == scale(lambda1, v) && a.transpose() * v == scale(lambda2, w);
    }

    bool verifies(const Matrix<F>& a) const { return verifies(a, v_, w_, lambda1_, lambda2_); }

    const Vector<F>& v() const { return v_; }
    const Vector<F>& w() const { return w_; }
    const F& lambda1() const { return lambda1_; }
    const F& lambda2() const { return lambda2_; }

private:
    SingularPair(Vector<F> v, Vector<F> w, F l1, F l2)
        : v_(std::move(v)), w_(std::move(w)), lambda1_(std::move(l1)), lambda2_(std::move(l2)) {}

    Vector<F> v_, w_;
    F lambda1_, lambda2_;
};

/// Homogeneous polynomial f(x_1..x_n) of degree k stored by sorted 0-based index multisets:
/// the key (i_1 <= ... <= i_k) carries the coefficient of x_{i_1} ... x_{i_k}.
template <ExactField F>
class SymmetricTensor {
public:
    using Key = std::vector<unsigned>;

    SymmetricTensor(unsigned n, unsigned order) : n_(n), order_(order) {
        if (n < 1 || order < 1)
            throw ParameterError("symmetric tensor: need n >= 1 and order >= 1");
    }

    /// Adds c to the coefficient of the monomial x_{indices...}; indices may be unsorted.
    void add_term(Key indices, const F& c) {
        if (indices.size() != order_)
            throw ParameterError("symmetric tensor: monomial degree differs from order");
        for (auto i : indices)
            if (i >= n_)
                throw ParameterError("symmetric tensor: index out of range");
        std::sort(indices.begin(), indices.end());
        auto& slot = coeffs_[indices];
        slot = slot + c;
        if (is_zero(slot))
            coeffs_.erase(indices);
    }

    unsigned n() const { return n_; }
    unsigned order() const { return order_; }
    const std::map<Key, F>& coefficients() const { return coeffs_; }

    F evaluate(const Vector<F>& x) const {
        check(x);
        F total(0);
        for (const auto& [key, c] : coeffs_) {
            F t = c;
            for (auto i : key)
                t = t * x[i];
            total = total + t;
        }
        return total;
    }

    /// Exact gradient of f at x.
    Vector<F> gradient(const Vector<F>& x) const {
        check(x);
        Vector<F> g(n_, F(0));
        for (const auto& [key, c] : coeffs_) {
            // d/dx_j of x^key: multiplicity of j times x^{key - e_j}.
            for (std::size_t pos = 0; pos < key.size(); ++pos) {
                if (pos > 0 && key[pos] == key[pos - 1])
                    continue;
                const unsigned j = key[pos];
                const auto mult = static_cast<int>(std::count(key.begin(), key.end(), j));
                F t = c * F(mult);
                bool skipped = false;
                for (auto i : key) {
                    if (i == j && !skipped) {
                        skipped = true;
                        continue;
                    }
                    t = t * x[i];
                }
                g[j] = g[j] + t;
            }
        }
        return g;
    }

private:
    void check(const Vector<F>& x) const {
        if (x.size() != n_)
            throw ParameterError("symmetric tensor: vector length differs from n");
    }

    unsigned n_, order_;
    std::map<Key, F> coeffs_;
};

/// Dense tensor in K^{n_1} x ... x K^{n_k}, row-major (last index fastest).
template <ExactField F>
class DenseTensor {
public:
    DenseTensor(std::vector<unsigned> dims, std::vector<F> entries)
        : dims_(std::move(dims)), entries_(std::move(entries)) {
        if (dims_.empty())
            throw ParameterError("dense tensor: need at least one factor");
        std::size_t total = 1;
        for (auto d : dims_) {
            if (d < 1)
                throw ParameterError("dense tensor: dimensions must be >= 1");
            total *= d;
        }
        if (entries_.size() != total)
            throw ParameterError("dense tensor: entry count differs from product of dims");
    }

    explicit DenseTensor(std::vector<unsigned> dims)
        : DenseTensor(dims, std::vector<F>(product(dims), F(0))) {}

    const std::vector<unsigned>& dims() const { return dims_; }
    std::size_t order() const { return dims_.size(); }

    const F& at(const std::vector<unsigned>& idx) const { return entries_[offset(idx)]; }
    F& at(const std::vector<unsigned>& idx) { return entries_[offset(idx)]; }

    /// T(v_1, ..., omit slot, ..., v_k): contraction against every vector except slot.
    Vector<F> contract_except(const std::vector<Vector<F>>& vs, std::size_t slot) const {
        if (vs.size() != dims_.size() || slot >= dims_.size())
            throw ParameterError("dense tensor: wrong number of vectors");
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (vs[i].size() != dims_[i])
                throw ParameterError("dense tensor: vector length differs from factor dimension");
        Vector<F> out(dims_[slot], F(0));
        std::vector<unsigned> idx(dims_.size(), 0);
        for (std::size_t flat = 0; flat < entries_.size(); ++flat) {
            if (!is_zero(entries_[flat])) {
                F t = entries_[flat];
                for (std::size_t i = 0; i < idx.size() && !is_zero(t); ++i)
                    if (i != slot)
                        t = t * vs[i][idx[i]];
                out[idx[slot]] = out[idx[slot]] + t;
            }
            for (std::size_t i = idx.size(); i-- > 0;) {
                if (++idx[i] < dims_[i])
                    break;
                idx[i] = 0;
            }
        }
        return out;
    }

private:
    static std::size_t product(const std::vector<unsigned>& dims) {
        std::size_t p = 1;
        for (auto d : dims)
            p *= d;
        return p;
    }

    std::size_t offset(const std::vector<unsigned>& idx) const {
        if (idx.size() != dims_.size())
            throw ParameterError("dense tensor: wrong index arity");
        std::size_t off = 0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= dims_[i])
                throw ParameterError("dense tensor: index out of range");
            off = off * dims_[i] + idx[i];
        }
        return off;
    }

    std::vector<unsigned> dims_;
    std::vector<F> entries_;
};

template <ExactField F>
struct EigenDecision {
    bool eigenvector = false;
    std::optional<F> lambda; // grad f(v) = k * lambda * v
};

/// v is an eigenvector of f iff grad f(v) is a multiple of v.
template <ExactField F>
EigenDecision<F> is_eigenvector(const SymmetricTensor<F>& f, const Vector<F>& v) {
    if (v.size() != f.n())
        throw ParameterError("is_eigenvector: dimension mismatch");
    if (is_zero_vector(v))
        throw ParameterError("is_eigenvector: v must be nonzero");
    const auto factor = proportionality_factor(f.gradient(v), v);
    if (!factor)
        return {false, std::nullopt};
    return {true, *factor / F(static_cast<int>(f.order()))};
}

template <ExactField F>
struct TupleDecision {
    bool singular = false;
    std::vector<F> lambdas; // one per slot, when singular
};

/// (v_1..v_k) is a singular tuple iff T(v_1, .., ^v_i, .., v_k) = lambda_i v_i for all i.
template <ExactField F>
TupleDecision<F> is_singular_tuple(const DenseTensor<F>& t, const std::vector<Vector<F>>& tuple) {
    if (tuple.size() != t.order())
        throw ParameterError("is_singular_tuple: tuple length differs from tensor order");
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i].size() != t.dims()[i])
            throw ParameterError("is_singular_tuple: dimension mismatch in slot " + std::to_string(i));
        if (is_zero_vector(tuple[i]))
            throw ParameterError("is_singular_tuple: zero vector in slot " + std::to_string(i));
    }
    TupleDecision<F> out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        const auto factor = proportionality_factor(t.contract_except(tuple, i), tuple[i]);
        if (!factor)
            return {false, {}};
        out.lambdas.push_back(*factor);
    }
    out.singular = true;
    return out;
}

/// For a certified pair, mu = lambda1 * lambda2 with A A^t v = mu v.
template <ExactField F>
F lemma_eig_forward(const Matrix<F>& a, const SingularPair<F>& pair) {
    if (!pair.verifies(a))
        throw CertificationError("lemma_eig_forward: pair does not certify for this matrix");
    const F mu = pair.lambda1() * pair.lambda2();
    if (a * (a.transpose() * pair.v()) != scale(mu, pair.v()))
        throw CertificationError("lemma_eig_forward: A A^t v != lambda1 lambda2 v");
    return mu;
}

/// Builds a singular pair from an eigenvector v of A A^t (eigenvalue mu), for n <= m.
/// w = A^t v with (lambda1, lambda2) = (mu, 1) when A^t v != 0; otherwise any kernel
/// vector of A with both lambdas zero.
template <ExactField F>
SingularPair<F> lemma_eig_converse(const Matrix<F>& a, const Vector<F>& v, const F& mu) {
    if (a.rows() > a.cols())
        throw ParameterError("lemma_eig_converse: requires n <= m");
    if (v.size() != a.rows())
        throw ParameterError("lemma_eig_converse: dimension mismatch");
    if (is_zero_vector(v))
        throw ParameterError("lemma_eig_converse: v must be nonzero");
    const auto at = a.transpose();
    const auto atv = at * v;
    if (a * atv != scale(mu, v))
        throw ParameterError("lemma_eig_converse: v is not an eigenvector of A A^t for mu");
    if (!is_zero_vector(atv))
        return SingularPair<F>::certify(a, v, atv, mu, F(1));
    const auto ker = kernel_basis(a);
    if (ker.empty())
        throw CertificationError("lemma_eig_converse: kernel of A unexpectedly zero");
    return SingularPair<F>::certify(a, v, ker.front(), F(0), F(0));
}

template <ExactField F>
struct PairDecision {
    bool exists = false;
    std::optional<SingularPair<F>> witness;
};

/// Whether A has a singular pair (v, w) with v in span(v0), by exact case analysis.
template <ExactField F>
PairDecision<F> decide_pair_in_line(const Matrix<F>& a, const Vector<F>& v0) {
    if (v0.size() != a.rows())
        throw ParameterError("decide_pair_in_line: dimension mismatch");
    if (is_zero_vector(v0))
        throw ParameterError("decide_pair_in_line: v0 must be nonzero");
    const auto atv = a.transpose() * v0;
    if (!is_zero_vector(atv)) {
        // lambda2 != 0 forces w proportional to A^t v0, then A A^t v0 must lie on the line.
        const auto mu = proportionality_factor(a * atv, v0);
        if (!mu)
            return {false, std::nullopt};
        return {true, SingularPair<F>::certify(a, v0, atv, *mu, F(1))};
    }
    // A^t v0 = 0 forces lambda2 = 0; need w != 0 with A w in span(v0).
    const auto ker = kernel_basis(a);
    if (!ker.empty())
        return {true, SingularPair<F>::certify(a, v0, ker.front(), F(0), F(0))};
    std::vector<Vector<F>> cols;
    for (std::size_t j = 0; j < a.cols(); ++j)
        cols.push_back(a.column(j));
    const auto sol = in_span(v0, cols);
    if (!sol.member)
        return {false, std::nullopt};
    return {true, SingularPair<F>::certify(a, v0, sol.coefficients, F(1), F(0))};
}

/// (n-1) x n matrix whose kernel is exactly span(v0): rows span the annihilator of v0.
template <ExactField F>
Matrix<F> line_annihilator(const Vector<F>& v0) {
    if (is_zero_vector(v0))
        throw ParameterError("line_annihilator: v0 must be nonzero");
    Matrix<F> row(1, v0.size());
    for (std::size_t j = 0; j < v0.size(); ++j)
        row(0, j) = v0[j];
    return Matrix<F>::from_rows(kernel_basis(row), v0.size());
}

/// The matrix criterion for d = 1: C (A A^t) v0 = 0 and rank(C A) <= m - 1, where C has
/// kernel span(v0). C defaults to line_annihilator(v0).
template <ExactField F>
bool decide_pair_in_line_proposition(const Matrix<F>& a, const Vector<F>& v0,
                                     const std::optional<Matrix<F>>& c_override = std::nullopt) {
    if (v0.size() != a.rows())
        throw ParameterError("decide_pair_in_line_proposition: dimension mismatch");
    if (is_zero_vector(v0))
        throw ParameterError("decide_pair_in_line_proposition: v0 must be nonzero");
    const Matrix<F> c = c_override ? *c_override : line_annihilator(v0);
    if (c.cols() != a.rows() || c.rows() + 1 != a.rows() || !is_zero_vector(c * v0) ||
        rank(c) + 1 != a.rows())
        throw ParameterError("decide_pair_in_line_proposition: C must have kernel span(v0)");
    const auto at = a.transpose();
    if (c.rows() > 0 && !is_zero_vector(c * (a * (at * v0))))
        return false;
    return c.rows() == 0 || rank(c * a) + 1 <= a.cols();
}

template <ExactField F>
struct EqualLambdaDecision {
    bool exists = false;               // over an algebraically closed field containing Q(i)
    bool needs_square_root = false;    // exists, but the rescaling t = mu^{-1/2} is not in the field
    std::optional<SingularPair<F>> witness; // exact witness with lambda1 == lambda2, when in the field
    std::optional<F> mu;               // A A^t v0 = mu v0 when A^t v0 != 0 and v0 is an eigenvector
};

/// Whether A has a singular pair (v, w), v in span(v0), with lambda1 = lambda2.
/// Rescaling w by t turns (mu, 1) into (t mu, 1/t), so equality needs t^2 mu = 1.
template <ExactField F>
EqualLambdaDecision<F> decide_equal_lambda_pair_in_line(const Matrix<F>& a, const Vector<F>& v0) {
    if (v0.size() != a.rows())
        throw ParameterError("decide_equal_lambda_pair_in_line: dimension mismatch");
    if (is_zero_vector(v0))
        throw ParameterError("decide_equal_lambda_pair_in_line: v0 must be nonzero");
    EqualLambdaDecision<F> out;
    const auto atv = a.transpose() * v0;
    if (is_zero_vector(atv)) {
        const auto ker = kernel_basis(a);
        if (!ker.empty()) {
            out.exists = true;
            out.witness = SingularPair<F>::certify(a, v0, ker.front(), F(0), F(0));
        }
        return out;
    }
    out.mu = proportionality_factor(a * atv, v0);
    if (!out.mu || is_zero(*out.mu))
        return out;
    out.exists = true;
    std::optional<F> root;
    if constexpr (is_gaussian_v<F>)
        root = gaussian_sqrt(*out.mu);
    else
        root = rational_sqrt(*out.mu);
    if (!root) {
        out.needs_square_root = true;
        return out;
    }
    const F t = F(1) / *root;
    out.witness = SingularPair<F>::certify(a, v0, scale(t, atv), t * *out.mu, F(1) / t);
    return out;
}

} // namespace kalman
