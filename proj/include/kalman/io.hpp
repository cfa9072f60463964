#pragma once

// JSON input/output for exact matrices, vectors and tensors.
//
// Scalars: a string "p/q" (or "p"), a JSON integer, or a two-element array [re, im] of
// such values for a Gaussian rational. Matrices: array of rows. Dense tensors:
// {"dims": [n_1, ..., n_k], "entries": [...]} with entries in row-major order.
// Symmetric tensors: {"n": n, "order": k, "terms": [{"indices": [i_1..i_k], "coeff": c}]}
// with 1-based indices, each term adding c * x_{i_1} ... x_{i_k}.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "errors.hpp"
#include "exactlin.hpp"
#include "field.hpp"
#include "pairs.hpp"

namespace kalman::io {

using json = nlohmann::json;

using AnyMatrix = std::variant<Matrix<Rational>, Matrix<GaussianRational>>;
using AnyVector = std::variant<Vector<Rational>, Vector<GaussianRational>>;

inline bool is_complex_entry(const json& j) { return j.is_array(); }

inline Rational parse_rational_json(const json& j) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(BigInt(j.dump()));
    throw ParseError("expected rational as string \"p/q\" or integer, got " + j.dump());
}

inline GaussianRational parse_gaussian_json(const json& j) {
    if (!j.is_array())
        return GaussianRational(parse_rational_json(j));
    if (j.size() != 2)
        throw ParseError("complex entry must be [re, im], got " + j.dump());
    return GaussianRational(parse_rational_json(j[0]), parse_rational_json(j[1]));
}

template <ExactField F>
F parse_scalar_json(const json& j) {
    if constexpr (is_gaussian_v<F>)
        return parse_gaussian_json(j);
    else
        return parse_rational_json(j);
}

inline json to_json(const Rational& x) { return to_string(x); }
inline json to_json(const GaussianRational& x) { return json::array({to_string(x.re()), to_string(x.im())}); }

template <ExactField F>
json to_json(const Vector<F>& v) {
    json out = json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

template <ExactField F>
json to_json(const Matrix<F>& a) {
    json out = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i)
        out.push_back(to_json(a.row(i)));
    return out;
}

namespace detail {

inline bool any_complex(const json& j) {
    if (!j.is_array())
        return false;
    for (const auto& x : j)
        if (is_complex_entry(x))
            return true;
    return false;
}

template <ExactField F>
Matrix<F> matrix_from_json(const json& j) {
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    Matrix<F> a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c)
            a(r, c) = parse_scalar_json<F>(j[r][c]);
    }
    return a;
}

} // namespace detail

/// Parses an array-of-arrays matrix. Any [re, im] entry makes the whole matrix Gaussian.
inline AnyMatrix parse_matrix(const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty())
        throw ParseError("matrix must be a nonempty array of nonempty rows");
    bool complex = false;
    for (const auto& row : j) {
        if (!row.is_array())
            throw ParseError("matrix rows must be arrays");
        complex = complex || detail::any_complex(row);
    }
    if (complex)
        return detail::matrix_from_json<GaussianRational>(j);
    return detail::matrix_from_json<Rational>(j);
}

template <ExactField F>
Vector<F> parse_vector(const json& j) {
    if (!j.is_array())
        throw ParseError("vector must be an array");
    Vector<F> v;
    for (const auto& x : j)
        v.push_back(parse_scalar_json<F>(x));
    return v;
}

inline AnyVector parse_any_vector(const json& j) {
    if (detail::any_complex(j))
        return parse_vector<GaussianRational>(j);
    return parse_vector<Rational>(j);
}

/// Comma-separated rationals, e.g. "1,0,-1/2".
inline Vector<Rational> parse_vector_list(const std::string& s) {
    Vector<Rational> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        v.push_back(parse_rational(item));
    if (v.empty())
        throw ParseError("empty vector");
    return v;
}

inline Vector<GaussianRational> promote(const Vector<Rational>& v) {
    Vector<GaussianRational> out;
    for (const auto& x : v)
        out.emplace_back(x);
    return out;
}

inline Matrix<GaussianRational> promote(const Matrix<Rational>& a) {
    Matrix<GaussianRational> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = GaussianRational(a(i, j));
    return out;
}

template <ExactField F>
DenseTensor<F> parse_dense_tensor(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("entries"))
        throw ParseError("dense tensor needs \"dims\" and \"entries\"");
    std::vector<unsigned> dims;
    for (const auto& d : j.at("dims")) {
        if (!d.is_number_unsigned() || d.get<unsigned>() < 1)
            throw ParseError("tensor dims must be positive integers");
        dims.push_back(d.get<unsigned>());
    }
    std::vector<F> entries;
    for (const auto& e : j.at("entries"))
        entries.push_back(parse_scalar_json<F>(e));
    try {
        return DenseTensor<F>(std::move(dims), std::move(entries));
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    }
}

template <ExactField F>
SymmetricTensor<F> parse_symmetric_tensor(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("order") || !j.contains("terms"))
        throw ParseError("symmetric tensor needs \"n\", \"order\" and \"terms\"");
    const auto n = j.at("n").get<unsigned>();
    const auto k = j.at("order").get<unsigned>();
    try {
        SymmetricTensor<F> f(n, k);
        for (const auto& t : j.at("terms")) {
            std::vector<unsigned> idx;
            for (const auto& i : t.at("indices")) {
                const auto one_based = i.get<unsigned>();
                if (one_based < 1)
                    throw ParseError("symmetric tensor indices are 1-based");
                idx.push_back(one_based - 1);
            }
            f.add_term(std::move(idx), parse_scalar_json<F>(t.at("coeff")));
        }
        return f;
    } catch (const ParameterError& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace kalman::io
