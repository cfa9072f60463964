#pragma once

// Closed-form degree and count formulas.

#include <algorithm>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "routes.hpp"

namespace kalman {

/// sum_{i=0}^{d-1} C(n-d+i, i) (k-1)^i : degree of the symmetric Kalman variety.
inline BigInt symmetric_degree_closed(unsigned d, unsigned n, unsigned k) {
    KalmanInstance::symmetric_tensor(d, n, k);
    BigInt sum = 0;
    for (unsigned i = 0; i < d; ++i)
        sum += binomial(static_cast<long>(n - d + i), i) * ipow(BigInt(k - 1), i);
    return sum;
}

/// Degree of the Kalman variety of n x m matrices with a singular pair whose first
/// component lies in a d-dimensional subspace:
///   sum_{j=0}^{d-1} sum_{s=d-j-1}^{min(n-j-1, m-1)} C(n-j-1, s) C(s, d-1-j).
inline BigInt matrix_degree_closed(unsigned d, unsigned n, unsigned m) {
    if (d < 1 || d > n)
        throw ParameterError("need 1 <= d <= n");
    if (m < 1)
        throw ParameterError("need m >= 1");
    BigInt sum = 0;
    for (long j = 0; j < static_cast<long>(d); ++j) {
        const long lo = static_cast<long>(d) - j - 1;
        const long hi = std::min<long>(static_cast<long>(n) - j - 1, static_cast<long>(m) - 1);
        for (long s = lo; s <= hi; ++s)
            sum += binomial(static_cast<long>(n) - j - 1, s) * binomial(s, static_cast<long>(d) - 1 - j);
    }
    return sum;
}

/// 2^{n-d} C(n, d-1): the matrix degree when n <= m.
inline BigInt matrix_degree_square(unsigned d, unsigned n) {
    if (d < 1 || d > n)
        throw ParameterError("need 1 <= d <= n");
    return ipow(BigInt(2), n - d) * binomial(n, static_cast<long>(d) - 1);
}

/// Number of eigenvectors of a generic symmetric tensor of order k on K^n:
/// ((k-1)^n - 1) / (k-2), which degenerates to n for k = 2.
inline BigInt eigenvector_count(unsigned n, unsigned k) {
    if (n < 1)
        throw ParameterError("need n >= 1");
    if (k < 2)
        throw ParameterError("need k >= 2");
    if (k == 2)
        return n;
    return exact_div(ipow(BigInt(k - 1), n) - 1, BigInt(k - 2));
}

/// Generic number of singular k-tuples: the Kalman degree with d = n_1.
inline BigInt singular_tuple_count(const std::vector<unsigned>& dims) {
    if (dims.empty())
        throw ParameterError("dims must be nonempty");
    return general_degree_homogeneous(dims.front(), dims).degree;
}

} // namespace kalman
