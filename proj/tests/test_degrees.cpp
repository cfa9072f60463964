#include <gtest/gtest.h>

#include "kalman/degrees.hpp"
#include "oracle.hpp"

using namespace kalman;

TEST(SymmetricClosed, Examples) {
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned k = 2; k <= 5; ++k)
            EXPECT_EQ(symmetric_degree_closed(1, n, k), 1);
    EXPECT_EQ(symmetric_degree_closed(3, 3, 3), 7);
    EXPECT_EQ(symmetric_degree_closed(2, 3, 3), 5);
    EXPECT_EQ(symmetric_degree_closed(2, 3, 3), oracle::symmetric_degree_expansion(2, 3, 3));
}

TEST(SymmetricClosed, RejectsBadRanges) {
    EXPECT_THROW(symmetric_degree_closed(0, 3, 3), ParameterError);
    EXPECT_THROW(symmetric_degree_closed(4, 3, 3), ParameterError);
    EXPECT_THROW(symmetric_degree_closed(1, 3, 1), ParameterError);
}

TEST(SymmetricClosed, MatchesExpansionOracle) {
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned d = 1; d <= n; ++d)
            for (unsigned k = 2; k <= 5; ++k)
                EXPECT_EQ(symmetric_degree_closed(d, n, k), oracle::symmetric_degree_expansion(d, n, k))
                    << d << " " << n << " " << k;
}

TEST(SymmetricClosed, HockeyStickAtOrderTwo) {
    // k = 2: sum_{i<d} C(n-d+i, i) = C(n, d-1)
    for (unsigned n = 1; n <= 12; ++n)
        for (unsigned d = 1; d <= n; ++d)
            EXPECT_EQ(symmetric_degree_closed(d, n, 2), binomial(n, d - 1));
}

TEST(SymmetricClosed, FullSubspaceIsEigenvectorCount) {
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned k = 2; k <= 7; ++k)
            EXPECT_EQ(symmetric_degree_closed(n, n, k), eigenvector_count(n, k));
}

TEST(MatrixClosed, Examples) {
    EXPECT_EQ(matrix_degree_closed(2, 4, 3), 13);
    EXPECT_EQ(matrix_degree_closed(1, 3, 3), 4);
    EXPECT_EQ(matrix_degree_closed(3, 4, 3), 9);
    EXPECT_THROW(matrix_degree_closed(0, 3, 3), ParameterError);
    EXPECT_THROW(matrix_degree_closed(4, 3, 3), ParameterError);
}

TEST(MatrixSquare, Examples) {
    EXPECT_EQ(matrix_degree_square(2, 3), 6);
    EXPECT_EQ(matrix_degree_square(1, 2), 2);
    for (unsigned n = 1; n <= 10; ++n)
        EXPECT_EQ(matrix_degree_square(n, n), n);
}

TEST(MatrixClosed, EqualsSquareFormWhenNAtMostM) {
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned m = n; m <= n + 5; ++m)
            for (unsigned d = 1; d <= n; ++d)
                EXPECT_EQ(matrix_degree_closed(d, n, m), matrix_degree_square(d, n)) << d << " " << n << " " << m;
}

TEST(MatrixClosed, PositiveAndMonotoneInM) {
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned d = 1; d <= n; ++d)
            for (unsigned m = 1; m <= 10; ++m) {
                EXPECT_GE(matrix_degree_closed(d, n, m), 1);
                EXPECT_LE(matrix_degree_closed(d, n, m), matrix_degree_closed(d, n, m + 1));
            }
}

TEST(EigenvectorCount, Examples) {
    EXPECT_EQ(eigenvector_count(3, 3), 7);
    EXPECT_EQ(eigenvector_count(5, 2), 5);
    for (unsigned k = 2; k <= 8; ++k)
        EXPECT_EQ(eigenvector_count(1, k), 1);
    EXPECT_THROW(eigenvector_count(0, 3), ParameterError);
    EXPECT_THROW(eigenvector_count(3, 1), ParameterError);
}

TEST(EigenvectorCount, GeometricCollapse) {
    // ((k-1)^n - 1) / (k-2) = sum_{i<n} (k-1)^i
    for (unsigned n = 1; n <= 12; ++n)
        for (unsigned k = 3; k <= 9; ++k) {
            BigInt s = 0;
            for (unsigned i = 0; i < n; ++i)
                s += ipow(BigInt(k - 1), i);
            EXPECT_EQ(eigenvector_count(n, k), s);
        }
}

TEST(EigenvectorCount, LargeValuesStayExact) {
    // 3^40 exceeds 2^63
    EXPECT_EQ(to_string(eigenvector_count(40, 4)), "6078832729528464400");
    EXPECT_EQ(eigenvector_count(60, 5), (ipow(BigInt(4), 60) - 1) / 3);
}

TEST(SingularTupleCount, Examples) {
    for (unsigned n = 1; n <= 6; ++n)
        EXPECT_EQ(singular_tuple_count({n, n}), n);
    EXPECT_EQ(singular_tuple_count({2, 2, 2}), 6);
    for (unsigned n = 1; n <= 5; ++n)
        for (unsigned m = n; m <= 7; ++m) {
            EXPECT_EQ(singular_tuple_count({n, m}), n);
            EXPECT_EQ(singular_tuple_count({n, m}), matrix_degree_closed(n, n, m));
        }
    EXPECT_THROW(singular_tuple_count({}), ParameterError);
}
