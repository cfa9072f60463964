#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kalman/degrees.hpp"
#include "kalman/routes.hpp"
#include "oracle.hpp"

using namespace kalman;

namespace {

BigInt hom(unsigned d, std::vector<unsigned> dims) { return general_degree_homogeneous(d, std::move(dims)).degree; }
BigInt chern(unsigned d, std::vector<unsigned> dims) { return general_degree_chern(d, std::move(dims)).degree; }

std::vector<unsigned> range(unsigned lo, unsigned hi) {
    std::vector<unsigned> out;
    for (unsigned m = lo; m <= hi; ++m)
        out.push_back(m);
    return out;
}

} // namespace

TEST(SymmetricChern, Examples) {
    EXPECT_EQ(symmetric_degree_chern(1, 2, 3).degree, 1);
    EXPECT_EQ(symmetric_degree_chern(2, 2, 3).degree, 3);
    EXPECT_EQ(symmetric_degree_chern(2, 2, 3).degree, eigenvector_count(2, 3));
    EXPECT_EQ(symmetric_degree_chern(2, 3, 2).degree, 3);
    EXPECT_EQ(symmetric_degree_chern(2, 3, 2).degree, binomial(3, 1));
}

TEST(SymmetricChern, ReportCarriesRouteAndTarget) {
    const auto r = symmetric_degree_chern(2, 4, 3);
    EXPECT_EQ(r.route, Route::chern_series);
    ASSERT_TRUE(r.ring);
    EXPECT_EQ(r.target, Monomial({2, 1}));
    EXPECT_EQ(r.instance, KalmanInstance::symmetric_tensor(2, 4, 3));
    EXPECT_THROW(symmetric_degree_chern(0, 4, 3), ParameterError);
    EXPECT_THROW(symmetric_degree_chern(5, 4, 3), ParameterError);
    EXPECT_THROW(symmetric_degree_chern(1, 4, 1), ParameterError);
}

TEST(SymmetricChern, AgreesWithClosedFormAndHomogeneous) {
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned d = 1; d <= n; ++d)
            for (unsigned k = 2; k <= 6; ++k) {
                const auto closed = symmetric_degree_closed(d, n, k);
                EXPECT_EQ(symmetric_degree_chern(d, n, k).degree, closed) << d << " " << n << " " << k;
                EXPECT_EQ(symmetric_degree_homogeneous(d, n, k).degree, closed) << d << " " << n << " " << k;
            }
}

TEST(GeneralHomogeneous, Examples) {
    EXPECT_EQ(hom(1, {2, 2}), 2);
    EXPECT_EQ(hom(2, {2, 2, 2}), 6);
    EXPECT_EQ(hom(2, {4, 3}), 13);
    const auto r = general_degree_homogeneous(2, {4, 3});
    EXPECT_EQ(r.route, Route::homogeneous_sum);
    EXPECT_EQ(r.target, Monomial({2, 1, 2}));
}

TEST(GeneralChern, Examples) {
    EXPECT_EQ(chern(1, {2, 2}), 2);
    EXPECT_EQ(chern(1, {3, 3}), 4);
    EXPECT_EQ(chern(3, {4, 2}), 4);
    EXPECT_EQ(general_degree_chern(3, {4, 2}).route, Route::chern_series);
}

TEST(General, RejectsBadRanges) {
    EXPECT_THROW(hom(0, {2, 2}), ParameterError);
    EXPECT_THROW(hom(3, {2, 2}), ParameterError);
    EXPECT_THROW(chern(1, {}), ParameterError);
    EXPECT_THROW(chern(1, {2, 0}), ParameterError);
}

TEST(General, TableValues) {
    const std::vector<std::array<unsigned, 4>> table{{1, 2, 2, 2}, {1, 3, 2, 3}, {2, 3, 2, 4}, {1, 3, 3, 4},
                                                     {2, 3, 3, 6}, {1, 4, 2, 4}, {2, 4, 2, 6}, {3, 4, 2, 4},
                                                     {1, 4, 3, 7}, {2, 4, 3, 13}, {3, 4, 3, 9}};
    for (const auto& [d, n, m, deg] : table) {
        EXPECT_EQ(hom(d, {n, m}), deg);
        EXPECT_EQ(chern(d, {n, m}), deg);
        EXPECT_EQ(matrix_degree_closed(d, n, m), deg);
    }
}

TEST(General, MatrixSpecialization) {
    for (unsigned n = 1; n <= 6; ++n)
        for (unsigned m = 1; m <= 6; ++m)
            for (unsigned d = 1; d <= n; ++d) {
                const auto closed = matrix_degree_closed(d, n, m);
                EXPECT_EQ(hom(d, {n, m}), closed) << d << " " << n << " " << m;
                EXPECT_EQ(chern(d, {n, m}), closed) << d << " " << n << " " << m;
            }
}

TEST(General, MatchesUntruncatedExpansion) {
    const std::vector<std::vector<unsigned>> shapes{{1}, {3}, {2, 3}, {3, 2}, {4, 2}, {2, 2, 2}, {3, 2, 2},
                                                    {2, 3, 2}, {2, 2, 3}, {3, 3, 2}, {2, 2, 2, 2}, {1, 3, 2}};
    for (const auto& dims : shapes)
        for (unsigned d = 1; d <= dims.front(); ++d) {
            const auto expected = oracle::general_degree_expansion(d, dims);
            EXPECT_EQ(hom(d, dims), expected);
            EXPECT_EQ(chern(d, dims), expected);
        }
}

TEST(General, ChernSeriesMatchesUntruncatedSeries) {
    // prod_i (1+vt_i+h)^{n_i} (1+vt_i-v_i+h)^{-1}, expanded without truncation to total degree
    // sum(n_i - 1), then the target coefficient.
    for (const auto& dims : std::vector<std::vector<unsigned>>{{3, 2}, {2, 2, 2}, {3, 3}}) {
        const std::size_t nv = dims.size() + 1;
        unsigned top = 0;
        for (auto ni : dims)
            top += ni - 1;
        oracle::Poly prod = oracle::Poly::constant(nv, 1);
        for (std::size_t i = 0; i < dims.size(); ++i) {
            oracle::Poly vt = oracle::Poly::var(nv, 0);
            for (std::size_t j = 0; j < dims.size(); ++j)
                if (j != i)
                    vt = vt + oracle::Poly::var(nv, j + 1);
            const auto one = oracle::Poly::constant(nv, 1);
            const auto inv = oracle::series_inverse(vt + oracle::Poly::var(nv, i + 1, -1), top);
            prod = (prod * (one + vt).pow(dims[i]) * inv).drop_above_degree(top);
        }
        for (unsigned d = 1; d <= dims.front(); ++d) {
            oracle::Exps target(nv);
            target[0] = dims[0] - d;
            target[1] = d - 1;
            for (std::size_t i = 1; i < dims.size(); ++i)
                target[i + 1] = dims[i] - 1;
            EXPECT_EQ(chern(d, dims), prod.coeff(target));
        }
    }
}

TEST(General, RoutesAgreeOnSmallShapes) {
    std::vector<std::vector<unsigned>> shapes;
    for (unsigned a = 1; a <= 6; ++a)
        for (unsigned b = 1; b <= 6; ++b) {
            shapes.push_back({a, b});
            for (unsigned c = 1; c <= 4; ++c)
                shapes.push_back({a, b, c});
        }
    for (const auto& dims : shapes)
        for (unsigned d = 1; d <= dims.front(); ++d)
            EXPECT_EQ(hom(d, dims), chern(d, dims));
}

TEST(General, SingleFactor) {
    // k = 1: coefficient of h^{n-d} v^{d-1} in sum_j h^{n-1-j} v^j is 1.
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned d = 1; d <= n; ++d) {
            EXPECT_EQ(hom(d, {n}), 1);
            EXPECT_EQ(chern(d, {n}), 1);
        }
}

TEST(General, FullSubspaceIsTupleCount) {
    for (const auto& dims : std::vector<std::vector<unsigned>>{{2, 2}, {3, 5}, {2, 2, 2}, {3, 2, 2}, {2, 3, 4}})
        EXPECT_EQ(hom(dims.front(), dims), singular_tuple_count(dims));
    for (unsigned n = 1; n <= 6; ++n)
        EXPECT_EQ(hom(n, {n, n}), n);
    EXPECT_EQ(hom(2, {2, 2, 2}), 6);
}

TEST(General, FactorOrderIndependence) {
    std::mt19937 rng(5);
    for (const auto& base : std::vector<std::vector<unsigned>>{{3, 2, 4}, {2, 2, 3, 2}, {4, 3, 2}, {3, 1, 2, 3}}) {
        for (unsigned d = 1; d <= base.front(); ++d) {
            const auto ref = hom(d, base);
            auto perm = base;
            for (int t = 0; t < 4; ++t) {
                std::shuffle(perm.begin() + 1, perm.end(), rng);
                EXPECT_EQ(hom(d, perm), ref);
                EXPECT_EQ(chern(d, perm), ref);
            }
        }
    }
}

TEST(Stabilization, Examples) {
    const auto a = stabilization_check(1, {2, 2}, range(3, 7));
    EXPECT_EQ(a.boundary, 3u);
    EXPECT_TRUE(a.stabilized);
    ASSERT_TRUE(a.stable_degree.has_value());
    for (const auto& [m, deg] : a.degrees)
        EXPECT_EQ(deg, *a.stable_degree);

    const auto b = stabilization_check(2, {3}, range(3, 8));
    EXPECT_EQ(b.boundary, 3u);
    EXPECT_TRUE(b.stabilized);
    EXPECT_EQ(*b.stable_degree, 6);

    const auto c = stabilization_check(1, {3}, {2, 3});
    EXPECT_EQ(c.degrees[0].second, 3);
    EXPECT_EQ(c.degrees[1].second, 4);
    EXPECT_EQ(*c.stable_degree, 4);
}

TEST(Stabilization, ChernRouteAgrees) {
    const auto h = stabilization_check(2, {3, 2}, range(2, 7));
    const auto c = stabilization_check(2, {3, 2}, range(2, 7), Route::chern_series);
    EXPECT_EQ(h.degrees, c.degrees);
    EXPECT_TRUE(c.stabilized);
}

TEST(Stabilization, ConstantFromBoundaryOnwards) {
    for (const auto& prefix : std::vector<std::vector<unsigned>>{{2}, {4}, {6}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}}) {
        unsigned boundary = 1;
        for (auto ni : prefix)
            boundary += ni - 1;
        for (unsigned d = 1; d <= prefix.front(); ++d) {
            const auto rep = stabilization_check(d, prefix, range(boundary, boundary + 4));
            EXPECT_EQ(rep.boundary, boundary);
            EXPECT_TRUE(rep.stabilized);
        }
    }
}

TEST(Stabilization, Errors) {
    EXPECT_THROW(stabilization_check(1, {}, {2}), ParameterError);
    EXPECT_THROW(stabilization_check(1, {2}, {2}, Route::closed_form), ParameterError);
    EXPECT_THROW(stabilization_check(3, {2}, {2}), ParameterError);
    EXPECT_THROW(stabilization_check(1, {2}, {0}), ParameterError);
}
