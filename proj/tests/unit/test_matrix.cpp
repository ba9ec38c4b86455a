#include <gtest/gtest.h>

#include <random>

#include "balfact/core/search.hpp"
#include "balfact/matrix/matrix.hpp"
#include "balfact/quotient/quotient.hpp"

using namespace balfact;
using namespace balfact::matrix;

namespace {

Matrix random_matrix(const Field& F, unsigned m, std::mt19937_64& rng) {
    std::vector<FieldElem> e;
    for (unsigned i = 0; i < m * m; ++i) e.push_back(F.element_at(rng() % F.size()));
    return Matrix(F, m, std::move(e));
}

Matrix jordan(const Field& F) { return MatrixRing(F, 2).parse_element("0,1,0,0"); }

FqPoly poly(const Field& F, std::initializer_list<std::int64_t> c) {
    std::vector<FieldElem> v;
    for (auto x : c) v.push_back(F.from_int(x));
    return FqPoly(F, std::move(v));
}

// det(tI - A) by cofactor expansion along the first row
FqPoly laplace_det(const std::vector<std::vector<FqPoly>>& M) {
    const std::size_t n = M.size();
    if (n == 1) return M[0][0];
    const auto& F = M[0][0].base();
    FqPoly acc(F);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<FqPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<FqPoly> row;
            for (std::size_t l = 0; l < n; ++l)
                if (l != j) row.push_back(M[i][l]);
            minor.push_back(std::move(row));
        }
        auto term = M[0][j] * laplace_det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

FqPoly charpoly_oracle(const Matrix& A) {
    const auto& F = A.field();
    std::vector<std::vector<FqPoly>> M(A.dim());
    for (unsigned i = 0; i < A.dim(); ++i)
        for (unsigned j = 0; j < A.dim(); ++j) {
            auto e = FqPoly::constant(F, -A(i, j));
            if (i == j) e += FqPoly::x(F);
            M[i].push_back(e);
        }
    return laplace_det(M);
}

Eigen::MatrixXcd random_separated(unsigned m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(-3, 3);
    std::vector<std::complex<double>> lam;
    while (lam.size() < m) {
        std::complex<double> z(ud(rng), ud(rng));
        bool ok = true;
        for (auto w : lam) ok = ok && std::abs(z - w) > 0.2;
        if (ok) lam.push_back(z);
    }
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(m, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) V(i, j) += 0.3 * std::complex<double>(nd(rng), nd(rng));
    Eigen::VectorXcd d(m);
    for (unsigned i = 0; i < m; ++i) d(i) = lam[i];
    return V * d.asDiagonal() * V.inverse();
}

}  // namespace

TEST(Matrix, RingBasics) {
    auto R = MatrixRing::parse("mat:3:2");
    EXPECT_EQ(R.descriptor(), "mat:3:2");
    EXPECT_EQ(R.size(), 81u);
    for (std::uint64_t i = 0; i < R.size(); ++i) EXPECT_EQ(R.index_of(R.element_at(i)), i);
    auto J = jordan(Field::prime(3));
    EXPECT_EQ(R.format(J), "0,1,0,0");
    EXPECT_TRUE((J * J).is_zero());
    EXPECT_THROW(R.parse_element("1,2,3"), ParseError);
    EXPECT_THROW(MatrixRing::parse("mat:3:0"), ParseError);
    auto G = MatrixRing::parse("mat:2^2:2");
    EXPECT_EQ(G.parse_element(G.format(G.one())), G.one());
    EXPECT_THROW(R.one() + MatrixRing::parse("mat:3:3").one(), ContextMismatch);
}

TEST(Matrix, MinimalPolynomialExamples) {
    auto F = Field::prime(3);
    EXPECT_EQ(minimal_polynomial(Matrix(F, 3)), poly(F, {0, 1}));
    EXPECT_EQ(minimal_polynomial(jordan(F)), poly(F, {0, 0, 1}));
    EXPECT_EQ(minimal_polynomial(Matrix::identity(F, 4)), poly(F, {-1, 1}));
}

TEST(Matrix, MinimalPolynomialProperties) {
    std::mt19937_64 rng(5);
    for (auto q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        auto F = Field::of_order(q);
        for (int t = 0; t < 40; ++t) {
            const unsigned m = 1 + static_cast<unsigned>(rng() % 4);
            auto A = random_matrix(F, m, rng);
            auto mp = minimal_polynomial(A);
            auto cp = characteristic_polynomial(A);
            EXPECT_TRUE(mp.is_monic());
            EXPECT_LE(mp.degree(), static_cast<int>(m));
            EXPECT_TRUE(evaluate(mp, A).is_zero());
            EXPECT_EQ(cp, charpoly_oracle(A));
            EXPECT_TRUE((cp % mp).is_zero());
        }
    }
    // minimality by enumeration of all lower-degree monic polynomials, 2x2 over GF(3)
    auto F = Field::prime(3);
    MatrixRing R(F, 2);
    for (std::uint64_t i = 0; i < R.size(); ++i) {
        auto A = R.element_at(i);
        const int d = minimal_polynomial(A).degree();
        for (int e = 0; e < d; ++e) {
            for (std::uint64_t c = 0; c < 9; ++c) {
                std::vector<FieldElem> v;
                std::uint64_t cc = c;
                for (int j = 0; j < e; ++j, cc /= 3) v.push_back(F.element_at(cc % 3));
                v.push_back(F.one());
                EXPECT_FALSE(evaluate(FqPoly(F, v), A).is_zero());
            }
        }
    }
}

TEST(Matrix, JordanBlockNeedsThreeFactors) {
    auto F = Field::prime(3);
    MatrixRing R(F, 2);
    auto J = jordan(F);
    EXPECT_FALSE(brute_search(R, J, 2, false));
    // the identity J = (-J) I (J - I)
    auto I = R.one();
    auto c = make_cert(R, J, {-J, I, J - I}, "worked");
    EXPECT_TRUE(verify(c));
    auto m = matrix_balanced(J, 3);
    EXPECT_TRUE(verify(m));
    EXPECT_FALSE(m.power);
}

TEST(Matrix, IdentityOverGF5) {
    auto I = Matrix::identity(Field::prime(5), 3);
    auto c = matrix_balanced(I, 3);
    EXPECT_TRUE(verify(c));
    EXPECT_THROW(matrix_balanced(I, 2), PreconditionViolated);
}

TEST(Matrix, RandomMatricesBalanced) {
    std::mt19937_64 rng(42);
    int done = 0, obstructed = 0;
    const unsigned qs[] = {2, 3, 5, 7};
    while (done < 500) {
        auto F = Field::prime(qs[rng() % 4]);
        const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
        const unsigned k = 3 + static_cast<unsigned>(rng() % 3);
        auto A = random_matrix(F, m, rng);
        ++done;
        try {
            auto c = matrix_balanced(A, k);
            ASSERT_TRUE(verify(c));
            EXPECT_FALSE(c.power);
            for (const auto& f : c.factors) {
                EXPECT_EQ(f * A, A * f);
                for (const auto& g : c.factors) EXPECT_EQ(f * g, g * f);
            }
        } catch (const ResidueFieldObstruction&) {
            ++obstructed;
            quotient::QuotientAlgebra Q(F, minimal_polynomial(A));
            bool fires = false;
            for (const auto& comp : Q.components()) {
                const auto& G = comp.local.residue_field();
                fires = fires || !brute_search(G, quotient::to_local(comp, Q.x()).residue(), k, true);
            }
            EXPECT_TRUE(fires) << A.to_string() << " k=" << k;
        } catch (const TwoElementResidueField&) {
            ++obstructed;
            EXPECT_EQ(F.size(), 2u);
        }
    }
    EXPECT_LT(obstructed, done);
}

TEST(ComplexDemo, Examples) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
    D(0, 0) = 2;
    D(1, 1) = 3;
    auto r = complex_diagonalizable_demo(D, 3);
    ASSERT_EQ(r.factors.size(), 3u);
    EXPECT_LE(r.product_residual, 1e-9);
    EXPECT_LE(r.sum_residual, 1e-9);

    Eigen::MatrixXcd a(1, 1);
    a(0, 0) = 2;
    auto f = complex_diagonalizable_demo(a, 5);
    const double expect[] = {1, 1, -2, 1, -1};
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(f.factors[i](0, 0) - expect[i]), 0, 1e-12);

    auto id = complex_diagonalizable_demo(Eigen::MatrixXcd::Identity(3, 3), 4);
    const double signs[] = {1, 1, -1, -1};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR((id.factors[i] - signs[i] * Eigen::MatrixXcd::Identity(3, 3)).norm(), 0, 1e-12);

    Eigen::MatrixXcd close = Eigen::MatrixXcd::Zero(2, 2);
    close(0, 0) = 1;
    close(1, 1) = 1 + 1e-8;
    EXPECT_THROW(complex_diagonalizable_demo(close, 3), IllConditioned);
    EXPECT_THROW(complex_diagonalizable_demo(D, 2), PreconditionViolated);
}

TEST(ComplexDemo, ScalarFactorsAreBalanced) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ud(-5, 5);
    for (int t = 0; t < 200; ++t) {
        std::complex<double> a(ud(rng), ud(rng));
        for (unsigned k = 3; k <= 8; ++k) {
            auto v = scalar_balanced(a, k);
            ASSERT_EQ(v.size(), k);
            std::complex<double> p = 1, s = 0;
            for (auto x : v) {
                p *= x;
                s += x;
            }
            EXPECT_LT(std::abs(p - a), 1e-10 * std::max(1.0, std::abs(a)));
            EXPECT_LT(std::abs(s), 1e-10);
        }
    }
}

TEST(ComplexDemo, RandomSeparatedMatrices) {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 100; ++t) {
        const unsigned m = 1 + static_cast<unsigned>(rng() % 8);
        const unsigned k = 3 + static_cast<unsigned>(rng() % 4);
        auto A = random_separated(m, rng);
        auto r = complex_diagonalizable_demo(A, k, 1e-9);
        EXPECT_LE(r.product_residual, 1e-9);
        EXPECT_LE(r.sum_residual, 1e-9);
    }
}
