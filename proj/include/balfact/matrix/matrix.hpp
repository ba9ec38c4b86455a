#ifndef BALFACT_MATRIX_MATRIX_HPP
#define BALFACT_MATRIX_MATRIX_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "balfact/core/cert.hpp"
#include "balfact/galois/field.hpp"
#include "balfact/galois/polyalg.hpp"
#include "balfact/local/theorem4.hpp"

namespace balfact::matrix {

using galois::Field;
using galois::FieldElem;
using galois::FqPoly;

/// Square matrix over GF(q), entries row-major.
class Matrix {
   public:
    Matrix() = default;
    Matrix(Field F, unsigned dim);
    Matrix(Field F, unsigned dim, std::vector<FieldElem> entries);

    static Matrix identity(Field F, unsigned dim);
    static Matrix scalar(Field F, unsigned dim, const FieldElem& c);

    const Field& field() const noexcept { return F_; }
    unsigned dim() const noexcept { return m_; }
    const std::vector<FieldElem>& entries() const noexcept { return e_; }

    const FieldElem& operator()(unsigned i, unsigned j) const { return e_[std::size_t{i} * m_ + j]; }
    FieldElem& operator()(unsigned i, unsigned j) { return e_[std::size_t{i} * m_ + j]; }

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;
    Matrix scaled(const FieldElem& c) const;

    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b) { return a.F_ == b.F_ && a.m_ == b.m_ && a.e_ == b.e_; }

    /// Row-major coordinate CSV.
    std::string to_string() const;

   private:
    void check(const Matrix& rhs) const;

    Field F_;
    unsigned m_ = 0;
    std::vector<FieldElem> e_;
};

/// Ring of m x m matrices over GF(q); descriptor "mat:<field>:<m>".
class MatrixRing {
   public:
    using Element = Matrix;

    MatrixRing() = default;
    MatrixRing(Field F, unsigned dim);
    static MatrixRing parse(std::string_view descriptor);
    std::string descriptor() const;

    const Field& field() const noexcept { return F_; }
    unsigned dim() const noexcept { return m_; }

    Matrix zero() const { return Matrix(F_, m_); }
    Matrix one() const { return Matrix::identity(F_, m_); }
    Matrix add(const Matrix& a, const Matrix& b) const { return a + b; }
    Matrix sub(const Matrix& a, const Matrix& b) const { return a - b; }
    Matrix mul(const Matrix& a, const Matrix& b) const { return a * b; }
    Matrix neg(const Matrix& a) const { return -a; }
    bool equal(const Matrix& a, const Matrix& b) const { return a == b; }
    bool contains(const Matrix& a) const { return a.field() == F_ && a.dim() == m_; }

    std::string format(const Matrix& a) const { return a.to_string(); }
    /// m^2 entries, each either one integer or n coordinates.
    Matrix parse_element(std::string_view s) const;

    /// q^(m^2); throws BudgetExceeded when it does not fit.
    std::uint64_t size() const;
    /// First entry most significant.
    Matrix element_at(std::uint64_t index) const;
    std::uint64_t index_of(const Matrix& a) const;

    friend bool operator==(const MatrixRing& a, const MatrixRing& b) { return a.F_ == b.F_ && a.m_ == b.m_; }

   private:
    Field F_;
    unsigned m_ = 0;
};

using MatrixCert = BalancedCert<MatrixRing>;

/// g(A) by Horner's rule.
Matrix evaluate(const FqPoly& g, const Matrix& A);

/// Monic generator of the annihilator of A, from the first linear dependence among I, A, A^2, ...
FqPoly minimal_polynomial(const Matrix& A);

/// Characteristic polynomial det(tI - A) via reduction to Hessenberg form.
FqPoly characteristic_polynomial(const Matrix& A);

/// Balanced k-factorisation of A inside F[A], k >= 3, through GF(q)[x]/(minpoly).
MatrixCert matrix_balanced(const Matrix& A, unsigned k,
                           const local::ResidueCertSource& source = local::default_residue_source());

struct ComplexDemo {
    std::vector<Eigen::MatrixXcd> factors;
    double product_residual = 0;  // |prod - A| / |A|
    double sum_residual = 0;      // |sum| / max |A_j|
};

/// Scalar balanced k-factorisation over C: formula (a/2, a/2, -a, 2/a, -2/a) for k = 5 and a != 0,
/// 1^(k/2) (-1)^(k/2) for a = 1 and 4 | k, otherwise x, x + 1, 1^(k-3), 2 - k - 2x with x a root
/// of the cubic farthest from -1/2.
std::vector<std::complex<double>> scalar_balanced(std::complex<double> a, unsigned k);

/// Factors V f_j(D) V^-1 of a diagonalizable A = V D V^-1.  IllConditioned when two distinct
/// eigenvalues nearly coincide or the eigenvector basis is too ill-conditioned; NumericResidual
/// when the residual checks fail at tol.
ComplexDemo complex_diagonalizable_demo(const Eigen::MatrixXcd& A, unsigned k, double tol = 1e-9);

}  // namespace balfact::matrix

#endif
