#include "balfact/matrix/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "balfact/detail/strings.hpp"
#include "balfact/quotient/quotient.hpp"

namespace balfact::matrix {

// ------------------------------------------------------------------ Matrix

Matrix::Matrix(Field F, unsigned dim) : F_(std::move(F)), m_(dim), e_(std::size_t{dim} * dim, F_.zero()) {
    if (dim == 0) throw PreconditionViolated("matrix dimension must be at least 1");
}

Matrix::Matrix(Field F, unsigned dim, std::vector<FieldElem> entries) : F_(std::move(F)), m_(dim), e_(std::move(entries)) {
    if (dim == 0) throw PreconditionViolated("matrix dimension must be at least 1");
    if (e_.size() != std::size_t{dim} * dim) throw PreconditionViolated("matrix needs dim^2 entries");
    for (const auto& x : e_)
        if (!F_.contains(x)) throw ContextMismatch();
}

Matrix Matrix::identity(Field F, unsigned dim) {
    const auto one = F.one();
    return scalar(std::move(F), dim, one);
}

Matrix Matrix::scalar(Field F, unsigned dim, const FieldElem& c) {
    Matrix r(std::move(F), dim);
    for (unsigned i = 0; i < dim; ++i) r(i, i) = c;
    return r;
}

void Matrix::check(const Matrix& rhs) const {
    if (F_ != rhs.F_ || m_ != rhs.m_) throw ContextMismatch();
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    check(rhs);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    check(rhs);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    a.check(b);
    const unsigned m = a.m_;
    Matrix r(a.F_, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned l = 0; l < m; ++l) {
            const auto& x = a(i, l);
            if (x.is_zero()) continue;
            for (unsigned j = 0; j < m; ++j) r(i, j) += x * b(l, j);
        }
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}

Matrix Matrix::scaled(const FieldElem& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x *= c;
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const FieldElem& x) { return x.is_zero(); });
}

std::string Matrix::to_string() const {
    std::vector<std::string> parts;
    parts.reserve(e_.size());
    for (const auto& x : e_) parts.push_back(x.to_string());
    return detail::join(parts, ',');
}

// ------------------------------------------------------------------ MatrixRing

MatrixRing::MatrixRing(Field F, unsigned dim) : F_(std::move(F)), m_(dim) {
    if (dim == 0) throw PreconditionViolated("matrix dimension must be at least 1");
}

MatrixRing MatrixRing::parse(std::string_view d) {
    constexpr std::string_view prefix = "mat:";
    if (d.substr(0, prefix.size()) != prefix) throw ParseError("matrix descriptor must start with 'mat:'");
    auto rest = d.substr(prefix.size());
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("matrix descriptor needs ':<dim>'");
    auto m = detail::parse_uint(rest.substr(colon + 1), "matrix dimension");
    if (m == 0 || m > 4096) throw ParseError("matrix dimension out of range");
    return MatrixRing(Field::parse(rest.substr(0, colon)), static_cast<unsigned>(m));
}

std::string MatrixRing::descriptor() const { return "mat:" + F_.descriptor() + ":" + std::to_string(m_); }

Matrix MatrixRing::parse_element(std::string_view s) const {
    auto toks = detail::split(s, ',');
    const std::size_t cells = std::size_t{m_} * m_;
    const unsigned n = F_.degree();
    std::vector<FieldElem> e;
    e.reserve(cells);
    if (toks.size() == cells) {
        for (auto t : toks) e.push_back(F_.from_int(detail::parse_int(t, "matrix entry")));
    } else if (toks.size() == cells * n) {
        for (std::size_t i = 0; i < cells; ++i) {
            std::string cell;
            for (unsigned j = 0; j < n; ++j) {
                if (j) cell += ',';
                cell += std::string(toks[i * n + j]);
            }
            e.push_back(F_.parse_element(cell));
        }
    } else {
        throw ParseError("matrix element needs " + std::to_string(cells) + " entries");
    }
    return Matrix(F_, m_, std::move(e));
}

std::uint64_t MatrixRing::size() const {
    const std::uint64_t q = F_.size();
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < std::size_t{m_} * m_; ++i) {
        if (s > UINT64_MAX / q) throw BudgetExceeded(1e300, UINT64_MAX);
        s *= q;
    }
    return s;
}

Matrix MatrixRing::element_at(std::uint64_t index) const {
    const std::uint64_t q = F_.size();
    const std::size_t cells = std::size_t{m_} * m_;
    std::vector<FieldElem> e(cells);
    for (std::size_t i = cells; i-- > 0;) {
        e[i] = F_.element_at(index % q);
        index /= q;
    }
    return Matrix(F_, m_, std::move(e));
}

std::uint64_t MatrixRing::index_of(const Matrix& a) const {
    if (!contains(a)) throw ContextMismatch();
    const std::uint64_t q = F_.size();
    std::uint64_t idx = 0;
    for (const auto& x : a.entries()) idx = idx * q + F_.index_of(x);
    return idx;
}

// ------------------------------------------------------------------ polynomials of matrices

Matrix evaluate(const FqPoly& g, const Matrix& A) {
    if (g.base() != A.field()) throw ContextMismatch();
    Matrix acc(A.field(), A.dim());
    const auto& c = g.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * A;
        for (unsigned i = 0; i < A.dim(); ++i) acc(i, i) += *it;
    }
    return acc;
}

FqPoly minimal_polynomial(const Matrix& A) {
    const Field& F = A.field();
    const unsigned m = A.dim();
    const std::size_t cells = std::size_t{m} * m;
    // echelon rows of vec(A^i) with the combination of powers producing each
    struct Row {
        std::size_t pivot;
        std::vector<FieldElem> v, coef;
    };
    std::vector<Row> basis;
    Matrix P = Matrix::identity(F, m);
    for (unsigned i = 0; i <= m; ++i) {
        std::vector<FieldElem> v = P.entries();
        std::vector<FieldElem> coef(i + 1, F.zero());
        coef[i] = F.one();
        for (const auto& r : basis) {
            if (v[r.pivot].is_zero()) continue;
            const auto c = v[r.pivot];
            for (std::size_t j = 0; j < cells; ++j) v[j] -= c * r.v[j];
            for (std::size_t j = 0; j < r.coef.size(); ++j) coef[j] -= c * r.coef[j];
        }
        auto nz = std::find_if(v.begin(), v.end(), [](const FieldElem& x) { return !x.is_zero(); });
        if (nz == v.end()) {
            FqPoly mp(F, std::move(coef));
            auto cp = characteristic_polynomial(A);
            if (!(cp % mp).is_zero()) throw Error("internal: minimal polynomial does not divide the characteristic polynomial");
            return mp;
        }
        const auto inv = nz->inverse();
        for (auto& x : v) x *= inv;
        for (auto& x : coef) x *= inv;
        basis.push_back({static_cast<std::size_t>(nz - v.begin()), std::move(v), std::move(coef)});
        P = P * A;
    }
    throw Error("internal: no linear dependence among the first dim + 1 powers");
}

FqPoly characteristic_polynomial(const Matrix& A) {
    const Field& F = A.field();
    const unsigned n = A.dim();
    Matrix H = A;
    // similarity reduction to upper Hessenberg form
    for (unsigned c = 0; c + 2 < n; ++c) {
        unsigned piv = c + 1;
        while (piv < n && H(piv, c).is_zero()) ++piv;
        if (piv == n) continue;
        if (piv != c + 1) {
            for (unsigned j = 0; j < n; ++j) std::swap(H(piv, j), H(c + 1, j));
            for (unsigned i = 0; i < n; ++i) std::swap(H(i, piv), H(i, c + 1));
        }
        const auto inv = H(c + 1, c).inverse();
        for (unsigned r = c + 2; r < n; ++r) {
            if (H(r, c).is_zero()) continue;
            const auto u = H(r, c) * inv;
            for (unsigned j = 0; j < n; ++j) H(r, j) -= u * H(c + 1, j);
            for (unsigned i = 0; i < n; ++i) H(i, c + 1) += u * H(i, r);
        }
    }
    // p_m = (t - h_mm) p_{m-1} - sum_{i<m} h_im (h_{i+1,i} ... h_{m,m-1}) p_{i-1}
    const auto t = FqPoly::x(F);
    std::vector<FqPoly> p{FqPoly::constant(F, F.one())};
    for (unsigned m = 0; m < n; ++m) {
        FqPoly next = (t - FqPoly::constant(F, H(m, m))) * p[m];
        FieldElem prod = F.one();
        for (unsigned i = m; i-- > 0;) {
            prod *= H(i + 1, i);
            next -= p[i].scaled(H(i, m) * prod);
        }
        p.push_back(std::move(next));
    }
    return p[n];
}

MatrixCert matrix_balanced(const Matrix& A, unsigned k, const local::ResidueCertSource& source) {
    if (k < 3) throw PreconditionViolated("matrix_balanced needs k >= 3");
    quotient::QuotientAlgebra Q(A.field(), minimal_polynomial(A));
    auto qc = quotient::balanced_decompose(Q.x(), k, source);
    std::vector<Matrix> factors;
    factors.reserve(qc.factors.size());
    for (const auto& f : qc.factors) factors.push_back(evaluate(f.rep(), A));
    auto cert = make_cert(MatrixRing(A.field(), A.dim()), A, std::move(factors), "constructed:matrix");
    if (!verify(cert)) throw Error("internal: matrix certificate failed to verify");
    return cert;
}

// ------------------------------------------------------------------ complex demo

std::vector<std::complex<double>> scalar_balanced(std::complex<double> a, unsigned k) {
    using C = std::complex<double>;
    if (k < 3) throw PreconditionViolated("scalar_balanced needs k >= 3");
    if (k == 5 && a != C(0)) return {a / 2.0, a / 2.0, -a, 2.0 / a, -2.0 / a};
    if (a == C(1) && k % 4 == 0) {
        std::vector<C> out(k / 2, C(1));
        out.resize(k, C(-1));
        return out;
    }
    // x (x + 1) (2 - k - 2x) = a  <=>  x^3 + (k/2) x^2 + ((k - 2)/2) x + a/2 = 0
    const double kd = static_cast<double>(k);
    Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    comp(0, 2) = -a / 2.0;
    comp(1, 2) = -(kd - 2.0) / 2.0;
    comp(2, 2) = -kd / 2.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp, false);
    C x = es.eigenvalues()(0);
    for (int i = 1; i < 3; ++i)
        if (std::abs(es.eigenvalues()(i) + 0.5) > std::abs(x + 0.5)) x = es.eigenvalues()(i);
    // one Newton step polishes the companion root
    auto f = [&](C z) { return ((z + kd / 2.0) * z + (kd - 2.0) / 2.0) * z + a / 2.0; };
    auto df = [&](C z) { return (3.0 * z + kd) * z + (kd - 2.0) / 2.0; };
    if (std::abs(df(x)) > 0) x -= f(x) / df(x);
    std::vector<C> out{x, x + 1.0};
    for (unsigned i = 3; i < k; ++i) out.emplace_back(1.0);
    out.push_back(2.0 - kd - 2.0 * x);
    return out;
}

ComplexDemo complex_diagonalizable_demo(const Eigen::MatrixXcd& A, unsigned k, double tol) {
    if (A.rows() != A.cols() || A.rows() == 0) throw PreconditionViolated("complex demo needs a nonempty square matrix");
    if (k < 3) throw PreconditionViolated("complex demo needs k >= 3");
    const double normA = A.norm();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
    if (es.info() != Eigen::Success) throw IllConditioned("eigendecomposition did not converge");
    const auto& lam = es.eigenvalues();
    const auto& V = es.eigenvectors();
    const Eigen::Index m = A.rows();
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const double gap = std::abs(lam(i) - lam(j));
            if (gap < 1e-6 * normA && gap > 1e-12 * normA)
                throw IllConditioned("eigenvalues closer than 1e-6 |A| without coinciding");
        }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const auto& sv = svd.singularValues();
    if (sv(m - 1) <= 0 || sv(0) / sv(m - 1) > 1e8) throw IllConditioned("eigenvector basis is ill-conditioned");
    const Eigen::MatrixXcd Vinv = V.inverse();

    std::vector<std::vector<std::complex<double>>> per(m);
    for (Eigen::Index i = 0; i < m; ++i) per[i] = scalar_balanced(lam(i), k);

    ComplexDemo out;
    double max_norm = 0;
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(m, m), total = Eigen::MatrixXcd::Zero(m, m);
    for (unsigned j = 0; j < k; ++j) {
        Eigen::VectorXcd d(m);
        for (Eigen::Index i = 0; i < m; ++i) d(i) = per[i][j];
        Eigen::MatrixXcd Aj = V * d.asDiagonal() * Vinv;
        max_norm = std::max(max_norm, Aj.norm());
        prod = prod * Aj;
        total += Aj;
        out.factors.push_back(std::move(Aj));
    }
    out.product_residual = (prod - A).norm() / (normA > 0 ? normA : 1.0);
    out.sum_residual = total.norm() / (max_norm > 0 ? max_norm : 1.0);
    if (!(out.product_residual <= tol) || !(out.sum_residual <= tol))
        throw NumericResidual("residuals " + std::to_string(out.product_residual) + ", " +
                              std::to_string(out.sum_residual) + " exceed tolerance");
    return out;
}

}  // namespace balfact::matrix
