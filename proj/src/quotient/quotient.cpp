#include "balfact/quotient/quotient.hpp"

#include <algorithm>
#include <mutex>

#include "balfact/detail/strings.hpp"
#include "balfact/local/hensel.hpp"

namespace balfact::quotient {

struct QuotientAlgebra::Impl {
    Field F;
    FqPoly f;
    FqPoly rad;
    std::once_flag once;
    std::vector<Component> comps;
};

namespace {

using QPoly = galois::Poly<QuotientAlgebra>;
using Matrix = std::vector<std::vector<std::uint32_t>>;

// Root r of g whose linear factor t - r has the least coefficient vector.
FieldElem least_linear_factor_root(const FqPoly& g) {
    auto rs = galois::roots(g);
    if (rs.empty()) throw Error("expected a root in the extension field");
    return *std::min_element(rs.begin(), rs.end(), [](const FieldElem& a, const FieldElem& b) { return -a < -b; });
}

Matrix invert_mod_p(Matrix m, std::uint32_t p) {
    const std::size_t N = m.size();
    auto mul = [p](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint32_t>(a * b % p); };
    auto inv = [&](std::uint32_t a) {
        std::uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    };
    Matrix id(N, std::vector<std::uint32_t>(N, 0));
    for (std::size_t i = 0; i < N; ++i) id[i][i] = 1;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t piv = col;
        while (piv < N && m[piv][col] == 0) ++piv;
        if (piv == N) throw Error("coefficient embedding is not invertible");
        std::swap(m[piv], m[col]);
        std::swap(id[piv], id[col]);
        const auto s = inv(m[col][col]);
        for (std::size_t j = 0; j < N; ++j) {
            m[col][j] = mul(m[col][j], s);
            id[col][j] = mul(id[col][j], s);
        }
        for (std::size_t r = 0; r < N; ++r) {
            if (r == col || m[r][col] == 0) continue;
            const auto c = m[r][col];
            for (std::size_t j = 0; j < N; ++j) {
                m[r][j] = (m[r][j] + p - mul(c, m[col][j])) % p;
                id[r][j] = (id[r][j] + p - mul(c, id[col][j])) % p;
            }
        }
    }
    return id;
}

Component build_component(const QuotientAlgebra& A, const FqPoly& p, unsigned k) {
    const Field& F = A.base();
    const FqPoly& f = A.modulus();
    const auto d = static_cast<unsigned>(p.degree());
    const unsigned n = F.degree();
    const auto pc = static_cast<std::uint32_t>(F.characteristic());

    auto pk = galois::pow(p, k);
    auto cof = f / pk;
    auto e = (cof * galois::invmod(cof % pk, pk)) % f;

    QuotientAlgebra piece(F, pk);
    std::vector<QuotientElem> pcoef;
    for (const auto& c : p.coeffs()) pcoef.push_back(piece.from_poly(FqPoly::constant(F, c)));
    auto xi = local::hensel_root(QPoly(piece, pcoef), piece.x());

    Field big = d == 1 ? F : Field::make(pc, n * d);
    std::vector<FieldElem> gens;
    if (d == 1) {
        for (unsigned j = 0; j < n; ++j) gens.push_back(F.gen().pow(std::uint64_t{j}));
    } else if (n == 1) {
        gens.push_back(big.one());
    } else {
        std::vector<FieldElem> mc;
        for (auto c : F.ctx()->modulus()) mc.push_back(big.from_int(c));
        auto r = least_linear_factor_root(FqPoly(big, mc));
        for (unsigned j = 0; j < n; ++j) gens.push_back(r.pow(std::uint64_t{j}));
    }

    std::vector<QuotientElem> xi_pow{piece.one()};
    for (unsigned i = 1; i < d; ++i) xi_pow.push_back(xi_pow.back() * xi);
    Component c{p,   k,   d,         pk,         e, piece, xi, piece.x() - xi, std::move(xi_pow),
                big, big.zero(), local::LocalAlgebra(big, k), gens, {}, {}, {}};
    if (d == 1) {
        c.theta = -p.coeff(0);
    } else {
        std::vector<FieldElem> pe;
        for (const auto& a : p.coeffs()) pe.push_back(c.embed(a));
        c.theta = least_linear_factor_root(FqPoly(big, pe));
    }

    if (d == 1) return c;
    const std::size_t N = std::size_t{n} * d;
    Matrix m(N, std::vector<std::uint32_t>(N, 0));
    auto th = big.one();
    for (unsigned i = 0; i < d; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            auto v = gens[j] * th;
            auto co = v.coords();
            for (std::size_t r = 0; r < N; ++r) m[r][i * n + j] = co[r];
        }
        th = th * c.theta;
    }
    c.unmix = invert_mod_p(std::move(m), pc);
    return c;
}

void check_components(const QuotientAlgebra& A, const std::vector<Component>& cs) {
    const FqPoly& f = A.modulus();
    const FqPoly one = FqPoly::constant(A.base(), A.base().one());
    FqPoly total(A.base());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        if (!(galois::mulmod(c.idempotent, c.idempotent, f) == c.idempotent)) throw Error("idempotent is not idempotent");
        for (std::size_t j = i + 1; j < cs.size(); ++j)
            if (!galois::mulmod(c.idempotent, cs[j].idempotent, f).is_zero()) throw Error("idempotents not orthogonal");
        total += c.idempotent;
        QuotientElem acc = c.piece.zero();
        for (auto it = c.p.coeffs().rbegin(); it != c.p.coeffs().rend(); ++it)
            acc = acc * c.xi + c.piece.from_poly(FqPoly::constant(A.base(), *it));
        if (!acc.is_zero()) throw Error("coefficient lift is not a root");
        auto nu = c.piece.x() - c.xi;
        auto nk = c.piece.one();
        for (unsigned j = 0; j < c.k; ++j) nk = nk * nu;
        if (!nk.is_zero()) throw Error("x - xi is not nilpotent of the expected order");
        if (!((c.xi.rep() - FqPoly::x(A.base())) % c.p).is_zero()) throw Error("lift is not congruent to x");
    }
    if (!(total % f == one % f)) throw Error("idempotents do not sum to one");
}

}  // namespace

// ------------------------------------------------------------------ QuotientAlgebra

QuotientAlgebra::QuotientAlgebra(Field F, FqPoly f) {
    if (f.degree() < 1) throw PreconditionViolated("quotient modulus must have degree >= 1");
    if (!(f.base() == F)) throw ContextMismatch();
    if (!f.is_monic()) throw PreconditionViolated("quotient modulus must be monic");
    impl_ = std::make_shared<Impl>();
    impl_->F = F;
    impl_->rad = galois::radical(f);
    impl_->f = std::move(f);
}

QuotientAlgebra QuotientAlgebra::parse(std::string_view d) {
    constexpr std::string_view prefix = "quot:";
    if (d.substr(0, prefix.size()) != prefix) throw ParseError("quotient descriptor must start with 'quot:'");
    auto rest = d.substr(prefix.size());
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("quotient descriptor needs ':<f coefficients>'");
    auto F = Field::parse(rest.substr(0, colon));
    auto f = galois::parse_poly(F, rest.substr(colon + 1));
    if (f.degree() < 1) throw ParseError("quotient modulus must have degree >= 1");
    if (!f.is_monic()) throw ParseError("quotient modulus must be monic");
    return QuotientAlgebra(F, std::move(f));
}

std::string QuotientAlgebra::descriptor() const { return "quot:" + base().descriptor() + ":" + modulus().to_string(); }

const Field& QuotientAlgebra::base() const { return impl_->F; }
const FqPoly& QuotientAlgebra::modulus() const { return impl_->f; }
unsigned QuotientAlgebra::dimension() const { return static_cast<unsigned>(impl_->f.degree()); }

QuotientElem QuotientAlgebra::zero() const { return QuotientElem(*this, FqPoly(base())); }
QuotientElem QuotientAlgebra::one() const { return from_int(1); }
QuotientElem QuotientAlgebra::from_int(std::int64_t v) const {
    return from_poly(FqPoly::constant(base(), base().from_int(v)));
}
QuotientElem QuotientAlgebra::x() const { return from_poly(FqPoly::x(base())); }
QuotientElem QuotientAlgebra::from_poly(const FqPoly& g) const {
    if (!(g.base() == base())) throw ContextMismatch();
    return QuotientElem(*this, g.degree() < modulus().degree() ? g : g % modulus());
}

QuotientElem QuotientAlgebra::add(const QuotientElem& a, const QuotientElem& b) const { return a + b; }
QuotientElem QuotientAlgebra::sub(const QuotientElem& a, const QuotientElem& b) const { return a - b; }
QuotientElem QuotientAlgebra::mul(const QuotientElem& a, const QuotientElem& b) const { return a * b; }
QuotientElem QuotientAlgebra::neg(const QuotientElem& a) const { return -a; }
bool QuotientAlgebra::equal(const QuotientElem& a, const QuotientElem& b) const { return a == b; }
bool QuotientAlgebra::contains(const QuotientElem& a) const { return a.algebra() == *this; }

std::string QuotientAlgebra::format(const QuotientElem& a) const {
    std::string s;
    for (unsigned i = 0; i < dimension(); ++i) {
        if (i) s += ',';
        s += a.rep().coeff(i).to_string();
    }
    return s;
}

QuotientElem QuotientAlgebra::parse_element(std::string_view s) const {
    auto toks = detail::split(s, ',');
    const unsigned n = base().degree();
    if (toks.size() == 1) return from_int(detail::parse_int(toks[0], "quotient element"));
    if (toks.size() != std::size_t{dimension()} * n) {
        throw ParseError("quotient element needs " + std::to_string(dimension() * n) + " coordinates");
    }
    return from_poly(galois::parse_poly(base(), s));
}

std::uint64_t QuotientAlgebra::size() const {
    std::uint64_t q = base().size(), s = 1;
    for (unsigned i = 0; i < dimension(); ++i) {
        if (s > UINT64_MAX / q) throw BudgetExceeded(1e300, UINT64_MAX);
        s *= q;
    }
    return s;
}

QuotientElem QuotientAlgebra::element_at(std::uint64_t index) const {
    const std::uint64_t q = base().size();
    std::vector<FieldElem> c(dimension());
    for (unsigned i = dimension(); i-- > 0;) {
        c[i] = base().element_at(index % q);
        index /= q;
    }
    return QuotientElem(*this, FqPoly(base(), std::move(c)));
}

std::uint64_t QuotientAlgebra::index_of(const QuotientElem& a) const {
    if (!contains(a)) throw ContextMismatch();
    const std::uint64_t q = base().size();
    std::uint64_t idx = 0;
    for (unsigned i = 0; i < dimension(); ++i) idx = idx * q + base().index_of(a.rep().coeff(i));
    return idx;
}

bool QuotientAlgebra::is_unit(const QuotientElem& a) const { return galois::gcd(a.rep(), modulus()).degree() == 0; }

bool QuotientAlgebra::is_nilpotent(const QuotientElem& a) const { return (a.rep() % impl_->rad).is_zero(); }

bool QuotientAlgebra::divides(const QuotientElem& u, const QuotientElem& v) const {
    return (v.rep() % galois::gcd(u.rep(), modulus())).is_zero();
}

const std::vector<Component>& QuotientAlgebra::components() const {
    std::call_once(impl_->once, [this] { impl_->comps = split(*this); });
    return impl_->comps;
}

bool operator==(const QuotientAlgebra& a, const QuotientAlgebra& b) {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.base() == b.base() && a.modulus() == b.modulus();
}

// ------------------------------------------------------------------ QuotientElem

void QuotientElem::check(const QuotientElem& rhs) const {
    if (!(alg_ == rhs.alg_)) throw ContextMismatch();
}

QuotientElem& QuotientElem::operator+=(const QuotientElem& rhs) {
    check(rhs);
    rep_ += rhs.rep_;
    return *this;
}

QuotientElem& QuotientElem::operator-=(const QuotientElem& rhs) {
    check(rhs);
    rep_ -= rhs.rep_;
    return *this;
}

QuotientElem& QuotientElem::operator*=(const QuotientElem& rhs) {
    check(rhs);
    rep_ = galois::mulmod_fast(rep_, rhs.rep_, alg_.modulus());
    return *this;
}

QuotientElem QuotientElem::inverse() const { return QuotientElem(alg_, galois::invmod(rep_, alg_.modulus())); }

// ------------------------------------------------------------------ components

FieldElem Component::embed(const FieldElem& c) const {
    if (d == 1) return c;
    auto co = c.coords();
    auto r = big.zero();
    for (std::size_t j = 0; j < co.size(); ++j)
        if (co[j]) r += big.from_int(co[j]) * base_gen_powers[j];
    return r;
}

namespace {
void build_linear_maps(const QuotientAlgebra& A, Component& c);
}

std::vector<Component> split(const QuotientAlgebra& A) {
    std::vector<Component> out;
    for (const auto& [p, k] : galois::factor(A.modulus())) out.push_back(build_component(A, p, k));
    check_components(A, out);
    for (auto& c : out) build_linear_maps(A, c);
    return out;
}

local::LocalElem to_local_exact(const Component& c, const QuotientElem& a) {
    const auto& L = c.local;
    const auto T = L.constant(c.theta) + L.y();
    return galois::evaluate_at(a.rep() % c.pk, T, L.zero(), [&](const FieldElem& co) { return L.constant(c.embed(co)); });
}

QuotientElem from_local_exact(const QuotientAlgebra& A, const Component& c, const local::LocalElem& u) {
    if (!(u.algebra() == c.local)) throw ContextMismatch();
    const Field& F = A.base();
    const unsigned n = F.degree();
    const std::size_t N = c.unmix.size();
    const auto pc = F.characteristic();
    const QuotientAlgebra& P = c.piece;

    auto acc = P.zero();
    for (unsigned j = c.k; j-- > 0;) {
        auto co = u[j].coords();
        auto h = P.zero();
        if (c.d == 1) {
            h = P.from_poly(FqPoly::constant(F, u[j]));
        } else {
            std::vector<std::uint32_t> w(N, 0);
            for (std::size_t r = 0; r < N; ++r) {
                std::uint64_t s = 0;
                for (std::size_t t = 0; t < N; ++t) s = (s + std::uint64_t{c.unmix[r][t]} * co[t]) % pc;
                w[r] = static_cast<std::uint32_t>(s);
            }
            for (unsigned i = 0; i < c.d; ++i) {
                auto ci = F.from_coords(std::span<const std::uint32_t>(w.data() + std::size_t{i} * n, n));
                if (!ci.is_zero()) h += P.from_poly(FqPoly::constant(F, ci)) * c.xi_powers[i];
            }
        }
        acc = acc * c.nu + h;
    }
    return A.from_poly(c.idempotent * acc.rep());
}

namespace {

std::vector<std::uint32_t> apply(const std::vector<std::vector<std::uint32_t>>& m, const std::vector<std::uint32_t>& v,
                                 std::uint64_t p) {
    std::vector<std::uint32_t> out(m.size());
    const bool lazy = p < (1u << 16);
    for (std::size_t r = 0; r < m.size(); ++r) {
        std::uint64_t s = 0;
        const auto& row = m[r];
        if (lazy) {
            for (std::size_t t = 0; t < v.size(); ++t) s += std::uint64_t{row[t]} * v[t];
        } else {
            for (std::size_t t = 0; t < v.size(); ++t) s = (s + std::uint64_t{row[t]} * v[t] % p) % p;
        }
        out[r] = static_cast<std::uint32_t>(s % p);
    }
    return out;
}

std::vector<std::uint32_t> coords_of(const QuotientAlgebra& A, const QuotientElem& a) {
    const unsigned n = A.base().degree();
    std::vector<std::uint32_t> v(std::size_t{A.dimension()} * n, 0);
    const auto& cs = a.rep().coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto co = cs[i].coords();
        std::copy(co.begin(), co.end(), v.begin() + static_cast<std::ptrdiff_t>(i * n));
    }
    return v;
}

std::vector<std::uint32_t> coords_of(const local::LocalElem& u) {
    std::vector<std::uint32_t> v;
    for (const auto& c : u.coeffs()) {
        auto co = c.coords();
        v.insert(v.end(), co.begin(), co.end());
    }
    return v;
}

constexpr std::size_t kMaxLinearDim = 256;

// Columns are images of the GF(p)-basis x^i * g^s of A and y^j * t^r of the local algebra.
void build_linear_maps(const QuotientAlgebra& A, Component& c) {
    const Field& F = A.base();
    const unsigned n = F.degree();
    const std::size_t dimA = std::size_t{A.dimension()} * n;
    if (dimA > kMaxLinearDim) return;
    const unsigned m = c.big.degree();
    const std::size_t dimL = std::size_t{c.k} * m;
    c.to_mat.assign(dimL, std::vector<std::uint32_t>(dimA, 0));
    c.from_mat.assign(dimA, std::vector<std::uint32_t>(dimL, 0));
    std::vector<std::uint32_t> unit;
    for (std::size_t col = 0; col < dimA; ++col) {
        unit.assign(n, 0);
        unit[col % n] = 1;
        auto coef = F.from_coords(unit);
        auto e = A.from_poly(FqPoly::monomial(F, coef, col / n));
        auto img = coords_of(to_local_exact(c, e));
        for (std::size_t r = 0; r < dimL; ++r) c.to_mat[r][col] = img[r];
    }
    for (std::size_t col = 0; col < dimL; ++col) {
        unit.assign(m, 0);
        unit[col % m] = 1;
        std::vector<FieldElem> v(c.k, c.big.zero());
        v[col / m] = c.big.from_coords(unit);
        auto img = coords_of(A, from_local_exact(A, c, c.local.from_coeffs(std::move(v))));
        for (std::size_t r = 0; r < dimA; ++r) c.from_mat[r][col] = img[r];
    }
}

}  // namespace

local::LocalElem to_local(const Component& c, const QuotientElem& a) {
    if (c.to_mat.empty()) return to_local_exact(c, a);
    const QuotientAlgebra& A = a.algebra();
    auto w = apply(c.to_mat, coords_of(A, a), A.characteristic());
    const unsigned m = c.big.degree();
    std::vector<FieldElem> v;
    v.reserve(c.k);
    for (unsigned j = 0; j < c.k; ++j) v.push_back(c.big.from_coords(std::span<const std::uint32_t>(w.data() + std::size_t{j} * m, m)));
    return local::LocalElem(c.local, std::move(v));
}

QuotientElem from_local(const QuotientAlgebra& A, const Component& c, const local::LocalElem& u) {
    if (c.from_mat.empty()) return from_local_exact(A, c, u);
    if (!(u.algebra() == c.local)) throw ContextMismatch();
    const Field& F = A.base();
    const unsigned n = F.degree();
    auto w = apply(c.from_mat, coords_of(u), A.characteristic());
    std::vector<FieldElem> v;
    v.reserve(A.dimension());
    for (unsigned i = 0; i < A.dimension(); ++i) v.push_back(F.from_coords(std::span<const std::uint32_t>(w.data() + std::size_t{i} * n, n)));
    return QuotientElem(A, FqPoly(F, std::move(v)));
}

std::size_t LocalResultCache::KeyHash::operator()(const Key& k) const noexcept {
    std::size_t h = std::hash<const void*>{}(k.field);
    for (std::uint64_t v : {std::uint64_t{k.k}, k.index, std::uint64_t{k.n}}) h = h * 1000003u ^ std::hash<std::uint64_t>{}(v);
    return h;
}

const local::LocalCert& LocalResultCache::get(const local::LocalElem& u, unsigned n, const local::ResidueCertSource& source) {
    const auto& L = u.algebra();
    Key key{L.residue_field().ctx(), L.nilpotency(), L.index_of(u), n};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        Entry e;
        try {
            e.cert = local::theorem4_decompose(u, n, source);
        } catch (const ResidueFieldObstruction& ex) {
            e.error_kind = 1;
            e.message = ex.what();
        } catch (const TwoElementResidueField& ex) {
            e.error_kind = 2;
            e.message = ex.what();
        }
        it = entries_.emplace(key, std::move(e)).first;
    }
    const Entry& e = it->second;
    if (e.error_kind == 1) throw ResidueFieldObstruction(e.message);
    if (e.error_kind == 2) throw TwoElementResidueField(e.message);
    return *e.cert;
}

QuotientCert balanced_decompose(const QuotientElem& a, unsigned n, const local::ResidueCertSource& source,
                                LocalResultCache* cache) {
    if (n < 3) throw PreconditionViolated("balanced_decompose needs n >= 3");
    const QuotientAlgebra& A = a.algebra();
    const auto& cs = A.components();
    std::vector<QuotientElem> fs(n, A.zero());
    bool nonpower = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        auto name = [&] {
            return "component " + std::to_string(i) + " (p = " + c.p.to_string() + ", k = " + std::to_string(c.k) + "): ";
        };
        std::optional<local::LocalCert> own;
        const local::LocalCert* lc = nullptr;
        try {
            auto u = to_local(c, a);
            if (cache) {
                lc = &cache->get(u, n, source);
            } else {
                own = local::theorem4_decompose(u, n, source);
                lc = &*own;
            }
        } catch (const ResidueFieldObstruction& e) {
            throw ResidueFieldObstruction(name() + e.what());
        } catch (const TwoElementResidueField& e) {
            throw TwoElementResidueField(name() + e.what());
        }
        nonpower = nonpower && !lc->power;
        for (unsigned j = 0; j < n; ++j) fs[j] += from_local(A, c, lc->factors[j]);
    }
    auto cert = make_cert(A, a, std::move(fs), "constructed:quotient");
    if (nonpower && cert.power) throw Error("recombined decomposition became a power");
    return cert;
}

}  // namespace balfact::quotient
