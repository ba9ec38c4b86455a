#include "balfact/local/local_algebra.hpp"

#include "balfact/detail/strings.hpp"

namespace balfact::local {

LocalAlgebra::LocalAlgebra(Field G, unsigned k) : G_(G), k_(k) {
    if (k == 0) throw PreconditionViolated("nilpotency index must be at least 1");
}

LocalAlgebra LocalAlgebra::parse(std::string_view d) {
    constexpr std::string_view prefix = "local:";
    if (d.substr(0, prefix.size()) != prefix) throw ParseError("local algebra descriptor must start with 'local:'");
    auto rest = d.substr(prefix.size());
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("local algebra descriptor needs ':<k>'");
    auto k = detail::parse_uint(rest.substr(colon + 1), "nilpotency index");
    return LocalAlgebra(Field::parse(rest.substr(0, colon)), static_cast<unsigned>(k));
}

std::string LocalAlgebra::descriptor() const { return "local:" + G_.descriptor() + ":" + std::to_string(k_); }

LocalElem LocalAlgebra::zero() const { return LocalElem(*this, std::vector<FieldElem>(k_, G_.zero())); }

LocalElem LocalAlgebra::one() const { return constant(G_.one()); }

LocalElem LocalAlgebra::from_int(std::int64_t v) const { return constant(G_.from_int(v)); }

LocalElem LocalAlgebra::constant(const FieldElem& c) const {
    std::vector<FieldElem> v(k_, G_.zero());
    v[0] = c;
    return LocalElem(*this, std::move(v));
}

LocalElem LocalAlgebra::y() const {
    std::vector<FieldElem> v(k_, G_.zero());
    if (k_ > 1) v[1] = G_.one();
    return LocalElem(*this, std::move(v));
}

LocalElem LocalAlgebra::from_coeffs(std::vector<FieldElem> c) const {
    c.resize(k_, G_.zero());
    for (const auto& x : c)
        if (!G_.contains(x)) throw ContextMismatch();
    return LocalElem(*this, std::move(c));
}

LocalElem LocalAlgebra::add(const LocalElem& a, const LocalElem& b) const { return a + b; }
LocalElem LocalAlgebra::sub(const LocalElem& a, const LocalElem& b) const { return a - b; }
LocalElem LocalAlgebra::mul(const LocalElem& a, const LocalElem& b) const { return a * b; }
LocalElem LocalAlgebra::neg(const LocalElem& a) const { return -a; }
bool LocalAlgebra::equal(const LocalElem& a, const LocalElem& b) const { return a == b; }
bool LocalAlgebra::contains(const LocalElem& a) const { return a.algebra() == *this; }

std::string LocalAlgebra::format(const LocalElem& a) const { return a.to_string(); }

LocalElem LocalAlgebra::parse_element(std::string_view s) const {
    auto toks = detail::split(s, ',');
    const unsigned n = G_.degree();
    if (toks.size() == 1) return from_int(detail::parse_int(toks[0], "local element"));
    if (toks.size() != std::size_t{k_} * n) {
        throw ParseError("local element needs " + std::to_string(k_ * n) + " coordinates");
    }
    std::vector<FieldElem> c;
    for (unsigned i = 0; i < k_; ++i) {
        std::string part;
        for (unsigned j = 0; j < n; ++j) {
            if (j) part += ',';
            part += toks[i * n + j];
        }
        c.push_back(G_.parse_element(part));
    }
    return LocalElem(*this, std::move(c));
}

std::uint64_t LocalAlgebra::size() const {
    std::uint64_t q = G_.size(), s = 1;
    for (unsigned i = 0; i < k_; ++i) {
        if (s > UINT64_MAX / q) throw BudgetExceeded(1e300, UINT64_MAX);
        s *= q;
    }
    return s;
}

LocalElem LocalAlgebra::element_at(std::uint64_t index) const {
    const std::uint64_t q = G_.size();
    std::vector<FieldElem> c(k_);
    for (unsigned i = k_; i-- > 0;) {
        c[i] = G_.element_at(index % q);
        index /= q;
    }
    return LocalElem(*this, std::move(c));
}

std::uint64_t LocalAlgebra::index_of(const LocalElem& a) const {
    if (!contains(a)) throw ContextMismatch();
    const std::uint64_t q = G_.size();
    std::uint64_t idx = 0;
    for (const auto& c : a.coeffs()) idx = idx * q + G_.index_of(c);
    return idx;
}

bool LocalAlgebra::is_unit(const LocalElem& a) const { return a.is_unit(); }
bool LocalAlgebra::is_nilpotent(const LocalElem& a) const { return !a.is_unit(); }
FieldElem LocalAlgebra::residue(const LocalElem& a) const { return a.residue(); }

unsigned LocalAlgebra::valuation(const LocalElem& a) const {
    for (unsigned i = 0; i < k_; ++i)
        if (!a[i].is_zero()) return i;
    return k_;
}

bool LocalAlgebra::divides(const LocalElem& u, const LocalElem& v) const { return valuation(u) <= valuation(v); }

LocalElem LocalAlgebra::exact_divide(const LocalElem& v, const LocalElem& u) const {
    const unsigned s = valuation(u);
    if (valuation(v) < s) throw NotInvertible();
    if (s == k_) return zero();
    // u = y^s w, v = y^s v'; quotient v' w^{-1} mod y^{k-s}
    LocalAlgebra low(G_, k_ - s);
    std::vector<FieldElem> w(u.coeffs().begin() + s, u.coeffs().end());
    std::vector<FieldElem> vv(v.coeffs().begin() + s, v.coeffs().end());
    auto q = LocalElem(low, std::move(vv)) * LocalElem(low, std::move(w)).inverse();
    return from_coeffs(q.coeffs());
}

// ------------------------------------------------------------------ LocalElem

void LocalElem::check(const LocalElem& rhs) const {
    if (!(alg_ == rhs.alg_)) throw ContextMismatch();
}

bool LocalElem::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

LocalElem& LocalElem::operator+=(const LocalElem& rhs) {
    check(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

LocalElem& LocalElem::operator-=(const LocalElem& rhs) {
    check(rhs);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

LocalElem& LocalElem::operator*=(const LocalElem& rhs) {
    check(rhs);
    const std::size_t k = c_.size();
    std::vector<FieldElem> out(k, alg_.residue_field().zero());
    for (std::size_t i = 0; i < k; ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < k; ++j) out[i + j] += c_[i] * rhs.c_[j];
    }
    c_ = std::move(out);
    return *this;
}

LocalElem LocalElem::operator-() const {
    auto r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LocalElem LocalElem::inverse() const {
    if (!is_unit()) throw NotInvertible();
    auto u = alg_.constant(c_[0].inverse());
    const auto two = alg_.from_int(2);
    for (unsigned correct = 1; correct < alg_.nilpotency(); correct *= 2) u = u * (two - *this * u);
    return u;
}

std::string LocalElem::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += c_[i].to_string();
    }
    return s;
}

}  // namespace balfact::local
