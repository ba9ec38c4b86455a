#ifndef BALFACT_GALOIS_POLY_HPP
#define BALFACT_GALOIS_POLY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "balfact/error.hpp"

namespace balfact::galois {

/// Coefficient domains for Poly: fields, and (for evaluation only) local rings.
template <class K>
concept CoefficientDomain = requires(const K& k, const typename K::Element& a, std::int64_t i) {
    { k.zero() } -> std::convertible_to<typename K::Element>;
    { k.one() } -> std::convertible_to<typename K::Element>;
    { k.from_int(i) } -> std::convertible_to<typename K::Element>;
    { k.characteristic() } -> std::convertible_to<std::uint64_t>;
    { k.format(a) } -> std::convertible_to<std::string>;
    { a + a } -> std::convertible_to<typename K::Element>;
    { a * a } -> std::convertible_to<typename K::Element>;
    { -a } -> std::convertible_to<typename K::Element>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

inline constexpr int kZeroPolyDegree = -1;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
template <CoefficientDomain K>
class Poly {
   public:
    using Elem = typename K::Element;

    Poly() = default;
    explicit Poly(K base) : base_(std::move(base)) {}
    Poly(K base, std::vector<Elem> coeffs) : base_(std::move(base)), c_(std::move(coeffs)) { normalize(); }

    static Poly constant(K base, Elem c) { return Poly(std::move(base), std::vector<Elem>{std::move(c)}); }
    static Poly monomial(K base, Elem c, std::size_t deg) {
        std::vector<Elem> v(deg + 1, base.zero());
        v[deg] = std::move(c);
        return Poly(std::move(base), std::move(v));
    }
    static Poly x(K base) {
        auto one = base.one();
        return monomial(std::move(base), std::move(one), 1);
    }

    const K& base() const noexcept { return base_; }
    /// kZeroPolyDegree for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<Elem>& coeffs() const noexcept { return c_; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : base_.zero(); }
    const Elem& leading() const {
        if (c_.empty()) throw ZeroPolynomial();
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == base_.one(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    Elem operator()(const Elem& x) const {
        Elem acc = base_.zero();
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<Elem> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(base_.from_int(static_cast<std::int64_t>(i)) * c_[i]);
        return Poly(base_, std::move(d));
    }

    Poly monic() const {
        if (c_.empty()) throw ZeroPolynomial();
        return scaled(c_.back().inverse());
    }

    Poly scaled(const Elem& s) const {
        std::vector<Elem> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(a * s);
        return Poly(base_, std::move(v));
    }

    /// Multiply by t^k.
    Poly shifted(std::size_t k) const {
        if (c_.empty()) return *this;
        std::vector<Elem> v(k, base_.zero());
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(base_, std::move(v));
    }

    Poly operator-() const {
        std::vector<Elem> v;
        v.reserve(c_.size());
        for (const auto& a : c_) v.push_back(-a);
        return Poly(base_, std::move(v));
    }

    Poly& operator+=(const Poly& rhs) {
        if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), base_.zero());
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] = c_[i] + rhs.c_[i];
        normalize();
        return *this;
    }
    Poly& operator-=(const Poly& rhs) {
        if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), base_.zero());
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] = c_[i] - rhs.c_[i];
        normalize();
        return *this;
    }
    Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly(a.base_);
        std::vector<Elem> v(a.c_.size() + b.c_.size() - 1, a.base_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(a.base_, std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Flattened coefficient CSV, low to high; "0" for the zero polynomial.
    std::string to_string() const {
        if (c_.empty()) return base_.format(base_.zero());
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ',';
            s += base_.format(c_[i]);
        }
        return s;
    }

   private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    K base_{};
    std::vector<Elem> c_;
};

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& f, const Poly<K>& g) {
    if (g.is_zero()) throw DivisionByZero();
    const auto& base = f.base();
    if (f.degree() < g.degree()) return {Poly<K>(base), f};
    auto r = f.coeffs();
    const auto& gc = g.coeffs();
    const bool monic = g.leading() == base.one();
    const auto lead_inv = monic ? base.one() : g.leading().inverse();
    const std::size_t dg = gc.size() - 1;
    std::vector<typename K::Element> q(r.size() - dg, base.zero());
    for (std::size_t i = r.size(); i-- > dg;) {
        if (r[i].is_zero()) continue;
        auto c = monic ? r[i] : r[i] * lead_inv;
        q[i - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j) r[i - dg + j] = r[i - dg + j] - c * gc[j];
    }
    r.resize(dg);
    return {Poly<K>(base, std::move(q)), Poly<K>(base, std::move(r))};
}

template <class K>
Poly<K> operator/(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).first;
}
template <class K>
Poly<K> operator%(const Poly<K>& f, const Poly<K>& g) {
    return divmod(f, g).second;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

template <class K>
struct ExtGcd {
    Poly<K> g, s, t;  // s*a + t*b = g, g monic
};

template <class K>
ExtGcd<K> ext_gcd(const Poly<K>& a, const Poly<K>& b) {
    const auto& base = a.base();
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>::constant(base, base.one()), s1(base);
    Poly<K> t0(base), t1 = Poly<K>::constant(base, base.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        auto s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        auto t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto inv = r0.leading().inverse();
    return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

template <class K>
Poly<K> mulmod(const Poly<K>& a, const Poly<K>& b, const Poly<K>& m) {
    return (a * b) % m;
}

template <class K>
Poly<K> powmod(Poly<K> a, mpz_class e, const Poly<K>& m) {
    Poly<K> r = Poly<K>::constant(m.base(), m.base().one()) % m;
    a = a % m;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, m);
        e >>= 1;
        if (e > 0) a = mulmod(a, a, m);
    }
    return r;
}

/// Inverse of a modulo m, when gcd(a, m) = 1.
template <class K>
Poly<K> invmod(const Poly<K>& a, const Poly<K>& m) {
    auto eg = ext_gcd(a % m, m);
    if (eg.g.degree() != 0) throw NotInvertible();
    return eg.s % m;
}

template <class K>
Poly<K> pow(Poly<K> a, unsigned e) {
    Poly<K> r = Poly<K>::constant(a.base(), a.base().one());
    while (e) {
        if (e & 1) r = r * a;
        e >>= 1;
        if (e) a = a * a;
    }
    return r;
}

/// Horner evaluation of f at an element of another ring; lift maps coefficients into it.
template <class K, class E, class Lift>
E evaluate_at(const Poly<K>& f, const E& x, const E& zero, Lift lift) {
    E acc = zero;
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + lift(*it);
    return acc;
}

}  // namespace balfact::galois

#endif
