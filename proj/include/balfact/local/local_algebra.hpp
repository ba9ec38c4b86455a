#ifndef BALFACT_LOCAL_LOCAL_ALGEBRA_HPP
#define BALFACT_LOCAL_LOCAL_ALGEBRA_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "balfact/galois/field.hpp"

namespace balfact::local {

using galois::Field;
using galois::FieldElem;

class LocalElem;

/// G[y]/(y^k): truncated power series over a finite field.
class LocalAlgebra {
   public:
    using Element = LocalElem;

    LocalAlgebra() = default;
    LocalAlgebra(Field G, unsigned k);

    /// "local:<field descriptor>:<k>"
    static LocalAlgebra parse(std::string_view descriptor);
    std::string descriptor() const;

    const Field& residue_field() const noexcept { return G_; }
    unsigned nilpotency() const noexcept { return k_; }
    std::uint64_t characteristic() const { return G_.characteristic(); }

    LocalElem zero() const;
    LocalElem one() const;
    LocalElem from_int(std::int64_t v) const;
    LocalElem constant(const FieldElem& c) const;
    LocalElem y() const;
    /// Coefficients low to high; shorter vectors are zero-padded, longer ones truncated.
    LocalElem from_coeffs(std::vector<FieldElem> c) const;

    LocalElem add(const LocalElem& a, const LocalElem& b) const;
    LocalElem sub(const LocalElem& a, const LocalElem& b) const;
    LocalElem mul(const LocalElem& a, const LocalElem& b) const;
    LocalElem neg(const LocalElem& a) const;
    bool equal(const LocalElem& a, const LocalElem& b) const;
    bool contains(const LocalElem& a) const;

    std::string format(const LocalElem& a) const;
    /// Coordinate CSV of all k coefficients, each as a field element.
    LocalElem parse_element(std::string_view s) const;

    std::uint64_t size() const;
    /// Lexicographic on (c_0, ..., c_{k-1}) with field elements in canonical order.
    LocalElem element_at(std::uint64_t index) const;
    std::uint64_t index_of(const LocalElem& a) const;

    bool is_unit(const LocalElem& a) const;
    bool is_nilpotent(const LocalElem& a) const;
    FieldElem residue(const LocalElem& a) const;
    /// y-adic valuation; k for zero.
    unsigned valuation(const LocalElem& a) const;
    /// u divides v in the ring.
    bool divides(const LocalElem& u, const LocalElem& v) const;
    /// Some w with u*w = v; throws NotInvertible when u does not divide v.
    LocalElem exact_divide(const LocalElem& v, const LocalElem& u) const;

    friend bool operator==(const LocalAlgebra& a, const LocalAlgebra& b) { return a.G_ == b.G_ && a.k_ == b.k_; }

   private:
    Field G_;
    unsigned k_ = 1;
};

class LocalElem {
   public:
    LocalElem() = default;
    LocalElem(LocalAlgebra alg, std::vector<FieldElem> c) : alg_(std::move(alg)), c_(std::move(c)) {}

    const LocalAlgebra& algebra() const noexcept { return alg_; }
    const std::vector<FieldElem>& coeffs() const noexcept { return c_; }
    const FieldElem& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_unit() const { return !c_[0].is_zero(); }
    FieldElem residue() const { return c_[0]; }

    LocalElem& operator+=(const LocalElem& rhs);
    LocalElem& operator-=(const LocalElem& rhs);
    LocalElem& operator*=(const LocalElem& rhs);

    friend LocalElem operator+(LocalElem a, const LocalElem& b) { return a += b; }
    friend LocalElem operator-(LocalElem a, const LocalElem& b) { return a -= b; }
    friend LocalElem operator*(LocalElem a, const LocalElem& b) { return a *= b; }
    LocalElem operator-() const;

    /// Newton iteration u <- u(2 - a u), doubling the number of correct terms.
    LocalElem inverse() const;

    friend bool operator==(const LocalElem& a, const LocalElem& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

    std::string to_string() const;

   private:
    void check(const LocalElem& rhs) const;

    LocalAlgebra alg_;
    std::vector<FieldElem> c_;
};

}  // namespace balfact::local

#endif
