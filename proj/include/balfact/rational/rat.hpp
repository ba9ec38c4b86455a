#ifndef BALFACT_RATIONAL_RAT_HPP
#define BALFACT_RATIONAL_RAT_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "balfact/error.hpp"

namespace balfact::rational {

/// Exact rational in lowest terms with positive denominator.
class Rat {
   public:
    Rat() = default;
    Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rat parse(std::string_view s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& value() const noexcept { return v_; }

    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool is_one() const noexcept { return v_ == 1; }
    int sign() const noexcept { return sgn(v_); }
    /// max(|num|, den)
    mpz_class height() const;

    Rat inverse() const;
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    Rat& operator+=(const Rat& r) { v_ += r.v_; return *this; }
    Rat& operator-=(const Rat& r) { v_ -= r.v_; return *this; }
    Rat& operator*=(const Rat& r) { v_ *= r.v_; return *this; }
    Rat& operator/=(const Rat& r);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    /// "num/den", or just "num" when den = 1.
    std::string to_string() const { return v_.get_str(); }

   private:
    mpq_class v_{0};
};

/// Square root in Q when it exists (num and den both perfect squares).
bool rational_sqrt(const Rat& a, Rat& out);

/// The field Q as a ring handle.
class Rationals {
   public:
    using Element = Rat;

    std::string descriptor() const { return "Q"; }
    std::uint64_t characteristic() const { return 0; }

    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_int(std::int64_t v) const { return Rat(static_cast<long>(v)); }
    Rat parse_element(std::string_view s) const { return Rat::parse(s); }
    std::string format(const Rat& a) const { return a.to_string(); }

    Rat add(const Rat& a, const Rat& b) const { return a + b; }
    Rat sub(const Rat& a, const Rat& b) const { return a - b; }
    Rat mul(const Rat& a, const Rat& b) const { return a * b; }
    Rat neg(const Rat& a) const { return -a; }
    bool equal(const Rat& a, const Rat& b) const { return a == b; }

    friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

}  // namespace balfact::rational

#endif
