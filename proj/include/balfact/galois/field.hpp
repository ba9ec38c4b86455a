#ifndef BALFACT_GALOIS_FIELD_HPP
#define BALFACT_GALOIS_FIELD_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include "balfact/error.hpp"

namespace balfact::galois {

using Coords = boost::container::small_vector<std::uint32_t, 8>;

class FieldCtx;
class Field;

/// Element of GF(p^n) in the power basis of the modulus root t.
/// Holds a non-owning pointer to its context; contexts are interned and never freed.
class FieldElem {
   public:
    FieldElem() = default;
    FieldElem(const FieldCtx* ctx, Coords coords) : ctx_(ctx), c_(std::move(coords)) {}

    const FieldCtx* ctx() const noexcept { return ctx_; }
    Field field() const;
    std::span<const std::uint32_t> coords() const noexcept { return {c_.data(), c_.size()}; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElem& operator+=(const FieldElem& rhs);
    FieldElem& operator-=(const FieldElem& rhs);
    FieldElem& operator*=(const FieldElem& rhs);
    FieldElem& operator/=(const FieldElem& rhs);

    friend FieldElem operator+(FieldElem lhs, const FieldElem& rhs) { return lhs += rhs; }
    friend FieldElem operator-(FieldElem lhs, const FieldElem& rhs) { return lhs -= rhs; }
    friend FieldElem operator*(FieldElem lhs, const FieldElem& rhs) { return lhs *= rhs; }
    friend FieldElem operator/(FieldElem lhs, const FieldElem& rhs) { return lhs /= rhs; }
    FieldElem operator-() const;

    FieldElem inverse() const;
    FieldElem pow(const mpz_class& e) const;
    FieldElem pow(std::uint64_t e) const;

    friend bool operator==(const FieldElem& a, const FieldElem& b) noexcept {
        return a.ctx_ == b.ctx_ && a.c_ == b.c_;
    }
    /// Canonical order: lexicographic on coordinate vectors.
    friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b);

    std::string to_string() const;

   private:
    friend class FieldCtx;
    const FieldCtx* ctx_ = nullptr;
    Coords c_;
};

/// Lightweight handle to an interned GF(p^n) context.  Copy freely.
class Field {
   public:
    using Element = FieldElem;

    Field() = default;
    explicit Field(const FieldCtx* ctx) : ctx_(ctx) {}

    static Field prime(std::uint32_t p);
    /// Modulus drawn by random_irreducible with the given seed.
    static Field make(std::uint32_t p, unsigned n, std::uint64_t seed = 0);
    /// Explicit monic modulus, coefficients low to high (length n+1).
    static Field with_modulus(std::uint32_t p, std::span<const std::uint32_t> modulus);
    /// Accepts "p", "q" for a prime power q, "p^n" or "p^n/c0,c1,...,cn".
    static Field parse(std::string_view descriptor, std::uint64_t seed = 0);
    static Field of_order(std::uint64_t q, std::uint64_t seed = 0);

    const FieldCtx* ctx() const noexcept { return ctx_; }
    std::string descriptor() const;

    std::uint32_t characteristic() const;
    unsigned degree() const;
    const mpz_class& order() const;
    /// Order as a 64-bit integer; throws if it does not fit.
    std::uint64_t size() const;
    std::span<const std::uint32_t> modulus() const;
    Field prime_subfield() const;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(std::int64_t v) const;
    FieldElem from_coords(std::span<const std::uint32_t> coords) const;
    /// The root t of the modulus.
    FieldElem gen() const;

    FieldElem parse_element(std::string_view s) const;
    std::string format(const FieldElem& a) const { return a.to_string(); }

    FieldElem add(const FieldElem& a, const FieldElem& b) const { return a + b; }
    FieldElem sub(const FieldElem& a, const FieldElem& b) const { return a - b; }
    FieldElem mul(const FieldElem& a, const FieldElem& b) const { return a * b; }
    FieldElem neg(const FieldElem& a) const { return -a; }
    bool equal(const FieldElem& a, const FieldElem& b) const { return a == b; }
    bool contains(const FieldElem& a) const noexcept { return a.ctx() == ctx_; }

    /// Canonical enumeration: index digits base p, first coordinate most significant.
    FieldElem element_at(std::uint64_t index) const;
    std::uint64_t index_of(const FieldElem& a) const;
    std::vector<FieldElem> elements() const;

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.ctx_ == b.ctx_; }

   private:
    const FieldCtx* ctx_ = nullptr;
};

class FieldCtx {
   public:
    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    unsigned n() const noexcept { return n_; }
    std::span<const std::uint32_t> modulus() const noexcept { return modulus_; }
    const mpz_class& order() const noexcept { return q_; }
    std::uint64_t order_u64() const noexcept { return q64_; }  // 0 when q >= 2^63
    const std::string& descriptor() const noexcept { return descriptor_; }

    /// Fixed non-square (odd characteristic only), least in canonical order.
    const FieldElem& non_square() const;
    /// Fixed element of absolute trace 1 (characteristic 2 only).
    const FieldElem& trace_one() const;

    void add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const;
    void sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const;
    void mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const;
    void inverse(std::span<const std::uint32_t> a, Coords& out) const;

    std::uint32_t add_p(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
    }
    std::uint32_t sub_p(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
    std::uint32_t mul_p(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    }
    std::uint32_t inv_p(std::uint32_t a) const;

   private:
    friend class Field;
    FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus);

    std::uint32_t p_;
    unsigned n_;
    std::vector<std::uint32_t> modulus_;
    mpz_class q_;
    std::uint64_t q64_;
    std::string descriptor_;

    static constexpr std::uint64_t kLogTableLimit = 1u << 16;
    std::uint32_t encode(std::span<const std::uint32_t> a) const noexcept;
    void decode(std::uint32_t v, Coords& out) const;
    void mul_poly(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const;

    struct Lazy;
    const Lazy& log_tables() const;
    Lazy* lazy_;
};

/// Absolute trace to the prime field, returned as a residue in [0, p).
std::uint32_t trace(const FieldElem& a);
bool is_square(const FieldElem& a);
/// Lexicographically least square root, or nothing.
std::optional<FieldElem> sqrt(const FieldElem& a);
/// Lexicographically least cube root, or nothing.
std::optional<FieldElem> cube_root(const FieldElem& a);
/// Solutions w of w^2 + w = c in characteristic 2 (zero or two roots, sorted).
std::vector<FieldElem> artin_schreier_roots(const FieldElem& c);
/// Distinct roots of a2*T^2 + a1*T + a0 (a2 != 0), sorted canonically.
std::vector<FieldElem> quadratic_roots(const FieldElem& a2, const FieldElem& a1, const FieldElem& a0);
/// Number of distinct roots of the quadratic, without computing them.
unsigned quadratic_root_count(const FieldElem& a2, const FieldElem& a1, const FieldElem& a0);

}  // namespace balfact::galois

#endif
