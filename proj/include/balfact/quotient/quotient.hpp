#ifndef BALFACT_QUOTIENT_QUOTIENT_HPP
#define BALFACT_QUOTIENT_QUOTIENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/galois/polyalg.hpp"
#include "balfact/local/local_algebra.hpp"
#include "balfact/local/theorem4.hpp"

namespace balfact::quotient {

using galois::Field;
using galois::FieldElem;
using galois::FqPoly;

class QuotientElem;
struct Component;

/// F[x]/(f) for a monic f of degree >= 1.  Cheap to copy; copies share the component cache.
class QuotientAlgebra {
   public:
    using Element = QuotientElem;

    QuotientAlgebra() = default;
    QuotientAlgebra(Field F, FqPoly f);

    /// "quot:<field descriptor>:<coefficients of f, low to high>"
    static QuotientAlgebra parse(std::string_view descriptor);
    std::string descriptor() const;

    const Field& base() const;
    const FqPoly& modulus() const;
    unsigned dimension() const;
    std::uint64_t characteristic() const { return base().characteristic(); }

    QuotientElem zero() const;
    QuotientElem one() const;
    QuotientElem from_int(std::int64_t v) const;
    QuotientElem x() const;
    /// Reduces g modulo f.
    QuotientElem from_poly(const FqPoly& g) const;

    QuotientElem add(const QuotientElem& a, const QuotientElem& b) const;
    QuotientElem sub(const QuotientElem& a, const QuotientElem& b) const;
    QuotientElem mul(const QuotientElem& a, const QuotientElem& b) const;
    QuotientElem neg(const QuotientElem& a) const;
    bool equal(const QuotientElem& a, const QuotientElem& b) const;
    bool contains(const QuotientElem& a) const;

    /// Coordinate CSV of the dimension-many coefficients of the reduced representative.
    std::string format(const QuotientElem& a) const;
    QuotientElem parse_element(std::string_view s) const;

    std::uint64_t size() const;
    QuotientElem element_at(std::uint64_t index) const;
    std::uint64_t index_of(const QuotientElem& a) const;

    bool is_unit(const QuotientElem& a) const;
    bool is_nilpotent(const QuotientElem& a) const;
    bool divides(const QuotientElem& u, const QuotientElem& v) const;

    /// Local components along the factorisation of f, computed once and verified.
    const std::vector<Component>& components() const;

    friend bool operator==(const QuotientAlgebra& a, const QuotientAlgebra& b);

   private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

class QuotientElem {
   public:
    QuotientElem() = default;
    QuotientElem(QuotientAlgebra alg, FqPoly rep) : alg_(std::move(alg)), rep_(std::move(rep)) {}

    const QuotientAlgebra& algebra() const noexcept { return alg_; }
    const FqPoly& rep() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.is_zero(); }

    QuotientElem& operator+=(const QuotientElem& rhs);
    QuotientElem& operator-=(const QuotientElem& rhs);
    QuotientElem& operator*=(const QuotientElem& rhs);
    friend QuotientElem operator+(QuotientElem a, const QuotientElem& b) { return a += b; }
    friend QuotientElem operator-(QuotientElem a, const QuotientElem& b) { return a -= b; }
    friend QuotientElem operator*(QuotientElem a, const QuotientElem& b) { return a *= b; }
    QuotientElem operator-() const { return QuotientElem(alg_, -rep_); }

    QuotientElem inverse() const;

    friend bool operator==(const QuotientElem& a, const QuotientElem& b) {
        return a.alg_ == b.alg_ && a.rep_ == b.rep_;
    }

    std::string to_string() const { return alg_.format(*this); }

   private:
    void check(const QuotientElem& rhs) const;

    QuotientAlgebra alg_;
    FqPoly rep_;
};

/// One summand F[x]/(p^k) of the CRT splitting, identified with GF(q^d)[y]/(y^k).
struct Component {
    FqPoly p;               // monic irreducible factor
    unsigned k;             // multiplicity
    unsigned d;             // deg p
    FqPoly pk;              // p^k
    FqPoly idempotent;      // e as a representative modulo f
    QuotientAlgebra piece;  // F[x]/(p^k)
    QuotientElem xi;        // root of p in piece with xi = x mod p
    QuotientElem nu;        // x - xi
    std::vector<QuotientElem> xi_powers;  // 1, xi, ..., xi^{d-1}
    Field big;              // GF(q^d)
    FieldElem theta;        // image of xi in big
    local::LocalAlgebra local;

    // coefficient embedding F -> big and its inverse on F[theta]
    std::vector<FieldElem> base_gen_powers;         // images of 1, g, ..., g^{n-1} for the generator g of F
    std::vector<std::vector<std::uint32_t>> unmix;  // GF(p)-matrix sending big coords to F-coefficients of theta powers

    // to_local / from_local as GF(p)-matrices on coordinate vectors; empty for large algebras
    std::vector<std::vector<std::uint32_t>> to_mat, from_mat;

    FieldElem embed(const FieldElem& c) const;
};

std::vector<Component> split(const QuotientAlgebra& A);

/// a(theta + y) after reduction modulo p^k.
local::LocalElem to_local(const Component& c, const QuotientElem& a);
/// Inverse isomorphism followed by multiplication by the idempotent.
QuotientElem from_local(const QuotientAlgebra& A, const Component& c, const local::LocalElem& u);

/// Direct evaluation paths; to_local and from_local use precomputed linear maps built from these.
local::LocalElem to_local_exact(const Component& c, const QuotientElem& a);
QuotientElem from_local_exact(const QuotientAlgebra& A, const Component& c, const local::LocalElem& u);

using QuotientCert = BalancedCert<QuotientAlgebra>;

/// Memo of local decompositions keyed by (residue field, nilpotency, element, n), for sweeps that
/// revisit the same local algebra.  Obstructions are remembered too.  Not thread-safe.
class LocalResultCache {
   public:
    const local::LocalCert& get(const local::LocalElem& u, unsigned n, const local::ResidueCertSource& source);
    std::size_t size() const { return entries_.size(); }

   private:
    struct Key {
        const galois::FieldCtx* field;
        unsigned k;
        std::uint64_t index;
        unsigned n;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    struct Entry {
        std::optional<local::LocalCert> cert;
        int error_kind = 0;  // 1 residue obstruction, 2 two-element residue field
        std::string message;
    };
    std::unordered_map<Key, Entry, KeyHash> entries_;
};

/// Runs the local construction in each component and recombines factor-wise.
/// A ResidueFieldObstruction or TwoElementResidueField names the failing component.
QuotientCert balanced_decompose(const QuotientElem& a, unsigned n,
                                const local::ResidueCertSource& source = local::default_residue_source(),
                                LocalResultCache* cache = nullptr);

}  // namespace balfact::quotient

#endif
