#ifndef BALFACT_RATIONAL_LAB_HPP
#define BALFACT_RATIONAL_LAB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/core/search.hpp"
#include "balfact/galois/polyalg.hpp"
#include "balfact/rational/rat.hpp"

namespace balfact::rational {

using RatCert = BalancedCert<Rationals>;
using QPoly = galois::Poly<Rationals>;

/// Largest height among the factors.
mpz_class cert_height(const RatCert& c);

/// k = 5: (a/2, a/2, -a, 2/a, -2/a).  k = 6: the c-construction with c = max(ceil|a|, 1) + 1.
/// k >= 7: a certificate for -a with k - 2 factors, followed by 1 and -1.
RatCert universal(const Rat& a, unsigned k);

/// Nonzero rationals of height <= H in search order: height, then |numerator|, then
/// denominator, positive before negative.
std::vector<Rat> height_enumeration(unsigned H);

/// First pair (a1, a2), lexicographic in enumeration index within increasing height shells,
/// for which T^2 + (a1 + a2) T + a / (a1 a2) has rational roots a3, a4.
/// The budget counts tested pairs.
std::optional<RatCert> four_factor_search(const Rat& a, unsigned height_bound, const SearchOptions& opt = {});

/// a = a1 a2 (-a1 - a2) with a1 of height <= H, first in enumeration order.
std::optional<RatCert> three_factor_search(const Rat& a, unsigned height_bound, const SearchOptions& opt = {});

/// a = b * (-b), present exactly when -a is a rational square.
std::optional<RatCert> two_factor(const Rat& a);

enum class MSOutcome { DegreeBound, AllDerivativesVanish };

struct MSVerdict {
    MSOutcome outcome;
    int deg_x, deg_y, deg_z;
    int distinct_roots;  // degree of the radical of xyz
};

const char* to_string(MSOutcome o);
Json to_json(const MSVerdict& v);

/// Mason-Stothers for coprime x + y + z = 0, none zero.  PreconditionViolated on
/// bad input; a third outcome raises Error.
MSVerdict mason_stothers_check(const galois::FqPoly& x, const galois::FqPoly& y, const galois::FqPoly& z);
MSVerdict mason_stothers_check(const QPoly& x, const QPoly& y, const QPoly& z);

struct RefutationHit {
    galois::FqPoly x, y, z;
    unsigned s;  // multiplicity of t in xyz, not divisible by 3
};

struct RefutationReport {
    std::uint64_t triples = 0;  // coprime zero-sum triples examined
    std::vector<RefutationHit> hits;
};

/// All coprime x + y + z = 0 over the field with deg <= max_deg, keeping those with
/// xyz = t^s v^3 and 3 not dividing s.  The budget counts (x, y) pairs.
RefutationReport theorem3_refutation_search(const galois::Field& F, unsigned max_deg, const SearchOptions& opt = {});

}  // namespace balfact::rational

#endif
