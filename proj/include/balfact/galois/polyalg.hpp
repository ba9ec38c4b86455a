#ifndef BALFACT_GALOIS_POLYALG_HPP
#define BALFACT_GALOIS_POLYALG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "balfact/galois/field.hpp"
#include "balfact/galois/poly.hpp"

namespace balfact::galois {

using FqPoly = Poly<Field>;

struct FactorPower {
    FqPoly factor;  // monic irreducible
    unsigned multiplicity;
};
using Factorization = std::vector<FactorPower>;

/// Rabin's irreducibility test.
bool is_irreducible(const FqPoly& f);

/// Monic irreducible polynomial of the given degree over `ground`, deterministic in seed.
FqPoly random_irreducible(const Field& ground, unsigned degree, std::uint64_t seed = 0);

/// f(t) = g(t^p) with f' = 0; returns the polynomial h with h^p = f.
FqPoly pth_root(const FqPoly& f);

/// Pairs (squarefree part, multiplicity), multiplicities distinct.
Factorization squarefree_decomposition(const FqPoly& f);

/// For squarefree monic f: pairs (product of all irreducible factors of degree d, d).
std::vector<std::pair<FqPoly, unsigned>> distinct_degree(const FqPoly& f);

/// Cantor-Zassenhaus split of a product of distinct irreducibles of degree d.
std::vector<FqPoly> equal_degree(const FqPoly& f, unsigned d, std::mt19937_64& rng);

/// Full factorisation of a monic f, deg f >= 1.  Factors sorted by degree then coefficients.
Factorization factor(const FqPoly& f, std::uint64_t seed = 0);

/// Distinct roots in the coefficient field, sorted canonically.
std::vector<FieldElem> roots(const FqPoly& f, std::uint64_t seed = 0);

/// Monic squarefree part.  Its degree counts the distinct roots over the algebraic closure.
FqPoly radical(const FqPoly& f);

/// True when the polynomial has no repeated factor.
bool is_squarefree(const FqPoly& f);

/// Canonical order on polynomials: degree, then coefficient vectors from low to high.
bool canonical_less(const FqPoly& a, const FqPoly& b);

/// a * b mod m on raw coordinates; a and b reduced, m monic.  Falls back to the generic path otherwise.
FqPoly mulmod_fast(const FqPoly& a, const FqPoly& b, const FqPoly& m);

FqPoly parse_poly(const Field& F, std::string_view csv);

}  // namespace balfact::galois

#endif
