#ifndef BALFACT_SOLVER_FIELD_SOLVER_HPP
#define BALFACT_SOLVER_FIELD_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/core/search.hpp"
#include "balfact/galois/field.hpp"

namespace balfact::solver {

using galois::Field;
using galois::FieldElem;
using FieldCert = BalancedCert<Field>;

struct Classification {
    std::uint64_t q;
    unsigned k;
    bool answer;
    std::string rule;
};

/// Whether every element of GF(q) has a balanced k-factorisation.
Classification classify(std::uint64_t q, unsigned k);

/// Elements of GF(q) without a balanced k-factorisation: the a with -a a non-square when k = 2
/// in odd characteristic, and the small-field exceptions q in {2,3,4,5,7} for k >= 3.
std::vector<FieldElem> exception_set(const Field& F, unsigned k);

/// A verified certificate for a, or nothing exactly when a has no balanced k-factorisation.
std::optional<FieldCert> construct(const FieldElem& a, unsigned k);

/// (a1, a2) with a1*a2*prod(tail) = a and a1 + a2 + sum(tail) = 0.
std::optional<std::pair<FieldElem, FieldElem>> two_slot_solve(const FieldElem& a, std::span<const FieldElem> tail);

/// Exhaustive sweep over nonzero tails of length k-2, solving for the first two slots.
/// Complete for a != 0.
std::optional<FieldCert> tail_search(const FieldElem& a, unsigned k, bool nonpower_only,
                                     std::uint64_t budget = kDefaultBudget);

/// A certificate with at least two distinct factors, if one exists.
std::optional<FieldCert> construct_nonpower(const FieldElem& a, unsigned k);

/// Least k in [2, k_max] for which construct succeeds.
std::optional<unsigned> min_k(const FieldElem& a, unsigned k_max);

/// The literal small-field table used by construct, as certificates.
std::vector<FieldCert> stored_certificates();

Json to_json(const Classification& c);

}  // namespace balfact::solver

#endif
