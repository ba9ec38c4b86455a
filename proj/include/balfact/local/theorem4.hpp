#ifndef BALFACT_LOCAL_THEOREM4_HPP
#define BALFACT_LOCAL_THEOREM4_HPP

#include <functional>
#include <optional>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/local/local_algebra.hpp"

namespace balfact::local {

using LocalCert = BalancedCert<LocalAlgebra>;

/// Supplies a non-power balanced n-factorisation of a residue, or nothing.
using ResidueCertSource = std::function<std::optional<std::vector<FieldElem>>(const FieldElem&, unsigned)>;

/// field_solver::construct_nonpower, memoised per (field, residue, n).  Thread-safe.
ResidueCertSource default_residue_source();

/// Non-power balanced n-factorisation of a in G[y]/(y^k), lifted from the residue field.
/// Throws ResidueFieldObstruction or TwoElementResidueField when the construction does not apply.
LocalCert theorem4_decompose(const LocalElem& a, unsigned n, const ResidueCertSource& source = default_residue_source());

}  // namespace balfact::local

#endif
