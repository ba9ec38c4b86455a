#ifndef BALFACT_TESTS_HENSEL_REFERENCE_HPP
#define BALFACT_TESTS_HENSEL_REFERENCE_HPP

#include <optional>

#include "balfact/galois/poly.hpp"
#include "balfact/local/local_algebra.hpp"

namespace balfact::testing {

// Digit-by-digit lift in G[y]/(y^k): kill the lowest nonzero y-coefficient of f(b)
// with a correction c*y^v, c = -f(b)_v / f'(b)_0.  Independent of the Newton code.
inline std::optional<local::LocalElem> induction_lift(const galois::Poly<local::LocalAlgebra>& f,
                                                      const local::LocalElem& d) {
    const auto& A = f.base();
    const unsigned k = A.nilpotency();
    auto df = f.derivative();
    if (df(d)[0].is_zero() || !f(d)[0].is_zero()) return std::nullopt;
    auto b = d;
    for (unsigned v = 1; v < k; ++v) {
        auto fb = f(b);
        for (unsigned i = 0; i < v; ++i)
            if (!fb[i].is_zero()) return std::nullopt;
        if (fb[v].is_zero()) continue;
        std::vector<galois::FieldElem> c(k, A.residue_field().zero());
        c[v] = -fb[v] / df(b)[0];
        b = b + A.from_coeffs(std::move(c));
    }
    if (!f(b).is_zero()) return std::nullopt;
    return b;
}

}  // namespace balfact::testing

#endif
