#ifndef BALFACT_LOCAL_HENSEL_HPP
#define BALFACT_LOCAL_HENSEL_HPP

#include "balfact/error.hpp"
#include "balfact/galois/poly.hpp"

namespace balfact::local {

/// Commutative rings where nilpotency and invertibility can be decided.
template <class R>
concept NilpotentAware = requires(const R& r, const typename R::Element& e) {
    { r.is_nilpotent(e) } -> std::convertible_to<bool>;
    { r.is_unit(e) } -> std::convertible_to<bool>;
    { e.inverse() } -> std::convertible_to<typename R::Element>;
};

/// Root b of f with d - b divisible by f(d), given f(d) nilpotent and f'(d) invertible.
/// Newton steps b <- b - f(b)/f'(b); each step at least doubles the nilpotency order of f(b).
template <NilpotentAware R>
typename R::Element hensel_root(const galois::Poly<R>& f, const typename R::Element& d) {
    const R& ring = f.base();
    const auto fd = f(d);
    if (!ring.is_nilpotent(fd)) throw PreconditionViolated("hensel_root: f(d) is not nilpotent");
    const auto df = f.derivative();
    if (!ring.is_unit(df(d))) throw PreconditionViolated("hensel_root: f'(d) is not invertible");
    auto b = d;
    for (int step = 0; step < 64; ++step) {
        const auto fb = f(b);
        if (fb.is_zero()) {
            if constexpr (requires { ring.divides(fd, d - b); }) {
                if (!ring.divides(fd, d - b)) throw Error("hensel_root: lifted root is not congruent to d");
            }
            return b;
        }
        b = b - fb * df(b).inverse();
    }
    throw Error("hensel_root: Newton iteration did not terminate");
}

}  // namespace balfact::local

#endif
