#ifndef BALFACT_CORE_RING_HPP
#define BALFACT_CORE_RING_HPP

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace balfact {

/// A unital ring handle whose elements are plain values.
template <class R>
concept Ring = requires(const R& r, const typename R::Element& a, std::string_view s) {
    { r.descriptor() } -> std::convertible_to<std::string>;
    { r.zero() } -> std::convertible_to<typename R::Element>;
    { r.one() } -> std::convertible_to<typename R::Element>;
    { r.add(a, a) } -> std::convertible_to<typename R::Element>;
    { r.mul(a, a) } -> std::convertible_to<typename R::Element>;
    { r.neg(a) } -> std::convertible_to<typename R::Element>;
    { r.equal(a, a) } -> std::convertible_to<bool>;
    { r.format(a) } -> std::convertible_to<std::string>;
    { r.parse_element(s) } -> std::convertible_to<typename R::Element>;
};

/// Finite rings expose a canonical enumeration of their elements.
template <class R>
concept FiniteRing = Ring<R> && requires(const R& r, const typename R::Element& a, std::uint64_t i) {
    { r.size() } -> std::convertible_to<std::uint64_t>;
    { r.element_at(i) } -> std::convertible_to<typename R::Element>;
    { r.index_of(a) } -> std::convertible_to<std::uint64_t>;
};

template <Ring R>
bool contains(const R& r, const typename R::Element& a) {
    if constexpr (requires { r.contains(a); }) {
        return r.contains(a);
    } else {
        return true;
    }
}

}  // namespace balfact

#endif
