#ifndef BALFACT_CORE_CERT_HPP
#define BALFACT_CORE_CERT_HPP

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "balfact/core/ring.hpp"
#include "balfact/error.hpp"

namespace balfact {

using Json = nlohmann::ordered_json;

/// A claimed balanced factorisation: target = f_1 * ... * f_k and f_1 + ... + f_k = 0.
template <Ring R>
struct BalancedCert {
    using Element = typename R::Element;

    R ring;
    Element target;
    std::vector<Element> factors;
    unsigned k = 0;
    bool power = false;
    std::string provenance;
};

template <Ring R>
bool all_equal(const R& ring, const std::vector<typename R::Element>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!ring.equal(v[i], v[0])) return false;
    return true;
}

template <Ring R>
BalancedCert<R> make_cert(R ring, typename R::Element target, std::vector<typename R::Element> factors,
                          std::string provenance) {
    BalancedCert<R> c{std::move(ring), std::move(target), std::move(factors), 0, false, std::move(provenance)};
    c.k = static_cast<unsigned>(c.factors.size());
    c.power = all_equal(c.ring, c.factors);
    return c;
}

template <Ring R>
typename R::Element product(const R& ring, const std::vector<typename R::Element>& v) {
    auto acc = ring.one();
    for (const auto& x : v) acc = ring.mul(acc, x);
    return acc;
}

template <Ring R>
typename R::Element sum(const R& ring, const std::vector<typename R::Element>& v) {
    auto acc = ring.zero();
    for (const auto& x : v) acc = ring.add(acc, x);
    return acc;
}

/// Product (left to right) equals the target, the factors sum to zero, the count is k,
/// and the power flag is consistent.
template <Ring R>
bool verify(const BalancedCert<R>& c) {
    if (!contains(c.ring, c.target)) throw ContextMismatch();
    for (const auto& f : c.factors)
        if (!contains(c.ring, f)) throw ContextMismatch();
    if (c.factors.size() != c.k || c.k < 2) return false;
    if (c.power != all_equal(c.ring, c.factors)) return false;
    return c.ring.equal(product(c.ring, c.factors), c.target) && c.ring.equal(sum(c.ring, c.factors), c.ring.zero());
}

/// Certificate for -target with two more factors: append 1 and -1.
template <Ring R>
BalancedCert<R> pad(const BalancedCert<R>& c) {
    auto f = c.factors;
    f.push_back(c.ring.one());
    f.push_back(c.ring.neg(c.ring.one()));
    auto prov = c.provenance.find("+pad") == std::string::npos ? c.provenance + "+pad" : c.provenance;
    return make_cert(c.ring, c.ring.neg(c.target), std::move(f), std::move(prov));
}

template <Ring R>
Json to_json(const BalancedCert<R>& c) {
    Json j;
    j["ring"] = c.ring.descriptor();
    j["target"] = c.ring.format(c.target);
    j["k"] = c.k;
    Json fs = Json::array();
    for (const auto& f : c.factors) fs.push_back(c.ring.format(f));
    j["factors"] = std::move(fs);
    j["power"] = c.power;
    j["provenance"] = c.provenance;
    return j;
}

/// Reads a certificate for an already-parsed ring.  Fields are taken as given, not recomputed.
template <Ring R>
BalancedCert<R> cert_from_json(R ring, const Json& j) {
    try {
        BalancedCert<R> c;
        c.target = ring.parse_element(j.at("target").get<std::string>());
        for (const auto& f : j.at("factors")) c.factors.push_back(ring.parse_element(f.get<std::string>()));
        c.k = j.at("k").get<unsigned>();
        c.power = j.at("power").get<bool>();
        c.provenance = j.contains("provenance") ? j.at("provenance").get<std::string>() : std::string("external");
        c.ring = std::move(ring);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
    }
}

}  // namespace balfact

#endif
