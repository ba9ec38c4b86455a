#include "balfact/io/io.hpp"

namespace balfact::io {

AnyRing parse_ring(std::string_view d) {
    if (d == "Q") return rational::Rationals{};
    if (d.starts_with("local:")) return local::LocalAlgebra::parse(d);
    if (d.starts_with("quot:")) return quotient::QuotientAlgebra::parse(d);
    if (d.starts_with("mat:")) return matrix::MatrixRing::parse(d);
    return galois::Field::parse(d);
}

std::string descriptor(const AnyRing& ring) {
    return std::visit([](const auto& r) { return std::string(r.descriptor()); }, ring);
}

VerifyOutcome verify_json(const Json& j) {
    if (!j.is_object() || !j.contains("ring") || !j["ring"].is_string()) throw ParseError("certificate needs a ring descriptor");
    auto ring = parse_ring(j["ring"].get<std::string>());
    return std::visit(
        [&](const auto& r) {
            auto c = cert_from_json(r, j);
            return VerifyOutcome{verify(c), r.descriptor(), c.k};
        },
        ring);
}

}  // namespace balfact::io
