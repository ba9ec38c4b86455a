#ifndef BALFACT_IO_IO_HPP
#define BALFACT_IO_IO_HPP

#include <string>
#include <string_view>
#include <variant>

#include "balfact/core/cert.hpp"
#include "balfact/core/search.hpp"
#include "balfact/galois/field.hpp"
#include "balfact/local/local_algebra.hpp"
#include "balfact/matrix/matrix.hpp"
#include "balfact/quotient/quotient.hpp"
#include "balfact/rational/rat.hpp"

namespace balfact::io {

using AnyRing = std::variant<galois::Field, local::LocalAlgebra, quotient::QuotientAlgebra, matrix::MatrixRing,
                             rational::Rationals>;

/// "Q", "local:...", "quot:...", "mat:..." or a field descriptor.
AnyRing parse_ring(std::string_view descriptor);

std::string descriptor(const AnyRing& ring);

struct VerifyOutcome {
    bool ok;
    std::string ring;
    unsigned k;
};

/// Re-checks a certificate JSON object.  ParseError on malformed input.
VerifyOutcome verify_json(const Json& j);

template <FiniteRing R>
Json to_json(const R& ring, unsigned k, const CensusResult<R>& c) {
    Json j;
    j["ring"] = ring.descriptor();
    j["k"] = k;
    Json miss = Json::array();
    for (const auto& e : c.missing) miss.push_back(ring.format(e));
    j["missing"] = std::move(miss);
    j["decomposable_count"] = c.decomposable.size();
    return j;
}

}  // namespace balfact::io

#endif
