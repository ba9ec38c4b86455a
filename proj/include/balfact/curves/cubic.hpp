#ifndef BALFACT_CURVES_CUBIC_HPP
#define BALFACT_CURVES_CUBIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/core/search.hpp"
#include "balfact/galois/field.hpp"

namespace balfact::curves {

using galois::Field;
using galois::FieldElem;

/// A: XY(X+Y) = -aZ^3.  B: XY(X+Y+Z) = -aZ^3.
enum class Family { A, B };

enum class SingularReason { AZero, CharThree, TwentySevenA, Nonsingular };

struct CubicFamily {
    Family family;
    FieldElem a;
};

struct Singularity {
    bool singular;
    SingularReason reason;
};

struct CurveReport {
    std::uint64_t q;
    Family family;
    FieldElem a;
    std::uint64_t projective_count;
    std::uint64_t affine_count;
    bool singular;
    SingularReason reason;
    std::optional<bool> hasse_ok;  // only for nonsingular members
};

struct HasseSweep {
    std::uint64_t q;
    Family family;
    bool threshold;  // q + 1 - 2 sqrt(q) > 3
    std::vector<CurveReport> reports;
};

Singularity is_singular(const CubicFamily& c);

/// Affine solutions plus the three points at infinity, counted in O(q).
CurveReport count_points(const CubicFamily& c, std::uint64_t budget = kDefaultBudget);

/// One report per nonzero a, in canonical order.
HasseSweep hasse_sweep(const Field& F, Family family, const SearchOptions& opt = {});

/// (N - q - 1)^2 <= 4q, exact.
bool hasse_bound_holds(std::uint64_t n_points, std::uint64_t q);

/// q + 1 - 2 sqrt(q) > 3, exact.
bool hasse_threshold(std::uint64_t q);

/// Number of points at infinity: (1:0:0), (0:1:0), (1:-1:0) for both families.
inline constexpr std::uint64_t kPointsAtInfinity = 3;

std::string to_string(Family f);
std::string to_string(SingularReason r);
Family parse_family(const std::string& s);

Json to_json(const CurveReport& r);

}  // namespace balfact::curves

#endif
