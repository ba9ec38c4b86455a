#include "balfact/curves/cubic.hpp"

#include <algorithm>
#include <thread>

namespace balfact::curves {

Singularity is_singular(const CubicFamily& c) {
    const Field F = c.a.field();
    if (c.a.is_zero()) return {true, SingularReason::AZero};
    if (F.characteristic() == 3) return {true, SingularReason::CharThree};
    if (c.family == Family::B && F.from_int(27) * c.a == -F.one()) return {true, SingularReason::TwentySevenA};
    return {false, SingularReason::Nonsingular};
}

CurveReport count_points(const CubicFamily& c, std::uint64_t budget) {
    const Field F = c.a.field();
    const std::uint64_t q = F.size();
    if (q > budget) throw BudgetExceeded(static_cast<double>(q), budget);
    const FieldElem shift = c.family == Family::A ? F.zero() : F.one();
    std::uint64_t affine = 0;
    for (std::uint64_t i = 0; i < q; ++i) {
        auto x = F.element_at(i);
        if (x.is_zero()) {
            affine += c.a.is_zero() ? q : 0;
            continue;
        }
        // x*y^2 + x(x + shift)*y + a = 0
        affine += galois::quadratic_root_count(x, x * (x + shift), c.a);
    }
    auto s = is_singular(c);
    CurveReport r{q, c.family, c.a, affine + kPointsAtInfinity, affine, s.singular, s.reason, std::nullopt};
    if (!s.singular) r.hasse_ok = hasse_bound_holds(r.projective_count, q);
    return r;
}

HasseSweep hasse_sweep(const Field& F, Family family, const SearchOptions& opt) {
    const std::uint64_t q = F.size();
    const double work = static_cast<double>(q) * static_cast<double>(q);
    if (work > static_cast<double>(opt.budget)) throw BudgetExceeded(work, opt.budget);
    HasseSweep out{q, family, hasse_threshold(q), {}};
    std::vector<std::optional<CurveReport>> slots(q - 1);
    const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(q - 1)));
    auto work_fn = [&](unsigned t) {
        for (std::uint64_t i = 1 + t; i < q; i += threads) slots[i - 1] = count_points({family, F.element_at(i)}, opt.budget);
    };
    if (threads == 1) {
        work_fn(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work_fn, t);
        for (auto& th : pool) th.join();
    }
    for (auto& s : slots) out.reports.push_back(std::move(*s));
    return out;
}

bool hasse_bound_holds(std::uint64_t n_points, std::uint64_t q) {
    const __int128 d = static_cast<__int128>(n_points) - static_cast<__int128>(q) - 1;
    return d * d <= static_cast<__int128>(4) * q;
}

bool hasse_threshold(std::uint64_t q) {
    // q - 2 > 2 sqrt(q)  <=>  q > 2 and (q - 2)^2 > 4q
    if (q <= 2) return false;
    const __int128 d = static_cast<__int128>(q) - 2;
    return d * d > static_cast<__int128>(4) * q;
}

std::string to_string(Family f) { return f == Family::A ? "A" : "B"; }

std::string to_string(SingularReason r) {
    switch (r) {
        case SingularReason::AZero:
            return "a-zero";
        case SingularReason::CharThree:
            return "char-three";
        case SingularReason::TwentySevenA:
            return "27a-eq-minus-1";
        case SingularReason::Nonsingular:
            break;
    }
    return "nonsingular";
}

Family parse_family(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    throw ParseError("family must be A or B, got '" + s + "'");
}

Json to_json(const CurveReport& r) {
    Json j;
    j["q"] = r.q;
    j["family"] = to_string(r.family);
    j["a"] = r.a.to_string();
    j["projective_count"] = r.projective_count;
    j["affine_count"] = r.affine_count;
    j["singular"] = r.singular;
    j["singular_reason"] = to_string(r.reason);
    j["hasse_ok"] = r.hasse_ok ? Json(*r.hasse_ok) : Json("n/a");
    return j;
}

}  // namespace balfact::curves
