#include "balfact/rational/lab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace balfact::rational {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

template <unsigned M>
struct ResidueTable {
    std::array<bool, M> ok{};
    constexpr ResidueTable() {
        for (unsigned i = 0; i < M; ++i) ok[i * i % M] = true;
    }
};

bool is_square_u128(u128 x) {
    static constexpr ResidueTable<64> r64;
    static constexpr ResidueTable<63> r63;
    static constexpr ResidueTable<65> r65;
    static constexpr ResidueTable<11> r11;
    if (!r64.ok[static_cast<unsigned>(x % 64)] || !r63.ok[static_cast<unsigned>(x % 63)] ||
        !r65.ok[static_cast<unsigned>(x % 65)] || !r11.ok[static_cast<unsigned>(x % 11)])
        return false;
    auto r = static_cast<u128>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r * r == x;
}

bool checked_mul(i128 a, i128 b, i128& out) { return !__builtin_mul_overflow(a, b, &out); }
bool checked_sub(i128 a, i128 b, i128& out) { return !__builtin_sub_overflow(a, b, &out); }

bool is_rational_square(const Rat& r) {
    Rat out;
    return rational_sqrt(r, out);
}

Rat rsqrt(const Rat& r) {
    Rat out;
    if (!rational_sqrt(r, out)) throw Error("internal: expected a rational square");
    return out;
}

struct SmallRat {
    std::int64_t n, d;
};

RatCert finish(const Rat& a, std::vector<Rat> f, const char* prov) {
    auto c = make_cert(Rationals{}, a, std::move(f), prov);
    if (!verify(c)) throw Error("internal: rational certificate failed to verify");
    return c;
}

}  // namespace

mpz_class cert_height(const RatCert& c) {
    mpz_class h = 0;
    for (const auto& f : c.factors) h = std::max(h, f.height());
    return h;
}

RatCert universal(const Rat& a, unsigned k) {
    if (a.is_zero()) throw ZeroInput();
    if (k < 5) throw PreconditionViolated("universal formulas need k >= 5");
    if (k == 5) {
        const Rat h = a / Rat(2), w = Rat(2) / a;
        return finish(a, {h, h, -a, w, -w}, "constructed:formula-5");
    }
    if (k == 6) {
        // ceil|a| via floor division of the absolute value
        mpz_class n = ::abs(a.num()), d = a.den(), ceil_abs;
        mpz_cdiv_q(ceil_abs.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        const Rat c(std::max(ceil_abs, mpz_class(1)) + 1, mpz_class(1));
        const Rat alpha = (c * c - a) / c;
        const Rat h = alpha / Rat(2), w = Rat(2) / alpha;
        return finish(a, {h, h, c - alpha, w, -w, -c}, "constructed:c-formula-6");
    }
    auto lower = universal(-a, k - 2);
    auto c = pad(lower);
    if (!verify(c)) throw Error("internal: padded certificate failed to verify");
    return c;
}

namespace {

// |num| < h with den = h, then |num| = h with den <= h, ordered by |num| then den
void append_shell(std::int64_t h, std::vector<SmallRat>& out) {
    for (std::int64_t n = 1; n < h; ++n)
        if (std::gcd(n, h) == 1) {
            out.push_back({n, h});
            out.push_back({-n, h});
        }
    for (std::int64_t d = 1; d <= h; ++d)
        if (std::gcd(h, d) == 1) {
            out.push_back({h, d});
            out.push_back({-h, d});
        }
}

Rat to_rat(const SmallRat& r) { return Rat(mpz_class(r.n), mpz_class(r.d)); }

}  // namespace

std::vector<Rat> height_enumeration(unsigned H) {
    std::vector<SmallRat> small;
    for (std::int64_t h = 1; h <= static_cast<std::int64_t>(H); ++h) append_shell(h, small);
    std::vector<Rat> out;
    out.reserve(small.size());
    for (const auto& r : small) out.push_back(to_rat(r));
    return out;
}

std::optional<RatCert> four_factor_search(const Rat& a, unsigned H, const SearchOptions& opt) {
    if (H < 1) throw PreconditionViolated("height bound must be at least 1");
    std::vector<SmallRat> small;
    const bool small_target = a.num().fits_slong_p() && a.den().fits_slong_p() &&
                              ::abs(a.num()) < (mpz_class(1) << 40) && a.den() < (mpz_class(1) << 40);
    const i128 An = small_target ? a.num().get_si() : 0, Ad = small_target ? a.den().get_si() : 1;

    // disc of T^2 + (a1 + a2) T + a/(a1 a2) is (v^2 u - 4 a w^3) / (w^2 u); v = n1 d2 + n2 d1,
    // u = n1 n2, w = d1 d2.  Scaled by Ad^2 u^2 w^2 it is square iff (Ad v^2 u - 4 An w^3) u Ad is.
    auto hit = [&](std::size_t i, std::size_t j) -> bool {
        const auto& x = small[i];
        const auto& y = small[j];
        if (small_target) {
            const i128 v = i128{x.n} * y.d + i128{y.n} * x.d;
            const i128 u = i128{x.n} * y.n;
            const i128 w = i128{x.d} * y.d;
            i128 t1, t2, w3, m;
            if (checked_mul(v, v, t1) && checked_mul(t1, u, t1) && checked_mul(t1, Ad, t1) && checked_mul(w, w, w3) &&
                checked_mul(w3, w, w3) && checked_mul(w3, 4 * An, t2) && checked_sub(t1, t2, t1) &&
                checked_mul(u, Ad, m) && checked_mul(t1, m, t1))
                return t1 >= 0 && is_square_u128(static_cast<u128>(t1));
        }
        const Rat a1 = to_rat(x), a2 = to_rat(y);
        const Rat s = a1 + a2;
        return is_rational_square(s * s - Rat(4) * a / (a1 * a2));
    };

    const unsigned T = std::max(1u, opt.threads);
    double spent = 0;
    std::size_t start = 0;
    for (std::int64_t h = 1; h <= static_cast<std::int64_t>(H); ++h) {
        append_shell(h, small);
        const std::size_t end = small.size();
        // pairs i <= j with j in [start, end)
        const double pairs = static_cast<double>(start) * static_cast<double>(end - start) +
                             static_cast<double>(end - start) * static_cast<double>(end - start + 1) / 2;
        if (spent + pairs > static_cast<double>(opt.budget)) throw BudgetExceeded(spent + pairs, opt.budget);
        spent += pairs;

        constexpr auto none = std::numeric_limits<std::size_t>::max();
        std::atomic<std::size_t> best_i{none};
        std::vector<std::pair<std::size_t, std::size_t>> found(T, {none, none});
        auto worker = [&](unsigned tid) {
            for (std::size_t i = tid; i < end; i += T) {
                if (i > best_i.load(std::memory_order_relaxed)) return;
                for (std::size_t j = std::max(i, start); j < end; ++j) {
                    if (!hit(i, j)) continue;
                    found[tid] = {i, j};
                    std::size_t cur = best_i.load();
                    while (i < cur && !best_i.compare_exchange_weak(cur, i)) {
                    }
                    return;
                }
            }
        };
        if (T == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < T; ++t) pool.emplace_back(worker, t);
            for (auto& th : pool) th.join();
        }
        auto best = *std::min_element(found.begin(), found.end());
        if (best.first != none) {
            const Rat a1 = to_rat(small[best.first]), a2 = to_rat(small[best.second]);
            const Rat s = a1 + a2;
            const Rat r = rsqrt(s * s - Rat(4) * a / (a1 * a2));
            return finish(a, {a1, a2, (-s + r) / Rat(2), (-s - r) / Rat(2)}, "search:four-factor");
        }
        start = end;
    }
    return std::nullopt;
}

std::optional<RatCert> three_factor_search(const Rat& a, unsigned H, const SearchOptions& opt) {
    if (H < 1) throw PreconditionViolated("height bound must be at least 1");
    const auto list = height_enumeration(H);
    if (static_cast<double>(list.size()) > static_cast<double>(opt.budget))
        throw BudgetExceeded(static_cast<double>(list.size()), opt.budget);
    // a1 a2^2 + a1^2 a2 + a = 0
    for (const auto& a1 : list) {
        const Rat disc = a1 * a1 * a1 * a1 - Rat(4) * a1 * a;
        Rat r;
        if (!rational_sqrt(disc, r)) continue;
        const Rat a2 = (-a1 * a1 + r) / (Rat(2) * a1);
        return finish(a, {a1, a2, -a1 - a2}, "search:three-factor");
    }
    return std::nullopt;
}

std::optional<RatCert> two_factor(const Rat& a) {
    Rat b;
    if (!rational_sqrt(-a, b)) return std::nullopt;
    return finish(a, {b, -b}, "constructed:two-factor");
}

// Mason-Stothers

const char* to_string(MSOutcome o) {
    return o == MSOutcome::DegreeBound ? "DegreeBound" : "AllDerivativesVanish";
}

Json to_json(const MSVerdict& v) {
    Json j;
    j["verdict"] = to_string(v.outcome);
    j["degrees"] = {v.deg_x, v.deg_y, v.deg_z};
    j["distinct_roots"] = v.distinct_roots;
    return j;
}

namespace {

template <class P>
void ms_preconditions(const P& x, const P& y, const P& z) {
    if (x.is_zero() || y.is_zero() || z.is_zero()) throw PreconditionViolated("Mason-Stothers needs nonzero polynomials");
    if (!(x + y + z).is_zero()) throw PreconditionViolated("Mason-Stothers needs x + y + z = 0");
    if (galois::gcd(galois::gcd(x, y), z).degree() != 0) throw PreconditionViolated("Mason-Stothers needs coprime x, y, z");
}

template <class P>
MSVerdict ms_decide(const P& x, const P& y, const P& z, int distinct) {
    MSVerdict v{MSOutcome::DegreeBound, x.degree(), y.degree(), z.degree(), distinct};
    if (std::max({v.deg_x, v.deg_y, v.deg_z}) < distinct) return v;
    if (x.derivative().is_zero() && y.derivative().is_zero() && z.derivative().is_zero()) {
        v.outcome = MSOutcome::AllDerivativesVanish;
        return v;
    }
    throw Error("internal: Mason-Stothers produced neither outcome");
}

}  // namespace

MSVerdict mason_stothers_check(const galois::FqPoly& x, const galois::FqPoly& y, const galois::FqPoly& z) {
    ms_preconditions(x, y, z);
    return ms_decide(x, y, z, galois::radical(x * y * z).degree());
}

MSVerdict mason_stothers_check(const QPoly& x, const QPoly& y, const QPoly& z) {
    ms_preconditions(x, y, z);
    const auto f = x * y * z;
    // characteristic 0: the radical is f / gcd(f, f')
    return ms_decide(x, y, z, f.degree() - galois::gcd(f, f.derivative()).degree());
}

// Cube-pattern refutation search

RefutationReport theorem3_refutation_search(const galois::Field& F, unsigned max_deg, const SearchOptions& opt) {
    using galois::FqPoly;
    const std::uint64_t q = F.size();
    double count = 1;
    for (unsigned i = 0; i <= max_deg; ++i) count *= static_cast<double>(q);
    if (count * count > static_cast<double>(opt.budget)) throw BudgetExceeded(count * count, opt.budget);
    const auto n = static_cast<std::uint64_t>(count);
    auto poly_at = [&](std::uint64_t idx) {
        std::vector<galois::FieldElem> c;
        for (unsigned i = 0; i <= max_deg; ++i, idx /= q) c.push_back(F.element_at(idx % q));
        return FqPoly(F, std::move(c));
    };
    std::vector<FqPoly> polys;
    polys.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) polys.push_back(poly_at(i));

    RefutationReport rep;
    for (std::uint64_t i = 1; i < n; ++i) {
        for (std::uint64_t j = 1; j < n; ++j) {
            const auto& x = polys[i];
            const auto& y = polys[j];
            auto z = -(x + y);
            if (z.is_zero() || galois::gcd(x, y).degree() != 0) continue;
            ++rep.triples;
            auto f = x * y * z;
            unsigned s = 0;
            while (f.coeffs().front().is_zero()) {
                f = FqPoly(F, std::vector<galois::FieldElem>(f.coeffs().begin() + 1, f.coeffs().end()));
                ++s;
            }
            if (s % 3 == 0) continue;
            // f = v^3 needs a cube leading coefficient and multiplicities divisible by 3
            bool cube = galois::cube_root(f.leading()).has_value();
            if (f.degree() > 0)
                for (const auto& fp : galois::factor(f.monic())) cube = cube && fp.multiplicity % 3 == 0;
            if (cube) rep.hits.push_back({x, y, z, s});
        }
    }
    return rep;
}

}  // namespace balfact::rational
