#include "balfact/galois/polyalg.hpp"

#include <algorithm>
#include <map>

#include "balfact/detail/strings.hpp"
#include "balfact/galois/primes.hpp"

namespace balfact::galois {

namespace {

FqPoly one_poly(const Field& F) { return FqPoly::constant(F, F.one()); }

FqPoly random_poly(const Field& F, unsigned below_degree, std::mt19937_64& rng) {
    std::vector<FieldElem> c;
    c.reserve(below_degree);
    const unsigned n = F.degree();
    const std::uint32_t p = F.characteristic();
    for (unsigned i = 0; i < below_degree; ++i) {
        Coords v(n);
        for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
        c.emplace_back(F.ctx(), std::move(v));
    }
    return FqPoly(F, std::move(c));
}

}  // namespace

bool canonical_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

bool is_irreducible(const FqPoly& f) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const Field& F = f.base();
    const FqPoly fm = f.monic();
    const FqPoly x = FqPoly::x(F);
    // frob[i] = x^(q^i) mod f
    std::vector<FqPoly> frob{x % fm};
    for (int i = 1; i <= d; ++i) frob.push_back(powmod(frob.back(), F.order(), fm));
    if (!((frob[d] - x) % fm).is_zero()) return false;
    for (auto r : prime_divisors(static_cast<std::uint64_t>(d))) {
        auto g = gcd(fm, frob[d / r] - x);
        if (g.degree() != 0) return false;
    }
    return true;
}

FqPoly random_irreducible(const Field& ground, unsigned degree, std::uint64_t seed) {
    if (degree == 0) throw PreconditionViolated("degree must be >= 1");
    std::mt19937_64 rng(seed);
    while (true) {
        auto f = random_poly(ground, degree, rng) + FqPoly::monomial(ground, ground.one(), degree);
        if (is_irreducible(f)) return f;
    }
}

FqPoly pth_root(const FqPoly& f) {
    const Field& F = f.base();
    const std::uint32_t p = F.characteristic();
    // coefficient-wise p-th root is c^(q/p)
    mpz_class e = F.order() / p;
    std::vector<FieldElem> out;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) {
        out.push_back(f.coeffs()[i].pow(e));
    }
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i % p != 0 && !f.coeffs()[i].is_zero()) throw PreconditionViolated("pth_root: derivative is nonzero");
    }
    return FqPoly(F, std::move(out));
}

Factorization squarefree_decomposition(const FqPoly& f_in) {
    if (f_in.degree() < 1) return {};
    const Field& F = f_in.base();
    const FqPoly f = f_in.monic();
    const std::uint32_t p = F.characteristic();
    Factorization out;
    FqPoly c = gcd(f, f.derivative());
    FqPoly w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly fac = w / y;
        if (fac.degree() > 0) out.push_back({fac, i});
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0) {
        for (auto& [g, m] : squarefree_decomposition(pth_root(c))) out.push_back({g, m * p});
    }
    // merge equal multiplicities (product of coprime squarefree parts)
    std::map<unsigned, FqPoly> merged;
    for (auto& [g, m] : out) {
        auto it = merged.find(m);
        if (it == merged.end()) {
            merged.emplace(m, g);
        } else {
            it->second = it->second * g;
        }
    }
    Factorization result;
    for (auto& [m, g] : merged) result.push_back({g, m});
    return result;
}

std::vector<std::pair<FqPoly, unsigned>> distinct_degree(const FqPoly& f) {
    const Field& F = f.base();
    std::vector<std::pair<FqPoly, unsigned>> out;
    FqPoly fstar = f.monic();
    const FqPoly x = FqPoly::x(F);
    FqPoly h = x % fstar;
    unsigned i = 1;
    while (fstar.degree() >= 2 * static_cast<int>(i)) {
        h = powmod(h, F.order(), fstar);
        FqPoly g = gcd(fstar, h - x);
        if (g.degree() > 0) {
            out.emplace_back(g, i);
            fstar = fstar / g;
            h = h % fstar;
        }
        ++i;
    }
    if (fstar.degree() > 0) out.emplace_back(fstar, static_cast<unsigned>(fstar.degree()));
    return out;
}

std::vector<FqPoly> equal_degree(const FqPoly& f, unsigned d, std::mt19937_64& rng) {
    if (f.degree() == static_cast<int>(d)) return {f.monic()};
    if (f.degree() < static_cast<int>(d) || f.degree() % d != 0) throw PreconditionViolated("equal_degree: bad degree");
    const Field& F = f.base();
    const unsigned deg = static_cast<unsigned>(f.degree());
    while (true) {
        FqPoly a = random_poly(F, deg, rng);
        if (a.degree() < 1) continue;
        FqPoly b(F);
        if (F.characteristic() == 2) {
            // absolute trace map GF(q^d) -> GF(2)
            const unsigned m = F.degree() * d;
            FqPoly t = a % f;
            b = t;
            for (unsigned i = 1; i < m; ++i) {
                t = mulmod(t, t, f);
                b += t;
            }
        } else {
            mpz_class qd;
            mpz_pow_ui(qd.get_mpz_t(), F.order().get_mpz_t(), d);
            b = powmod(a, mpz_class((qd - 1) / 2), f) - one_poly(F);
        }
        FqPoly g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            auto left = equal_degree(g, d, rng);
            auto right = equal_degree(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

Factorization factor(const FqPoly& f, std::uint64_t seed) {
    if (f.degree() < 1) throw PreconditionViolated("factor: degree must be >= 1");
    if (!f.is_monic()) throw PreconditionViolated("factor: polynomial must be monic");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<FqPoly, unsigned>> acc;
    for (auto& [sq, mult] : squarefree_decomposition(f)) {
        for (auto& [part, d] : distinct_degree(sq)) {
            for (auto& irr : equal_degree(part, d, rng)) acc.emplace_back(irr, mult);
        }
    }
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    Factorization out;
    for (auto& [g, m] : acc) {
        if (!out.empty() && out.back().factor == g) {
            out.back().multiplicity += m;
        } else {
            out.push_back({g, m});
        }
    }
    return out;
}

std::vector<FieldElem> roots(const FqPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw ZeroPolynomial();
    if (f.degree() < 1) return {};
    const Field& F = f.base();
    const FqPoly fm = f.monic();
    const FqPoly x = FqPoly::x(F);
    FqPoly g = gcd(fm, powmod(x, F.order(), fm) - x);
    std::vector<FieldElem> out;
    if (g.degree() < 1) return out;
    std::mt19937_64 rng(seed);
    for (auto& lin : equal_degree(g, 1, rng)) out.push_back(-lin.coeffs()[0]);
    std::sort(out.begin(), out.end());
    return out;
}

FqPoly radical(const FqPoly& f) {
    if (f.is_zero()) throw ZeroPolynomial();
    const Field& F = f.base();
    FqPoly rad = one_poly(F);
    FqPoly cur = f.monic();
    while (cur.degree() > 0) {
        FqPoly d = cur.derivative();
        if (d.is_zero()) {
            // all multiplicities divisible by p: same radical as the p-th root
            cur = pth_root(cur);
            continue;
        }
        FqPoly g = gcd(cur, d);
        FqPoly s = cur / g;  // factors whose multiplicity is prime to p
        rad = rad * s / gcd(rad, s);
        for (FqPoly h = gcd(cur, s); h.degree() > 0; h = gcd(cur, s)) cur = cur / h;
    }
    return rad.monic();
}

bool is_squarefree(const FqPoly& f) {
    if (f.is_zero()) return false;
    return radical(f).degree() == f.degree();
}

FqPoly parse_poly(const Field& F, std::string_view csv) {
    auto toks = detail::split(csv, ',');
    const unsigned n = F.degree();
    if (n > 1 && toks.size() % n != 0) throw ParseError("polynomial coordinate count must be a multiple of " + std::to_string(n));
    std::vector<FieldElem> c;
    for (std::size_t i = 0; i < toks.size(); i += n) {
        if (n == 1) {
            c.push_back(F.from_int(detail::parse_int(toks[i], "coefficient")));
        } else {
            Coords v;
            for (unsigned j = 0; j < n; ++j) {
                auto x = detail::parse_int(toks[i + j], "coordinate") % static_cast<std::int64_t>(F.characteristic());
                v.push_back(static_cast<std::uint32_t>(x < 0 ? x + F.characteristic() : x));
            }
            c.emplace_back(F.ctx(), std::move(v));
        }
    }
    return FqPoly(F, std::move(c));
}

FqPoly mulmod_fast(const FqPoly& a, const FqPoly& b, const FqPoly& m) {
    const int D = m.degree();
    if (!m.is_monic() || a.degree() >= D || b.degree() >= D) return mulmod(a, b, m);
    const Field& F = m.base();
    if (a.is_zero() || b.is_zero()) return FqPoly(F);
    const FieldCtx* ctx = F.ctx();
    const std::uint32_t p = ctx->p();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    const auto& mc = m.coeffs();
    const std::size_t len = ac.size() + bc.size() - 1;
    std::vector<FieldElem> out;
    if (ctx->n() == 1 && p < (1u << 16)) {
        boost::container::small_vector<std::uint64_t, 32> r(len, 0);
        for (std::size_t i = 0; i < ac.size(); ++i) {
            const std::uint64_t x = ac[i].coords()[0];
            if (x == 0) continue;
            for (std::size_t j = 0; j < bc.size(); ++j) r[i + j] += x * bc[j].coords()[0];
        }
        for (std::size_t i = len; i-- > static_cast<std::size_t>(D);) {
            const std::uint64_t c = r[i] % p;
            if (c == 0) continue;
            const std::uint64_t neg = p - c;
            for (int j = 0; j < D; ++j) r[i - D + j] += neg * mc[j].coords()[0];
        }
        out.reserve(std::min<std::size_t>(len, D));
        for (std::size_t i = 0; i < std::min<std::size_t>(len, D); ++i)
            out.emplace_back(ctx, Coords{static_cast<std::uint32_t>(r[i] % p)});
        return FqPoly(F, std::move(out));
    }
    std::vector<Coords> r(len, Coords(ctx->n(), 0));
    Coords t;
    for (std::size_t i = 0; i < ac.size(); ++i) {
        if (ac[i].is_zero()) continue;
        for (std::size_t j = 0; j < bc.size(); ++j) {
            ctx->mul(ac[i].coords(), bc[j].coords(), t);
            ctx->add({r[i + j].data(), r[i + j].size()}, {t.data(), t.size()}, r[i + j]);
        }
    }
    for (std::size_t i = len; i-- > static_cast<std::size_t>(D);) {
        const Coords c = r[i];
        if (std::all_of(c.begin(), c.end(), [](std::uint32_t v) { return v == 0; })) continue;
        for (int j = 0; j < D; ++j) {
            ctx->mul({c.data(), c.size()}, mc[j].coords(), t);
            ctx->sub({r[i - D + j].data(), r[i - D + j].size()}, {t.data(), t.size()}, r[i - D + j]);
        }
    }
    out.reserve(std::min<std::size_t>(len, D));
    for (std::size_t i = 0; i < std::min<std::size_t>(len, D); ++i) out.emplace_back(ctx, std::move(r[i]));
    return FqPoly(F, std::move(out));
}

}  // namespace balfact::galois
