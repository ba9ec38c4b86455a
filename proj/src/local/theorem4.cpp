#include "balfact/local/theorem4.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "balfact/local/hensel.hpp"
#include "balfact/solver/field_solver.hpp"

namespace balfact::local {

namespace {

using LPoly = galois::Poly<LocalAlgebra>;

struct ResidueCache {
    std::mutex mu;
    std::map<std::tuple<const galois::FieldCtx*, std::uint64_t, unsigned>, std::optional<std::vector<FieldElem>>> entries;
};

// g(t) = P t^2 + P S t + a; a root t gives a = t * tail * (-t - S).
LocalCert assemble(const LocalElem& a, const std::vector<LocalElem>& tail, const LocalElem& start, const char* tag) {
    const LocalAlgebra& A = a.algebra();
    auto P = product(A, tail), S = sum(A, tail);
    LPoly g(A, {a, P * S, P});
    auto t = hensel_root(g, start);
    std::vector<LocalElem> fs{t};
    fs.insert(fs.end(), tail.begin(), tail.end());
    fs.push_back(-(t + S));
    auto cert = make_cert(A, a, std::move(fs), tag);
    if (!verify(cert) || cert.power) throw Error("local decomposition failed its own check");
    return cert;
}

}  // namespace

ResidueCertSource default_residue_source() {
    static ResidueCache* cache = new ResidueCache;
    return [](const FieldElem& r, unsigned n) -> std::optional<std::vector<FieldElem>> {
        const Field F = r.field();
        auto key = std::make_tuple(F.ctx(), F.index_of(r), n);
        {
            std::lock_guard lock(cache->mu);
            auto it = cache->entries.find(key);
            if (it != cache->entries.end()) return it->second;
        }
        std::optional<std::vector<FieldElem>> value;
        if (auto c = solver::construct_nonpower(r, n)) value = c->factors;
        std::lock_guard lock(cache->mu);
        cache->entries.emplace(key, value);
        return value;
    };
}

LocalCert theorem4_decompose(const LocalElem& a, unsigned n, const ResidueCertSource& source) {
    if (n < 3) throw PreconditionViolated("theorem4_decompose needs n >= 3");
    const LocalAlgebra& A = a.algebra();
    const Field& G = A.residue_field();

    if (a.is_unit()) {
        auto res = source(a.residue(), n);
        if (!res) {
            throw ResidueFieldObstruction("residue " + a.residue().to_string() + " has no non-power balanced " +
                                          std::to_string(n) + "-factorisation in GF(" + G.descriptor() + ")");
        }
        auto f = *res;
        if (f.size() != n || all_equal(G, f)) throw Error("residue source returned an unusable certificate");
        // move two distinct residues to the ends
        if (f.front() == f.back()) {
            for (std::size_t j = 1; j + 1 < f.size(); ++j) {
                if (f[j] != f.front()) {
                    std::swap(f[j], f.back());
                    break;
                }
            }
        }
        std::vector<LocalElem> tail;
        for (std::size_t j = 1; j + 1 < f.size(); ++j) tail.push_back(A.constant(f[j]));
        return assemble(a, tail, A.constant(f.front()), "constructed:local-unit");
    }

    if (G.size() == 2) {
        throw TwoElementResidueField("non-unit " + a.to_string() + " over a two-element residue field");
    }
    std::vector<FieldElem> t(n - 2, G.one());
    if ((G.from_int(static_cast<std::int64_t>(n) - 2)).is_zero()) {
        const auto rest = G.from_int(static_cast<std::int64_t>(n) - 3);
        for (std::uint64_t i = 1; i < G.size(); ++i) {
            auto x = G.element_at(i);
            if (!x.is_zero() && !(x + rest).is_zero()) {
                t[0] = x;
                break;
            }
        }
    }
    std::vector<LocalElem> tail;
    for (const auto& x : t) tail.push_back(A.constant(x));
    return assemble(a, tail, A.zero(), "constructed:local-nonunit");
}

}  // namespace balfact::local
