#include <algorithm>
#include <thread>

#include "balfact/core/search.hpp"

namespace balfact {

namespace {

using Index = TabulatedRing::Index;

CensusMethod resolve(std::uint64_t n, unsigned k, CensusMethod method) {
    if (method != CensusMethod::Auto) return method;
    return census_work(n, k, CensusMethod::Tuples) <= census_work(n, k, CensusMethod::Reachability)
               ? CensusMethod::Tuples
               : CensusMethod::Reachability;
}

template <class Fn>
void parallel_ranges(Index n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, n));
    if (threads == 1) {
        fn(0u, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        Index lo = static_cast<Index>(std::uint64_t{n} * t / threads);
        Index hi = static_cast<Index>(std::uint64_t{n} * (t + 1) / threads);
        pool.emplace_back([&fn, t, lo, hi] { fn(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

std::vector<bool> by_tuples(const TabulatedRing& t, unsigned k, unsigned threads) {
    const Index n = t.size();
    const unsigned m = k - 1;
    threads = std::max(1u, std::min<unsigned>(threads, n));
    std::vector<std::vector<char>> local(threads, std::vector<char>(n, 0));
    parallel_ranges(n, threads, [&](unsigned id, Index lo, Index hi) {
        auto& marks = local[id];
        std::vector<Index> idx(m, 0), psum(m + 1, t.zero()), pprod(m + 1, t.one());
        idx[0] = lo;
        auto refresh = [&](unsigned from) {
            for (unsigned j = from; j < m; ++j) {
                psum[j + 1] = t.add(psum[j], idx[j]);
                pprod[j + 1] = t.mul(pprod[j], idx[j]);
            }
        };
        if (lo >= hi) return;
        refresh(0);
        while (true) {
            marks[t.mul(pprod[m], t.neg(psum[m]))] = 1;
            unsigned j = m;
            while (j > 1 && ++idx[j - 1] == n) idx[--j] = 0;
            if (j == 1 && ++idx[0] == hi) break;
            refresh(j - 1);
        }
    });
    std::vector<bool> out(n, false);
    for (const auto& marks : local)
        for (Index i = 0; i < n; ++i) out[i] = out[i] || marks[i];
    return out;
}

std::vector<bool> by_reachability(const TabulatedRing& t, unsigned k, unsigned threads) {
    const Index n = t.size();
    const std::size_t nn = std::size_t{n} * n;
    // state (s, p): some j-tuple has sum s and product p
    std::vector<char> cur(nn, 0);
    for (Index e = 0; e < n; ++e) cur[std::size_t{e} * n + e] = 1;
    threads = std::max(1u, std::min<unsigned>(threads, n));
    for (unsigned step = 2; step < k; ++step) {
        std::vector<std::vector<char>> local(threads, std::vector<char>(nn, 0));
        parallel_ranges(n, threads, [&](unsigned id, Index lo, Index hi) {
            auto& next = local[id];
            for (Index s = lo; s < hi; ++s) {
                for (Index p = 0; p < n; ++p) {
                    if (!cur[std::size_t{s} * n + p]) continue;
                    for (Index e = 0; e < n; ++e) next[std::size_t{t.add(s, e)} * n + t.mul(p, e)] = 1;
                }
            }
        });
        cur.assign(nn, 0);
        for (const auto& next : local)
            for (std::size_t i = 0; i < nn; ++i) cur[i] |= next[i];
    }
    std::vector<bool> out(n, false);
    for (Index s = 0; s < n; ++s)
        for (Index p = 0; p < n; ++p)
            if (cur[std::size_t{s} * n + p]) out[t.mul(p, t.neg(s))] = true;
    return out;
}

}  // namespace

double census_work(std::uint64_t n, unsigned k, CensusMethod method) {
    const double dn = static_cast<double>(n);
    switch (method) {
        case CensusMethod::Tuples:
            return tuple_work(n, k);
        case CensusMethod::Reachability:
            return dn * dn + dn * dn * dn * static_cast<double>(k > 2 ? k - 2 : 0);
        case CensusMethod::Auto:
            break;
    }
    return std::min(census_work(n, k, CensusMethod::Tuples), census_work(n, k, CensusMethod::Reachability));
}

std::vector<bool> census_marks(const TabulatedRing& t, unsigned k, CensusMethod method, const SearchOptions& opt) {
    if (resolve(t.size(), k, method) == CensusMethod::Tuples) return by_tuples(t, k, opt.threads);
    return by_reachability(t, k, opt.threads);
}

}  // namespace balfact
