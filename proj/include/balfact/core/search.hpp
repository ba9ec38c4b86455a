#ifndef BALFACT_CORE_SEARCH_HPP
#define BALFACT_CORE_SEARCH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "balfact/core/cert.hpp"
#include "balfact/core/ring.hpp"
#include "balfact/error.hpp"

namespace balfact {

struct SearchOptions {
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
};

/// Addition, multiplication and negation tables over the canonical enumeration.
class TabulatedRing {
   public:
    using Index = std::uint32_t;

    template <FiniteRing R>
    explicit TabulatedRing(const R& ring) : n_(checked_size(ring.size())) {
        std::vector<typename R::Element> els;
        els.reserve(n_);
        for (std::uint64_t i = 0; i < n_; ++i) els.push_back(ring.element_at(i));
        add_.resize(std::size_t{n_} * n_);
        mul_.resize(std::size_t{n_} * n_);
        neg_.resize(n_);
        for (Index i = 0; i < n_; ++i) {
            neg_[i] = static_cast<Index>(ring.index_of(ring.neg(els[i])));
            for (Index j = 0; j < n_; ++j) {
                add_[std::size_t{i} * n_ + j] = static_cast<Index>(ring.index_of(ring.add(els[i], els[j])));
                mul_[std::size_t{i} * n_ + j] = static_cast<Index>(ring.index_of(ring.mul(els[i], els[j])));
            }
        }
        zero_ = static_cast<Index>(ring.index_of(ring.zero()));
        one_ = static_cast<Index>(ring.index_of(ring.one()));
    }

    Index size() const noexcept { return n_; }
    Index zero() const noexcept { return zero_; }
    Index one() const noexcept { return one_; }
    Index add(Index a, Index b) const noexcept { return add_[std::size_t{a} * n_ + b]; }
    Index mul(Index a, Index b) const noexcept { return mul_[std::size_t{a} * n_ + b]; }
    Index neg(Index a) const noexcept { return neg_[a]; }

    static constexpr std::uint64_t kMaxSize = 1u << 12;

   private:
    static Index checked_size(std::uint64_t n) {
        if (n > kMaxSize) throw BudgetExceeded(static_cast<double>(n) * static_cast<double>(n), kMaxSize * kMaxSize);
        return static_cast<Index>(n);
    }

    Index n_;
    Index zero_ = 0, one_ = 0;
    std::vector<Index> add_, mul_, neg_;
};

inline double tuple_work(std::uint64_t n, unsigned k) { return std::pow(static_cast<double>(n), static_cast<double>(k - 1)); }

/// First balanced k-factorisation of target in lexicographic order of the first k-1 factors.
template <FiniteRing R>
std::optional<BalancedCert<R>> brute_search(const R& ring, const typename R::Element& target, unsigned k,
                                            bool nonpower_only, const SearchOptions& opt = {}) {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    const std::uint64_t n = ring.size();
    const double work = tuple_work(n, k);
    if (work > static_cast<double>(opt.budget)) throw BudgetExceeded(work, opt.budget);

    std::vector<typename R::Element> els;
    els.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) els.push_back(ring.element_at(i));

    const unsigned m = k - 1;
    std::vector<std::uint64_t> idx(m, 0);
    // prefix[j] holds sum / product of the first j chosen factors
    std::vector<typename R::Element> psum(m + 1, ring.zero()), pprod(m + 1, ring.one());
    auto refresh = [&](unsigned from) {
        for (unsigned j = from; j < m; ++j) {
            psum[j + 1] = ring.add(psum[j], els[idx[j]]);
            pprod[j + 1] = ring.mul(pprod[j], els[idx[j]]);
        }
    };
    refresh(0);
    while (true) {
        auto last = ring.neg(psum[m]);
        if (ring.equal(ring.mul(pprod[m], last), target)) {
            std::vector<typename R::Element> fs;
            for (auto i : idx) fs.push_back(els[i]);
            fs.push_back(last);
            if (!nonpower_only || !all_equal(ring, fs)) return make_cert(ring, target, std::move(fs), "brute-force");
        }
        unsigned j = m;
        while (j > 0 && ++idx[j - 1] == n) idx[--j] = 0;
        if (j == 0) return std::nullopt;
        refresh(j - 1);
    }
}

template <FiniteRing R>
struct CensusResult {
    std::vector<typename R::Element> decomposable;
    std::vector<typename R::Element> missing;
};

enum class CensusMethod { Auto, Tuples, Reachability };

/// Marks of every product p*(-s) reachable by a balanced k-factorisation, by table index.
std::vector<bool> census_marks(const TabulatedRing& t, unsigned k, CensusMethod method, const SearchOptions& opt);

/// Work estimate of the method Auto would pick.
double census_work(std::uint64_t n, unsigned k, CensusMethod method);

template <FiniteRing R>
CensusResult<R> census(const R& ring, unsigned k, const SearchOptions& opt = {}, CensusMethod method = CensusMethod::Auto) {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    const std::uint64_t n = ring.size();
    const double work = census_work(n, k, method);
    if (work > static_cast<double>(opt.budget)) throw BudgetExceeded(work, opt.budget);
    TabulatedRing t(ring);
    auto marks = census_marks(t, k, method, opt);
    CensusResult<R> out;
    for (std::uint64_t i = 0; i < n; ++i) (marks[i] ? out.decomposable : out.missing).push_back(ring.element_at(i));
    return out;
}

}  // namespace balfact

#endif
