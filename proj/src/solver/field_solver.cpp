#include "balfact/solver/field_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "balfact/galois/primes.hpp"

namespace balfact::solver {

namespace {

using galois::cube_root;
using galois::quadratic_roots;
using galois::sqrt;

struct StoredEntry {
    std::uint64_t q;
    unsigned k;
    std::int64_t target;
    std::vector<std::int64_t> factors;
};

// Small-field certificates that the generic constructions do not reach.
const std::vector<StoredEntry>& stored_table() {
    static const std::vector<StoredEntry> table{
        {3, 4, 1, {1, 1, -1, -1}},
        {3, 6, 1, {1, 1, 1, 1, 1, 1}},
        {3, 6, -1, {1, 1, 1, -1, -1, -1}},
        {5, 4, 1, {1, 1, -1, -1}},
        {5, 4, 2, {1, 1, 1, 2}},
        {5, 4, -1, {1, -1, 2, -2}},
        {7, 4, 0, {0, 0, 0, 0}},
        {7, 4, 1, {1, 1, -1, -1}},
        {7, 4, -1, {1, 1, 2, 3}},
        {7, 4, 2, {2, 2, -2, -2}},
        {7, 4, -2, {1, -2, -2, 3}},
        {7, 4, 3, {-1, 2, 3, 3}},
        {7, 4, -3, {-1, -1, -1, 3}},
    };
    return table;
}

std::optional<FieldCert> lookup_stored(const FieldElem& a, unsigned k) {
    const Field F = a.field();
    if (F.degree() != 1) return std::nullopt;
    for (const auto& e : stored_table()) {
        if (e.q != F.characteristic() || e.k != k || F.from_int(e.target) != a) continue;
        std::vector<FieldElem> fs;
        for (auto v : e.factors) fs.push_back(F.from_int(v));
        return make_cert(F, a, std::move(fs), "constructed:stored");
    }
    return std::nullopt;
}

bool in_exceptions(const FieldElem& a, unsigned k) {
    auto ex = exception_set(a.field(), k);
    return std::find(ex.begin(), ex.end(), a) != ex.end();
}

FieldCert zero_cert(const Field& F, unsigned k) {
    std::vector<FieldElem> fs{F.zero()};
    for (unsigned i = 0; i + 2 < k; ++i) fs.push_back(F.one());
    auto c = -F.from_int(static_cast<std::int64_t>(k) - 2);
    fs.push_back(c);  // c = 0 already gives the second zero
    return make_cert(F, F.zero(), std::move(fs), "constructed:zero");
}

// xy(x + y + shift) = -a: iterate x over the nonzero elements, solve for y.
std::optional<FieldCert> curve_solve(const FieldElem& a, unsigned k, const FieldElem& shift, const char* tag) {
    const Field F = a.field();
    const std::uint64_t q = F.size();
    for (std::uint64_t i = 1; i < q; ++i) {
        auto x = F.element_at(i);
        if (x.is_zero()) continue;
        auto ys = quadratic_roots(x, x * (x + shift), a);
        if (ys.empty()) continue;
        const auto& y = ys.front();
        std::vector<FieldElem> fs{x, y, -(x + y + shift)};
        if (k == 4) fs.push_back(F.one());
        return make_cert(F, a, std::move(fs), tag);
    }
    return std::nullopt;
}

std::optional<FieldCert> padded(const FieldElem& a, unsigned k) {
    auto base = construct(-a, k - 2);
    if (!base) return std::nullopt;
    return pad(*base);
}

std::optional<FieldCert> construct_k2(const FieldElem& a) {
    const Field F = a.field();
    if (F.characteristic() == 2) {
        auto s = *sqrt(a);
        return make_cert(F, a, {s, s}, "constructed:sqrt");
    }
    auto x = sqrt(-a);
    if (!x) return std::nullopt;
    return make_cert(F, a, {*x, -*x}, "constructed:neg-sqrt");
}

std::optional<FieldCert> construct_k3(const FieldElem& a) {
    const Field F = a.field();
    const auto p = F.characteristic();
    if (p == 3) {
        auto b = *cube_root(a);
        return make_cert(F, a, {b, b, b}, "constructed:cube");
    }
    if (F.size() == 5) {
        auto b = *cube_root(-a / F.from_int(2));
        return make_cert(F, a, {b, b, -F.from_int(2) * b}, "constructed:F5-cube");
    }
    if (in_exceptions(a, 3)) return std::nullopt;
    auto c = curve_solve(a, 3, F.zero(), "constructed:curve-A");
    if (c) return c;
    return tail_search(a, 3, false);
}

std::optional<FieldCert> construct_k4(const FieldElem& a) {
    const Field F = a.field();
    if (F.characteristic() == 2) {
        auto r = *sqrt(*sqrt(a));
        return make_cert(F, a, {r, r, r, r}, "constructed:fourth-power");
    }
    if (in_exceptions(a, 4)) return std::nullopt;
    if (auto s = lookup_stored(a, 4)) return s;
    if (F.characteristic() != 3 && F.from_int(27) * a == -F.one()) {
        auto t = -F.from_int(3).inverse();
        return make_cert(F, a, {t, t, t, F.one()}, "constructed:27a");
    }
    auto c = curve_solve(a, 4, F.one(), "constructed:curve-B");
    if (c) return c;
    return tail_search(a, 4, false);
}

std::optional<FieldCert> construct_k5(const FieldElem& a) {
    const Field F = a.field();
    if (F.characteristic() != 2) {
        auto two = F.from_int(2);
        auto h = a / two;
        auto w = two / a;
        return make_cert(F, a, {h, h, -a, w, -w}, "constructed:formula-5");
    }
    if (F.size() == 2) return std::nullopt;
    if (F.size() == 4) {
        auto b = *sqrt(a);
        auto t = F.gen();
        return make_cert(F, a, {b, b, F.one(), t, t + F.one()}, "constructed:F4-b2xyz");
    }
    return padded(a, 5);
}

std::optional<FieldCert> construct_k6(const FieldElem& b) {
    const Field F = b.field();
    if (F.characteristic() == 2) return padded(b, 6);
    if (auto s = lookup_stored(b, 6)) return s;
    if (F.size() == 5) {
        auto x = *cube_root(-b);
        auto one = F.one(), m2 = -F.from_int(2);
        return make_cert(F, b, {x, x, m2 * x, one, one, m2}, "constructed:F5-k6");
    }
    const std::uint64_t q = F.size();
    for (std::uint64_t i = 1; i < q; ++i) {
        auto c = F.element_at(i);
        if (c.is_zero() || c * c == b) continue;
        auto alpha = (c * c - b) / c;
        auto two = F.from_int(2);
        auto h = alpha / two;
        auto w = two / alpha;
        return make_cert(F, b, {h, h, c - alpha, w, -w, -c}, "constructed:c-formula-6");
    }
    return std::nullopt;
}

}  // namespace

std::vector<FieldCert> stored_certificates() {
    std::vector<FieldCert> out;
    for (const auto& e : stored_table()) {
        auto F = Field::prime(static_cast<std::uint32_t>(e.q));
        std::vector<FieldElem> fs;
        for (auto v : e.factors) fs.push_back(F.from_int(v));
        out.push_back(make_cert(F, F.from_int(e.target), std::move(fs), "constructed:stored"));
    }
    return out;
}

Classification classify(std::uint64_t q, unsigned k) {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    auto pp = galois::as_prime_power(q);
    if (!pp) throw NotPrimePower(std::to_string(q));
    Classification c{q, k, false, ""};
    if (q == 2) {
        c.answer = k % 2 == 0;
        c.rule = "F2-k-even";
    } else if (q == 4) {
        c.answer = k != 3;
        c.rule = "F4-k-ne-3";
    } else if (pp->p == 2) {
        c.answer = true;
        c.rule = "char2-any-k";
    } else if (q == 3 || q == 5) {
        c.answer = k != 2 && k != 4;
        c.rule = "F3-F5-k-in-2-4";
    } else if (q == 7) {
        c.answer = k != 2 && k != 3;
        c.rule = "F7-k-in-2-3";
    } else {
        c.answer = k != 2;
        c.rule = "generic-k-eq-2";
    }
    return c;
}

std::vector<FieldElem> exception_set(const Field& F, unsigned k) {
    std::vector<FieldElem> out;
    const std::uint64_t q = F.size();
    if (k == 2) {
        if (F.characteristic() == 2) return out;
        for (const auto& a : F.elements())
            if (!galois::is_square(-a)) out.push_back(a);
        return out;
    }
    switch (q) {
        case 2:
            if (k % 2 == 1) out.push_back(F.one());
            break;
        case 3:
            if (k == 4) out.push_back(F.from_int(-1));
            break;
        case 4:
            if (k == 3)
                for (const auto& a : F.elements())
                    if (!a.is_zero() && !a.is_one()) out.push_back(a);
            break;
        case 5:
            if (k == 4) out.push_back(F.from_int(-2));
            break;
        case 7:
            if (k == 3) out = {F.from_int(3), F.from_int(4)};
            break;
        default:
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::pair<FieldElem, FieldElem>> two_slot_solve(const FieldElem& a, std::span<const FieldElem> tail) {
    const Field F = a.field();
    auto P = F.one(), S = F.zero();
    for (const auto& t : tail) {
        if (t.is_zero()) throw ZeroTailFactor();
        P *= t;
        S += t;
    }
    auto roots = quadratic_roots(F.one(), S, a / P);
    if (roots.empty()) return std::nullopt;
    return std::make_pair(roots.front(), -S - roots.front());
}

std::optional<FieldCert> tail_search(const FieldElem& a, unsigned k, bool nonpower_only, std::uint64_t budget) {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    if (a.is_zero()) throw PreconditionViolated("tail_search needs a nonzero target");
    const Field F = a.field();
    const std::uint64_t q = F.size();
    const unsigned m = k - 2;
    const double work = std::pow(static_cast<double>(q - 1), static_cast<double>(m));
    if (work > static_cast<double>(budget)) throw BudgetExceeded(work, budget);
    std::vector<std::uint64_t> idx(m, 1);
    std::vector<FieldElem> tail(m, F.one());
    while (true) {
        for (unsigned j = 0; j < m; ++j) tail[j] = F.element_at(idx[j]);
        auto P = product(F, tail), S = sum(F, tail);
        for (const auto& r : quadratic_roots(F.one(), S, a / P)) {
            std::vector<FieldElem> fs{r, -S - r};
            fs.insert(fs.end(), tail.begin(), tail.end());
            if (!nonpower_only || !all_equal(F, fs)) return make_cert(F, a, std::move(fs), "constructed:tail-search");
        }
        unsigned j = m;
        while (j > 0 && ++idx[j - 1] == q) idx[--j] = 1;
        if (j == 0) return std::nullopt;
    }
}

std::optional<FieldCert> construct(const FieldElem& a, unsigned k) {
    if (k < 2) throw PreconditionViolated("k must be at least 2");
    const Field F = a.field();
    if (a.is_zero()) return zero_cert(F, k);
    switch (k) {
        case 2:
            return construct_k2(a);
        case 3:
            return construct_k3(a);
        case 4:
            return construct_k4(a);
        case 5:
            return construct_k5(a);
        case 6:
            return construct_k6(a);
        default:
            break;
    }
    return padded(a, k);
}

std::optional<FieldCert> construct_nonpower(const FieldElem& a, unsigned k) {
    auto c = construct(a, k);
    if (c && !c->power) return c;
    if (a.is_zero()) {
        if (k < 3) return std::nullopt;
        return zero_cert(a.field(), k);
    }
    if (!c) return std::nullopt;
    return tail_search(a, k, true);
}

std::optional<unsigned> min_k(const FieldElem& a, unsigned k_max) {
    for (unsigned k = 2; k <= k_max; ++k)
        if (construct(a, k)) return k;
    return std::nullopt;
}

Json to_json(const Classification& c) {
    Json j;
    j["q"] = c.q;
    j["k"] = c.k;
    j["answer"] = c.answer;
    j["rule"] = c.rule;
    return j;
}

}  // namespace balfact::solver
