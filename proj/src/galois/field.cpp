#include "balfact/galois/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "balfact/galois/polyalg.hpp"
#include "balfact/galois/primes.hpp"
#include "balfact/detail/strings.hpp"

namespace balfact::galois {

struct FieldCtx::Lazy {
    std::once_flag non_square_once;
    FieldElem non_square;
    std::once_flag trace_one_once;
    FieldElem trace_one;
    std::once_flag log_once;
    std::vector<std::uint32_t> log, exp;  // exp has 2(q - 1) entries
};

namespace {

struct Registry {
    std::mutex mu;
    std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::unique_ptr<FieldCtx>> fields;
    std::map<std::tuple<std::uint32_t, unsigned, std::uint64_t>, std::vector<std::uint32_t>> auto_moduli;
};

Registry& registry() {
    static Registry* r = new Registry;  // contexts are immortal
    return *r;
}

std::vector<std::uint32_t> auto_modulus(std::uint32_t p, unsigned n, std::uint64_t seed) {
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.auto_moduli.find({p, n, seed});
        if (it != reg.auto_moduli.end()) return it->second;
    }
    auto f = random_irreducible(Field::prime(p), n, seed);
    std::vector<std::uint32_t> m;
    for (const auto& c : f.coeffs()) m.push_back(c.coords()[0]);
    std::lock_guard lock(reg.mu);
    reg.auto_moduli.emplace(std::make_tuple(p, n, seed), m);
    return m;
}

}  // namespace

FieldCtx::FieldCtx(std::uint32_t p, std::vector<std::uint32_t> modulus)
    : p_(p), n_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)), lazy_(new Lazy) {
    mpz_ui_pow_ui(q_.get_mpz_t(), p_, n_);
    q64_ = (q_ < (mpz_class(1) << 63)) ? q_.get_ui() : 0;
    if (n_ == 1) {
        descriptor_ = std::to_string(p_);
    } else {
        descriptor_ = std::to_string(p_) + "^" + std::to_string(n_);
    }
}

std::uint32_t FieldCtx::inv_p(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
}

void FieldCtx::add(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const {
    out.resize(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = add_p(a[i], b[i]);
}

void FieldCtx::sub(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const {
    out.resize(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = sub_p(a[i], b[i]);
}

std::uint32_t FieldCtx::encode(std::span<const std::uint32_t> a) const noexcept {
    std::uint32_t v = 0;
    for (unsigned i = n_; i-- > 0;) v = v * p_ + a[i];
    return v;
}

void FieldCtx::decode(std::uint32_t v, Coords& out) const {
    out.resize(n_);
    for (unsigned i = 0; i < n_; ++i) {
        out[i] = v % p_;
        v /= p_;
    }
}

const FieldCtx::Lazy& FieldCtx::log_tables() const {
    std::call_once(lazy_->log_once, [this] {
        const auto m = static_cast<std::uint32_t>(q64_ - 1);
        auto& L = *lazy_;
        L.log.assign(q64_, 0);
        L.exp.assign(2 * std::size_t{m}, 0);
        Coords g, cur;
        for (std::uint32_t cand = p_;; ++cand) {
            decode(cand, g);
            cur = g;
            std::uint32_t e = 1;
            L.exp[0] = 1;
            bool primitive = true;
            for (; e < m; ++e) {
                const auto v = encode({cur.data(), cur.size()});
                if (v == 1) {
                    primitive = false;
                    break;
                }
                L.exp[e] = v;
                Coords next;
                mul_poly({cur.data(), cur.size()}, {g.data(), g.size()}, next);
                cur = std::move(next);
            }
            if (primitive) break;
        }
        for (std::uint32_t e = 0; e < m; ++e) {
            L.log[L.exp[e]] = e;
            L.exp[e + m] = L.exp[e];
        }
    });
    return *lazy_;
}

void FieldCtx::mul(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const {
    if (n_ == 1) {
        out.resize(1);
        out[0] = mul_p(a[0], b[0]);
        return;
    }
    if (q64_ != 0 && q64_ <= kLogTableLimit) {
        const auto& L = log_tables();
        const auto ia = encode(a), ib = encode(b);
        if (ia == 0 || ib == 0) {
            out.assign(n_, 0);
            return;
        }
        decode(L.exp[L.log[ia] + L.log[ib]], out);
        return;
    }
    mul_poly(a, b, out);
}

void FieldCtx::mul_poly(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, Coords& out) const {
    boost::container::small_vector<std::uint64_t, 16> r(2 * n_ - 1, 0);
    if (p_ < (1u << 16)) {
        // products stay below 2^32, so sums of up to 2^32 terms fit
        for (unsigned i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < n_; ++j) r[i + j] += std::uint64_t{a[i]} * b[j];
        }
        for (auto& v : r) v %= p_;
    } else {
        for (unsigned i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < n_; ++j) r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j] % p_) % p_;
        }
    }
    // reduce by the monic modulus
    for (unsigned i = 2 * n_ - 2; i >= n_; --i) {
        std::uint64_t c = r[i];
        if (c == 0) continue;
        for (unsigned j = 0; j < n_; ++j) {
            std::uint64_t sub = c * modulus_[j] % p_;
            r[i - n_ + j] = (r[i - n_ + j] + p_ - sub) % p_;
        }
        r[i] = 0;
    }
    out.resize(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
}

void FieldCtx::inverse(std::span<const std::uint32_t> a, Coords& out) const {
    if (std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; })) throw DivisionByZero();
    if (n_ == 1) {
        out.assign(1, inv_p(a[0]));
        return;
    }
    if (q64_ != 0 && q64_ <= kLogTableLimit) {
        const auto& L = log_tables();
        const auto m = static_cast<std::uint32_t>(q64_ - 1);
        const auto la = L.log[encode(a)];
        decode(L.exp[la == 0 ? 0 : m - la], out);
        return;
    }
    // extended Euclid on coordinate polynomials over GF(p)
    using V = std::vector<std::uint32_t>;
    auto trim = [](V& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    V r0(modulus_.begin(), modulus_.end()), r1(a.begin(), a.end()), s0, s1{1};
    trim(r1);
    while (r1.size() > 1) {
        // r0 <- r0 mod r1, s0 <- s0 - q s1, then swap
        const std::uint32_t lead_inv = inv_p(r1.back());
        while (r0.size() >= r1.size()) {
            const std::uint32_t c = mul_p(r0.back(), lead_inv);
            const std::size_t shift = r0.size() - r1.size();
            for (std::size_t j = 0; j < r1.size(); ++j) r0[shift + j] = sub_p(r0[shift + j], mul_p(c, r1[j]));
            if (s0.size() < s1.size() + shift) s0.resize(s1.size() + shift, 0);
            for (std::size_t j = 0; j < s1.size(); ++j) s0[shift + j] = sub_p(s0[shift + j], mul_p(c, s1[j]));
            trim(r0);
        }
        trim(s0);
        std::swap(r0, r1);
        std::swap(s0, s1);
    }
    const std::uint32_t c = inv_p(r1[0]);
    out.assign(n_, 0);
    for (std::size_t j = 0; j < s1.size(); ++j) out[j] = mul_p(s1[j], c);
}

const FieldElem& FieldCtx::non_square() const {
    std::call_once(lazy_->non_square_once, [this] {
        if (p_ == 2) throw PreconditionViolated("characteristic 2 has no non-squares");
        Field F(this);
        for (std::uint64_t i = 1;; ++i) {
            auto e = F.element_at(i);
            if (!is_square(e)) {
                lazy_->non_square = e;
                return;
            }
        }
    });
    return lazy_->non_square;
}

const FieldElem& FieldCtx::trace_one() const {
    std::call_once(lazy_->trace_one_once, [this] {
        if (p_ != 2) throw PreconditionViolated("trace_one is defined for characteristic 2");
        Field F(this);
        for (std::uint64_t i = 1;; ++i) {
            auto e = F.element_at(i);
            if (trace(e) == 1) {
                lazy_->trace_one = e;
                return;
            }
        }
    });
    return lazy_->trace_one;
}

// ---------------------------------------------------------------- FieldElem

Field FieldElem::field() const { return Field(ctx_); }

bool FieldElem::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

bool FieldElem::is_one() const noexcept {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

FieldElem& FieldElem::operator+=(const FieldElem& rhs) {
    if (ctx_ != rhs.ctx_) throw ContextMismatch();
    for (unsigned i = 0; i < c_.size(); ++i) c_[i] = ctx_->add_p(c_[i], rhs.c_[i]);
    return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& rhs) {
    if (ctx_ != rhs.ctx_) throw ContextMismatch();
    for (unsigned i = 0; i < c_.size(); ++i) c_[i] = ctx_->sub_p(c_[i], rhs.c_[i]);
    return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& rhs) {
    if (ctx_ != rhs.ctx_) throw ContextMismatch();
    Coords out;
    ctx_->mul(coords(), rhs.coords(), out);
    c_ = std::move(out);
    return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& rhs) {
    if (ctx_ != rhs.ctx_) throw ContextMismatch();
    return *this *= rhs.inverse();
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    for (auto& v : r.c_) v = ctx_->sub_p(0, v);
    return r;
}

FieldElem FieldElem::inverse() const {
    Coords out;
    ctx_->inverse(coords(), out);
    return FieldElem(ctx_, std::move(out));
}

FieldElem FieldElem::pow(std::uint64_t e) const {
    FieldElem r = Field(ctx_).one();
    FieldElem b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

FieldElem FieldElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(mpz_class(-e));
    if (e.fits_ulong_p()) return pow(std::uint64_t{e.get_ui()});
    FieldElem r = Field(ctx_).one();
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r *= r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r *= *this;
    }
    return r;
}

std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch();
    return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string FieldElem::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c_[i]);
    }
    return s;
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw NotPrimePower(std::to_string(p));
    auto& reg = registry();
    std::vector<std::uint32_t> m{0, 1};
    std::lock_guard lock(reg.mu);
    auto key = std::make_pair(p, m);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) {
        it = reg.fields.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(p, m))).first;
    }
    return Field(it->second.get());
}

Field Field::make(std::uint32_t p, unsigned n, std::uint64_t seed) {
    if (n == 0) throw PreconditionViolated("extension degree must be >= 1");
    if (n == 1) return prime(p);
    if (!is_prime(p)) throw NotPrimePower(std::to_string(p));
    auto m = auto_modulus(p, n, seed);
    return with_modulus(p, m);
}

Field Field::with_modulus(std::uint32_t p, std::span<const std::uint32_t> modulus) {
    if (modulus.size() < 2 || modulus.back() != 1) throw PreconditionViolated("modulus must be monic of degree >= 1");
    const unsigned n = static_cast<unsigned>(modulus.size() - 1);
    if (n == 1) return prime(p);
    auto F = prime(p);
    std::vector<std::uint32_t> m;
    std::vector<FieldElem> coeffs;
    for (auto c : modulus) {
        if (c >= p) throw PreconditionViolated("modulus coefficient out of range");
        m.push_back(c);
        coeffs.push_back(F.from_int(c));
    }
    auto& reg = registry();
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.fields.find({p, m});
        if (it != reg.fields.end()) return Field(it->second.get());
    }
    if (!is_irreducible(FqPoly(F, coeffs))) throw PreconditionViolated("modulus is reducible");
    const bool is_default = auto_modulus(p, n, 0) == m;
    std::lock_guard lock(reg.mu);
    auto key = std::make_pair(p, m);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) {
        auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx(p, m));
        if (!is_default) {
            ctx->descriptor_ += '/';
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i) ctx->descriptor_ += ',';
                ctx->descriptor_ += std::to_string(m[i]);
            }
        }
        it = reg.fields.emplace(key, std::move(ctx)).first;
    }
    return Field(it->second.get());
}

Field Field::parse(std::string_view d, std::uint64_t seed) {
    auto slash = d.find('/');
    auto head = d.substr(0, slash);
    auto caret = head.find('^');
    std::uint64_t p = detail::parse_uint(head.substr(0, caret), "field characteristic");
    unsigned n = 1;
    if (caret != std::string_view::npos) {
        n = static_cast<unsigned>(detail::parse_uint(head.substr(caret + 1), "extension degree"));
    }
    if (p > 0xFFFFFFFFull) throw ParseError("characteristic must be below 2^32");
    if (caret == std::string_view::npos && slash == std::string_view::npos && !is_prime(p)) return of_order(p, seed);
    if (!is_prime(p)) throw NotPrimePower(std::string(head));
    if (slash == std::string_view::npos) return make(static_cast<std::uint32_t>(p), n, seed);
    std::vector<std::uint32_t> m;
    for (auto tok : detail::split(d.substr(slash + 1), ',')) {
        m.push_back(static_cast<std::uint32_t>(detail::parse_uint(tok, "modulus coefficient")));
    }
    if (m.size() != n + 1) throw ParseError("modulus needs n+1 coefficients");
    return with_modulus(static_cast<std::uint32_t>(p), m);
}

Field Field::of_order(std::uint64_t q, std::uint64_t seed) {
    auto pp = as_prime_power(q);
    if (!pp || pp->p > 0xFFFFFFFFull) throw NotPrimePower(std::to_string(q));
    return make(static_cast<std::uint32_t>(pp->p), pp->n, seed);
}

std::string Field::descriptor() const { return ctx_->descriptor(); }
std::uint32_t Field::characteristic() const { return ctx_->p(); }
unsigned Field::degree() const { return ctx_->n(); }
const mpz_class& Field::order() const { return ctx_->order(); }
std::span<const std::uint32_t> Field::modulus() const { return ctx_->modulus(); }
Field Field::prime_subfield() const { return prime(ctx_->p()); }

std::uint64_t Field::size() const {
    if (ctx_->order_u64() == 0) throw std::overflow_error("field order exceeds 2^63");
    return ctx_->order_u64();
}

FieldElem Field::zero() const { return FieldElem(ctx_, Coords(ctx_->n(), 0)); }

FieldElem Field::one() const {
    Coords c(ctx_->n(), 0);
    c[0] = 1;
    return FieldElem(ctx_, std::move(c));
}

FieldElem Field::from_int(std::int64_t v) const {
    const std::int64_t p = ctx_->p();
    std::int64_t r = v % p;
    if (r < 0) r += p;
    Coords c(ctx_->n(), 0);
    c[0] = static_cast<std::uint32_t>(r);
    return FieldElem(ctx_, std::move(c));
}

FieldElem Field::from_coords(std::span<const std::uint32_t> coords) const {
    if (coords.size() != ctx_->n()) throw PreconditionViolated("coordinate vector has wrong length");
    Coords c;
    for (auto v : coords) {
        if (v >= ctx_->p()) throw PreconditionViolated("coordinate out of range");
        c.push_back(v);
    }
    return FieldElem(ctx_, std::move(c));
}

FieldElem Field::gen() const {
    if (ctx_->n() == 1) return from_int(-static_cast<std::int64_t>(ctx_->modulus()[0]));
    Coords c(ctx_->n(), 0);
    c[1] = 1;
    return FieldElem(ctx_, std::move(c));
}

FieldElem Field::parse_element(std::string_view s) const {
    auto toks = detail::split(s, ',');
    if (toks.size() == 1) return from_int(detail::parse_int(toks[0], "field element"));
    if (toks.size() != ctx_->n()) throw ParseError("field element needs " + std::to_string(ctx_->n()) + " coordinates");
    Coords c;
    for (auto t : toks) {
        auto v = detail::parse_int(t, "field coordinate") % static_cast<std::int64_t>(ctx_->p());
        if (v < 0) v += ctx_->p();
        c.push_back(static_cast<std::uint32_t>(v));
    }
    return FieldElem(ctx_, std::move(c));
}

FieldElem Field::element_at(std::uint64_t index) const {
    const unsigned n = ctx_->n();
    Coords c(n, 0);
    for (unsigned i = n; i-- > 0;) {
        c[i] = static_cast<std::uint32_t>(index % ctx_->p());
        index /= ctx_->p();
    }
    return FieldElem(ctx_, std::move(c));
}

std::uint64_t Field::index_of(const FieldElem& a) const {
    if (a.ctx() != ctx_) throw ContextMismatch();
    std::uint64_t idx = 0;
    for (auto v : a.coords()) idx = idx * ctx_->p() + v;
    return idx;
}

std::vector<FieldElem> Field::elements() const {
    std::vector<FieldElem> out;
    const auto q = size();
    out.reserve(q);
    for (std::uint64_t i = 0; i < q; ++i) out.push_back(element_at(i));
    return out;
}

// ---------------------------------------------------------------- roots

std::uint32_t trace(const FieldElem& a) {
    const auto* ctx = a.ctx();
    FieldElem acc = a, cur = a;
    for (unsigned i = 1; i < ctx->n(); ++i) {
        cur = cur.pow(std::uint64_t{ctx->p()});
        acc += cur;
    }
    return acc.coords()[0];
}

bool is_square(const FieldElem& a) {
    if (a.is_zero() || a.ctx()->p() == 2) return true;
    return a.pow(mpz_class((a.ctx()->order() - 1) / 2)).is_one();
}

std::optional<FieldElem> sqrt(const FieldElem& a) {
    const auto* ctx = a.ctx();
    if (a.is_zero()) return a;
    if (ctx->p() == 2) {
        FieldElem r = a;
        for (unsigned i = 1; i < ctx->n(); ++i) r *= r;
        return r;
    }
    if (!is_square(a)) return std::nullopt;
    // Tonelli-Shanks over GF(q)
    mpz_class t = ctx->order() - 1;
    unsigned s = 0;
    while (mpz_even_p(t.get_mpz_t())) {
        t >>= 1;
        ++s;
    }
    FieldElem c = ctx->non_square().pow(t);
    FieldElem x = a.pow(mpz_class((t + 1) / 2));
    FieldElem b = a.pow(t);
    unsigned m = s;
    while (!b.is_one()) {
        unsigned i = 0;
        FieldElem bb = b;
        while (!bb.is_one()) {
            bb *= bb;
            ++i;
        }
        FieldElem g = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) g *= g;
        x *= g;
        c = g * g;
        b *= c;
        m = i;
    }
    FieldElem y = -x;
    return std::min(x, y);
}

std::optional<FieldElem> cube_root(const FieldElem& a) {
    const auto* ctx = a.ctx();
    if (a.is_zero()) return a;
    const mpz_class q1 = ctx->order() - 1;
    if (q1 % 3 != 0) {
        mpz_class d;
        mpz_class three(3);
        mpz_invert(d.get_mpz_t(), three.get_mpz_t(), q1.get_mpz_t());
        return a.pow(d);
    }
    if (!a.pow(mpz_class(q1 / 3)).is_one()) return std::nullopt;
    unsigned e = 0;
    mpz_class m = q1;
    while (m % 3 == 0) {
        m /= 3;
        ++e;
    }
    // generator h of the 3-Sylow subgroup from the least non-cube
    Field F(ctx);
    FieldElem h;
    for (std::uint64_t i = 1;; ++i) {
        auto g = F.element_at(i);
        if (!g.pow(mpz_class(q1 / 3)).is_one()) {
            h = g.pow(m);
            break;
        }
    }
    const mpz_class k = (m % 3 == 2) ? 1 : 2;
    FieldElem x0 = a.pow(mpz_class((k * m + 1) / 3));
    FieldElem b = a.pow(mpz_class(k * m)).inverse();
    mpz_class three_e_1;
    mpz_ui_pow_ui(three_e_1.get_mpz_t(), 3, e - 1);
    const FieldElem omega = h.pow(three_e_1);
    const FieldElem omega2 = omega * omega;
    // base-3 digits of log_h(b)
    mpz_class j = 0, place = 1, rest = three_e_1;
    for (unsigned i = 0; i < e; ++i) {
        FieldElem tcur = (b * h.pow(j).inverse()).pow(rest);
        unsigned digit;
        if (tcur.is_one()) {
            digit = 0;
        } else if (tcur == omega) {
            digit = 1;
        } else if (tcur == omega2) {
            digit = 2;
        } else {
            throw std::logic_error("cube_root: element outside the 3-Sylow subgroup");
        }
        j += digit * place;
        place *= 3;
        if (i + 1 < e) rest /= 3;
    }
    if (j % 3 != 0) throw std::logic_error("cube_root: discrete log not divisible by 3");
    FieldElem x = x0 * h.pow(mpz_class(j / 3));
    return std::min({x, x * omega, x * omega2});
}

std::vector<FieldElem> artin_schreier_roots(const FieldElem& c) {
    const auto* ctx = c.ctx();
    if (ctx->p() != 2) throw PreconditionViolated("Artin-Schreier roots need characteristic 2");
    if (trace(c) != 0) return {};
    const unsigned n = ctx->n();
    const FieldElem& delta = ctx->trace_one();
    // w = sum_{i<n-1} (sum_{j>i} delta^(2^j)) c^(2^i)
    std::vector<FieldElem> dpow(n), cpow(n);
    dpow[0] = delta;
    cpow[0] = c;
    for (unsigned i = 1; i < n; ++i) {
        dpow[i] = dpow[i - 1] * dpow[i - 1];
        cpow[i] = cpow[i - 1] * cpow[i - 1];
    }
    FieldElem w = Field(ctx).zero();
    FieldElem tail = Field(ctx).zero();
    for (unsigned i = n; i-- > 0;) {
        w += tail * cpow[i];
        tail += dpow[i];
    }
    if (w * w + w != c) throw std::logic_error("artin_schreier_roots: solution check failed");
    FieldElem w1 = w + Field(ctx).one();
    return w < w1 ? std::vector{w, w1} : std::vector{w1, w};
}

std::vector<FieldElem> quadratic_roots(const FieldElem& a2, const FieldElem& a1, const FieldElem& a0) {
    if (a2.is_zero()) throw PreconditionViolated("leading coefficient of quadratic is zero");
    const auto* ctx = a2.ctx();
    std::vector<FieldElem> out;
    if (ctx->p() == 2) {
        if (a1.is_zero()) {
            out.push_back(*sqrt(a0 / a2));
            return out;
        }
        const FieldElem scale = a1 / a2;
        for (const auto& w : artin_schreier_roots(a0 * a2 / (a1 * a1))) out.push_back(scale * w);
    } else {
        Field F(ctx);
        const FieldElem disc = a1 * a1 - F.from_int(4) * a2 * a0;
        const FieldElem inv2a = (F.from_int(2) * a2).inverse();
        if (disc.is_zero()) {
            out.push_back(-a1 * inv2a);
            return out;
        }
        auto s = sqrt(disc);
        if (!s) return out;
        out.push_back((-a1 + *s) * inv2a);
        out.push_back((-a1 - *s) * inv2a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned quadratic_root_count(const FieldElem& a2, const FieldElem& a1, const FieldElem& a0) {
    if (a2.is_zero()) throw PreconditionViolated("leading coefficient of quadratic is zero");
    const auto* ctx = a2.ctx();
    if (ctx->p() == 2) {
        if (a1.is_zero()) return 1;
        return trace(a0 * a2 / (a1 * a1)) == 0 ? 2 : 0;
    }
    Field F(ctx);
    const FieldElem disc = a1 * a1 - F.from_int(4) * a2 * a0;
    if (disc.is_zero()) return 1;
    return is_square(disc) ? 2 : 0;
}

}  // namespace balfact::galois
