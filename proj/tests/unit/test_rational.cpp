#include <gtest/gtest.h>

#include <random>
#include <set>

#include "balfact/rational/lab.hpp"

using namespace balfact;
using namespace balfact::rational;
using galois::Field;
using galois::FqPoly;

namespace {

Rat q(const char* s) { return Rat::parse(s); }

std::vector<Rat> rats(std::initializer_list<const char*> v) {
    std::vector<Rat> out;
    for (auto s : v) out.push_back(q(s));
    return out;
}

RatCert cert(const char* target, std::initializer_list<const char*> f) {
    return make_cert(Rationals{}, q(target), rats(f), "fixed");
}

// Ordered pairs (a1, a2) by shell, then lexicographic index, tested with plain rational arithmetic.
std::optional<std::pair<Rat, Rat>> naive_four(const Rat& a, unsigned H) {
    auto list = height_enumeration(H);
    for (unsigned h = 1; h <= H; ++h) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            for (std::size_t j = 0; j < list.size(); ++j) {
                if (std::max(list[i].height(), list[j].height()) != h) continue;
                auto s = list[i] + list[j];
                Rat r;
                if (rational_sqrt(s * s - Rat(4) * a / (list[i] * list[j]), r)) return std::pair{list[i], list[j]};
            }
        }
    }
    return std::nullopt;
}

Rat random_rat(std::mt19937_64& rng, long H) {
    long n = 0;
    while (n == 0) n = static_cast<long>(rng() % (2 * H + 1)) - H;
    long d = 1 + static_cast<long>(rng() % H);
    return Rat(mpz_class(n), mpz_class(d));
}

FqPoly random_fq(const Field& F, int max_deg, std::mt19937_64& rng) {
    std::vector<galois::FieldElem> c;
    const int d = static_cast<int>(rng() % (max_deg + 1));
    for (int i = 0; i <= d; ++i) c.push_back(F.element_at(rng() % F.size()));
    return FqPoly(F, std::move(c));
}

QPoly random_q(int max_deg, std::mt19937_64& rng) {
    std::vector<Rat> c;
    const int d = static_cast<int>(rng() % (max_deg + 1));
    for (int i = 0; i <= d; ++i) c.push_back(Rat(static_cast<long>(rng() % 7) - 3));
    return QPoly(Rationals{}, std::move(c));
}

}  // namespace

TEST(Rat, ParseAndFormat) {
    EXPECT_EQ(q("6/-4").to_string(), "-3/2");
    EXPECT_EQ(q("4/2").to_string(), "2");
    EXPECT_EQ(q("-3/2").height(), 3);
    EXPECT_THROW(q("1/0"), ParseError);
    EXPECT_THROW(q("x"), ParseError);
    EXPECT_THROW(Rat(0).inverse(), DivisionByZero);
    Rat r;
    EXPECT_TRUE(rational_sqrt(q("9/4"), r));
    EXPECT_EQ(r, q("3/2"));
    EXPECT_FALSE(rational_sqrt(q("2"), r));
}

TEST(Universal, Examples) {
    auto c = universal(Rat(2), 5);
    EXPECT_EQ(c.factors, rats({"1", "1", "-2", "1", "-1"}));
    auto six = universal(Rat(1), 6);
    EXPECT_TRUE(verify(six));
    EXPECT_EQ(six.k, 6u);
    EXPECT_THROW(universal(Rat(0), 5), ZeroInput);
    EXPECT_THROW(universal(Rat(1), 4), PreconditionViolated);

    // 100 factors: a six-factor certificate followed by 47 ones and 47 minus ones
    auto t = q("7/3");
    auto h = universal(t, 100);
    EXPECT_TRUE(verify(h));
    int ones = 0, minus = 0;
    for (std::size_t i = 6; i < h.factors.size(); ++i) {
        ones += h.factors[i] == Rat(1);
        minus += h.factors[i] == Rat(-1);
    }
    EXPECT_EQ(ones, 47);
    EXPECT_EQ(minus, 47);
}

TEST(Universal, RandomRationalsAreNonPower) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        auto a = random_rat(rng, 100);
        for (unsigned k = 5; k <= 9; ++k) {
            auto c = universal(a, k);
            EXPECT_TRUE(verify(c)) << a.to_string() << " " << k;
            EXPECT_FALSE(c.power);
            EXPECT_EQ(c.target, a);
        }
    }
}

TEST(Certificates, FixedRegressions) {
    EXPECT_TRUE(verify(cert("3", {"363/70", "20/77", "-49/110", "-5"})));
    EXPECT_TRUE(verify(cert("1", {"1", "1", "-1", "-1"})));
    EXPECT_TRUE(verify(cert("2", {"1/6", "9/2", "-2/3", "-4"})));
    EXPECT_TRUE(verify(cert("-1/27", {"-1/3", "-1/3", "-1/3", "1"})));
    EXPECT_FALSE(verify(cert("3", {"363/70", "20/77", "-49/110", "-4"})));
    EXPECT_EQ(cert_height(cert("3", {"363/70", "20/77", "-49/110", "-5"})), 363);
}

TEST(HeightEnumeration, OrderAndCount) {
    auto list = height_enumeration(4);
    EXPECT_EQ(list.front(), Rat(1));
    EXPECT_EQ(list[1], Rat(-1));
    EXPECT_EQ(list[2], q("1/2"));
    EXPECT_EQ(list[4], Rat(2));
    std::set<std::pair<long, long>> seen, expect;
    for (const auto& r : list) seen.insert({r.num().get_si(), r.den().get_si()});
    for (long n = -4; n <= 4; ++n)
        for (long d = 1; d <= 4; ++d)
            if (n != 0) {
                Rat r{mpz_class(n), mpz_class(d)};
                expect.insert({r.num().get_si(), r.den().get_si()});
            }
    EXPECT_EQ(seen, expect);
    EXPECT_EQ(list.size(), expect.size());
    for (std::size_t i = 1; i < list.size(); ++i) EXPECT_LE(list[i - 1].height(), list[i].height());
}

TEST(FourFactor, Examples) {
    auto one = four_factor_search(Rat(1), 2);
    ASSERT_TRUE(one);
    EXPECT_EQ(one->factors, rats({"1", "1", "-1", "-1"}));
    for (auto a : {2, 3}) {
        auto c = four_factor_search(Rat(a), a == 2 ? 9 : 363);
        ASSERT_TRUE(c) << a;
        EXPECT_TRUE(verify(*c));
        EXPECT_EQ(c->k, 4u);
    }
    SearchOptions tiny;
    tiny.budget = 10;
    EXPECT_THROW(four_factor_search(Rat(3), 363, tiny), BudgetExceeded);
}

TEST(FourFactor, MatchesNaiveOrder) {
    for (auto a : {"1", "2", "3", "4", "5", "6", "1/2", "-3/4", "-1", "7/5"}) {
        auto fast = four_factor_search(q(a), 6);
        auto slow = naive_four(q(a), 6);
        ASSERT_EQ(fast.has_value(), slow.has_value()) << a;
        if (!fast) continue;
        EXPECT_TRUE(verify(*fast));
        EXPECT_EQ(fast->factors[0], slow->first) << a;
        EXPECT_EQ(fast->factors[1], slow->second) << a;
    }
}

TEST(FourFactor, ThreadCountDoesNotChangeResult) {
    for (long a = 1; a <= 30; ++a) {
        SearchOptions one, many;
        many.threads = 4;
        auto x = four_factor_search(Rat(a), 200, one);
        auto y = four_factor_search(Rat(a), 200, many);
        ASSERT_TRUE(x && y) << a;
        EXPECT_EQ(x->factors, y->factors);
    }
}

TEST(SmallK, TwoAndThree) {
    auto two = two_factor(Rat(-4));
    ASSERT_TRUE(two);
    EXPECT_TRUE(verify(*two));
    EXPECT_FALSE(two_factor(Rat(2)));
    auto three = three_factor_search(Rat(-6), 5);
    ASSERT_TRUE(three);
    EXPECT_TRUE(verify(*three));
    EXPECT_EQ(three->k, 3u);
}

TEST(MasonStothers, Examples) {
    Rationals Q;
    QPoly x(Q, rats({"0", "2", "1"})), y(Q, rats({"1"})), z(Q, rats({"-1", "-2", "-1"}));
    auto v = mason_stothers_check(x, y, z);
    EXPECT_EQ(v.outcome, MSOutcome::DegreeBound);
    EXPECT_EQ(v.distinct_roots, 3);

    for (auto p : {2u, 3u, 5u}) {
        auto F = Field::prime(p);
        auto tp = FqPoly::monomial(F, F.one(), p);
        auto one = FqPoly::constant(F, F.one());
        auto w = mason_stothers_check(tp, -tp - one, one);
        EXPECT_EQ(w.outcome, MSOutcome::AllDerivativesVanish);
    }
    EXPECT_THROW(mason_stothers_check(x, y, x), PreconditionViolated);
    auto F = Field::prime(5);
    auto t = FqPoly::x(F);
    EXPECT_THROW(mason_stothers_check(t, t, -(t + t)), PreconditionViolated);
    EXPECT_EQ(to_json(v)["verdict"], "DegreeBound");
}

TEST(MasonStothers, RandomTriplesNeverThirdOutcome) {
    std::mt19937_64 rng(17);
    auto F = Field::prime(5);
    int done = 0;
    while (done < 1000) {
        auto x = random_fq(F, 6, rng), y = random_fq(F, 6, rng);
        auto z = -(x + y);
        if (x.is_zero() || y.is_zero() || z.is_zero() || galois::gcd(x, y).degree() != 0) continue;
        auto v = mason_stothers_check(x, y, z);
        // distinct roots from the factorisation
        int distinct = 0;
        const auto f = x * y * z;
        if (f.degree() > 0)
            for (const auto& fp : galois::factor(f.monic())) distinct += fp.factor.degree();
        EXPECT_EQ(v.distinct_roots, distinct);
        ++done;
    }
    done = 0;
    while (done < 1000) {
        auto x = random_q(5, rng), y = random_q(5, rng);
        auto z = -(x + y);
        if (x.is_zero() || y.is_zero() || z.is_zero() || galois::gcd(x, y).degree() != 0) continue;
        const bool constants = x.degree() == 0 && y.degree() == 0 && z.degree() == 0;
        EXPECT_EQ(mason_stothers_check(x, y, z).outcome,
                  constants ? MSOutcome::AllDerivativesVanish : MSOutcome::DegreeBound);
        ++done;
    }
}

TEST(CubeRefutation, SearchIsEmpty) {
    for (auto p : {2u, 3u}) {
        auto r = theorem3_refutation_search(Field::prime(p), 4);
        EXPECT_GT(r.triples, 0u);
        EXPECT_TRUE(r.hits.empty()) << p;
    }
    SearchOptions tiny;
    tiny.budget = 100;
    EXPECT_THROW(theorem3_refutation_search(Field::prime(3), 4, tiny), BudgetExceeded);
}
