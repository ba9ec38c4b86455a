#include <gtest/gtest.h>

#include <algorithm>

#include "balfact/core/search.hpp"
#include "balfact/galois/primes.hpp"
#include "balfact/solver/field_solver.hpp"

using namespace balfact;
using namespace balfact::solver;

namespace {

std::vector<std::uint64_t> prime_powers_upto(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= n; ++q)
        if (galois::as_prime_power(q).has_value()) out.push_back(q);
    return out;
}

bool contains(const std::vector<FieldElem>& v, const FieldElem& a) { return std::find(v.begin(), v.end(), a) != v.end(); }

}  // namespace

TEST(Classify, TableCells) {
    EXPECT_FALSE(classify(7, 3).answer);
    EXPECT_TRUE(classify(8, 2).answer);
    EXPECT_FALSE(classify(3, 4).answer);
    EXPECT_TRUE(classify(4, 2).answer);
    EXPECT_FALSE(classify(4, 3).answer);
    EXPECT_TRUE(classify(4, 4).answer);
    EXPECT_TRUE(classify(2, 4).answer);
    EXPECT_FALSE(classify(2, 5).answer);
    EXPECT_TRUE(classify(7, 4).answer);
    EXPECT_FALSE(classify(11, 2).answer);
    EXPECT_TRUE(classify(11, 3).answer);
    EXPECT_EQ(classify(7, 3).rule, "F7-k-in-2-3");
    EXPECT_THROW(classify(12, 3), NotPrimePower);
    EXPECT_EQ(to_json(classify(8, 2)).dump(), R"({"q":8,"k":2,"answer":true,"rule":"char2-any-k"})");
}

TEST(Classify, MatchesCensusSmall) {
    for (auto q : prime_powers_upto(32)) {
        auto F = galois::Field::of_order(q);
        for (unsigned k = 2; k <= 6; ++k) {
            auto cen = census(F, k);
            EXPECT_EQ(classify(q, k).answer, cen.missing.empty()) << "q=" << q << " k=" << k;
            EXPECT_EQ(exception_set(F, k), cen.missing) << "q=" << q << " k=" << k;
        }
    }
}

TEST(Construct, SucceedsIffBruteForce) {
    for (auto q : prime_powers_upto(49)) {
        auto F = galois::Field::of_order(q);
        for (unsigned k = 2; k <= 5; ++k) {
            auto cen = census(F, k);
            for (const auto& a : F.elements()) {
                auto c = construct(a, k);
                EXPECT_EQ(c.has_value(), !contains(cen.missing, a)) << "q=" << q << " k=" << k << " a=" << a.to_string();
                if (c) {
                    EXPECT_TRUE(verify(*c));
                    EXPECT_EQ(c->target, a);
                }
            }
        }
    }
}

TEST(Construct, HigherKAndPadding) {
    for (auto q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 13u, 16u, 25u}) {
        auto F = galois::Field::of_order(q);
        for (unsigned k = 5; k <= 9; ++k) {
            auto ex = exception_set(F, k);
            for (const auto& a : F.elements()) {
                auto c = construct(a, k);
                ASSERT_EQ(c.has_value(), !contains(ex, a)) << q << " " << k;
                if (!c) continue;
                EXPECT_TRUE(verify(*c)) << to_json(*c).dump();
                if (!a.is_zero()) {
                    for (const auto& f : c->factors) EXPECT_FALSE(f.is_zero());
                }
                if (auto lower = construct(-a, k - 2)) EXPECT_TRUE(verify(pad(*lower))) << to_json(*lower).dump();
            }
        }
    }
}

TEST(Construct, Examples) {
    auto F = galois::Field::prime(7);
    auto c = construct(F.from_int(-2), 4);
    ASSERT_TRUE(c);
    EXPECT_TRUE(verify(*c));
    EXPECT_FALSE(construct(F.from_int(3), 3));
    EXPECT_FALSE(construct(F.from_int(4), 3));

    // five-factor formula at a = 2 over GF(11): a/2, a/2, -a, 2/a, -2/a
    auto G = galois::Field::prime(11);
    auto f = construct(G.from_int(2), 5);
    ASSERT_TRUE(f);
    std::vector<FieldElem> expect{G.from_int(1), G.from_int(1), G.from_int(-2), G.from_int(1), G.from_int(-1)};
    EXPECT_EQ(f->factors, expect);
}

TEST(Construct, StoredTableVerifies) {
    auto table = stored_certificates();
    EXPECT_FALSE(table.empty());
    for (const auto& c : table) EXPECT_TRUE(verify(c)) << to_json(c).dump();
}

TEST(Construct, FormulaFiveIsNonPower) {
    for (auto q : {5u, 7u, 9u, 11u, 13u, 25u, 27u, 49u}) {
        auto F = galois::Field::of_order(q);
        for (const auto& a : F.elements()) {
            if (a.is_zero()) continue;
            auto c = construct(a, 5);
            ASSERT_TRUE(c);
            EXPECT_FALSE(c->power) << q << " " << a.to_string();
        }
    }
}

TEST(TwoSlot, Examples) {
    auto F = galois::Field::prime(7);
    std::vector<FieldElem> tail{F.one()};
    auto r = two_slot_solve(F.one(), tail);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->first * r->second, F.one());
    EXPECT_EQ(r->first + r->second + F.one(), F.zero());
    EXPECT_FALSE(two_slot_solve(F.from_int(3), tail));
    std::vector<FieldElem> zero_tail{F.zero()};
    EXPECT_THROW(two_slot_solve(F.one(), zero_tail), ZeroTailFactor);
}

TEST(TailSearch, MatchesNonPowerBruteForce) {
    for (auto q : {3u, 4u, 5u, 7u, 8u, 9u, 11u}) {
        auto F = galois::Field::of_order(q);
        for (unsigned k = 3; k <= 5; ++k) {
            for (const auto& a : F.elements()) {
                if (a.is_zero()) continue;
                auto brute = brute_search(F, a, k, true);
                auto fast = tail_search(a, k, true);
                EXPECT_EQ(brute.has_value(), fast.has_value()) << q << " " << k << " " << a.to_string();
                if (fast) {
                    EXPECT_TRUE(verify(*fast));
                    EXPECT_FALSE(fast->power);
                }
                auto np = construct_nonpower(a, k);
                EXPECT_EQ(np.has_value(), brute.has_value());
                if (np) EXPECT_TRUE(verify(*np) && !np->power);
            }
        }
    }
}

TEST(MinK, Examples) {
    auto F = galois::Field::prime(7);
    EXPECT_EQ(min_k(F.from_int(4), 10), 4u);
    EXPECT_EQ(min_k(F.from_int(-1), 10), 2u);
    auto G = galois::Field::prime(2);
    EXPECT_EQ(min_k(G.one(), 10), 2u);
    EXPECT_EQ(min_k(F.from_int(4), 3), std::nullopt);
}
