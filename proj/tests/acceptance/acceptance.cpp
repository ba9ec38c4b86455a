#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "balfact/core/search.hpp"
#include "balfact/curves/cubic.hpp"
#include "balfact/galois/primes.hpp"
#include "balfact/local/hensel.hpp"
#include "balfact/local/theorem4.hpp"
#include "balfact/matrix/matrix.hpp"
#include "balfact/quotient/quotient.hpp"
#include "balfact/rational/lab.hpp"
#include "balfact/solver/field_solver.hpp"
#include "hensel_reference.hpp"

using namespace balfact;
using galois::Field;
using galois::FieldElem;
using galois::FqPoly;
using rational::Rat;

namespace {

class Check {
   public:
    void expect(bool ok, const std::function<std::string()>& what) {
        ++checks_;
        if (ok) return;
        if (failures_++ < 5) std::cerr << "    failure: " << what() << '\n';
    }
    void note(std::string s) { notes_ += (notes_.empty() ? "" : ", ") + std::move(s); }
    bool ok() const { return failures_ == 0; }
    std::uint64_t checks() const { return checks_; }
    std::uint64_t failures() const { return failures_; }
    const std::string& notes() const { return notes_; }

   private:
    std::uint64_t checks_ = 0, failures_ = 0;
    std::string notes_;
};

// Pairs (q, k) for which every element is a balanced k-product, restated independently of the solver.
bool table_rule(std::uint64_t q, unsigned k) {
    auto pp = galois::as_prime_power(q);
    if (pp->p == 2) {
        if (q == 2) return k % 2 == 0;
        if (q == 4) return k != 3;
        return true;
    }
    if (q == 3 || q == 5) return k != 2 && k != 4;
    if (q == 7) return k != 2 && k != 3;
    return k != 2;
}

std::vector<std::string> formatted(const Field& F, const std::vector<FieldElem>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(F.format(e));
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return "{" + s + "}";
}

void ac1(Check& c) {
    int cells = 0;
    for (auto q : galois::prime_powers_up_to(81)) {
        auto F = Field::of_order(q);
        for (unsigned k = 2; k <= 7; ++k) {
            if (k >= 6 && q > 32) continue;
            const bool full = census(F, k).missing.empty();
            const bool cls = solver::classify(q, k).answer;
            c.expect(full == cls, [&] { return "q=" + std::to_string(q) + " k=" + std::to_string(k) + " census/classify"; });
            if (q <= 9)
                c.expect(full == table_rule(q, k),
                         [&] { return "table cell q=" + std::to_string(q) + " k=" + std::to_string(k); });
            ++cells;
        }
    }
    c.note(std::to_string(cells) + " cells");
}

void ac2(Check& c) {
    auto missing = [](std::uint64_t q, unsigned k) {
        auto F = Field::of_order(q);
        return formatted(F, census(F, k).missing);
    };
    c.expect(missing(7, 3) == std::vector<std::string>{"3", "4"}, [&] { return "GF(7) k=3 " + join(missing(7, 3)); });
    c.expect(missing(5, 4) == std::vector<std::string>{"3"}, [&] { return "GF(5) k=4 " + join(missing(5, 4)); });
    c.expect(missing(3, 4) == std::vector<std::string>{"2"}, [&] { return "GF(3) k=4 " + join(missing(3, 4)); });
    auto F4 = Field::of_order(4);
    std::vector<FieldElem> rest;
    for (const auto& e : F4.elements())
        if (!e.is_zero() && e != F4.one()) rest.push_back(e);
    c.expect(missing(4, 3) == formatted(F4, rest), [&] { return "GF(4) k=3 " + join(missing(4, 3)); });
    for (unsigned k = 3; k <= 9; k += 2)
        c.expect(missing(2, k) == std::vector<std::string>{"1"}, [&] { return "GF(2) k=" + std::to_string(k); });
    for (auto [q, k] : {std::pair{7u, 3u}, {5u, 4u}, {3u, 4u}, {4u, 3u}, {2u, 5u}}) {
        auto F = Field::of_order(q);
        c.expect(formatted(F, solver::exception_set(F, k)) == missing(q, k),
                 [&] { return "exception_set q=" + std::to_string(q); });
    }
}

void ac3(Check& c) {
    std::vector<std::uint64_t> qs;
    for (std::uint64_t q = 2; q <= 499; ++q)
        if (galois::is_prime(q) || (q <= 121 && galois::as_prime_power(q))) qs.push_back(q);
    std::uint64_t members = 0;
    for (auto q : qs) {
        auto F = Field::of_order(q);
        for (auto fam : {curves::Family::A, curves::Family::B}) {
            auto sweep = curves::hasse_sweep(F, fam);
            for (const auto& r : sweep.reports) {
                if (r.singular) continue;
                const auto d = static_cast<std::int64_t>(r.projective_count) - static_cast<std::int64_t>(q) - 1;
                c.expect(d * d <= static_cast<std::int64_t>(4 * q) && r.hasse_ok == true,
                         [&] { return "Hasse q=" + std::to_string(q) + " a=" + F.format(r.a); });
                ++members;
            }
            c.expect(sweep.threshold == (q >= 8), [&] { return "threshold q=" + std::to_string(q); });
        }
    }
    // q + 1 - 2 sqrt(q) > 3 exactly from q = 8 on, by integer arithmetic: (q - 2)^2 > 4q with q > 2
    for (std::uint64_t q = 3; q <= 499; ++q)
        c.expect(((q - 2) * (q - 2) > 4 * q) == (q >= 8), [&] { return "integer threshold q=" + std::to_string(q); });
    c.expect(!curves::hasse_threshold(7) && curves::hasse_threshold(8), [] { return "threshold 7/8"; });
    c.note(std::to_string(qs.size()) + " fields, " + std::to_string(members) + " nonsingular members");
}

template <class R>
void expect_cert(Check& c, const R& ring, const typename R::Element& a, std::vector<typename R::Element> f,
                 const std::string& label) {
    auto cert = make_cert(ring, a, std::move(f), "fixed");
    c.expect(verify(cert), [&] { return label; });
}

void ac4(Check& c) {
    rational::Rationals Q;
    auto q = [](const char* s) { return Rat::parse(s); };
    expect_cert(c, Q, q("3"), {q("363/70"), q("20/77"), q("-49/110"), q("-5")}, "3 as four rationals");
    expect_cert(c, Q, q("1"), {q("1"), q("1"), q("-1"), q("-1")}, "1 = 1*1*(-1)*(-1)");
    expect_cert(c, Q, q("2"), {q("1/6"), q("9/2"), q("-2/3"), q("-4")}, "2");
    expect_cert(c, Q, q("-1/27"), {q("-1/3"), q("-1/3"), q("-1/3"), q("1")}, "-1/27 in Q");

    // (a/2, a/2, -a, 2/a, -2/a) for every nonzero a
    for (std::uint64_t order : {7u, 9u}) {
        auto F = Field::of_order(order);
        const auto two = F.from_int(2);
        for (const auto& a : F.elements()) {
            if (a.is_zero()) continue;
            expect_cert(c, F, a, {a / two, a / two, -a, two / a, -(two / a)}, "formula GF(" + std::to_string(order) + ")");
        }
    }
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
        long n = 0;
        while (n == 0) n = static_cast<long>(rng() % 201) - 100;
        Rat a{mpz_class(n), mpz_class(static_cast<long>(1 + rng() % 50))};
        expect_cert(c, Q, a, {a / Rat(2), a / Rat(2), -a, Rat(2) / a, -(Rat(2) / a)}, "formula Q " + a.to_string());
    }

    int gf7 = 0;
    for (const auto& cert : solver::stored_certificates()) {
        c.expect(verify(cert), [&] { return "stored " + cert.ring.descriptor(); });
        if (cert.ring.size() == 7 && cert.k == 4) ++gf7;
    }
    c.expect(gf7 == 7, [&] { return "GF(7) k=4 table has " + std::to_string(gf7) + " entries"; });

    int fields = 0;
    for (auto order : galois::prime_powers_up_to(243)) {
        auto F = Field::of_order(order);
        if (F.characteristic() == 3) continue;
        const auto third = F.from_int(3).inverse();
        const auto a = -(third * third * third);
        c.expect(F.from_int(27) * a == -F.one(), [&] { return "27a = -1 in GF(" + std::to_string(order) + ")"; });
        expect_cert(c, F, a, {-third, -third, -third, F.one()}, "-1/27 in GF(" + std::to_string(order) + ")");
        ++fields;
    }
    c.note("-1/27 in Q and " + std::to_string(fields) + " fields");
}

void ac5(Check& c) {
    using local::LocalAlgebra;
    using LPoly = galois::Poly<LocalAlgebra>;
    std::mt19937_64 rng(555);
    const char* fields[] = {"2", "3", "5", "3^2"};
    int done = 0;
    while (done < 1000) {
        const unsigned k = 1 + static_cast<unsigned>(rng() % 5);
        auto A = LocalAlgebra(Field::parse(fields[rng() % 4]), k);
        auto elem = [&] { return A.element_at(rng() % A.size()); };
        const int deg = 1 + static_cast<int>(rng() % 4);
        std::vector<local::LocalElem> co;
        for (int i = 0; i <= deg; ++i) co.push_back(elem());
        LPoly g(A, co);
        auto d = elem();
        if (g.degree() < 1 || !g.derivative()(d).is_unit()) continue;
        LPoly f = g - LPoly::constant(A, g(d)) + LPoly::constant(A, elem() * A.y());
        auto b = local::hensel_root(f, d);
        c.expect(f(b).is_zero(), [&] { return "f(b) != 0 in " + A.descriptor(); });
        c.expect(A.divides(f(d), d - b), [&] { return "f(d) does not divide d - b in " + A.descriptor(); });
        auto r = testing::induction_lift(f, d);
        c.expect(r && f(*r).is_zero() && A.divides(f(d), d - *r), [&] { return "reference lifter contract"; });
        ++done;
    }
    c.note("1000 instances");
}

FqPoly monic_at(const Field& F, unsigned deg, std::uint64_t index) {
    std::vector<FieldElem> co;
    for (unsigned i = 0; i < deg; ++i, index /= F.size()) co.push_back(F.element_at(index % F.size()));
    co.push_back(F.one());
    return FqPoly(F, std::move(co));
}

void ac6(Check& c) {
    using namespace quotient;
    std::map<std::tuple<std::string, std::uint64_t, unsigned>, bool> residue_oracle;
    auto residue_has_cert = [&](const Field& G, const FieldElem& r, unsigned n) {
        auto key = std::tuple{G.descriptor(), G.index_of(r), n};
        auto it = residue_oracle.find(key);
        if (it != residue_oracle.end()) return it->second;
        bool found = brute_search(G, r, n, true).has_value();
        residue_oracle.emplace(key, found);
        return found;
    };

    LocalResultCache cache;
    const auto source = local::default_residue_source();
    std::uint64_t algebras = 0, calls = 0, certs = 0, obstructions = 0;
    for (auto q : galois::prime_powers_up_to(729)) {
        auto F = Field::of_order(q);
        std::uint64_t count = 1;
        for (unsigned deg = 1; count * q <= 729; ++deg) {
            count *= q;
            for (std::uint64_t fi = 0; fi < count; ++fi) {
                QuotientAlgebra A(F, monic_at(F, deg, fi));
                ++algebras;
                for (std::uint64_t i = 0; i < A.size(); ++i) {
                    auto a = A.element_at(i);
                    for (unsigned n : {3u, 5u}) {
                        ++calls;
                        try {
                            auto cert = balanced_decompose(a, n, source, &cache);
                            ++certs;
                            c.expect(verify(cert) && !cert.power,
                                     [&] { return A.descriptor() + " a=" + A.format(a) + " n=" + std::to_string(n); });
                        } catch (const ResidueFieldObstruction&) {
                            ++obstructions;
                            bool fires = false;
                            for (const auto& comp : A.components()) {
                                const auto& G = comp.local.residue_field();
                                fires = fires || !residue_has_cert(G, to_local(comp, a).residue(), n);
                            }
                            c.expect(fires, [&] { return "unconfirmed obstruction " + A.descriptor() + " a=" + A.format(a); });
                        } catch (const TwoElementResidueField&) {
                            ++obstructions;
                            bool two = false;
                            for (const auto& comp : A.components()) two = two || comp.local.residue_field().size() == 2;
                            c.expect(two, [&] { return "two-element claim " + A.descriptor(); });
                        }
                    }
                }
            }
        }
    }

    // 1 + x in F_3[x]/(x^2): n = 3 obstructed and absent by search, n = 5 certified
    auto A = QuotientAlgebra::parse("quot:3:0,0,1");
    auto a = A.one() + A.x();
    bool threw = false;
    try {
        balanced_decompose(a, 3);
    } catch (const ResidueFieldObstruction&) {
        threw = true;
    }
    c.expect(threw && !brute_search(A, a, 3, false), [] { return "1+x, n=3"; });
    auto five = balanced_decompose(a, 5);
    c.expect(verify(five) && !five.power, [] { return "1+x, n=5"; });
    c.expect(!brute_search(A, -A.one(), 4, false), [] { return "-1, n=4 has a certificate"; });

    std::ostringstream s;
    s << algebras << " algebras, " << calls << " calls, " << certs << " certificates, " << obstructions
      << " obstructions";
    c.note(s.str());
}

Eigen::MatrixXcd random_separated(unsigned m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(-3, 3);
    std::vector<std::complex<double>> lam;
    while (lam.size() < m) {
        std::complex<double> z(ud(rng), ud(rng));
        bool ok = true;
        for (auto w : lam) ok = ok && std::abs(z - w) > 0.2;
        if (ok) lam.push_back(z);
    }
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(m, m);
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j) V(i, j) += 0.3 * std::complex<double>(nd(rng), nd(rng));
    Eigen::VectorXcd d(m);
    for (unsigned i = 0; i < m; ++i) d(i) = lam[i];
    return V * d.asDiagonal() * V.inverse();
}

void ac7(Check& c) {
    using namespace matrix;
    auto F3 = Field::prime(3);
    MatrixRing R(F3, 2);
    auto J = R.parse_element("0,1,0,0");
    c.expect(!brute_search(R, J, 2, false), [] { return "J has a two-factor certificate"; });
    c.expect(verify(make_cert(R, J, {-J, R.one(), J - R.one()}, "fixed")), [] { return "J = (-J) I (J - I)"; });

    std::mt19937_64 rng(77);
    const std::uint32_t primes[] = {2, 3, 5, 7};
    int ok = 0, obstructed = 0;
    for (int t = 0; t < 500; ++t) {
        auto F = Field::prime(primes[rng() % 4]);
        const unsigned m = 1 + static_cast<unsigned>(rng() % 5);
        const unsigned k = 3 + static_cast<unsigned>(rng() % 3);
        std::vector<FieldElem> e;
        for (unsigned i = 0; i < m * m; ++i) e.push_back(F.element_at(rng() % F.size()));
        Matrix A(F, m, std::move(e));
        try {
            auto cert = matrix_balanced(A, k);
            bool commute = true;
            for (const auto& f : cert.factors) commute = commute && f * A == A * f;
            c.expect(verify(cert) && !cert.power && commute, [&] { return "matrix " + A.to_string(); });
            ++ok;
        } catch (const ResidueFieldObstruction&) {
            ++obstructed;
            quotient::QuotientAlgebra Q(F, minimal_polynomial(A));
            bool fires = false;
            for (const auto& comp : Q.components())
                fires = fires || !brute_search(comp.local.residue_field(), quotient::to_local(comp, Q.x()).residue(), k, true);
            c.expect(fires, [&] { return "unconfirmed matrix obstruction " + A.to_string(); });
        } catch (const TwoElementResidueField&) {
            ++obstructed;
            c.expect(F.size() == 2, [] { return "two-element claim"; });
        }
    }
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        const unsigned m = 1 + static_cast<unsigned>(rng() % 8);
        const unsigned k = 3 + static_cast<unsigned>(rng() % 4);
        auto A = random_separated(m, rng);
        try {
            auto d = complex_diagonalizable_demo(A, k, 1e-9);
            worst = std::max({worst, d.product_residual, d.sum_residual});
            c.expect(d.product_residual <= 1e-9 && d.sum_residual <= 1e-9, [] { return "complex residual"; });
        } catch (const Error& e) {
            c.expect(false, [&] { return std::string("complex demo: ") + e.what(); });
        }
    }
    std::ostringstream s;
    s << ok << " certified, " << obstructed << " obstructed, worst complex residual " << worst;
    c.note(s.str());
}

void ac8(Check& c) {
    std::mt19937_64 rng(8);
    std::map<std::string, int> verdicts;
    auto record = [&](const std::function<rational::MSVerdict()>& f) {
        try {
            verdicts[rational::to_string(f().outcome)]++;
            c.expect(true, [] { return ""; });
        } catch (const Error& e) {
            c.expect(false, [&] { return std::string("third outcome: ") + e.what(); });
        }
    };
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto F = Field::prime(p);
        auto rand = [&] {
            std::vector<FieldElem> co;
            const int d = static_cast<int>(rng() % 9);
            for (int i = 0; i <= d; ++i) co.push_back(F.element_at(rng() % p));
            return FqPoly(F, std::move(co));
        };
        for (int done = 0; done < 2500;) {
            auto x = rand(), y = rand();
            auto z = -(x + y);
            if (x.is_zero() || y.is_zero() || z.is_zero() || galois::gcd(x, y).degree() != 0) continue;
            record([&] { return rational::mason_stothers_check(x, y, z); });
            ++done;
        }
    }
    rational::Rationals Q;
    for (int done = 0; done < 2500;) {
        auto rand = [&] {
            std::vector<Rat> co;
            const int d = static_cast<int>(rng() % 7);
            for (int i = 0; i <= d; ++i) co.push_back(Rat(mpz_class(static_cast<long>(rng() % 11) - 5), mpz_class(1 + static_cast<long>(rng() % 3))));
            return rational::QPoly(Q, std::move(co));
        };
        auto x = rand(), y = rand();
        auto z = -(x + y);
        if (x.is_zero() || y.is_zero() || z.is_zero() || galois::gcd(x, y).degree() != 0) continue;
        record([&] { return rational::mason_stothers_check(x, y, z); });
        ++done;
    }
    std::uint64_t triples = 0;
    for (std::uint32_t p : {2u, 3u}) {
        auto r = rational::theorem3_refutation_search(Field::prime(p), 4);
        triples += r.triples;
        c.expect(r.hits.empty(), [&] { return "refutation hit over GF(" + std::to_string(p) + ")"; });
    }
    std::ostringstream s;
    for (const auto& [k, v] : verdicts) s << k << " " << v << ", ";
    s << "refutation search " << triples << " triples";
    c.note(s.str());
}

void ac9(Check& c) {
    SearchOptions opt;
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    mpz_class worst = 0;
    int found = 0;
    for (long a = 1; a <= 50; ++a) {
        try {
            auto cert = rational::four_factor_search(Rat(a), 2000, opt);
            c.expect(cert && verify(*cert) && cert->k == 4, [&] { return "no certificate within height 2000 for " + std::to_string(a); });
            if (cert) {
                ++found;
                worst = std::max(worst, rational::cert_height(*cert));
            }
        } catch (const BudgetExceeded& e) {
            c.expect(false, [&] { return std::to_string(a) + ": " + e.what(); });
        }
    }
    c.note(std::to_string(found) + "/50 found, largest factor height " + worst.get_str());
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        const char* title;
        double limit_s;
        void (*run)(Check&);
    };
    const Criterion all[] = {
        {"AC1", "classification table vs census", 300, ac1},
        {"AC2", "exception sets", 1, ac2},
        {"AC3", "Hasse sweep", 120, ac3},
        {"AC4", "fixed certificates", 1, ac4},
        {"AC5", "Hensel contract", 30, ac5},
        {"AC6", "quotient pipeline sweep", 300, ac6},
        {"AC7", "matrices", 120, ac7},
        {"AC8", "Mason-Stothers", 120, ac8},
        {"AC9", "four-factor search 1..50", 600, ac9},
    };
    int failed = 0;
    for (const auto& cr : all) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, [&] { return std::string("exception: ") + e.what(); });
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s <= cr.limit_s;
        const bool pass = c.ok() && in_time;
        failed += !pass;
        std::cout << cr.name << ' ' << (pass ? "PASS" : "FAIL") << "  " << cr.title << ": " << c.checks() << " checks, "
                  << c.failures() << " failures; " << c.notes() << "; " << std::fixed;
        std::cout.precision(2);
        std::cout << s << " s" << (in_time ? "" : " (over time limit)") << std::endl;
    }
    return failed ? 1 : 0;
}
