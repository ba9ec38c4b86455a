#include "cli.hpp"

#include <CLI11.hpp>

#include <complex>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "balfact/core/search.hpp"
#include "balfact/curves/cubic.hpp"
#include "balfact/detail/strings.hpp"
#include "balfact/io/io.hpp"
#include "balfact/local/theorem4.hpp"
#include "balfact/matrix/matrix.hpp"
#include "balfact/quotient/quotient.hpp"
#include "balfact/rational/lab.hpp"
#include "balfact/solver/field_solver.hpp"

namespace balfact::cli {

namespace {

using galois::Field;
using galois::FieldElem;

struct Globals {
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    unsigned threads = 1;
    bool pretty = false;

    SearchOptions search() const { return {budget, threads}; }
};

// Rewraps a parse failure with the flag that supplied the value.
template <class F>
auto flagged(const char* flag, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw ParseError(std::string(flag) + ": " + e.what());
    }
}

Field parse_field(const std::string& s, const Globals& g) {
    return flagged("--field", [&] { return Field::parse(s, g.seed); });
}

io::AnyRing parse_ring(const std::string& s, const Globals& g, const char* flag) {
    return flagged(flag, [&]() -> io::AnyRing {
        if (s.find(':') == std::string::npos && s != "Q") return Field::parse(s, g.seed);
        return io::parse_ring(s);
    });
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

template <class R>
int emit_cert(std::ostream& out, const std::optional<BalancedCert<R>>& c, Json absent) {
    if (!c) {
        absent["found"] = false;
        emit(out, absent);
        return kAbsent;
    }
    emit(out, to_json(*c));
    return kOk;
}

rational::QPoly parse_qpoly(const std::string& csv) {
    std::vector<rational::Rat> c;
    for (auto t : detail::split(csv, ',')) c.push_back(rational::Rat::parse(t));
    return rational::QPoly(rational::Rationals{}, std::move(c));
}

std::complex<double> parse_complex(std::string_view t) {
    auto parts = detail::split(t, ':');
    if (parts.size() > 2) throw ParseError("complex entry must be 're' or 're:im'");
    auto num = [](std::string_view s) {
        std::string str(s);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(str, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != str.size()) throw ParseError("cannot parse number '" + str + "'");
        return v;
    };
    return {num(parts[0]), parts.size() == 2 ? num(parts[1]) : 0.0};
}

Json complex_json(const Eigen::MatrixXcd& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(Json::array({M(i, j).real(), M(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Globals g;
    CLI::App app{"Balanced factorisations a = a1 a2 ... ak with a1 + ... + ak = 0", "balfact"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "Seed for choosing extension-field moduli")->capture_default_str();
    app.add_option("--budget", g.budget, "Work budget for searches")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads for census, curve and rational searches")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    app.add_flag("--pretty", g.pretty, "Human-readable tables on standard error");

    std::function<int()> action;

    // classify
    std::uint64_t q = 0;
    unsigned k = 0;
    auto* classify = app.add_subcommand("classify", "Whether every element of GF(q) is a balanced k-product");
    classify->add_option("--q", q, "Field order")->required();
    classify->add_option("--k", k, "Number of factors")->required();
    classify->callback([&] {
        action = [&]() -> int {
            auto c = flagged("--q", [&] { return solver::classify(q, k); });
            emit(out, solver::to_json(c));
            if (g.pretty) {
                auto F = Field::of_order(q, g.seed);
                std::vector<std::string> ex;
                for (const auto& e : solver::exception_set(F, k)) ex.push_back(F.format(e));
                err << "GF(" << q << ") k=" << k << ": " << (c.answer ? "yes" : "no") << " [" << c.rule
                    << "]  exceptions: {" << join(ex) << "}\n";
            }
            return c.answer ? kOk : kAbsent;
        };
    });

    // construct
    std::string field, elem;
    bool nonpower = false, stored = false;
    unsigned kmax = 0;
    auto* construct = app.add_subcommand("construct", "Constructive certificate in GF(q)");
    construct->add_option("--field", field, "Field descriptor: p, p^n or p^n/c0,...,cn");
    construct->add_option("--a", elem, "Target element");
    construct->add_option("--k", k, "Number of factors");
    construct->add_flag("--nonpower", nonpower, "Require at least two distinct factors");
    construct->add_option("--min-k", kmax, "Report the least k <= this bound instead of a certificate");
    construct->add_flag("--stored", stored, "Print the stored small-field certificates");
    construct->callback([&] {
        action = [&]() -> int {
            if (stored) {
                for (const auto& c : solver::stored_certificates()) emit(out, to_json(c));
                return kOk;
            }
            if (field.empty() || elem.empty()) throw ParseError("construct: --field and --a are required");
            auto F = parse_field(field, g);
            auto a = flagged("--a", [&] { return F.parse_element(elem); });
            Json absent{{"ring", F.descriptor()}, {"target", F.format(a)}};
            if (kmax) {
                auto m = solver::min_k(a, kmax);
                absent["k_max"] = kmax;
                absent["min_k"] = m ? Json(*m) : Json(nullptr);
                emit(out, absent);
                return m ? kOk : kAbsent;
            }
            if (k == 0) throw ParseError("construct: --k is required");
            absent["k"] = k;
            return emit_cert(out, nonpower ? solver::construct_nonpower(a, k) : solver::construct(a, k), absent);
        };
    });

    // search
    std::string ring;
    auto* search = app.add_subcommand("search", "Exhaustive search in a finite ring");
    search->add_option("--ring", ring, "Field, local:, quot: or mat: descriptor")->required();
    search->add_option("--a", elem, "Target element")->required();
    search->add_option("--k", k, "Number of factors")->required();
    search->add_flag("--nonpower", nonpower, "Skip power decompositions");
    search->callback([&] {
        action = [&]() -> int {
            auto R = parse_ring(ring, g, "--ring");
            return std::visit(
                [&](const auto& r) -> int {
                    using T = std::decay_t<decltype(r)>;
                    if constexpr (!FiniteRing<T>) {
                        throw ParseError("--ring: search needs a finite ring");
                    } else {
                        auto a = flagged("--a", [&] { return r.parse_element(elem); });
                        Json absent{{"ring", r.descriptor()}, {"target", r.format(a)}, {"k", k}};
                        return emit_cert(out, brute_search(r, a, k, nonpower, g.search()), absent);
                    }
                },
                R);
        };
    });

    // census
    auto* census = app.add_subcommand("census", "Elements with and without a balanced k-factorisation");
    census->add_option("--field,--ring", ring, "Finite ring descriptor")->required();
    census->add_option("--k", k, "Number of factors")->required();
    census->callback([&] {
        action = [&]() -> int {
            auto R = parse_ring(ring, g, "--field");
            return std::visit(
                [&](const auto& r) -> int {
                    using T = std::decay_t<decltype(r)>;
                    if constexpr (!FiniteRing<T>) {
                        throw ParseError("--field: census needs a finite ring");
                    } else {
                        auto c = balfact::census(r, k, g.search());
                        auto j = io::to_json(r, k, c);
                        emit(out, j);
                        if (g.pretty) {
                            std::vector<std::string> miss;
                            for (const auto& m : j["missing"]) miss.push_back(m.template get<std::string>());
                            err << std::left << std::setw(24) << r.descriptor() << " k=" << std::setw(3) << k
                                << " decomposable " << std::setw(8) << c.decomposable.size() << " missing {"
                                << join(miss) << "}\n";
                        }
                        return kOk;
                    }
                },
                R);
        };
    });

    // curve
    std::string family = "A";
    auto* curve = app.add_subcommand("curve", "Point counts of the cubic families with the Hasse check");
    curve->add_option("--field", field, "Field descriptor")->required();
    curve->add_option("--family", family, "A or B")->capture_default_str();
    curve->add_option("--a", elem, "Single parameter instead of the full sweep");
    curve->callback([&] {
        action = [&]() -> int {
            auto F = parse_field(field, g);
            auto fam = flagged("--family", [&] { return curves::parse_family(family); });
            std::vector<curves::CurveReport> reports;
            if (!elem.empty()) {
                auto a = flagged("--a", [&] { return F.parse_element(elem); });
                reports.push_back(curves::count_points({fam, a}, g.budget));
            } else {
                auto sweep = curves::hasse_sweep(F, fam, g.search());
                reports = std::move(sweep.reports);
                if (g.pretty)
                    err << "q=" << F.size() << " family " << curves::to_string(fam)
                        << " threshold q+1-2sqrt(q)>3: " << (sweep.threshold ? "true" : "false") << '\n';
            }
            bool ok = true;
            for (const auto& r : reports) {
                emit(out, curves::to_json(r));
                ok = ok && r.hasse_ok.value_or(true);
                if (g.pretty)
                    err << "  a=" << std::setw(8) << F.format(r.a) << " N=" << std::setw(8) << r.projective_count
                        << (r.singular ? "  singular (" + curves::to_string(r.reason) + ")"
                                       : std::string("  hasse ") + (*r.hasse_ok ? "ok" : "FAIL"))
                        << '\n';
            }
            return ok ? kOk : kAbsent;
        };
    });

    // algebra
    unsigned n = 0;
    auto* algebra = app.add_subcommand("algebra", "Balanced factorisation in a local or quotient algebra");
    algebra->add_option("--ring", ring, "local:<field>:<k> or quot:<field>:<f coefficients>")->required();
    algebra->add_option("--a", elem, "Target element")->required();
    algebra->add_option("--n", n, "Number of factors")->required();
    algebra->callback([&] {
        action = [&]() -> int {
            auto R = parse_ring(ring, g, "--ring");
            Json fail{{"ring", io::descriptor(R)}, {"target", elem}, {"k", n}, {"found", false}};
            try {
                if (auto* L = std::get_if<local::LocalAlgebra>(&R)) {
                    auto a = flagged("--a", [&] { return L->parse_element(elem); });
                    emit(out, to_json(local::theorem4_decompose(a, n)));
                } else if (auto* Q = std::get_if<quotient::QuotientAlgebra>(&R)) {
                    auto a = flagged("--a", [&] { return Q->parse_element(elem); });
                    emit(out, to_json(quotient::balanced_decompose(a, n)));
                } else {
                    throw ParseError("--ring: algebra needs a local: or quot: descriptor");
                }
            } catch (const ResidueFieldObstruction& e) {
                fail["obstruction"] = "ResidueFieldObstruction";
                fail["message"] = e.what();
                emit(out, fail);
                return kAbsent;
            } catch (const TwoElementResidueField& e) {
                fail["obstruction"] = "TwoElementResidueField";
                fail["message"] = e.what();
                emit(out, fail);
                return kAbsent;
            }
            return kOk;
        };
    });

    // matrix
    unsigned dim = 0;
    std::string entries;
    bool complex = false;
    double tol = 1e-9;
    auto* matrix = app.add_subcommand("matrix", "Commuting balanced factorisation of a square matrix");
    matrix->add_option("--field", field, "Field descriptor (ignored with --complex)");
    matrix->add_option("--dim", dim, "Matrix dimension")->required();
    matrix->add_option("--entries", entries, "Row-major comma-separated entries; 're:im' with --complex")
        ->required();
    matrix->add_option("--k", k, "Number of factors")->required();
    matrix->add_flag("--complex", complex, "Floating-point demo over the complex numbers");
    matrix->add_option("--tol", tol, "Residual tolerance for --complex")->capture_default_str();
    matrix->callback([&] {
        action = [&]() -> int {
            if (complex) {
                auto toks = detail::split(entries, ',');
                if (toks.size() != std::size_t{dim} * dim) throw ParseError("--entries: expected dim^2 values");
                Eigen::MatrixXcd A(dim, dim);
                for (unsigned i = 0; i < dim * dim; ++i)
                    A(i / dim, i % dim) = flagged("--entries", [&] { return parse_complex(toks[i]); });
                try {
                    auto d = matrix::complex_diagonalizable_demo(A, k, tol);
                    Json f = Json::array();
                    for (const auto& M : d.factors) f.push_back(complex_json(M));
                    emit(out, Json{{"dim", dim},
                                   {"k", k},
                                   {"factors", std::move(f)},
                                   {"product_residual", d.product_residual},
                                   {"sum_residual", d.sum_residual}});
                } catch (const IllConditioned& e) {
                    emit(out, Json{{"dim", dim}, {"k", k}, {"found", false}, {"message", e.what()}});
                    return kAbsent;
                }
                return kOk;
            }
            if (field.empty()) throw ParseError("matrix: --field is required without --complex");
            matrix::MatrixRing R(parse_field(field, g), dim);
            auto A = flagged("--entries", [&] { return R.parse_element(entries); });
            if (g.pretty) err << "minimal polynomial " << matrix::minimal_polynomial(A).to_string() << '\n';
            try {
                emit(out, to_json(matrix::matrix_balanced(A, k)));
            } catch (const ResidueFieldObstruction& e) {
                emit(out, Json{{"ring", R.descriptor()}, {"target", R.format(A)}, {"k", k}, {"found", false},
                               {"obstruction", "ResidueFieldObstruction"}, {"message", e.what()}});
                return kAbsent;
            } catch (const TwoElementResidueField& e) {
                emit(out, Json{{"ring", R.descriptor()}, {"target", R.format(A)}, {"k", k}, {"found", false},
                               {"obstruction", "TwoElementResidueField"}, {"message", e.what()}});
                return kAbsent;
            }
            return kOk;
        };
    });

    // rational
    std::string target;
    unsigned height = 2000;
    auto* rat = app.add_subcommand("rational", "Balanced factorisation over the rationals");
    rat->add_option("--target", target, "num/den")->required();
    rat->add_option("--k", k, "Number of factors")->required();
    rat->add_option("--height", height, "Height bound for k = 3, 4 searches")->capture_default_str();
    rat->callback([&] {
        action = [&]() -> int {
            auto a = flagged("--target", [&] { return rational::Rat::parse(target); });
            Json absent{{"ring", "Q"}, {"target", a.to_string()}, {"k", k}};
            switch (k) {
                case 0:
                case 1:
                    throw ParseError("--k: must be at least 2");
                case 2:
                    return emit_cert(out, rational::two_factor(a), absent);
                case 3:
                    absent["height"] = height;
                    return emit_cert(out, rational::three_factor_search(a, height, g.search()), absent);
                case 4:
                    absent["height"] = height;
                    return emit_cert(out, rational::four_factor_search(a, height, g.search()), absent);
                default:
                    if (a.is_zero()) throw ParseError("--target: must be nonzero for k >= 5");
                    emit(out, to_json(rational::universal(a, k)));
                    return kOk;
            }
        };
    });

    // mason
    std::string xs, ys, zs;
    unsigned max_deg = 0;
    bool refute = false;
    auto* mason = app.add_subcommand("mason", "Mason-Stothers check, or the cube-pattern refutation search");
    mason->add_option("--field", field, "Field descriptor or Q")->required();
    mason->add_option("--x", xs, "Coefficients of x, low to high");
    mason->add_option("--y", ys, "Coefficients of y, low to high");
    mason->add_option("--z", zs, "Coefficients of z; defaults to -x-y");
    mason->add_flag("--refute", refute, "Search coprime zero-sum triples with xyz = t^s v^3, 3 not dividing s");
    mason->add_option("--max-deg", max_deg, "Degree bound for --refute")->capture_default_str();
    mason->callback([&] {
        action = [&]() -> int {
            if (refute) {
                if (field == "Q") throw ParseError("--field: --refute needs a finite field");
                auto F = parse_field(field, g);
                auto r = rational::theorem3_refutation_search(F, max_deg, g.search());
                Json hits = Json::array();
                for (const auto& h : r.hits)
                    hits.push_back({{"x", h.x.to_string()}, {"y", h.y.to_string()}, {"z", h.z.to_string()}, {"s", h.s}});
                emit(out, Json{{"field", F.descriptor()}, {"max_deg", max_deg}, {"triples", r.triples},
                               {"hits", std::move(hits)}});
                return r.hits.empty() ? kAbsent : kOk;
            }
            if (xs.empty() || ys.empty()) throw ParseError("mason: --x and --y are required");
            rational::MSVerdict v;
            if (field == "Q") {
                auto x = flagged("--x", [&] { return parse_qpoly(xs); });
                auto y = flagged("--y", [&] { return parse_qpoly(ys); });
                auto z = zs.empty() ? -(x + y) : flagged("--z", [&] { return parse_qpoly(zs); });
                v = rational::mason_stothers_check(x, y, z);
            } else {
                auto F = parse_field(field, g);
                auto x = flagged("--x", [&] { return galois::parse_poly(F, xs); });
                auto y = flagged("--y", [&] { return galois::parse_poly(F, ys); });
                auto z = zs.empty() ? -(x + y) : flagged("--z", [&] { return galois::parse_poly(F, zs); });
                v = rational::mason_stothers_check(x, y, z);
            }
            emit(out, rational::to_json(v));
            return kOk;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Re-check certificate JSON read from standard input");
    verify->callback([&] {
        action = [&]() -> int {
            bool all = true, any = false;
            while (in >> std::ws, in.peek() != std::char_traits<char>::eof()) {
                Json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw ParseError(std::string("stdin: ") + e.what());
                }
                auto r = io::verify_json(j);
                emit(out, Json{{"ok", r.ok}, {"ring", r.ring}, {"k", r.k}});
                all = all && r.ok;
                any = true;
            }
            if (!any) throw ParseError("stdin: no certificate");
            return all ? kOk : kAbsent;
        };
    });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e, out, err) == 0) return kOk;
        return kUsage;
    }
    try {
        return action();
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace balfact::cli
