#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "balfact/core/search.hpp"
#include "balfact/curves/cubic.hpp"
#include "balfact/detail/strings.hpp"
#include "balfact/io/io.hpp"
#include "balfact/local/theorem4.hpp"
#include "balfact/matrix/matrix.hpp"
#include "balfact/quotient/quotient.hpp"
#include "balfact/rational/lab.hpp"
#include "balfact/solver/field_solver.hpp"

namespace py = pybind11;
using namespace balfact;
using galois::Field;

namespace {

// Results cross the boundary as JSON text; the Python package decodes them.
template <class R>
std::optional<std::string> cert_text(const std::optional<BalancedCert<R>>& c) {
    if (!c) return std::nullopt;
    return to_json(*c).dump();
}

SearchOptions options(std::uint64_t budget, unsigned threads) { return {budget, threads}; }

template <class Out, class F>
Out on_finite(const std::string& ring, F&& f) {
    return std::visit(
        [&](const auto& r) -> Out {
            using T = std::decay_t<decltype(r)>;
            if constexpr (!FiniteRing<T>) {
                throw ParseError("a finite ring is required, got '" + ring + "'");
            } else {
                return f(r);
            }
        },
        io::parse_ring(ring));
}

rational::QPoly qpoly(const std::vector<std::string>& c) {
    std::vector<rational::Rat> v;
    for (const auto& s : c) v.push_back(rational::Rat::parse(s));
    return rational::QPoly(rational::Rationals{}, std::move(v));
}

galois::FqPoly fqpoly(const Field& F, const std::vector<std::string>& c) {
    std::vector<galois::FieldElem> v;
    for (const auto& s : c) v.push_back(F.parse_element(s));
    return galois::FqPoly(F, std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Balanced factorisations over finite fields, local and quotient algebras, matrices and the rationals";

    auto base = py::register_exception<Error>(m, "BalfactError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NotPrimePower>(m, "NotPrimePower", base.ptr());
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());
    py::register_exception<ZeroInput>(m, "ZeroInput", base.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
    py::register_exception<ResidueFieldObstruction>(m, "ResidueFieldObstruction", base.ptr());
    py::register_exception<TwoElementResidueField>(m, "TwoElementResidueField", base.ptr());
    py::register_exception<IllConditioned>(m, "IllConditioned", base.ptr());

    m.attr("DEFAULT_BUDGET") = kDefaultBudget;

    m.def("classify", [](std::uint64_t q, unsigned k) { return solver::to_json(solver::classify(q, k)).dump(); },
          py::arg("q"), py::arg("k"));

    m.def(
        "census",
        [](const std::string& ring, unsigned k, std::uint64_t budget, unsigned threads) {
            py::gil_scoped_release nogil;
            return on_finite<std::string>(ring, [&](const auto& r) { return io::to_json(r, k, census(r, k, options(budget, threads))).dump(); });
        },
        py::arg("ring"), py::arg("k"), py::arg("budget") = kDefaultBudget, py::arg("threads") = 1);

    m.def(
        "construct",
        [](const std::string& field, const std::string& a, unsigned k, bool nonpower) {
            auto F = Field::parse(field);
            auto e = F.parse_element(a);
            return cert_text(nonpower ? solver::construct_nonpower(e, k) : solver::construct(e, k));
        },
        py::arg("field"), py::arg("a"), py::arg("k"), py::arg("nonpower") = false);

    m.def(
        "search",
        [](const std::string& ring, const std::string& a, unsigned k, bool nonpower, std::uint64_t budget,
           unsigned threads) {
            py::gil_scoped_release nogil;
            return on_finite<std::optional<std::string>>(ring, [&](const auto& r) {
                return cert_text(brute_search(r, r.parse_element(a), k, nonpower, options(budget, threads)));
            });
        },
        py::arg("ring"), py::arg("a"), py::arg("k"), py::arg("nonpower") = false, py::arg("budget") = kDefaultBudget,
        py::arg("threads") = 1);

    m.def(
        "decompose",
        [](const std::string& ring, const std::string& a, unsigned n) {
            auto R = io::parse_ring(ring);
            if (auto* L = std::get_if<local::LocalAlgebra>(&R))
                return to_json(local::theorem4_decompose(L->parse_element(a), n)).dump();
            if (auto* Q = std::get_if<quotient::QuotientAlgebra>(&R))
                return to_json(quotient::balanced_decompose(Q->parse_element(a), n)).dump();
            throw ParseError("decompose needs a local: or quot: descriptor");
        },
        py::arg("ring"), py::arg("a"), py::arg("n"));

    m.def(
        "matrix_balanced",
        [](const std::string& field, unsigned dim, const std::string& entries, unsigned k) {
            matrix::MatrixRing R(Field::parse(field), dim);
            return to_json(matrix::matrix_balanced(R.parse_element(entries), k)).dump();
        },
        py::arg("field"), py::arg("dim"), py::arg("entries"), py::arg("k"));

    m.def(
        "minimal_polynomial",
        [](const std::string& field, unsigned dim, const std::string& entries) {
            matrix::MatrixRing R(Field::parse(field), dim);
            return matrix::minimal_polynomial(R.parse_element(entries)).to_string();
        },
        py::arg("field"), py::arg("dim"), py::arg("entries"));

    m.def(
        "rational",
        [](const std::string& target, unsigned k, unsigned height, std::uint64_t budget,
           unsigned threads) -> std::optional<std::string> {
            auto a = rational::Rat::parse(target);
            py::gil_scoped_release nogil;
            switch (k) {
                case 0:
                case 1:
                    throw PreconditionViolated("k must be at least 2");
                case 2:
                    return cert_text(rational::two_factor(a));
                case 3:
                    return cert_text(rational::three_factor_search(a, height, options(budget, threads)));
                case 4:
                    return cert_text(rational::four_factor_search(a, height, options(budget, threads)));
                default:
                    return to_json(rational::universal(a, k)).dump();
            }
        },
        py::arg("target"), py::arg("k"), py::arg("height") = 2000, py::arg("budget") = kDefaultBudget,
        py::arg("threads") = 1);

    m.def(
        "mason",
        [](const std::string& field, const std::vector<std::string>& x, const std::vector<std::string>& y,
           const std::optional<std::vector<std::string>>& z) {
            if (field == "Q") {
                auto px = qpoly(x), py_ = qpoly(y);
                auto pz = z ? qpoly(*z) : -(px + py_);
                return rational::to_json(rational::mason_stothers_check(px, py_, pz)).dump();
            }
            auto F = Field::parse(field);
            auto px = fqpoly(F, x), py_ = fqpoly(F, y);
            auto pz = z ? fqpoly(F, *z) : -(px + py_);
            return rational::to_json(rational::mason_stothers_check(px, py_, pz)).dump();
        },
        py::arg("field"), py::arg("x"), py::arg("y"), py::arg("z") = py::none());

    m.def(
        "curve_sweep",
        [](const std::string& field, const std::string& family, unsigned threads) {
            auto F = Field::parse(field);
            auto fam = curves::parse_family(family);
            py::gil_scoped_release nogil;
            std::vector<std::string> out;
            for (const auto& r : curves::hasse_sweep(F, fam, options(kDefaultBudget, threads)).reports)
                out.push_back(curves::to_json(r).dump());
            return out;
        },
        py::arg("field"), py::arg("family"), py::arg("threads") = 1);

    m.def(
        "verify",
        [](const std::string& cert) {
            Json j;
            try {
                j = Json::parse(cert);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(e.what());
            }
            return io::verify_json(j).ok;
        },
        py::arg("cert"));
}
