// Python bindings for the core operations: models, moments, sampling,
// Hankel matrices, concentration bounds, and spectral learning.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "swfa/bounds.hpp"
#include "swfa/io.hpp"
#include "swfa/spectral.hpp"

namespace py = pybind11;
using namespace swfa;
using wfa::LinearRepresentation;
using wfa::Mode;

namespace {

Mode mode_arg(const std::string& name) { return wfa::mode_from_name(name); }

lang::Word to_word(const lang::Alphabet& alphabet, const std::vector<std::string>& symbols) {
    lang::Word w;
    w.reserve(symbols.size());
    for (const auto& s : symbols) w.push_back(alphabet.require(s));
    return w;
}

std::vector<std::string> from_word(const lang::Alphabet& alphabet, const lang::Word& w) {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (int32_t x : w) out.push_back(alphabet.symbol(x));
    return out;
}

std::vector<lang::Word> to_words(const lang::Alphabet& alphabet,
                                 const std::vector<std::vector<std::string>>& strings) {
    std::vector<lang::Word> out;
    out.reserve(strings.size());
    for (const auto& s : strings) out.push_back(to_word(alphabet, s));
    return out;
}

hankel::BasisPtr make_basis(const lang::Alphabet& alphabet, int l) {
    return std::make_shared<const lang::Basis>(alphabet, l);
}

LinearRepresentation make_rep(const std::vector<std::string>& symbols,
                              const Eigen::VectorXd& initial,
                              const std::vector<Eigen::MatrixXd>& transitions,
                              const Eigen::VectorXd& final) {
    return LinearRepresentation(lang::Alphabet(symbols), initial, transitions, final);
}

}  // namespace

PYBIND11_MODULE(_swfa, m) {
    m.doc() = "Spectral learning of rational stochastic languages from Hankel matrices";

    py::register_exception<parse_error>(m, "ParseError");
    py::register_exception<symbol_error>(m, "SymbolError");
    py::register_exception<divergence_error>(m, "DivergenceError");

    py::class_<LinearRepresentation>(m, "Model")
        .def(py::init(&make_rep), py::arg("symbols"), py::arg("initial"), py::arg("transitions"),
             py::arg("final"))
        .def_property_readonly("symbols",
                               [](const LinearRepresentation& r) {
                                   return r.alphabet.symbols();
                               })
        .def_property_readonly("dim", &LinearRepresentation::dim)
        .def_property_readonly("initial",
                               [](const LinearRepresentation& r) { return r.initial; })
        .def_property_readonly("final", [](const LinearRepresentation& r) { return r.final; })
        .def_property_readonly("transitions",
                               [](const LinearRepresentation& r) { return r.transition; })
        .def("evaluate",
             [](const LinearRepresentation& r, const std::vector<std::string>& word) {
                 return wfa::evaluate(r, to_word(r.alphabet, word));
             },
             py::arg("word"))
        .def("series_sum", [](const LinearRepresentation& r) { return wfa::series_sum(r); })
        .def("moment",
             [](const LinearRepresentation& r, int k, const std::string& mode, double eta) {
                 return wfa::moment(r, k, mode_arg(mode), eta);
             },
             py::arg("k"), py::arg("mode") = "standard", py::arg("eta") = 0.0)
        .def("is_pfa",
             [](const LinearRepresentation& r) { return wfa::validate(r, true).pfa_valid; })
        .def("spectral_radius",
             [](const LinearRepresentation& r) { return wfa::validate(r).spectral_radius; })
        .def("__repr__", [](const LinearRepresentation& r) {
            std::ostringstream s;
            s << "Model(dim=" << r.dim() << ", symbols=" << r.alphabet.size() << ")";
            return s.str();
        });

    m.def("load_model", &io::load_model, py::arg("path"));
    m.def("save_model", &io::save_model, py::arg("path"), py::arg("model"));
    m.def("dumps_model", [](const LinearRepresentation& r) {
        std::ostringstream out;
        io::render_model(out, r);
        return out.str();
    });
    m.def("loads_model", [](const std::string& text) {
        std::istringstream in(text);
        return io::parse_model(in, "<string>");
    });

    m.def("sample",
          [](const LinearRepresentation& r, long n, uint64_t seed) {
              const auto pfa = wfa::PfaForm::checked(r);
              const auto s = sampling::sample(pfa, n, seed);
              std::vector<std::vector<std::string>> out;
              out.reserve(s.strings.size());
              for (const auto& w : s.strings) out.push_back(from_word(r.alphabet, w));
              return out;
          },
          py::arg("model"), py::arg("n"), py::arg("seed") = 0);

    m.def("basis_words",
          [](const std::vector<std::string>& symbols, int l) {
              const lang::Alphabet alphabet(symbols);
              const lang::Basis basis(alphabet, l);
              std::vector<std::vector<std::string>> out;
              for (const auto& w : basis.words()) out.push_back(from_word(alphabet, w));
              return out;
          },
          py::arg("symbols"), py::arg("l"));

    m.def("empirical_hankel",
          [](const std::vector<std::string>& symbols,
             const std::vector<std::vector<std::string>>& strings, int l,
             const std::string& mode, double eta) -> Eigen::MatrixXd {
              const lang::Alphabet alphabet(symbols);
              const auto b = make_basis(alphabet, l);
              return hankel::empirical_hankel(to_words(alphabet, strings), b, b, mode_arg(mode),
                                              eta)
                  .dense();
          },
          py::arg("symbols"), py::arg("strings"), py::arg("l"), py::arg("mode") = "standard",
          py::arg("eta") = 0.0);

    m.def("exact_hankel",
          [](const LinearRepresentation& r, int l, const std::string& mode,
             double eta) -> Eigen::MatrixXd {
              const auto b = make_basis(r.alphabet, l);
              return hankel::exact_hankel(r, b, b, mode_arg(mode), eta).dense();
          },
          py::arg("model"), py::arg("l"), py::arg("mode") = "standard", py::arg("eta") = 0.0);

    m.def("learn",
          [](const std::vector<std::string>& symbols,
             const std::vector<std::vector<std::string>>& strings, int l, int rank,
             const std::string& mode, double eta) {
              const lang::Alphabet alphabet(symbols);
              const auto b = make_basis(alphabet, l);
              return spectral::learn(to_words(alphabet, strings), b, b, mode_arg(mode), eta, rank)
                  .rep;
          },
          py::arg("symbols"), py::arg("strings"), py::arg("l"), py::arg("rank"),
          py::arg("mode") = "standard", py::arg("eta") = 0.0);

    m.def("learn_exact",
          [](const LinearRepresentation& target, int l, int rank, const std::string& mode,
             double eta) {
              const auto b = make_basis(target.alphabet, l);
              return spectral::learn_exact(target, b, b, mode_arg(mode), eta, rank).rep;
          },
          py::arg("model"), py::arg("l"), py::arg("rank"), py::arg("mode") = "standard",
          py::arg("eta") = 0.0);

    m.def("l1_distance_upto", &spectral::l1_distance_upto, py::arg("model1"), py::arg("model2"),
          py::arg("max_len"));

    m.def("spectral_norm_error",
          [](const LinearRepresentation& target,
             const std::vector<std::vector<std::string>>& strings, int l,
             const std::string& mode, double eta) {
              const auto b = make_basis(target.alphabet, l);
              const auto emp = hankel::empirical_hankel(to_words(target.alphabet, strings), b, b,
                                                        mode_arg(mode), eta);
              const auto exact = hankel::exact_hankel(target, b, b, mode_arg(mode), eta);
              return hankel::spectral_norm_diff(emp, exact).value;
          },
          py::arg("model"), py::arg("strings"), py::arg("l"), py::arg("mode") = "standard",
          py::arg("eta") = 0.0);

    m.def("solve_t", &bounds::solve_t, py::arg("delta"), py::arg("k_trace") = 2.0);
    m.def("bound_standard",
          [](double s2, long n, double delta) { return bounds::bound_standard(s2, n, delta).value; },
          py::arg("s2"), py::arg("n"), py::arg("delta") = 0.05);
    m.def("bound_prefix",
          [](double s1, double s2, double eta, long n, double delta, std::optional<int> l) {
              return bounds::bound_prefix(s1, s2, eta, n, delta, l).value;
          },
          py::arg("s1"), py::arg("s2"), py::arg("eta"), py::arg("n"), py::arg("delta") = 0.05,
          py::arg("l") = std::nullopt);
    m.def("bound_factor",
          [](double s1, double s2, double eta, long n, double delta) {
              return bounds::bound_factor(s1, s2, eta, n, delta).value;
          },
          py::arg("s1"), py::arg("s2"), py::arg("eta"), py::arg("n"), py::arg("delta") = 0.05);
    m.def("bound_baseline", &bounds::bound_baseline_eq1, py::arg("m"), py::arg("d"), py::arg("n"),
          py::arg("delta") = 0.05);
    m.def("k_eta", &bounds::k_eta, py::arg("eta"));

    m.def("random_pfa",
          [](const std::vector<std::string>& symbols, int states, uint64_t seed) {
              return sampling::make_random_pfa(lang::Alphabet(symbols), states, seed).rep;
          },
          py::arg("symbols"), py::arg("states"), py::arg("seed") = 0);
}
