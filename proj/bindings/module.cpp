#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsegreedy/bounds.hpp"
#include "sparsegreedy/css.hpp"
#include "sparsegreedy/instances.hpp"
#include "sparsegreedy/linalg.hpp"
#include "sparsegreedy/select.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "sparse support selection and column subset selection toolkit";

  py::class_<sg::SparseInstance>(m, "SparseInstance")
      .def_readonly("A", &sg::SparseInstance::A)
      .def_readonly("x", &sg::SparseInstance::x)
      .def_readonly("y", &sg::SparseInstance::y)
      .def_readonly("support", &sg::SparseInstance::support)
      .def_readonly("seed", &sg::SparseInstance::seed);

  py::class_<sg::CssInstance>(m, "CssInstance")
      .def_readonly("D", &sg::CssInstance::D)
      .def_readonly("planted", &sg::CssInstance::planted)
      .def_readonly("perturbation", &sg::CssInstance::perturbation)
      .def_readonly("seed", &sg::CssInstance::seed);

  py::class_<sg::SelectionTrace>(m, "SelectionTrace")
      .def_readonly("selected", &sg::SelectionTrace::selected)
      .def_readonly("gains", &sg::SelectionTrace::gains)
      .def_readonly("oracle_calls", &sg::SelectionTrace::oracle_calls)
      .def_readonly("early_stopped", &sg::SelectionTrace::early_stopped)
      .def_readonly("failed", &sg::SelectionTrace::failed)
      .def_property_readonly("method", [](const sg::SelectionTrace& t) {
        return sg::method_name(t.method);
      });

  py::class_<sg::CssTrace>(m, "CssTrace")
      .def_readonly("selected", &sg::CssTrace::selected)
      .def_readonly("errors_by_step", &sg::CssTrace::errors_by_step)
      .def_readonly("oracle_calls", &sg::CssTrace::oracle_calls)
      .def_readonly("early_stopped", &sg::CssTrace::early_stopped)
      .def_property_readonly("method", [](const sg::CssTrace& t) {
        return sg::css_method_name(t.method);
      });

  m.def("gen_instance", &sg::gen_instance, py::arg("m"), py::arg("n"),
        py::arg("k"), py::arg("seed"),
        "seeded noiseless sparse-recovery instance");
  m.def("gen_css_instance", &sg::gen_css_instance, py::arg("n_rows"),
        py::arg("m_cols"), py::arg("span_size"), py::arg("perturbation"),
        py::arg("seed"));
  m.def("sample_size_n", &sg::sample_size_n, py::arg("k"), py::arg("m"),
        py::arg("beta"));

  m.def("schedule_size", &sg::schedule_size, py::arg("i"), py::arg("k"),
        py::arg("m"), py::arg("epsilon"));
  m.def(
      "run_selector",
      [](const std::string& method, const sg::Matrix& A, const sg::Vector& y,
         int k, double epsilon, int r, bool replacement, std::uint64_t seed) {
        sg::SelectorOptions opts;
        opts.epsilon = epsilon;
        opts.r = r;
        opts.replacement = replacement;
        opts.seed = seed;
        return sg::run_selector(sg::method_from_name(method), A, y, k, opts);
      },
      py::arg("method"), py::arg("A"), py::arg("y"), py::arg("k"),
      py::arg("epsilon") = 0.1, py::arg("r") = 0,
      py::arg("replacement") = false, py::arg("seed") = 0);
  m.def("brute_force_support", &sg::brute_force_support, py::arg("A"),
        py::arg("y"), py::arg("k"));

  m.def("best_rank_k_error", &sg::best_rank_k_error, py::arg("D"), py::arg("k"));
  m.def(
      "run_css",
      [](const std::string& method, const sg::Matrix& D, int k, double epsilon,
         std::uint64_t seed) {
        return sg::run_css(sg::css_method_from_name(method), D, k, epsilon, seed);
      },
      py::arg("method"), py::arg("D"), py::arg("k"), py::arg("epsilon") = 0.1,
      py::arg("seed") = 0);
  m.def("recon_error", &sg::recon_error, py::arg("D"), py::arg("selected"));

  m.def("p_product_lower_bound", [](int k, double epsilon) {
    const auto b = sg::p_product_lower_bound(k, epsilon);
    return py::make_tuple(b.tight, b.simple);
  });
  m.def("restricted_upper_bound", &sg::restricted_upper_bound, py::arg("m"),
        py::arg("k"), py::arg("r"));
  m.def("restricted_lower_bound", &sg::restricted_lower_bound, py::arg("k"),
        py::arg("alpha1"));
  m.def("oracle_complexity", [](int m, int k, double epsilon) {
    const auto oc = sg::oracle_complexity(m, k, epsilon);
    return py::make_tuple(oc.exact, oc.harmonic_estimate);
  });
  m.def("q_tilde_bounds", [](int n, int m, int k, double gamma, double delta) {
    const auto q = sg::q_tilde_bounds(n, m, k, gamma, delta);
    return py::make_tuple(q.q1, q.q2, q.vacuous);
  });
  m.def("lemma_ineq_margin", &sg::lemma_ineq_margin, py::arg("a"), py::arg("b"));
  m.def("submodularity_ratio", &sg::submodularity_ratio, py::arg("A"),
        py::arg("y"), py::arg("reference"), py::arg("k"));
  m.def("psg_expectation_bound",
        [](double gamma_ratio, double epsilon, int m, int k) {
          const auto b = sg::psg_expectation_bound(gamma_ratio, epsilon, m, k);
          return py::make_tuple(b.eta, b.factor);
        });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
