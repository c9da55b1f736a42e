#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "abelian/criticality.hpp"
#include "abelian/distribution.hpp"
#include "abelian/errors.hpp"
#include "abelian/estimation.hpp"
#include "abelian/identities.hpp"
#include "abelian/sampling.hpp"

namespace py = pybind11;
using namespace abelian;

namespace {

template <class T>
py::array_t<T> to_array(std::span<const T> values) {
    return py::array_t<T>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(values.size())},
                          std::vector<py::ssize_t>{static_cast<py::ssize_t>(sizeof(T))}, values.data());
}

py::object to_pyint(const BigInteger& value) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

// Accepts int or fractions.Fraction (anything with numerator/denominator).
ExactRational to_rational(const py::handle& value) {
    const auto num = py::str(value.attr("numerator")).cast<std::string>();
    const auto den = py::str(value.attr("denominator")).cast<std::string>();
    return ExactRational(BigInteger(num), BigInteger(den));
}

} // namespace

PYBIND11_MODULE(_abelian, m) {
    m.doc() = "Abelian distribution: evaluation, sampling, fitting and criticality analysis.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<AbelianParams>(m, "AbelianParams")
        .def(py::init<double, std::int64_t>(), py::arg("alpha"), py::arg("n"))
        .def_property_readonly("alpha", &AbelianParams::alpha)
        .def_property_readonly("n", &AbelianParams::n)
        .def_property_readonly("x", &AbelianParams::x)
        .def("__repr__", [](const AbelianParams& p) {
            std::ostringstream os;
            os << "AbelianParams(alpha=" << p.alpha() << ", n=" << p.n() << ")";
            return os.str();
        });

    m.def("norm_const", &norm_const, py::arg("params"));
    m.def("log_pmf", &log_pmf, py::arg("params"), py::arg("size"));
    m.def("pmf", &pmf, py::arg("params"), py::arg("size"));
    m.def("mean_closed_form", &mean_closed_form, py::arg("params"));

    py::class_<LogProbTable>(m, "LogProbTable")
        .def_property_readonly("params", &LogProbTable::params)
        .def_property_readonly("n", &LogProbTable::n)
        .def_property_readonly("log_pmf", [](const LogProbTable& t) { return to_array(t.log_pmf()); })
        .def_property_readonly("cdf", [](const LogProbTable& t) { return to_array(t.cdf()); })
        .def("pmf_at", &LogProbTable::pmf_at, py::arg("size"));
    m.def("build_table", &build_table, py::arg("params"), py::arg("max_entries") = kDefaultMaxTableEntries);
    m.def("cdf", &abelian::cdf, py::arg("table"), py::arg("size"));
    m.def("quantile", &quantile, py::arg("table"), py::arg("u"));
    m.def("moment", &moment, py::arg("table"), py::arg("k"));

    py::class_<Sampler>(m, "Sampler")
        .def(py::init([](const AbelianParams& params, std::uint64_t seed, const std::string& method) {
                 return new_sampler(params, seed, parse_sampling_method(method));
             }),
             py::arg("params"), py::arg("seed"), py::arg("method") = "inverse-cdf")
        .def("draw", &Sampler::draw)
        .def("draw_batch", [](Sampler& s, std::size_t count) {
            const auto v = s.draw_batch(count);
            return to_array(std::span<const std::int64_t>(v));
        }, py::arg("count"))
        .def_property_readonly("seed", &Sampler::seed)
        .def_property_readonly("method", [](const Sampler& s) { return std::string(to_string(s.method())); });
    m.attr("GENERATOR_NAME") = std::string(kGeneratorName);

    py::class_<SizeDataset>(m, "SizeDataset")
        .def_static("from_sizes", [](const std::vector<std::int64_t>& sizes) {
            return SizeDataset::from_sizes(sizes);
        }, py::arg("sizes"))
        .def_static("from_counts", &SizeDataset::from_counts, py::arg("counts"))
        .def_property_readonly("counts", &SizeDataset::counts)
        .def_property_readonly("total", &SizeDataset::total)
        .def_property_readonly("max_size", &SizeDataset::max_size);

    py::class_<FitReport>(m, "FitReport")
        .def_readonly("alpha_hat", &FitReport::alpha_hat)
        .def_readonly("n_used", &FitReport::n_used)
        .def_readonly("n_estimated", &FitReport::n_estimated)
        .def_readonly("log_likelihood", &FitReport::log_likelihood)
        .def_readonly("iterations", &FitReport::iterations)
        .def_readonly("converged", &FitReport::converged)
        .def_readonly("at_boundary", &FitReport::at_boundary)
        .def_readonly("alpha_std_error", &FitReport::alpha_std_error);
    m.def("log_likelihood", &log_likelihood, py::arg("params"), py::arg("data"));
    m.def("fit_alpha", &fit_alpha, py::arg("data"), py::arg("n"), py::arg("tol") = 1e-8);
    m.def("fit_joint", &fit_joint, py::arg("data"), py::arg("n_min"), py::arg("n_max"), py::arg("tol") = 1e-8);

    m.def("is_monotone_decreasing", &is_monotone_decreasing, py::arg("params"));
    m.def("alpha_crit", &alpha_crit, py::arg("n"), py::arg("tol") = 1e-10);
    m.def("log_log_curvature", [](const AbelianParams& p) {
        const auto v = log_log_curvature(p);
        return to_array(std::span<const double>(v));
    }, py::arg("params"));
    m.def("critical_region", [](std::int64_t n, double step) -> py::object {
        const auto r = critical_region(n, step);
        if (!r) return py::none();
        return py::make_tuple(r->lo, r->hi);
    }, py::arg("n"), py::arg("step") = 1e-3);
    m.def("tail_exponent", py::overload_cast<const AbelianParams&, std::int64_t, std::int64_t>(&tail_exponent),
          py::arg("params"), py::arg("l_min"), py::arg("l_max"));
    m.def("alpha_crit_scaling", [](const std::vector<std::int64_t>& ns, double tol) {
        py::list rows;
        for (const auto& r : alpha_crit_scaling(ns, tol)) {
            rows.append(py::make_tuple(r.n, r.alpha_crit, r.reference, r.difference));
        }
        return rows;
    }, py::arg("ns"), py::arg("tol") = 1e-10);

    py::class_<CriticalityReport>(m, "CriticalityReport")
        .def_readonly("n", &CriticalityReport::n)
        .def_readonly("alpha_crit", &CriticalityReport::alpha_crit)
        .def_property_readonly("a_region", [](const CriticalityReport& r) -> py::object {
            if (!r.a_region) return py::none();
            return py::make_tuple(r.a_region->lo, r.a_region->hi);
        })
        .def_readonly("alpha_crit_in_region", &CriticalityReport::alpha_crit_in_region)
        .def_readonly("tail_exponent", &CriticalityReport::tail_exponent)
        .def("regime", [](const CriticalityReport& r, double alpha) {
            return std::string(to_string(r.regime(alpha)));
        }, py::arg("alpha"));
    m.def("analyze_criticality", &analyze_criticality, py::arg("n"), py::arg("tol") = 1e-10,
          py::arg("step") = 1e-3);

    m.def("lemma_coefficient", [](std::int64_t i, std::int64_t n) { return to_pyint(lemma_coefficient(i, n)); },
          py::arg("i"), py::arg("n"));
    m.def("theorem_coefficient", [](std::int64_t i, std::int64_t n) { return to_pyint(theorem_coefficient(i, n)); },
          py::arg("i"), py::arg("n"));
    m.def("check_normalization_identity", [](std::int64_t n, const py::object& x) {
        return check_normalization_identity(n, to_rational(x));
    }, py::arg("n"), py::arg("x"));
    m.def("check_expectation_identity", [](std::int64_t n, const py::object& x) {
        return check_expectation_identity(n, to_rational(x));
    }, py::arg("n"), py::arg("x"));
}
