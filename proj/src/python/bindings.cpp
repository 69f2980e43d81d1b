#include "entkit/channel.hpp"
#include "entkit/cli.hpp"
#include "entkit/cloning.hpp"
#include "entkit/measures.hpp"
#include "entkit/protocols.hpp"
#include "entkit/statezoo.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace entkit;

namespace {

DensityMatrix as_density(const Mat& m, std::optional<Dims> dims) {
    if (!dims) {
        const int n = static_cast<int>(m.rows());
        if (n == 4) dims = Dims{2, 2};
        else if (n == 9) dims = Dims{3, 3};
        else dims = Dims{n};
    }
    return DensityMatrix(*dims, m);
}

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement toolkit core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def("state", [](const std::string& spec) {
        auto s = cli::parse_state_spec(spec);
        return cli::load_state(s).matrix();
    }, py::arg("spec"), "density matrix for a spec such as 'werner:F=0.8'");
    m.def("pure_state", [](const std::string& family, const ParamMap& params) { return zoo::make_pure(family, params).amplitudes(); },
          py::arg("family"), py::arg("params") = ParamMap{});
    m.def("measure", [](const Mat& rho, const std::string& kind, std::optional<Dims> dims, double base) {
        return cli::measure(as_density(rho, dims), kind, base);
    }, py::arg("rho"), py::arg("kind"), py::arg("dims") = std::nullopt, py::arg("base") = 2.0);
    m.def("measure_kinds", &cli::measure_kinds);

    m.def("concurrence", [](const Mat& rho) { return concurrence(as_density(rho, Dims{2, 2})); });
    m.def("negativity", [](const Mat& rho, std::optional<Dims> dims) { return negativity(as_density(rho, dims)); },
          py::arg("rho"), py::arg("dims") = std::nullopt);
    m.def("singlet_fraction", [](const Mat& rho, std::optional<Dims> dims) { return singlet_fraction(as_density(rho, dims)); },
          py::arg("rho"), py::arg("dims") = std::nullopt);
    m.def("n_value", [](const Mat& rho) { return n_value(as_density(rho, Dims{2, 2})); });
    m.def("m_value", [](const Mat& rho) { return m_value(as_density(rho, Dims{2, 2})); });
    m.def("partial_trace", [](const Mat& rho, const Dims& dims, const std::vector<int>& keep) { return partial_trace(rho, dims, keep); });
    m.def("partial_transpose", [](const Mat& rho, const Dims& dims, int sub) { return partial_transpose(rho, dims, sub); });

    m.def("teleport", [](double x, std::complex<double> y, const std::string& channel) {
        auto out = teleport_through(bloch_input(x, y), cli::load_state(cli::parse_state_spec(channel)));
        py::list rows;
        for (const auto& o : out) {
            py::dict d;
            d["bell_outcome"] = o.bell_outcome;
            d["probability"] = o.probability;
            d["output"] = o.output;
            d["hs_distance"] = o.hs_distance;
            d["fidelity"] = o.fidelity;
            rows.append(d);
        }
        return rows;
    }, py::arg("x"), py::arg("y"), py::arg("channel"));

    m.def("figure", [](const std::string& id, int steps) {
        auto t = cli::figure_table(id, steps, cli::threads_from_env());
        return py::make_tuple(t.header, t.rows);
    }, py::arg("id"), py::arg("steps") = 0);
    m.def("figure_ids", &cli::figure_ids);

    m.def("cdc", [](const std::string& family, const ParamMap& params, std::optional<double> theta, std::optional<double> epsilon,
                    const std::vector<int>& outcomes) {
        CdcRequest q{family, params, theta, epsilon, outcomes};
        return parse_json(cli::cdc_transcript(cdc_run(q), q));
    }, py::arg("family"), py::arg("params") = ParamMap{}, py::arg("theta") = std::nullopt, py::arg("epsilon") = std::nullopt,
          py::arg("outcomes") = std::vector<int>{});
    m.def("cdc_montecarlo", [](const std::string& family, const ParamMap& params, std::optional<double> theta,
                               std::optional<double> epsilon, std::uint64_t trials, std::uint64_t seed) {
        CdcRequest q{family, params, theta, epsilon, {}};
        return parse_json(cli::montecarlo_json(cdc_montecarlo(q, trials, seed, cli::threads_from_env()), seed));
    }, py::arg("family"), py::arg("params") = ParamMap{}, py::arg("theta") = std::nullopt, py::arg("epsilon") = std::nullopt,
          py::arg("trials") = 10000, py::arg("seed") = 1);
    m.def("secret_share", [](double c2, int bit, int alice, std::optional<double> lambda1) {
        auto r = secret_share_run(c2, bit, alice);
        std::optional<WitnessChecks> w;
        if (lambda1) w = secret_share_witness_checks(c2, *lambda1);
        return parse_json(cli::secret_share_transcript(r, w ? &*w : nullptr));
    }, py::arg("c2"), py::arg("bit") = 0, py::arg("alice") = 0, py::arg("lambda1") = std::nullopt);

    m.def("qutrit_cloned_pair", [](double d) { return qutrit_cloned_pair(d).joint.matrix(); });
    m.def("distilled_optimal", [] { return distilled_optimal().matrix(); });
    m.def("distilled_nonoptimal", [](double d) { return distilled_nonoptimal(d).matrix(); });
    m.def("entropy_difference", [](const Mat& rho, std::optional<Dims> dims) { return entropy_difference(as_density(rho, dims)); },
          py::arg("rho"), py::arg("dims") = std::nullopt);
}
