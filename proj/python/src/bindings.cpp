#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "unot/circuit.hpp"
#include "unot/errors.hpp"
#include "unot/evolve.hpp"
#include "unot/experiments.hpp"
#include "unot/fidelity.hpp"
#include "unot/haar.hpp"
#include "unot/rotation.hpp"
#include "unot/sampling.hpp"
#include "unot/stochastic_map.hpp"

namespace py = pybind11;
using namespace unot;

namespace {

// Build a config from keyword-style string pairs, the same way the CLI does.
ExperimentConfig config_from(const std::string& experiment, const py::dict& options) {
  ExperimentConfig config;
  config.set("experiment", experiment);
  for (const auto& [key, value] : options) {
    const auto k = py::str(key).cast<std::string>();
    config.set(k, py::str(value).cast<std::string>());
  }
  config.validate();
  return config;
}

py::object cell_to_py(const Cell& cell) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, cell);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fidelity, deviation and feedback optimization of approximate universal-NOT circuits";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<Axis>(m, "Axis")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_static("normalized", &Axis::normalized, py::arg("v"))
      .def_property_readonly("vector", &Axis::vector)
      .def("__repr__", [](const Axis& a) {
        std::ostringstream os;
        os << "Axis(" << a[0] << ", " << a[1] << ", " << a[2] << ")";
        return os.str();
      });

  py::class_<OneQubitGate>(m, "OneQubitGate")
      .def(py::init<double, const Axis&>(), py::arg("angle"), py::arg("axis"))
      .def_property_readonly("angle", &OneQubitGate::angle)
      .def_property_readonly("axis", &OneQubitGate::axis);

  py::class_<FidelityStats>(m, "FidelityStats")
      .def_readonly("avg_fidelity", &FidelityStats::avg_fidelity)
      .def_readonly("deviation", &FidelityStats::deviation)
      .def("satisfies_global_bound", &FidelityStats::satisfies_global_bound, py::arg("tol") = 1e-12)
      .def("__repr__", [](const FidelityStats& s) {
        std::ostringstream os;
        os.precision(12);
        os << "FidelityStats(avg_fidelity=" << s.avg_fidelity << ", deviation=" << s.deviation << ")";
        return os.str();
      });

  m.def("rotation_from_gate", [](const OneQubitGate& g) { return rotation_from_gate(g).matrix(); },
        py::arg("gate"));
  m.def("rotation_from_unitary", [](const Mat2c& u) { return rotation_from_unitary(u).matrix(); },
        py::arg("unitary"));
  m.def("unitary_from_gate", &unitary_from_gate, py::arg("gate"));
  m.def("skew_from_axis", &skew_from_axis, py::arg("axis"));
  m.def("trace_R", &trace_R, py::arg("gate"));
  m.def("trace_R_squared", &trace_R_squared, py::arg("gate"));

  m.def("stats_one_qubit", &stats_one_qubit, py::arg("gate"));
  m.def(
      "covariance_pair",
      [](const OneQubitGate& a, const OneQubitGate& b) { return covariance_pair(a, b); },
      py::arg("gate_k"), py::arg("gate_l"));

  // Stochastic maps cross the boundary as lists of (weight, gate) pairs.
  m.def(
      "stats_stochastic_map",
      [](const std::vector<std::pair<double, OneQubitGate>>& terms) {
        return stats_stochastic_map(StochasticMap::from_gates(terms));
      },
      py::arg("terms"));
  m.def(
      "stats_affine_channel",
      [](const Mat3& linear, const Vec3& shift) { return stats_affine_channel({linear, shift}); },
      py::arg("linear"), py::arg("shift"));
  m.def("avg_fidelity_unitary", &avg_fidelity_unitary, py::arg("unitary"));
  m.def("avg_fidelity_3q_unitary", &avg_fidelity_3q_unitary, py::arg("unitary"));

  m.def(
      "region_membership",
      [](double f, double delta, int qubits, double tol) {
        return std::string(to_string(region_membership({f, delta}, qubits, tol)));
      },
      py::arg("avg_fidelity"), py::arg("deviation"), py::arg("qubit_count"), py::arg("tol") = 1e-9);

  m.def("weights_from_preps", &weights_from_preps, py::arg("prep_params"));
  m.def(
      "ladder_stats",
      [](const std::vector<double>& preps, const std::vector<OneQubitGate>& gates) {
        return stats_stochastic_map(stochastic_map_from_circuit(LadderCircuit(preps, gates)));
      },
      py::arg("prep_params"), py::arg("gates"));
  m.def(
      "ladder_unitary",
      [](const std::vector<double>& preps, const std::vector<OneQubitGate>& gates) {
        return ladder_unitary(LadderCircuit(preps, gates));
      },
      py::arg("prep_params"), py::arg("gates"));
  m.def("optimal_unot_stats", [] { return stats_stochastic_map(optimal_unot_map()); });
  m.def(
      "compensated_stats",
      [](double alpha) {
        return py::make_tuple(stats_stochastic_map(tilted_three_gate_map(alpha)),
                              stats_stochastic_map(compensated_four_gate_map(alpha)));
      },
      py::arg("alpha"));

  m.def(
      "mc_stats",
      [](const Mat3& linear, const Vec3& shift, std::uint64_t seed, std::int64_t samples) {
        const AffineBlochChannel channel(linear, shift);
        SeededSampler sampler(seed);
        const auto est = mc_stats([&](const Vec3& a) { return channel.apply(a); }, sampler, samples);
        py::dict out;
        out["avg_fidelity"] = est.avg_fidelity.mean;
        out["avg_fidelity_se"] = est.avg_fidelity.std_error;
        out["deviation"] = est.deviation.mean;
        out["deviation_se"] = est.deviation.std_error;
        out["samples"] = est.avg_fidelity.sample_count;
        return out;
      },
      py::arg("linear"), py::arg("shift"), py::arg("seed") = 1, py::arg("samples") = 100000);
  m.def(
      "sample_unitary",
      [](int dim, std::uint64_t seed) {
        SeededSampler sampler(seed);
        return sample_unitary(sampler, dim);
      },
      py::arg("dim"), py::arg("seed") = 1);

  m.def(
      "run_feedback",
      [](std::uint64_t seed, int npop, double dweight, double cr, std::int64_t iters, double eta,
         std::optional<std::int64_t> period) {
        DeConfig config{npop, dweight, cr, iters, seed};
        NoiseModel noise;
        noise.degree = eta;
        noise.period = period.value_or(NoiseModel::kNever);
        FeedbackResult result;
        {
          py::gil_scoped_release release;
          result = run_feedback(config, noise, FitnessFunction());
        }
        py::list trace;
        for (const auto& r : result.trace) {
          trace.append(py::make_tuple(r.iteration, r.best_fidelity, r.best_deviation, r.best_fitness,
                                      r.noise_injected));
        }
        const auto& best = result.final_state.best();
        py::dict out;
        out["avg_fidelity"] = best.stats.avg_fidelity;
        out["deviation"] = best.stats.deviation;
        out["fitness"] = best.fitness;
        out["controls"] = result.final_state.population[result.final_state.best_index].values();
        out["trace"] = trace;
        return out;
      },
      py::arg("seed") = 1, py::arg("npop") = 10, py::arg("dweight") = 0.1, py::arg("cr") = 0.03,
      py::arg("iters") = 1000, py::arg("eta") = 0.0, py::arg("period") = py::none());

  m.def(
      "run_experiment",
      [](const std::string& experiment, const py::dict& options) {
        const auto config = config_from(experiment, options);
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(config);
        }
        py::list rows;
        for (const auto& row : result.table.rows) {
          py::dict record;
          for (std::size_t j = 0; j < row.size(); ++j) record[py::str(result.table.columns[j])] = cell_to_py(row[j]);
          rows.append(record);
        }
        py::dict echo;
        for (const auto& [k, v] : config.effective()) echo[py::str(k)] = v;
        py::dict out;
        out["rows"] = rows;
        out["ok"] = result.ok;
        out["report"] = result.report;
        out["config"] = echo;
        return out;
      },
      py::arg("experiment"), py::arg("options") = py::dict());
}
