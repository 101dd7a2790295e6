// Copyright 2026 The AEVQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings. Amplitudes and matrices cross the boundary as NumPy
// arrays; configs and summaries as plain dicts.

#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "aevqe/aevqe.h"
#include "aevqe/errors.h"
#include "aevqe/experiment.h"
#include "aevqe/linalg.h"
#include "aevqe/spsa.h"

namespace py = pybind11;
using namespace aevqe;

namespace {

py::array_t<Complex> to_numpy(const StateVector &s) {
    py::array_t<Complex> out(py::ssize_t(s.dimension()));
    auto view = out.mutable_unchecked<1>();
    for (size_t i = 0; i < s.dimension(); ++i) {
        view(py::ssize_t(i)) = s[i];
    }
    return out;
}

StateVector from_numpy(py::array_t<Complex, py::array::c_style | py::array::forcecast> amps) {
    if (amps.ndim() != 1) {
        throw std::invalid_argument("amplitudes must be one-dimensional");
    }
    const size_t dim = size_t(amps.shape(0));
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("amplitude count must be a power of two");
    }
    const size_t n = size_t(std::countr_zero(dim));
    return StateVector(n, std::vector<Complex>(amps.data(), amps.data() + dim));
}

py::object json_to_python(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json python_to_json(const py::object &o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_aevqe, m) {
    m.doc() = "Ancilla-entangled variational eigensolver on an exact statevector simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);
    py::register_exception<ZeroNormError>(m, "ZeroNormError", PyExc_ArithmeticError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

    py::class_<PauliSum>(m, "PauliSum")
        .def_property_readonly("num_qubits", &PauliSum::num_qubits)
        .def_property_readonly("terms",
                               [](const PauliSum &h) {
                                   std::vector<std::pair<double, std::string>> out;
                                   for (const auto &t : h.terms()) {
                                       out.emplace_back(t.coefficient, t.string.label());
                                   }
                                   return out;
                               })
        .def("to_dense", [](const PauliSum &h) { return to_dense(h); })
        .def("__len__", &PauliSum::size)
        .def("__str__", [](const PauliSum &h) { return serialize(h); })
        .def("__eq__", [](const PauliSum &a, const PauliSum &b) { return a == b; });

    m.def("parse_pauli_sum", [](const std::string &text) { return parse_pauli_sum(text); }, py::arg("text"));
    m.def("load_pauli_sum_file", &load_pauli_sum_file, py::arg("path"));
    m.def("tfim_hamiltonian", &tfim_hamiltonian, py::arg("n_spins"), py::arg("coupling"), py::arg("field"));
    m.def(
        "exact_spectrum",
        [](const PauliSum &h, bool vectors) {
            const Spectrum s = exact_spectrum(h, vectors);
            return py::make_tuple(s.values, s.vectors);
        },
        py::arg("hamiltonian"), py::arg("with_vectors") = false,
        "Ascending eigenvalues and, if requested, eigenvectors as columns.");
    m.def(
        "jacobi_eig",
        [](const ComplexMatrix &a) {
            const EigenDecomposition d = jacobi_eig(a);
            return py::make_tuple(d.values, d.vectors);
        },
        py::arg("matrix"));

    py::class_<AevqeProblem>(m, "Problem")
        .def_property_readonly("hamiltonian", &AevqeProblem::hamiltonian)
        .def_property_readonly("n_ancilla", &AevqeProblem::n_ancilla)
        .def_property_readonly("n_physical", &AevqeProblem::n_physical)
        .def_property_readonly("num_states", &AevqeProblem::num_states)
        .def_property_readonly("num_parameters", &AevqeProblem::num_parameters)
        .def_property_readonly("ansatz_dump", [](const AevqeProblem &p) { return p.ansatz().dump(); })
        .def_property_readonly("init_dump", [](const AevqeProblem &p) { return p.init().dump(); });

    m.def("make_h2_problem", &make_h2_problem, py::arg("hamiltonian"));
    m.def("make_tfim_problem", &make_tfim_problem, py::arg("hamiltonian"), py::arg("n_ancilla"), py::arg("layers"));

    m.def(
        "prepare", [](const AevqeProblem &p, const std::vector<double> &theta) { return to_numpy(prepare(p, theta)); },
        py::arg("problem"), py::arg("theta"));
    m.def(
        "loss", [](const AevqeProblem &p, const std::vector<double> &theta) { return loss(p, theta); },
        py::arg("problem"), py::arg("theta"));
    m.def(
        "build_subspace",
        [](const AevqeProblem &p, const std::vector<double> &theta) {
            const SubspaceMatrices s = build_subspace(p, theta);
            return py::make_tuple(s.h_sub, s.s);
        },
        py::arg("problem"), py::arg("theta"), "Returns (h_sub, s).");
    m.def(
        "solve_subspace",
        [](const ComplexMatrix &h_sub, const ComplexMatrix &s) {
            const SubspaceSolution sol = solve_subspace({h_sub, s});
            return py::make_tuple(sol.energies, sol.transform);
        },
        py::arg("h_sub"), py::arg("s"), "Returns (energies, transform).");
    m.def(
        "solve_eigenstates",
        [](const AevqeProblem &p, const std::vector<double> &theta) {
            const EigenSolution sol = solve_eigenstates(p, theta);
            py::list states;
            for (const auto &s : sol.states) {
                states.append(to_numpy(s));
            }
            return py::make_tuple(sol.energies, states);
        },
        py::arg("problem"), py::arg("theta"), "Returns (energies, states).");
    m.def(
        "magnetization", [](py::array_t<Complex> amps) { return magnetization(from_numpy(amps)); },
        py::arg("amplitudes"));
    m.def(
        "symmetry_verify",
        [](py::array_t<Complex> amps, const PauliSum &h, int sign) {
            const SymmetryResult r = symmetry_verify(from_numpy(amps), h, sign);
            return py::make_tuple(r.energy, to_numpy(r.projected));
        },
        py::arg("amplitudes"), py::arg("hamiltonian"), py::arg("sign"));
    m.def(
        "parity_sector", [](py::array_t<Complex> amps) { return parity_sector(from_numpy(amps)); },
        py::arg("amplitudes"));

    m.def(
        "spsa_minimize",
        [](const std::function<double(std::vector<double>)> &f, const std::vector<double> &theta0,
           size_t max_iterations, double epsilon, double eta, uint64_t seed, bool scale_by_dimension) {
            SpsaConfig c;
            c.max_iterations = max_iterations;
            c.epsilon = epsilon;
            c.eta = eta;
            c.seed = seed;
            c.scale_by_dimension = scale_by_dimension;
            const SpsaResult r = spsa_minimize(
                [&](std::span<const double> t) { return f(std::vector<double>(t.begin(), t.end())); }, theta0, c);
            std::vector<double> losses;
            for (const auto &rec : r.trace.records) {
                losses.push_back(rec.loss);
            }
            return py::make_tuple(r.theta, losses);
        },
        py::arg("objective"), py::arg("theta0"), py::arg("max_iterations") = 300, py::arg("epsilon") = 0.1,
        py::arg("eta") = 0.2, py::arg("seed") = 0, py::arg("scale_by_dimension") = true,
        "Minimizes a Python callable; returns (best theta, per-iteration loss estimates).");

    m.def(
        "run_experiment",
        [](const py::dict &config, const std::filesystem::path &base_dir) {
            const ExperimentConfig c = parse_config(python_to_json(config), base_dir);
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(c);
            }
            py::dict out;
            out["summary"] = json_to_python(summary_json(r));
            out["energies_csv"] = energies_csv(r);
            return out;
        },
        py::arg("config"), py::arg("base_dir") = std::filesystem::path{},
        "Runs a config given as a dict; returns the summary and the energies table.");
}
