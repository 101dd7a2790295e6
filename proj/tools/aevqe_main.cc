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


#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "aevqe/errors.h"
#include "aevqe/experiment.h"
#include "aevqe/pauli.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitThreshold = 3;

// "tfim:n,J,h" or a Pauli-sum file path.
aevqe::PauliSum load_hamiltonian(const std::string &source) {
    if (source.rfind("tfim:", 0) == 0) {
        std::istringstream in(source.substr(5));
        size_t n = 0;
        double j = 0, h = 0;
        char c1 = 0, c2 = 0;
        if (!(in >> n >> c1 >> j >> c2 >> h) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
            throw aevqe::ConfigError("expected tfim:<n>,<J>,<h>, got '" + source + "'");
        }
        try {
            return aevqe::tfim_hamiltonian(n, j, h);
        } catch (const std::invalid_argument &e) {
            throw aevqe::ConfigError(e.what());
        }
    }
    if (!std::filesystem::is_regular_file(source)) {
        throw aevqe::ConfigError("Hamiltonian file not found: " + source);
    }
    return aevqe::load_pauli_sum_file(source);
}

int cmd_oracle(const std::string &source, size_t levels) {
    const aevqe::PauliSum h = load_hamiltonian(source);
    const aevqe::Spectrum s = aevqe::exact_spectrum(h, false);
    const size_t n = levels ? std::min(levels, s.values.size()) : s.values.size();
    std::cout << std::setprecision(12);
    for (size_t i = 0; i < n; ++i) {
        std::cout << s.values[i] << '\n';
    }
    return kExitOk;
}

int cmd_validate(const std::string &path) {
    const aevqe::ExperimentConfig c = aevqe::load_config(path);
    const auto points = c.sweep();
    std::cout << "ok: " << aevqe::kind_name(c.kind) << ", " << points.size() << " point(s), mode "
              << aevqe::mode_name(c.mode) << '\n';
    return kExitOk;
}

int cmd_run(const std::string &path, const std::string &output, bool assert_thresholds, int workers) {
    aevqe::ExperimentConfig c = aevqe::load_config(path);
    if (!output.empty()) {
        c.output_dir = output;
    }
    if (workers >= 0) {
        c.workers = size_t(workers);
    }
    c.sweep();  // Surface missing or malformed inputs as config errors before any work.
    const aevqe::ExperimentResult r = aevqe::run_experiment(c);
    aevqe::emit_report(r, c.output_dir);

    std::cout << std::setprecision(4);
    for (const auto &p : r.points) {
        if (!p.ok) {
            std::cout << p.label << ": FAILED: " << p.error << '\n';
            continue;
        }
        std::cout << p.label << ":";
        for (size_t i = 0; i < p.energies.size(); ++i) {
            std::cout << " E" << i << "=" << p.energies[i] << " (err " << p.errors[i] << ")";
        }
        std::cout << " iterations=" << p.iterations << '\n';
    }
    const double tol = c.effective_tolerance();
    std::cout << "max |E - oracle| = " << r.max_error() << " (tolerance " << tol << "), report in "
              << c.output_dir.string() << '\n';
    if (!r.all_ok()) {
        return kExitRuntime;
    }
    if (assert_thresholds && r.max_error() > tol) {
        std::cerr << "acceptance threshold violated\n";
        return kExitThreshold;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Ancilla-entangled variational eigensolver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output;
    bool assert_thresholds = false;
    int workers = -1;
    auto *run = app.add_subcommand("run", "Run an experiment and write its report");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--output", output, "Override the configured output directory");
    run->add_option("--workers", workers, "Override the worker count (0 = all cores)");
    run->add_flag("--assert", assert_thresholds, "Exit with 3 if any energy misses the tolerance");

    std::string hamiltonian;
    size_t levels = 0;
    auto *oracle = app.add_subcommand("oracle", "Print the exact spectrum of a Hamiltonian");
    oracle->add_option("--hamiltonian", hamiltonian, "Pauli-sum file or tfim:<n>,<J>,<h>")->required();
    oracle->add_option("--levels", levels, "Print only the lowest levels");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Check a config and its inputs");
    validate->add_option("--config", validate_path, "Experiment config (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            return cmd_run(config_path, output, assert_thresholds, workers);
        }
        if (*oracle) {
            return cmd_oracle(hamiltonian, levels);
        }
        return cmd_validate(validate_path);
    } catch (const aevqe::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const aevqe::ParseError &e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
