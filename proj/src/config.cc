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


#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "aevqe/errors.h"
#include "aevqe/experiment.h"

namespace aevqe {

namespace {

using nlohmann::json;

constexpr size_t kMaxSpins = 12;

std::vector<double> default_fields() {
    std::vector<double> out;
    for (int i = 0; i <= 20; ++i) {
        out.push_back(i / 10.0);
    }
    return out;
}

ExperimentKind parse_kind(const std::string &s) {
    if (s == "h2_curve") {
        return ExperimentKind::H2Curve;
    }
    if (s == "tfim_levels") {
        return ExperimentKind::TfimLevels;
    }
    if (s == "tfim_four_levels") {
        return ExperimentKind::TfimFourLevels;
    }
    if (s == "magnetization_sweep") {
        return ExperimentKind::MagnetizationSweep;
    }
    throw ConfigError("unknown experiment kind '" + s + "'");
}

Mode parse_mode(const std::string &s) {
    if (s == "analytic") {
        return Mode::Analytic;
    }
    if (s == "shots") {
        return Mode::Shots;
    }
    throw ConfigError("unknown mode '" + s + "' (expected analytic or shots)");
}

void reject_unknown(const json &j, const std::set<std::string> &allowed, const std::string &where) {
    for (const auto &[key, _] : j.items()) {
        if (!allowed.contains(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
T get(const json &j, const char *key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <typename T>
std::optional<T> get_optional(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return get<T>(j, key, T{});
}

bool is_tfim(ExperimentKind kind) {
    return kind != ExperimentKind::H2Curve;
}

// Iteration budget per ancilla for a chain of this length. The deeper ansatz
// needed beyond three sites has more parameters and converges more slowly.
size_t default_iterations(const ExperimentConfig &c) {
    if (!is_tfim(c.kind)) {
        return 20000;
    }
    return (c.n_spins <= 3 ? 20000 : 150000) * c.n_ancilla;
}

size_t default_layers(size_t n_spins) {
    return n_spins <= 3 ? 3 : 6;
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::H2Curve:
            return "h2_curve";
        case ExperimentKind::TfimLevels:
            return "tfim_levels";
        case ExperimentKind::TfimFourLevels:
            return "tfim_four_levels";
        case ExperimentKind::MagnetizationSweep:
            return "magnetization_sweep";
    }
    return "?";
}

std::string_view mode_name(Mode mode) {
    return mode == Mode::Analytic ? "analytic" : "shots";
}

void ExperimentConfig::validate() const {
    try {
        spsa.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    if (is_tfim(kind)) {
        if (n_spins < 2 || n_spins > kMaxSpins) {
            throw ConfigError("n_spins must be in [2, 12]");
        }
        if (n_ancilla == 0 || n_ancilla >= n_spins) {
            throw ConfigError("n_ancilla must be in [1, n_spins - 1]");
        }
        if (fields.empty()) {
            throw ConfigError("sweep grid must not be empty");
        }
        for (double h : fields) {
            if (!std::isfinite(h)) {
                throw ConfigError("sweep values must be finite");
            }
        }
        if (!std::isfinite(coupling)) {
            throw ConfigError("J must be finite");
        }
        if (layers == 0) {
            throw ConfigError("layers must be positive");
        }
    } else {
        if (hamiltonian_files.empty()) {
            throw ConfigError("h2_curve needs at least one Hamiltonian file");
        }
        if (n_ancilla != 1) {
            throw ConfigError("h2_curve uses exactly one ancilla");
        }
    }
    if (mode == Mode::Shots && shots < spsa.groups) {
        throw ConfigError("shots mode requires shots >= groups");
    }
    if (readout) {
        for (double p : {readout->p01, readout->p10}) {
            if (!(p >= 0 && p < 0.5)) {
                throw ConfigError("readout flip probabilities must lie in [0, 0.5)");
            }
        }
    }
    if (restarts == 0) {
        throw ConfigError("restarts must be positive");
    }
    if (!(init_scale > 0)) {
        throw ConfigError("init_scale must be positive");
    }
    if (!(threshold_factor > 0)) {
        throw ConfigError("threshold_factor must be positive");
    }
    if (stop_within && !(*stop_within > 0)) {
        throw ConfigError("stop_within must be positive");
    }
    if (tolerance && !(*tolerance > 0)) {
        throw ConfigError("tolerance must be positive");
    }
}

double ExperimentConfig::effective_tolerance() const {
    if (tolerance) {
        return *tolerance;
    }
    if (kind == ExperimentKind::H2Curve) {
        return 1e-2;
    }
    return (n_spins <= 3 && n_ancilla == 1) ? 2e-2 : 5e-2;
}

std::vector<SweepPoint> ExperimentConfig::sweep() const {
    std::vector<SweepPoint> out;
    if (is_tfim(kind)) {
        for (double h : fields) {
            std::ostringstream label;
            label << "h=" << h;
            out.push_back({h, label.str(), tfim_hamiltonian(n_spins, coupling, h)});
        }
        return out;
    }
    std::vector<std::filesystem::path> files;
    for (const auto &entry : hamiltonian_files) {
        std::error_code ec;
        if (std::filesystem::is_directory(entry, ec)) {
            std::vector<std::filesystem::path> found;
            for (const auto &f : std::filesystem::directory_iterator(entry)) {
                if (f.is_regular_file() && f.path().extension() == ".txt") {
                    found.push_back(f.path());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (std::filesystem::is_regular_file(entry, ec)) {
            files.push_back(entry);
        } else {
            throw ConfigError("Hamiltonian file not found: " + entry.string());
        }
    }
    if (files.empty()) {
        throw ConfigError("no Hamiltonian files found");
    }
    static const std::regex trailing_number(R"(([0-9]+(\.[0-9]+)?)$)");
    for (size_t i = 0; i < files.size(); ++i) {
        const std::string stem = files[i].stem().string();
        std::smatch m;
        const double value = std::regex_search(stem, m, trailing_number) ? std::stod(m[1].str()) : double(i);
        PauliSum h = load_pauli_sum_file(files[i]);
        if (h.num_qubits() != 2) {
            throw ConfigError(files[i].string() + ": h2_curve expects two-qubit Hamiltonians");
        }
        out.push_back({value, stem, std::move(h)});
    }
    return out;
}

ExperimentConfig parse_config(const json &j, const std::filesystem::path &base_dir) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(
        j,
        {"experiment",
         "hamiltonian",
         "sweep",
         "n_ancilla",
         "layers",
         "mode",
         "shots",
         "readout",
         "spsa",
         "threshold_factor",
         "restarts",
         "init_scale",
         "stop_within",
         "tolerance",
         "output_dir",
         "seed",
         "workers",
         "timing"},
        "config");
    if (!j.contains("experiment")) {
        throw ConfigError("missing 'experiment'");
    }
    ExperimentConfig c;
    c.kind = parse_kind(get<std::string>(j, "experiment", ""));
    c.n_ancilla = get<size_t>(j, "n_ancilla", c.kind == ExperimentKind::TfimFourLevels ? 2 : 1);

    const json ham = j.value("hamiltonian", json::object());
    if (!ham.is_object()) {
        throw ConfigError("'hamiltonian' must be an object");
    }
    reject_unknown(ham, {"files", "n_spins", "J"}, "hamiltonian");
    if (c.kind == ExperimentKind::H2Curve) {
        for (const auto &f : get<std::vector<std::string>>(ham, "files", {})) {
            std::filesystem::path p(f);
            c.hamiltonian_files.push_back(p.is_absolute() ? p : base_dir / p);
        }
    } else {
        c.n_spins = get<size_t>(ham, "n_spins", 3);
        c.coupling = get<double>(ham, "J", 1.0);
        c.fields = get<std::vector<double>>(
            j, "sweep", c.kind == ExperimentKind::TfimFourLevels ? std::vector<double>{0.5} : default_fields());
    }
    if (c.kind == ExperimentKind::H2Curve && j.contains("sweep")) {
        throw ConfigError("h2_curve takes its sweep from the Hamiltonian files");
    }
    c.layers = get<size_t>(j, "layers", default_layers(c.n_spins));
    c.mode = parse_mode(get<std::string>(j, "mode", "analytic"));
    c.shots = get<uint64_t>(j, "shots", 15 * 1024);
    if (j.contains("readout") && !j.at("readout").is_null()) {
        const json &r = j.at("readout");
        if (!r.is_object()) {
            throw ConfigError("'readout' must be an object");
        }
        reject_unknown(r, {"p01", "p10"}, "readout");
        c.readout = QubitReadout{get<double>(r, "p01", 0.0), get<double>(r, "p10", 0.0)};
    }

    c.spsa.max_iterations = default_iterations(c);
    const json sp = j.value("spsa", json::object());
    if (!sp.is_object()) {
        throw ConfigError("'spsa' must be an object");
    }
    reject_unknown(
        sp,
        {"epsilon",
         "eta",
         "max_iterations",
         "groups",
         "variance_threshold",
         "max_repeats",
         "scale_by_dimension",
         "eta_decay",
         "stability",
         "epsilon_decay"},
        "spsa");
    c.spsa.epsilon = get<double>(sp, "epsilon", c.spsa.epsilon);
    c.spsa.eta = get<double>(sp, "eta", c.spsa.eta);
    c.spsa.max_iterations = get<size_t>(sp, "max_iterations", c.spsa.max_iterations);
    c.spsa.groups = get<size_t>(sp, "groups", c.spsa.groups);
    c.spsa.variance_threshold = get_optional<double>(sp, "variance_threshold");
    c.spsa.max_repeats = get<size_t>(sp, "max_repeats", c.spsa.max_repeats);
    c.spsa.scale_by_dimension = get<bool>(sp, "scale_by_dimension", c.spsa.scale_by_dimension);
    c.spsa.eta_decay = get<double>(sp, "eta_decay", c.spsa.eta_decay);
    c.spsa.stability = get<double>(sp, "stability", c.spsa.stability);
    c.spsa.epsilon_decay = get<double>(sp, "epsilon_decay", c.spsa.epsilon_decay);

    c.threshold_factor = get<double>(j, "threshold_factor", c.threshold_factor);
    c.restarts = get<size_t>(j, "restarts", c.restarts);
    c.init_scale = get<double>(j, "init_scale", c.init_scale);
    c.stop_within = get_optional<double>(j, "stop_within");
    c.tolerance = get_optional<double>(j, "tolerance");
    c.output_dir = get<std::string>(j, "output_dir", "out");
    c.seed = get<uint64_t>(j, "seed", 0);
    c.workers = get<size_t>(j, "workers", 0);
    c.timing = get<bool>(j, "timing", false);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j, path.parent_path());
}

json to_json(const ExperimentConfig &c) {
    json j;
    j["experiment"] = kind_name(c.kind);
    if (c.kind == ExperimentKind::H2Curve) {
        std::vector<std::string> files;
        for (const auto &f : c.hamiltonian_files) {
            files.push_back(f.generic_string());
        }
        j["hamiltonian"] = {{"files", files}};
    } else {
        j["hamiltonian"] = {{"n_spins", c.n_spins}, {"J", c.coupling}};
        j["sweep"] = c.fields;
        j["layers"] = c.layers;
    }
    j["n_ancilla"] = c.n_ancilla;
    j["mode"] = mode_name(c.mode);
    j["shots"] = c.shots;
    j["readout"] = c.readout ? json{{"p01", c.readout->p01}, {"p10", c.readout->p10}} : json(nullptr);
    j["spsa"] = {
        {"epsilon", c.spsa.epsilon},
        {"eta", c.spsa.eta},
        {"max_iterations", c.spsa.max_iterations},
        {"groups", c.spsa.groups},
        {"variance_threshold", c.spsa.variance_threshold ? json(*c.spsa.variance_threshold) : json(nullptr)},
        {"max_repeats", c.spsa.max_repeats},
        {"scale_by_dimension", c.spsa.scale_by_dimension},
        {"eta_decay", c.spsa.eta_decay},
        {"stability", c.spsa.stability},
        {"epsilon_decay", c.spsa.epsilon_decay},
    };
    j["threshold_factor"] = c.threshold_factor;
    j["restarts"] = c.restarts;
    j["init_scale"] = c.init_scale;
    j["stop_within"] = c.stop_within ? json(*c.stop_within) : json(nullptr);
    j["tolerance"] = c.effective_tolerance();
    j["output_dir"] = c.output_dir.generic_string();
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["timing"] = c.timing;
    return j;
}

}  // namespace aevqe
