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
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "aevqe/experiment.h"

namespace aevqe {

namespace {

using nlohmann::json;

constexpr double kInvariantTolerance = 1e-10;
constexpr double kBoundSlack = 1e-9;

double median(std::vector<double> v) {
    if (v.empty()) {
        return 0;
    }
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

size_t level_count(const ExperimentResult &r) {
    size_t k = 0;
    for (const auto &p : r.points) {
        k = std::max(k, p.oracle.size());
    }
    return k;
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace

std::string energies_csv(const ExperimentResult &result) {
    const size_t k = level_count(result);
    const bool tfim = result.config.kind != ExperimentKind::H2Curve;
    std::ostringstream out;
    out << std::setprecision(12);
    out << "point";
    for (const char *prefix : {"E", "oracle", "err"}) {
        for (size_t i = 0; i < k; ++i) {
            out << ',' << prefix << i;
        }
    }
    if (tfim) {
        out << ",E0_sv,E1_sv";
    }
    out << ",mz,iterations,repeats,seconds\n";
    const auto column = [&](const std::vector<double> &v, size_t i) {
        out << ',';
        if (i < v.size()) {
            out << v[i];
        }
    };
    for (const auto &p : result.points) {
        out << p.value;
        for (const auto *v : {&p.energies, &p.oracle, &p.errors}) {
            for (size_t i = 0; i < k; ++i) {
                column(*v, i);
            }
        }
        if (tfim) {
            for (const auto &e : {p.e0_verified, p.e1_verified}) {
                out << ',';
                if (e) {
                    out << *e;
                }
            }
        }
        out << ',';
        if (p.ok) {
            out << p.mz;
        }
        out << ',' << p.iterations << ',' << p.repeats << ',' << p.seconds << '\n';
    }
    return out.str();
}

json summary_json(const ExperimentResult &result) {
    const size_t k = level_count(result);
    const ExperimentConfig &c = result.config;
    json j;
    j["config"] = to_json(c);
    j["points"] = result.points.size();

    std::vector<double> max_err(k, 0), mean_err(k, 0);
    std::vector<size_t> counted(k, 0);
    json failures = json::array();
    bool oracle_populated = true;
    bool loss_bound = true;
    bool overlap_identity = true;
    bool hermitian = true;
    bool sectors_opposite = true;
    std::vector<double> err0, err0_verified;
    for (const auto &p : result.points) {
        oracle_populated = oracle_populated && p.oracle.size() == k;
        if (!p.ok) {
            failures.push_back({{"index", p.index}, {"label", p.label}, {"error", p.error}});
            continue;
        }
        for (size_t i = 0; i < p.errors.size(); ++i) {
            max_err[i] = std::max(max_err[i], p.errors[i]);
            mean_err[i] += p.errors[i];
            ++counted[i];
        }
        loss_bound = loss_bound && p.final_loss >= p.loss_bound - kBoundSlack;
        overlap_identity = overlap_identity && p.overlap_deviation < kInvariantTolerance;
        hermitian = hermitian && p.hermiticity_deviation < kInvariantTolerance;
        if (p.sectors.size() >= 2) {
            sectors_opposite = sectors_opposite && p.sectors[0] != p.sectors[1];
        }
        if (p.e0_verified) {
            err0.push_back(p.errors[0]);
            err0_verified.push_back(std::abs(*p.e0_verified - p.oracle[0]));
        }
    }
    for (size_t i = 0; i < k; ++i) {
        mean_err[i] = counted[i] ? mean_err[i] / double(counted[i]) : 0.0;
    }
    const double max_abs = result.max_error();
    j["max_error"] = max_err;
    j["mean_error"] = mean_err;
    j["max_abs_error"] = max_abs;
    j["tolerance"] = c.effective_tolerance();
    j["failures"] = failures;

    json inv;
    inv["all_points_ok"] = failures.empty();
    inv["oracle_populated"] = oracle_populated;
    inv["within_tolerance"] = failures.empty() && max_abs <= c.effective_tolerance();
    inv["loss_bound"] = loss_bound;
    inv["overlap_identity"] = overlap_identity;
    inv["hermitian"] = hermitian;
    if (c.kind != ExperimentKind::H2Curve) {
        inv["sectors_opposite"] = sectors_opposite;
        inv["verified_median_not_worse"] = median(err0_verified) <= median(err0);
        bool monotone = true;
        std::vector<const PointResult *> sorted;
        for (const auto &p : result.points) {
            sorted.push_back(&p);
        }
        std::stable_sort(sorted.begin(), sorted.end(), [](const PointResult *a, const PointResult *b) {
            return a->value < b->value;
        });
        for (size_t i = 1; i < sorted.size(); ++i) {
            monotone = monotone && sorted[i]->mz_oracle <= sorted[i - 1]->mz_oracle + kBoundSlack;
        }
        inv["oracle_mz_non_increasing"] = monotone;
    }
    j["invariants"] = inv;
    return j;
}

void emit_report(const ExperimentResult &result, const std::filesystem::path &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
    }
    write_file(out_dir / "energies.csv", energies_csv(result));
    write_file(out_dir / "summary.json", summary_json(result).dump(2) + "\n");
    for (const auto &p : result.points) {
        std::ostringstream trace;
        write_trace_csv(trace, p.trace);
        write_file(out_dir / ("trace_" + std::to_string(p.index) + ".csv"), trace.str());
    }
}

}  // namespace aevqe
