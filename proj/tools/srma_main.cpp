/*
   Copyright 2026 The srma Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// srma <kind> --config <path> [--out <path>] [--format csv|json] [--seed <u64>] [--trials <n>]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "srma/experiment.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Symbiotic-radio rate and outage experiments"};
    std::string kind_name;
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    unsigned workers = 0;

    std::string kinds;
    for (const auto k : srma::all_kinds()) {
        kinds += std::string(kinds.empty() ? "" : ", ") + srma::to_string(k);
    }
    app.add_option("kind", kind_name, "Experiment kind: " + kinds)->required();
    app.add_option("--config", config_path, "Configuration file (flat key = value lines)")->required();
    app.add_option("--out", out_path, "Output path; stdout when omitted");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", seed, "Override mc.seed");
    auto* trials_opt = app.add_option("--trials", trials, "Override mc.trials")->check(CLI::PositiveNumber);
    auto* workers_opt = app.add_option("--workers", workers, "Override mc.workers (0 = all cores)");
    CLI11_PARSE(app, argc, argv);

    const auto kind = srma::parse_kind(kind_name);
    if (!kind) {
        std::cerr << "srma: unknown kind '" << kind_name << "' (expected one of " << kinds << ")\n";
        return 2;
    }

    try {
        auto spec = srma::load_config(config_path, *kind);
        if (*seed_opt) {
            spec.mc.seed = seed;
        }
        if (*trials_opt) {
            spec.mc.trials = trials;
        }
        if (*workers_opt) {
            spec.mc.workers = workers;
        }
        const auto table = srma::run_experiment(spec);
        for (const auto& w : table.warnings) {
            std::cerr << "warning: " << w << '\n';
        }

        std::ostringstream body;
        if (format == "json") {
            srma::write_json(table, body);
        } else {
            srma::write_csv(table, body);
        }
        if (out_path.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!(out << body.str())) {
                std::cerr << "srma: cannot write " << out_path << '\n';
                return 1;
            }
        }
        if (table.failures > 0) {
            std::cerr << "srma: " << table.failures << " validation check(s) failed\n";
            return 1;
        }
    } catch (const srma::ConfigError& e) {
        std::cerr << "srma: config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "srma: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
