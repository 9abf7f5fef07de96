// Batch experiment driver: ingests a TOML config describing a curve and an
// experiment, runs the computation, and emits JSON/text/CSV reports.

#include <CLI11.hpp>
#include <iostream>

#include "syzlab/errors.hpp"
#include "syzlab/experiment.hpp"
#include "syzlab/toml.hpp"

int main(int argc, char** argv) {
    CLI::App app{"syzygy-lab: exact Koszul cohomology of line bundles on explicit curves"};
    std::string kind, config_path, format, out_path;
    long long prime = 0;
    int threads = 0;
    app.add_option("kind", kind,
                   "experiment kind: betti | gonality | pva | theoremB | growth | duality | verify-suite")
        ->required();
    app.add_option("--config", config_path, "TOML experiment config")->required();
    app.add_option("--prime", prime, "override the config prime");
    app.add_option("--threads", threads, "worker thread count (0 = library default)");
    app.add_option("--format", format, "output format: json | text | csv");
    app.add_option("--out", out_path, "write the report to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? syzlab::kExitConfig : syzlab::kExitConfig;
    }

    try {
        nlohmann::json data = syzlab::toml::parse_file(config_path);
        syzlab::ExperimentConfig cfg = syzlab::config_from_toml(data);
        if (cfg.kind != kind) {
            if (!cfg.kind.empty() && kind != cfg.kind) {
                std::cerr << "config kind '" << cfg.kind << "' does not match requested '" << kind
                          << "'\n";
                return syzlab::kExitConfig;
            }
        }
        cfg.kind = kind;
        if (prime > 0) {
            cfg.prime = static_cast<std::uint64_t>(prime);
            cfg.primes = {cfg.prime};
        }
        if (threads > 0) cfg.threads = threads;
        if (!format.empty()) cfg.format = format;
        if (!out_path.empty()) cfg.out_path = out_path;
        return syzlab::run_and_emit(cfg);
    } catch (const syzlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return syzlab::kExitConfig;
    } catch (const syzlab::UnsupportedError& e) {
        std::cerr << "unsupported model: " << e.what() << "\n";
        return syzlab::kExitUnsupported;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return syzlab::kExitInternal;
    }
}
