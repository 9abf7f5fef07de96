#ifndef SYZLAB_EXPERIMENT_HPP
#define SYZLAB_EXPERIMENT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace syzlab {

// Exit codes of the batch driver.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnsupported = 3;
inline constexpr int kExitInternal = 4;

struct BundleCfg {
    bool canonical = false;
    long long twist = 0;
    std::vector<std::vector<long long>> minus;  // point coordinates per variant
};

struct ExperimentConfig {
    std::string kind;  // betti | gonality | pva | theoremB | growth | duality | verify-suite
    std::uint64_t prime = 101;
    std::vector<std::uint64_t> primes;  // robustness rerun list (optional)
    int threads = 0;

    std::string curve_variant;  // rational_line | hyperelliptic | plane
    std::vector<long long> hyper_f;
    std::vector<std::array<long long, 4>> plane_terms;

    BundleCfg B, L, A;
    int p = 0;
    int q = 1;
    int p_min = 0;
    int p_max = -1;  // -1: default to r+1 (betti) or r (duality)
    int q_min = 0, q_max = 2;
    std::uint32_t N = 1;
    long long d_lo = 0, d_hi = 0;
    bool use_duality = true;
    bool estimate_gamma = false;  // experimental failing-locus dimension estimate
    std::uint32_t gamma_N_lo = 1, gamma_N_hi = 2;

    std::optional<long long> expected_gonality;
    std::optional<int> expected_degree;
    std::optional<bool> expect_pva;
    std::vector<std::array<long long, 3>> expected_entries;  // (p, q, dim)

    std::string out_path;
    std::string format = "json";
};

ExperimentConfig config_from_toml(const nlohmann::json& data);

// Runs one experiment (all primes, verdicts, emission). Returns the exit code
// and fills `document` with the full report.
int run_experiment(const ExperimentConfig& cfg, nlohmann::json& document);

// Convenience wrapper that also writes the report to cfg.out_path or stdout.
int run_and_emit(const ExperimentConfig& cfg);

}  // namespace syzlab

#endif
