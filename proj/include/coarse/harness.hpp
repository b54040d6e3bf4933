#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/construction.hpp"

namespace coarse {

// Shared command-line surface. Overrides are applied on top of the loaded
// config before validation.
struct HarnessOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> stages;
    std::optional<std::uint64_t> horizon;
    std::optional<BoundMode> bound_mode;
    int verbosity = 1;  // 0 quiet, 1 normal, 2 verbose
};

// Builds the prefix, writes a.bits / ledger.jsonl / config_used.json /
// report.json, prints a summary. Returns the process exit code.
int cmd_construct(const HarnessOptions& opt);

// Re-verifies artifacts in out_dir (config_used.json, a.bits, ledger.jsonl),
// rewrites report.json. Deterministic, so a second run is byte-identical.
int cmd_verify(const HarnessOptions& opt);

// Finite agreement-density evidence for a committed prefix against candidate
// sets, at explicit checkpoints. Writes gamma.csv and gamma.json.
int cmd_gamma(const HarnessOptions& opt);

// Exhaustive small-scale audit of the hypergeometric kernel. Writes
// hypergrid.csv and hypergrid.json; exits 0 only with zero violations.
int cmd_hypergrid(const HarnessOptions& opt);

// Randomized audit of the factorial-block repetition code. Writes
// halfbound.json; exits 0 only if every check holds.
int cmd_halfbound(const HarnessOptions& opt);

// --- pieces reused by tests ---

struct HypergridConfig {
    std::uint64_t n_max = 50;       // population sizes 1..n_max
    std::uint64_t enumerate_max = 0;  // exhaustive draw enumeration up to this N
    std::uint64_t q_denominator = 20;
};

struct HypergridResult {
    std::uint64_t triples = 0;        // (N, K, marked) combinations
    std::uint64_t sum_checks = 0;     // pmf-sums-to-one checks
    std::uint64_t sum_failures = 0;
    std::uint64_t tail_checks = 0;    // exact tail vs round-up analytic bound
    std::uint64_t tail_violations = 0;
    std::uint64_t enum_checks = 0;    // pmf vs exhaustive enumeration
    std::uint64_t enum_failures = 0;
    bool ok() const { return sum_failures == 0 && tail_violations == 0 && enum_failures == 0; }
};

// csv receives one line per (N, K, marked) when non-null.
HypergridResult run_hypergrid(const HypergridConfig& cfg, std::string* csv);

struct HalfboundConfig {
    std::uint64_t n_max = 7;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
};

struct HalfboundResult {
    std::uint64_t trials = 0;
    std::uint64_t recovered = 0;          // in-budget fuzz decoded exactly
    std::uint64_t targeted_flagged = 0;   // over-budget attack flagged exactly once
    std::uint64_t quantitative_ok = 0;    // agreement <= 1/2 + 1/(2(n+1)) after attack
    bool ok() const {
        return recovered == trials && targeted_flagged == trials && quantitative_ok == trials;
    }
};

HalfboundResult run_halfbound(const HalfboundConfig& cfg);

}  // namespace coarse
