#pragma once

#include "g2fm/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2fm {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SuiteConfig {
    std::vector<std::string> suites;  // empty runs nothing
    double tol_abs = 1e-9;
    double tol_rel = 1e-6;
    std::uint64_t seed = 20240601;
    int grid = 64;
    std::vector<Rational> lattice_scales;  // fibre scales for the fourier suite, empty = unit
    std::optional<int> flip_omega_term;    // fault injection: index into the terms of Omega
    std::string report_path;

    void validate() const;
};

const std::vector<std::string>& suite_names();
SuiteConfig default_config();
// Keys: suites, tol_abs, tol_rel, seed, grid, lattice_scales, report, fault.flip_omega_term.
SuiteConfig config_from_json(const json& j, SuiteConfig base = default_config());
json config_to_json(const SuiteConfig& c);

struct CheckRecord {
    std::string id;
    std::string anchor;  // the identity being checked
    bool pass = false;
    double residual = 0;
    std::map<std::string, std::string> conventions;
    std::string detail;
    std::optional<std::uint64_t> seed;  // set for randomized checks
    double runtime_ms = 0;
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<CheckRecord> checks;  // sorted by id
    int passed() const;
    int failed() const;
    bool pass() const { return failed() == 0; }
};

std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& config);
// Runs the suites concurrently and merges by id, so the result does not depend on scheduling.
VerificationReport run_suites(const SuiteConfig& config);
VerificationReport merge_reports(const SuiteConfig& config, std::vector<std::vector<CheckRecord>> parts);

json report_to_json(const VerificationReport& r, bool include_timing = true);
std::string report_to_text(const VerificationReport& r);

// Per-check seed, independent of execution order.
std::uint64_t check_seed(std::uint64_t base, const std::string& id);

namespace checks {

// Omega with the sign of its n-th term flipped.
Form perturbed_omega(int term);

std::vector<CheckRecord> g2_structure(const Form& omega);
std::vector<CheckRecord> spin7_structure();
std::vector<CheckRecord> stabilizer_dims(const Form& omega);
std::vector<CheckRecord> decompositions();
std::vector<CheckRecord> cross_product(const Form& omega, int pairs, std::uint64_t seed);

std::vector<CheckRecord> fourier_identities(const std::vector<Rational>& fiber_scales);
CheckRecord fourier_t3_exchange();
CheckRecord flat_torus_involution(int points, std::uint64_t seed);

CheckRecord section_theorem(int jets, std::uint64_t seed, double tol);
CheckRecord section_sqrt3_family(double tol);
CheckRecord coassoc_sections(int cases, std::uint64_t seed, double tol);
CheckRecord semiflat_swap(int cases, std::uint64_t seed);

std::vector<CheckRecord> flat_moduli();

CheckRecord yukawa_ratio(int classes, std::uint64_t seed);
CheckRecord cubic_symmetry(int triples, std::uint64_t seed);
CheckRecord quartic_vanishing_27(int cases, std::uint64_t seed);
CheckRecord quartic_symmetry(int cases, std::uint64_t seed);

CheckRecord cs_preservation(int pairs, int grid, std::uint64_t seed, double rel_tol);
CheckRecord cs_convergence(std::uint64_t seed);

std::vector<CheckRecord> symbol_complexes(int covectors, std::uint64_t seed);
std::vector<CheckRecord> reductions();
CheckRecord hitchin_lookup();
std::vector<CheckRecord> cayley();
std::vector<CheckRecord> dt8(int cases, std::uint64_t seed);

}  // namespace checks

}  // namespace g2fm
