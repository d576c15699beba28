#ifndef ORBITPOW_CLI_SUPPORT_HPP
#define ORBITPOW_CLI_SUPPORT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orbitpow/poly.hpp"

namespace orbitpow {

inline constexpr const char* kToolVersion = "0.1.0";

// Everything a run needs, round-trippable through canonical TOML: parsing
// the emitted text yields an identical config, and emitting a parsed config
// reproduces the text byte for byte.
struct RunConfig {
    std::string command;
    std::string poly;
    std::string s;  // comma-separated primes
    std::string alpha;
    std::string beta;
    long bound = 100;
    long m = 1;
    long n_max = 1;
    long k_max = 0;
    long count = 5;
    double eps = 0.5;
    double tol = 1e-6;
    long bit_budget = kDefaultBitBudget;
    int workers = 0;
    std::string variant = "V";
    int degree_shift = 1;
    std::string out_dir;

    bool operator==(const RunConfig&) const = default;
};

std::string to_toml(const RunConfig& cfg);
RunConfig config_from_toml(const std::string& text);
RunConfig load_config_file(const std::string& path);

std::uint64_t fnv1a_hash(const std::string& data);
std::string config_hash_hex(const RunConfig& cfg);

// Run metadata written next to search outputs.
std::string manifest_json(const RunConfig& cfg, double wall_seconds,
                          const std::vector<std::string>& outputs);

// Minimal static SVG rendering for result display.
struct PlotSeries {
    std::vector<std::pair<double, double>> points;
};

std::string svg_step_plot(const PlotSeries& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label);
std::string svg_scatter_with_envelope(const PlotSeries& scatter, const std::string& title,
                                      const std::string& x_label, const std::string& y_label);

// Numeric CSV loader (header skipped; non-numeric leading column allowed).
std::vector<std::vector<double>> load_csv_numeric(const std::string& text);

}  // namespace orbitpow

#endif
