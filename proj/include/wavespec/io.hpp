#pragma once

// File formats: binary blocks are little-endian IEEE-754 f64, row-major; every
// JSON sidecar carries format_version.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavespec/harness.hpp"
#include "wavespec/specmat.hpp"
#include "wavespec/synth.hpp"
#include "wavespec/wavelet.hpp"

namespace wavespec::io {

using nlohmann::json;
namespace fs = std::filesystem;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

void write_f64(const fs::path& path, const std::vector<const Matrix*>& blocks);
std::vector<double> read_f64(const fs::path& path);

/// `path` holds p × n values; `path`.json holds {n, p, seed, hurst_assignment,
/// mixing_kind, format_version}.
void write_paths(const fs::path& path, const PathMatrix& paths, const json& sidecar);
PathMatrix read_paths(const fs::path& path, json* sidecar = nullptr);
fs::path sidecar_path(const fs::path& path);

/// Octave blocks in increasing order; manifest `path`.json holds
/// {octaves, counts, family, n, p, valid_ranges, format_version}.
void write_pyramid(const fs::path& path, const WaveletPyramid& pyramid);
WaveletPyramid read_pyramid(const fs::path& path);

/// Columns rank, lambda, rescaled_log, scale, octave; doubles printed with 17
/// significant digits so the file round-trips exactly.
void write_spectrum_csv(const fs::path& path, const LogSpectrum& spectrum);
LogSpectrum read_spectrum_csv(const fs::path& path);

/// Minimal TOML: [table] headers, key = value with strings, integers, floats,
/// booleans and (nested) single-line arrays; '#' comments.
json parse_toml(const std::string& text);
/// JSON if the file starts with '{', TOML otherwise.
json load_config_file(const fs::path& path);

ExperimentConfig experiment_config_from_json(const json& j);
json to_json(const ExperimentConfig& config);

/// Deterministic part of a run: no wall-clock values.
json summary_json(const RunSummary& summary);
json timing_json(const RunSummary& summary);

/// One row per (replicate, rank): rank, replicate, lambda, rescaled_log, hurst_estimate.
void write_config_csv(const fs::path& path, const ConfigSummary& config);
void write_trend_csv(const fs::path& path, const RunSummary& summary);

/// Bar chart of a histogram with vertical lines at `markers`.
std::string histogram_svg(const Histogram& h, const std::vector<double>& markers, const std::string& title);
/// One panel per config of the pooled Hurst-estimate histograms.
std::string summary_svg(const RunSummary& summary);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);
void write_json(const fs::path& path, const json& j);

}  // namespace wavespec::io
