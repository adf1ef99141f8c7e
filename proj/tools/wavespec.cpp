// wavespec: synth / wavelet / esd / mc / report / replay.
// Exit codes: 0 success, 1 invalid input or violated assumption, 2 runtime failure.

#include <CLI11.hpp>

#include <bit>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "wavespec/error.hpp"
#include "wavespec/harness.hpp"
#include "wavespec/io.hpp"
#include "wavespec/specmat.hpp"
#include "wavespec/synth.hpp"
#include "wavespec/wavelet.hpp"

namespace {

using namespace wavespec;
using io::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct SynthArgs {
  std::size_t n = 0, p = 0;
  std::string hurst, mixing = "identity", out;
  std::uint64_t seed = 0;
};
struct WaveletArgs {
  std::string in, family = "db2", out;
  int max_octave = 0;
};
struct EsdArgs {
  std::string pyramid, scale, out;
  int octave = 0;
};
struct McArgs {
  std::string config, out;
  int threads = 0;
};
struct ReportArgs {
  std::string in, svg;
};

json manifest(const std::string& sub, const std::vector<std::string>& argv, json resolved, json outputs) {
  return {{"tool", "wavespec"},
          {"tool_version", io::kToolVersion},
          {"format_version", io::kFormatVersion},
          {"subcommand", sub},
          {"argv", argv},
          {"resolved", std::move(resolved)},
          {"outputs", std::move(outputs)}};
}

std::size_t parse_scale(const std::string& text) {
  std::size_t a = 0;
  try {
    if (text.rfind("2^", 0) == 0) {
      const int m = std::stoi(text.substr(2));
      if (m < 1 || m > 62) throw std::out_of_range(text);
      a = std::size_t{1} << m;
    } else {
      a = std::stoull(text);
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Validation, "A4: scale '" + text + "' must be 2^m or a power of two");
  }
  if (a < 2 || !std::has_single_bit(a))
    throw Error(ErrorKind::Validation, "A4: scale a must be a power of two >= 2, got " + text);
  return a;
}

int run_synth(const SynthArgs& s) {
  EnsembleSpec spec;
  spec.n = s.n;
  spec.p = s.p;
  spec.law = HurstLaw::parse(s.hurst);
  spec.mixing = MixingSpec::parse(s.mixing);
  spec.seed = s.seed;
  spec.validate();
  RandomStream rng(s.seed);
  const Ensemble ens = synth_ensemble(spec, rng);
  io::write_paths(s.out, ens.observed,
                  {{"seed", s.seed},
                   {"hurst_assignment", ens.assignment.values},
                   {"hurst_law", spec.law.to_string()},
                   {"mixing_kind", spec.mixing.to_string()}});
  const std::vector<std::string> argv = {"synth", "--n", std::to_string(s.n), "--p", std::to_string(s.p),
                                         "--hurst", spec.law.to_string(), "--mixing", spec.mixing.to_string(),
                                         "--seed", std::to_string(s.seed), "--out", s.out};
  io::write_json(s.out + ".manifest.json",
                 manifest("synth", argv,
                          {{"n", s.n}, {"p", s.p}, {"hurst", spec.law.to_string()},
                           {"mixing", spec.mixing.to_string()}, {"seed", s.seed}},
                          {s.out, io::sidecar_path(s.out).string()}));
  return kExitOk;
}

int run_wavelet(const WaveletArgs& w) {
  const auto family = wavelet_family_from_name(w.family);
  json sidecar;
  const PathMatrix paths = io::read_paths(w.in, &sidecar);
  const auto pyramid = mallat_pyramid(paths, family, w.max_octave);
  io::write_pyramid(w.out, pyramid);
  const std::vector<std::string> argv = {"wavelet", "--in", w.in, "--family", family.name(),
                                         "--max-octave", std::to_string(w.max_octave), "--out", w.out};
  io::write_json(w.out + ".manifest.json",
                 manifest("wavelet", argv, {{"in", w.in}, {"family", family.name()}, {"max_octave", w.max_octave}},
                          {w.out, io::sidecar_path(w.out).string()}));
  return kExitOk;
}

int run_esd(const EsdArgs& e) {
  const std::size_t a = parse_scale(e.scale);
  if (e.octave < 0) throw Error(ErrorKind::Validation, "octave j must be >= 0");
  const auto pyramid = io::read_pyramid(e.pyramid);
  const int total = std::countr_zero(a) + e.octave;
  const auto spectrum = log_spectrum(wavelet_matrix(pyramid, total, a));
  io::write_spectrum_csv(e.out, spectrum);
  const std::vector<std::string> argv = {"esd", "--pyramid", e.pyramid, "--scale", "2^" + std::to_string(std::countr_zero(a)),
                                         "--octave", std::to_string(e.octave), "--out", e.out};
  io::write_json(e.out + ".manifest.json",
                 manifest("esd", argv,
                          {{"pyramid", e.pyramid}, {"scale", a}, {"octave", e.octave}, {"total_octave", total}},
                          {e.out}));
  return kExitOk;
}

int run_mc(const McArgs& m) {
  const ExperimentConfig config = io::experiment_config_from_json(io::load_config_file(m.config));
  const RunSummary summary = run_experiment(config, m.threads);
  const fs::path dir = m.out;
  fs::create_directories(dir);
  json outputs = json::array();
  auto emit = [&](const fs::path& p) { outputs.push_back(p.string()); };

  io::write_json(dir / "summary.json", io::summary_json(summary));
  emit(dir / "summary.json");
  io::write_json(dir / "timing.json", io::timing_json(summary));
  emit(dir / "timing.json");
  for (std::size_t c = 0; c < summary.configs.size(); ++c) {
    const auto& r = summary.configs[c].regime;
    const fs::path csv = dir / ("config" + std::to_string(c + 1) + "_n" + std::to_string(r.n) + "_a" +
                                std::to_string(r.a) + "_p" + std::to_string(r.p) + ".csv");
    io::write_config_csv(csv, summary.configs[c]);
    emit(csv);
  }
  io::write_text(dir / "histogram.svg", io::summary_svg(summary));
  emit(dir / "histogram.svg");
  io::write_trend_csv(dir / "trend.csv", summary);
  emit(dir / "trend.csv");

  // The resolved config is stored next to the outputs so the manifest replays
  // without the original file.
  io::write_json(dir / "config.resolved.json", io::to_json(config));
  const std::vector<std::string> argv = {"mc", "--config", (dir / "config.resolved.json").string(), "--threads",
                                         std::to_string(m.threads), "--out", m.out};
  io::write_json(dir / "manifest.json",
                 manifest("mc", argv, {{"config", io::to_json(config)}, {"threads", m.threads}, {"source", m.config}},
                          outputs));

  for (const auto& cs : summary.configs) {
    std::printf("n=%zu a=%zu p=%zu: %zu/%zu replicates ok, median KS %.4f (debiased %.4f), modes:", cs.regime.n,
                cs.regime.a, cs.regime.p, cs.replicates - cs.failed, cs.replicates, cs.ks.median, cs.ks_debiased.median);
    for (const auto& mode : cs.modes.modes) std::printf(" %.2f(%.2f)", mode.location, mode.mass);
    std::printf("\n");
  }
  if (summary.failed) {
    std::cerr << "error: more than 5% of the replicates failed in at least one config; see summary.json\n";
    return kExitRuntime;
  }
  return kExitOk;
}

Histogram histogram_from_json(const json& j) {
  Histogram h;
  h.lo = j.at("lo");
  h.width = j.at("width");
  h.masses = j.at("masses").get<std::vector<double>>();
  h.samples = j.at("samples");
  h.below = j.at("below");
  h.above = j.at("above");
  return h;
}

int run_report(const ReportArgs& r) {
  fs::path in = r.in;
  if (fs::is_directory(in)) in /= "summary.json";
  const json s = json::parse(io::read_text(in));
  const auto support = s.at("config").at("law").at("support").get<std::vector<double>>();
  std::printf("%-28s %9s %9s %9s %9s  modes (location, mass)\n", "(n, a, p)", "failed", "KS q25", "KS med", "KS q75");
  RunSummary rebuilt;
  rebuilt.config.law = HurstLaw(support, s.at("config").at("law").at("masses").get<std::vector<double>>());
  for (const auto& c : s.at("configs")) {
    char label[64];
    std::snprintf(label, sizeof label, "(%zu, %zu, %zu)", c.at("n").get<std::size_t>(), c.at("a").get<std::size_t>(),
                  c.at("p").get<std::size_t>());
    std::printf("%-28s %9zu %9.4f %9.4f %9.4f ", label, c.at("failed").get<std::size_t>(),
                c.at("ks").at("q25").get<double>(), c.at("ks").at("median").get<double>(),
                c.at("ks").at("q75").get<double>());
    for (const auto& m : c.at("modes"))
      std::printf(" (%.2f, %.3f)", m.at("location").get<double>(), m.at("mass").get<double>());
    std::printf("\n");
    ConfigSummary cs;
    cs.regime = {c.at("n"), c.at("a"), c.at("p")};
    cs.hurst_histogram = histogram_from_json(c.at("hurst_histogram"));
    rebuilt.configs.push_back(std::move(cs));
  }
  if (!s.at("trend").is_null()) {
    const auto& t = s.at("trend");
    std::printf("median KS trend: %s\n", t.at("strictly_decreasing").get<bool>() ? "strictly decreasing"
                                         : t.at("non_increasing").get<bool>()    ? "non-increasing"
                                                                                 : "not monotone");
  }
  if (!r.svg.empty()) {
    io::write_text(r.svg, io::summary_svg(rebuilt));
    io::write_json(r.svg + ".manifest.json",
                   manifest("report", {"report", "--in", r.in, "--svg", r.svg}, {{"in", r.in}}, {r.svg}));
  }
  return kExitOk;
}

int dispatch(std::vector<std::string> args);

int run_replay(const std::string& manifest_path) {
  const json m = json::parse(io::read_text(manifest_path));
  auto argv = m.at("argv").get<std::vector<std::string>>();
  if (argv.empty() || argv.front() == "replay") throw Error(ErrorKind::Validation, "manifest has no replayable argv");
  return dispatch(std::move(argv));
}

int dispatch(std::vector<std::string> args) {
  CLI::App app{"Wavelet random-matrix spectra of mixed-Hurst fractional ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kToolVersion);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "Synthesize Y = P X with rows of fBm");
  synth->add_option("--n", sa.n, "Sample size")->required();
  synth->add_option("--p", sa.p, "Dimension")->required();
  synth->add_option("--hurst", sa.hurst, "Hurst law, e.g. \"0.2:1/3,0.5:1/3,0.8:1/3\"")->required();
  synth->add_option("--mixing", sa.mixing, "identity | cond:<bound>")->capture_default_str();
  synth->add_option("--seed", sa.seed, "64-bit seed")->capture_default_str();
  synth->add_option("--out", sa.out, "Output path (binary f64, sidecar <out>.json)")->required();

  WaveletArgs wa;
  auto* wavelet = app.add_subcommand("wavelet", "Mallat pyramid of a path file");
  wavelet->add_option("--in", wa.in, "Path file from synth")->required();
  wavelet->add_option("--family", wa.family, "db2 .. db8")->capture_default_str();
  wavelet->add_option("--max-octave", wa.max_octave, "Deepest octave J")->required();
  wavelet->add_option("--out", wa.out, "Output pyramid (manifest <out>.json)")->required();

  EsdArgs ea;
  auto* esd = app.add_subcommand("esd", "Rescaled log-eigenvalues of the wavelet matrix at scale a*2^j");
  esd->add_option("--pyramid", ea.pyramid, "Pyramid file")->required();
  esd->add_option("--scale", ea.scale, "a as 2^m")->required();
  esd->add_option("--octave", ea.octave, "j")->capture_default_str();
  esd->add_option("--out", ea.out, "Spectrum CSV")->required();

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiment over a regime schedule");
  mc->add_option("--config", ma.config, "TOML or JSON experiment config")->required();
  mc->add_option("--threads", ma.threads, "Worker threads (0: OpenMP default)")->capture_default_str();
  mc->add_option("--out", ma.out, "Output directory")->required();

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Summarize an mc output directory");
  report->add_option("--in", ra.in, "mc output directory or summary.json")->required();
  report->add_option("--svg", ra.svg, "Re-render the histogram panel to this path");

  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "Re-run the invocation recorded in a manifest");
  replay->add_option("--manifest", manifest_path, "manifest JSON")->required();

  std::vector<const char*> argv = {"wavespec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*synth) return run_synth(sa);
    if (*wavelet) return run_wavelet(wa);
    if (*esd) return run_esd(ea);
    if (*mc) return run_mc(ma);
    if (*report) return run_report(ra);
    if (*replay) return run_replay(manifest_path);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Validation || e.kind() == ErrorKind::Regime ? kExitInvalid : kExitRuntime;
  } catch (const io::json::exception& e) {
    std::cerr << "error (io): malformed JSON: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(std::vector<std::string>(argv + 1, argv + argc)); }
