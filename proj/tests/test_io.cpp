#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "wavespec/error.hpp"
#include "wavespec/io.hpp"

using namespace wavespec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wavespec_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + WAVESPEC_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

PathMatrix sample_paths(std::size_t p, std::size_t n, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.n = n;
  spec.p = p;
  RandomStream rng(seed);
  return synth_ensemble(spec, rng).observed;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("path files round-trip exactly") {
  const auto dir = scratch("paths");
  const auto paths = sample_paths(3, 257, 1);
  io::write_paths(dir / "x.bin", paths, {{"seed", 1}});
  CHECK(fs::file_size(dir / "x.bin") == 3 * 257 * 8);
  io::json side;
  CHECK(io::read_paths(dir / "x.bin", &side) == paths);
  CHECK(side["n"] == 257);
  CHECK(side["p"] == 3);
  CHECK(side["format_version"] == io::kFormatVersion);
  CHECK(side["seed"] == 1);
  CHECK_THROWS_AS(io::read_paths(dir / "missing.bin"), Error);
}

TEST_CASE("pyramid files round-trip exactly") {
  const auto dir = scratch("pyramid");
  const auto pyr = mallat_pyramid(sample_paths(4, 2048, 2), daubechies(3), 5);
  io::write_pyramid(dir / "w.bin", pyr);
  const auto back = io::read_pyramid(dir / "w.bin");
  CHECK(back.family == pyr.family);
  CHECK(back.n == pyr.n);
  CHECK(back.p == pyr.p);
  CHECK(back.octaves == pyr.octaves);
  CHECK(back.counts == pyr.counts);
  CHECK(back.valid_ranges == pyr.valid_ranges);
  CHECK(back.details == pyr.details);
}

TEST_CASE("spectrum CSV round-trips exactly") {
  const auto dir = scratch("csv");
  const auto s = log_spectrum_from_eigenvalues({0.1, 3.0 / 7.0, 1e5, 2.0 / 3.0}, 32, 5);
  io::write_spectrum_csv(dir / "s.csv", s);
  const auto back = io::read_spectrum_csv(dir / "s.csv");
  CHECK(back.eigenvalues == s.eigenvalues);
  CHECK(back.values == s.values);
  CHECK(back.scale == 32);
  CHECK(back.octave == 5);
}

TEST_CASE("TOML subset") {
  const auto j = io::parse_toml(R"(# experiment
law = "0.2:1/3,0.5:1/3,0.8:1/3"
replicates = 20   # trailing comment
ks_window = 0.1
flag = true
schedule = [
  [1024, 16, 8],
  [32768, 32, 32],
]
[extra]
name = "a # not a comment"
)");
  CHECK(j["law"] == "0.2:1/3,0.5:1/3,0.8:1/3");
  CHECK(j["replicates"] == 20);
  CHECK(j["ks_window"] == 0.1);
  CHECK(j["flag"] == true);
  CHECK(j["schedule"].size() == 2);
  CHECK(j["schedule"][1][2] == 32);
  CHECK(j["extra"]["name"] == "a # not a comment");
  CHECK_THROWS_AS(io::parse_toml("x = [1, 2"), Error);
  CHECK_THROWS_AS(io::parse_toml("just words"), Error);
}

TEST_CASE("experiment config round-trips through JSON and TOML") {
  const auto dir = scratch("config");
  io::write_text(dir / "c.toml", R"(law = "0.3:0.5,0.7:0.5"
schedule = [[1024, 16, 4], [4096, 16, 8]]
replicates = 7
replicates_per_regime = [7, 3]
family = "db3"
octave_range = [2, 4]
mixing = "cond:3"
seed = 99
)");
  const auto c = io::experiment_config_from_json(io::load_config_file(dir / "c.toml"));
  CHECK(c.law.support() == std::vector<double>{0.3, 0.7});
  CHECK(c.schedule.size() == 2);
  CHECK(c.replicates_for(1) == 3);
  CHECK(c.family_order == 3);
  CHECK(c.octave_range == std::pair{2, 4});
  CHECK(c.mixing.kind == MixingSpec::Kind::RandomConditioned);
  CHECK(c.seed == 99);
  io::write_json(dir / "c.json", io::to_json(c));
  const auto back = io::experiment_config_from_json(io::load_config_file(dir / "c.json"));
  CHECK(io::to_json(back) == io::to_json(c));

  auto bad = io::to_json(c);
  bad["replicatez"] = 3;
  CHECK_THROWS_AS(io::experiment_config_from_json(bad), Error);
  bad = io::to_json(c);
  bad.erase("schedule");
  CHECK_THROWS_AS(io::experiment_config_from_json(bad), Error);
}

TEST_CASE("SVG output") {
  const auto h = make_histogram({0.2, 0.21, 0.5, 0.8}, 0.0, 1.0, 0.02);
  const auto svg = io::histogram_svg(h, {0.2, 0.5, 0.8}, "test <panel>");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("test <panel>") == std::string::npos);
  CHECK(svg.find("test &lt;panel&gt;") != std::string::npos);
}

TEST_CASE("CLI synth writes paths and sidecar") {
  const auto dir = scratch("cli_synth");
  CHECK(run_cli("synth --n 1024 --p 4 --hurst 0.2:1/3,0.5:1/3,0.8:1/3 --seed 5 --out " + (dir / "x.bin").string(),
                dir / "log") == 0);
  CHECK(fs::exists(dir / "x.bin"));
  CHECK(fs::exists(dir / "x.bin.json"));
  CHECK(fs::exists(dir / "x.bin.manifest.json"));
  CHECK(io::read_paths(dir / "x.bin").p() == 4);
}

TEST_CASE("CLI rejects regime violations with exit code 1") {
  const auto dir = scratch("cli_a4");
  REQUIRE(run_cli("synth --n 1024 --p 4 --hurst 0.5:1 --seed 1 --out " + (dir / "x.bin").string(), dir / "log") ==
          0);
  REQUIRE(run_cli("wavelet --in " + (dir / "x.bin").string() + " --max-octave 7 --out " + (dir / "w.bin").string(),
                  dir / "log") == 0);
  // Octave 7 keeps 3 border-free coefficients, fewer than p = 4.
  CHECK(run_cli("esd --pyramid " + (dir / "w.bin").string() + " --scale 2^7 --out " + (dir / "s.csv").string(),
                dir / "err") == 1);
  CHECK(io::read_text(dir / "err").find("A4") != std::string::npos);
  CHECK(run_cli("synth --n 1024 --p 0 --hurst 0.5:1 --out " + (dir / "y.bin").string(), dir / "err2") == 1);
  CHECK(run_cli("bogus", dir / "err3") == 1);
}

TEST_CASE("CLI pipeline matches the in-process pipeline bit for bit") {
  const auto dir = scratch("cli_pipeline");
  const auto x = (dir / "x.bin").string(), w = (dir / "w.bin").string(), s = (dir / "s.csv").string();
  REQUIRE(run_cli("synth --n 4096 --p 6 --hurst 0.2:1/3,0.5:1/3,0.8:1/3 --seed 42 --out " + x, dir / "log") == 0);
  REQUIRE(run_cli("wavelet --in " + x + " --family db2 --max-octave 5 --out " + w, dir / "log") == 0);
  REQUIRE(run_cli("esd --pyramid " + w + " --scale 2^4 --octave 1 --out " + s, dir / "log") == 0);

  EnsembleSpec spec;
  spec.n = 4096;
  spec.p = 6;
  spec.law = HurstLaw::parse("0.2:1/3,0.5:1/3,0.8:1/3");
  spec.seed = 42;
  RandomStream rng(42);
  const auto ens = synth_ensemble(spec, rng);
  const auto expected = log_spectrum(wavelet_matrix(mallat_pyramid(ens.observed, daubechies(2), 5), 5, 16));
  const auto got = io::read_spectrum_csv(s);
  CHECK(got.eigenvalues == expected.eigenvalues);
  CHECK(got.values == expected.values);

  // replay regenerates identical bytes
  const auto original = io::read_text(s);
  fs::remove(s);
  CHECK(run_cli("replay --manifest " + s + ".manifest.json", dir / "log") == 0);
  CHECK(io::read_text(s) == original);
  const auto paths = io::read_text(x);
  fs::remove(x);
  CHECK(run_cli("replay --manifest " + x + ".manifest.json", dir / "log") == 0);
  CHECK(io::read_text(x) == paths);
}

TEST_CASE("CLI mc and report") {
  const auto dir = scratch("cli_mc");
  io::write_text(dir / "c.toml", "schedule = [[1024, 16, 3], [4096, 16, 6]]\nreplicates = 4\nseed = 3\n"
                                 "bootstrap_resamples = 20\n");
  const auto out = (dir / "out").string();
  REQUIRE(run_cli("mc --config " + (dir / "c.toml").string() + " --threads 2 --out " + out, dir / "log") == 0);
  for (const char* f : {"summary.json", "timing.json", "histogram.svg", "trend.csv", "manifest.json",
                        "config.resolved.json", "config1_n1024_a16_p3.csv", "config2_n4096_a16_p6.csv"})
    CHECK(fs::exists(dir / "out" / f));
  const auto summary = io::json::parse(io::read_text(dir / "out" / "summary.json"));
  CHECK(summary["configs"].size() == 2);
  const auto before = io::read_text(dir / "out" / "summary.json");
  CHECK(run_cli("replay --manifest " + out + "/manifest.json", dir / "log") == 0);
  CHECK(io::read_text(dir / "out" / "summary.json") == before);
  CHECK(run_cli("report --in " + out + " --svg " + (dir / "r.svg").string(), dir / "report") == 0);
  CHECK(fs::exists(dir / "r.svg"));
  CHECK(io::read_text(dir / "report").find("(1024, 16, 3)") != std::string::npos);
}

}
