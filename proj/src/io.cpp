#include "wavespec/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "wavespec/error.hpp"

namespace wavespec::io {

namespace {

[[noreturn]] void io_error(const std::string& what) { throw Error(ErrorKind::Io, what); }

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

json histogram_json(const Histogram& h) {
  return {{"lo", h.lo}, {"width", h.width}, {"masses", h.masses},
          {"samples", h.samples}, {"below", h.below}, {"above", h.above}};
}

json quartiles_json(const Quartiles& q) { return {{"q25", q.q25}, {"median", q.median}, {"q75", q.q75}}; }

json trend_json(const TrendReport& t) {
  json bands = json::array();
  for (auto [lo, hi] : t.bands) bands.push_back({lo, hi});
  return {{"median_ks", t.medians},
          {"bootstrap_95", bands},
          {"strictly_decreasing", t.strictly_decreasing},
          {"non_increasing", t.non_increasing},
          {"flat", t.flat}};
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) io_error("write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_f64(const fs::path& path, const std::vector<const Matrix*>& blocks) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) io_error("cannot open '" + path.string() + "' for writing");
  std::vector<char> buf;
  for (const Matrix* m : blocks) {
    buf.resize(m->data().size() * 8);
    for (std::size_t i = 0; i < m->data().size(); ++i) {
      const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(m->data()[i]));
      std::memcpy(buf.data() + 8 * i, &bits, 8);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  }
  if (!out) io_error("write to '" + path.string() + "' failed");
}

std::vector<double> read_f64(const fs::path& path) {
  const std::string raw = read_text(path);
  if (raw.size() % 8 != 0) io_error("'" + path.string() + "' is not a whole number of f64 values");
  std::vector<double> v(raw.size() / 8);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, raw.data() + 8 * i, 8);
    v[i] = std::bit_cast<double>(to_little(bits));
  }
  return v;
}

fs::path sidecar_path(const fs::path& path) { return fs::path(path.string() + ".json"); }

void write_paths(const fs::path& path, const PathMatrix& paths, const json& sidecar) {
  write_f64(path, {&paths.data()});
  json meta = sidecar;
  meta["n"] = paths.n();
  meta["p"] = paths.p();
  meta["format_version"] = kFormatVersion;
  write_json(sidecar_path(path), meta);
}

PathMatrix read_paths(const fs::path& path, json* sidecar) {
  const json meta = json::parse(read_text(sidecar_path(path)));
  if (meta.value("format_version", 0) != kFormatVersion)
    io_error("'" + sidecar_path(path).string() + "' has an unsupported format_version");
  const auto n = meta.at("n").get<std::size_t>();
  const auto p = meta.at("p").get<std::size_t>();
  const auto values = read_f64(path);
  if (values.size() != n * p) io_error("'" + path.string() + "' does not hold p*n values");
  Matrix m(p, n);
  std::copy(values.begin(), values.end(), m.data().begin());
  if (sidecar) *sidecar = meta;
  return PathMatrix(std::move(m));
}

void write_pyramid(const fs::path& path, const WaveletPyramid& pyramid) {
  std::vector<const Matrix*> blocks;
  json ranges = json::array();
  for (std::size_t i = 0; i < pyramid.details.size(); ++i) {
    blocks.push_back(&pyramid.details[i]);
    ranges.push_back({pyramid.valid_ranges[i].first, pyramid.valid_ranges[i].second});
  }
  write_f64(path, blocks);
  write_json(sidecar_path(path), {{"format_version", kFormatVersion},
                                  {"family", pyramid.family},
                                  {"n", pyramid.n},
                                  {"p", pyramid.p},
                                  {"octaves", pyramid.octaves},
                                  {"counts", pyramid.counts},
                                  {"valid_ranges", ranges}});
}

WaveletPyramid read_pyramid(const fs::path& path) {
  const json meta = json::parse(read_text(sidecar_path(path)));
  if (meta.value("format_version", 0) != kFormatVersion)
    io_error("'" + sidecar_path(path).string() + "' has an unsupported format_version");
  WaveletPyramid w;
  w.family = meta.at("family").get<std::string>();
  w.n = meta.at("n").get<std::size_t>();
  w.p = meta.at("p").get<std::size_t>();
  w.octaves = meta.at("octaves").get<std::vector<int>>();
  w.counts = meta.at("counts").get<std::vector<std::size_t>>();
  for (const auto& r : meta.at("valid_ranges")) w.valid_ranges.emplace_back(r.at(0), r.at(1));
  if (w.counts.size() != w.octaves.size() || w.valid_ranges.size() != w.octaves.size())
    io_error("pyramid manifest '" + sidecar_path(path).string() + "' is inconsistent");
  const auto values = read_f64(path);
  std::size_t offset = 0;
  for (std::size_t c : w.counts) {
    Matrix m(w.p, c);
    if (offset + m.data().size() > values.size()) io_error("pyramid file '" + path.string() + "' is truncated");
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(offset), m.data().size(), m.data().begin());
    offset += m.data().size();
    w.details.push_back(std::move(m));
  }
  if (offset != values.size()) io_error("pyramid file '" + path.string() + "' has trailing data");
  return w;
}

void write_spectrum_csv(const fs::path& path, const LogSpectrum& s) {
  std::ostringstream os;
  os << "rank,lambda,rescaled_log,scale,octave\n";
  for (std::size_t l = 0; l < s.values.size(); ++l)
    os << (l + 1) << ',' << g17(s.eigenvalues[l]) << ',' << g17(s.values[l]) << ',' << s.scale << ',' << s.octave
       << '\n';
  write_text(path, os.str());
}

LogSpectrum read_spectrum_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  if (line.rfind("rank,lambda,rescaled_log,scale,octave", 0) != 0) io_error("'" + path.string() + "' is not a spectrum CSV");
  LogSpectrum s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string rank, lambda, value, scale, octave;
    std::getline(row, rank, ',');
    std::getline(row, lambda, ',');
    std::getline(row, value, ',');
    std::getline(row, scale, ',');
    std::getline(row, octave, ',');
    s.eigenvalues.push_back(std::strtod(lambda.c_str(), nullptr));
    s.values.push_back(std::strtod(value.c_str(), nullptr));
    s.scale = std::stoull(scale);
    s.octave = std::stoi(octave);
  }
  return s;
}

// ---------------------------------------------------------------------------
// TOML subset

namespace {

struct TomlCursor {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Validation, "config line " + std::to_string(line) + ": " + what);
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  void skip_blank() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  }
  void skip_comment() {
    skip_blank();
    if (peek() == '#')
      while (!done() && text[pos] != '\n') ++pos;
  }
  // Inside arrays newlines and comments are insignificant.
  void skip_space_in_array() {
    for (;;) {
      skip_comment();
      if (peek() == '\n') {
        ++pos;
        ++line;
        continue;
      }
      return;
    }
  }
  void end_of_line() {
    skip_comment();
    if (done()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos;
    ++line;
  }

  std::string bare_key() {
    skip_blank();
    if (peek() == '"') return string_value();
    const std::size_t start = pos;
    while (!done() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected a key");
    return text.substr(start, pos - start);
  }

  std::string string_value() {
    const char quote = text[pos++];
    std::string out;
    while (!done() && text[pos] != quote) {
      if (text[pos] == '\n') fail("unterminated string");
      if (quote == '"' && text[pos] == '\\') {
        ++pos;
        switch (peek()) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("unsupported escape");
        }
        ++pos;
        continue;
      }
      out += text[pos++];
    }
    if (done()) fail("unterminated string");
    ++pos;
    return out;
  }

  json value() {
    skip_blank();
    const char c = peek();
    if (c == '"' || c == '\'') return string_value();
    if (c == '[') {
      ++pos;
      json arr = json::array();
      for (;;) {
        skip_space_in_array();
        if (peek() == ']') {
          ++pos;
          return arr;
        }
        arr.push_back(value());
        skip_space_in_array();
        if (peek() == ',') {
          ++pos;
          continue;
        }
        if (peek() == ']') {
          ++pos;
          return arr;
        }
        fail("expected ',' or ']' in array");
      }
    }
    const std::size_t start = pos;
    while (!done() && text[pos] != ',' && text[pos] != ']' && text[pos] != '\n' && text[pos] != '#' &&
           text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r')
      ++pos;
    std::string token = text.substr(start, pos - start);
    if (token == "true") return true;
    if (token == "false") return false;
    token.erase(std::remove(token.begin(), token.end(), '_'), token.end());
    if (token.empty()) fail("expected a value");
    const bool integral = token.find_first_of(".eE") == std::string::npos || token.rfind("0x", 0) == 0;
    try {
      std::size_t used = 0;
      if (integral && token[0] != '-') {
        const auto v = std::stoull(token, &used, 0);
        if (used == token.size()) return v;
      } else if (integral) {
        const auto v = std::stoll(token, &used, 0);
        if (used == token.size()) return v;
      } else {
        const double v = std::stod(token, &used);
        if (used == token.size()) return v;
      }
    } catch (const std::logic_error&) {
    }
    fail("cannot parse value '" + token + "'");
  }
};

}  // namespace

json parse_toml(const std::string& text) {
  json root = json::object();
  json* table = &root;
  TomlCursor cur{text};
  while (!cur.done()) {
    cur.skip_comment();
    if (cur.peek() == '\n') {
      ++cur.pos;
      ++cur.line;
      continue;
    }
    if (cur.done()) break;
    if (cur.peek() == '[') {
      ++cur.pos;
      table = &root;
      for (;;) {
        const std::string key = cur.bare_key();
        json& next = (*table)[key];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) cur.fail("'" + key + "' is not a table");
        table = &next;
        cur.skip_blank();
        if (cur.peek() == '.') {
          ++cur.pos;
          continue;
        }
        if (cur.peek() != ']') cur.fail("expected ']' after table name");
        ++cur.pos;
        break;
      }
      cur.end_of_line();
      continue;
    }
    const std::string key = cur.bare_key();
    cur.skip_blank();
    if (cur.peek() != '=') cur.fail("expected '=' after '" + key + "'");
    ++cur.pos;
    if (table->contains(key)) cur.fail("duplicate key '" + key + "'");
    (*table)[key] = cur.value();
    cur.end_of_line();
  }
  return root;
}

json load_config_file(const fs::path& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Validation, "config '" + path.string() + "': " + e.what());
    }
  }
  return parse_toml(text);
}

ExperimentConfig experiment_config_from_json(const json& j) {
  static const std::vector<std::string> known = {
      "law", "schedule", "replicates", "replicates_per_regime", "family", "octave", "octave_range", "mixing",
      "seed", "sqrt_constant", "ks_window", "bootstrap_resamples"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw Error(ErrorKind::Validation, "unknown config key '" + key + "'");

  ExperimentConfig c;
  try {
    if (j.contains("law")) {
      const auto& law = j.at("law");
      if (law.is_string())
        c.law = HurstLaw::parse(law.get<std::string>());
      else
        c.law = HurstLaw(law.at("support").get<std::vector<double>>(), law.at("masses").get<std::vector<double>>());
    }
    if (!j.contains("schedule")) throw Error(ErrorKind::Validation, "A4: config needs a schedule of (n, a, p) triples");
    for (const auto& r : j.at("schedule")) {
      Regime reg;
      if (r.is_array()) {
        if (r.size() != 3) throw Error(ErrorKind::Validation, "schedule entries must be [n, a, p]");
        reg = {r.at(0).get<std::size_t>(), r.at(1).get<std::size_t>(), r.at(2).get<std::size_t>()};
      } else {
        reg = {r.at("n").get<std::size_t>(), r.at("a").get<std::size_t>(), r.at("p").get<std::size_t>()};
      }
      c.schedule.push_back(reg);
    }
    c.replicates = j.value("replicates", c.replicates);
    c.replicates_per_regime = j.value("replicates_per_regime", c.replicates_per_regime);
    if (j.contains("family")) c.family_order = wavelet_family_from_name(j.at("family").get<std::string>()).order;
    c.octave = j.value("octave", c.octave);
    if (j.contains("octave_range")) {
      const auto r = j.at("octave_range").get<std::vector<int>>();
      if (r.size() != 2) throw Error(ErrorKind::Validation, "octave_range must be [j1, j2]");
      c.octave_range = std::pair{r[0], r[1]};
    }
    if (j.contains("mixing")) c.mixing = MixingSpec::parse(j.at("mixing").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.sqrt_constant = j.value("sqrt_constant", c.sqrt_constant);
    c.ks_window = j.value("ks_window", c.ks_window);
    c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  json schedule = json::array();
  for (const auto& r : c.schedule) schedule.push_back({r.n, r.a, r.p});
  json j = {{"law", {{"support", c.law.support()}, {"masses", c.law.masses()}}},
            {"schedule", schedule},
            {"replicates", c.replicates},
            {"family", daubechies(c.family_order).name()},
            {"octave", c.octave},
            {"mixing", c.mixing.to_string()},
            {"seed", c.seed},
            {"sqrt_constant", c.sqrt_constant},
            {"ks_window", c.ks_window},
            {"bootstrap_resamples", c.bootstrap_resamples}};
  if (!c.replicates_per_regime.empty()) j["replicates_per_regime"] = c.replicates_per_regime;
  if (c.octave_range) j["octave_range"] = {c.octave_range->first, c.octave_range->second};
  return j;
}

json summary_json(const RunSummary& s) {
  json configs = json::array();
  for (const auto& cs : s.configs) {
    json modes = json::array();
    for (const auto& m : cs.modes.modes)
      modes.push_back({{"location", m.location}, {"mass", m.mass}, {"prominence", m.prominence}});
    json failures = json::array();
    for (const auto& r : cs.records)
      if (!r.ok) failures.push_back({{"replicate", r.index}, {"error", r.error}});
    configs.push_back({{"n", cs.regime.n},
                       {"a", cs.regime.a},
                       {"p", cs.regime.p},
                       {"octave", cs.octave},
                       {"octave_range", {cs.octave_range.first, cs.octave_range.second}},
                       {"replicates", cs.replicates},
                       {"failed", cs.failed},
                       {"failures", failures},
                       {"ks", quartiles_json(cs.ks)},
                       {"ks_debiased", quartiles_json(cs.ks_debiased)},
                       {"modes", modes},
                       {"modes_requested", cs.modes.requested},
                       {"local_maxima", cs.modes.local_maxima},
                       {"hurst_histogram", histogram_json(cs.hurst_histogram)},
                       {"rescaled_log_histogram", histogram_json(cs.log_histogram)}});
  }
  return {{"format_version", kFormatVersion},
          {"tool_version", kToolVersion},
          {"config", to_json(s.config)},
          {"conventions",
           {{"rescaled_log", "ln(lambda)/ln(a) at scale a*2^j"},
            {"regression", "weighted least squares of log2(lambda_l) on octave, weights n_j"},
            {"octave_range_default", "[3, log2(a)+j]"},
            {"ks_window", s.config.ks_window}}},
          {"configs", configs},
          {"trend", s.configs.size() >= 2 ? trend_json(s.trend) : json(nullptr)},
          {"trend_debiased", s.configs.size() >= 2 ? trend_json(s.trend_debiased) : json(nullptr)},
          {"failed", s.failed}};
}

json timing_json(const RunSummary& s) {
  json per = json::array();
  for (const auto& cs : s.configs)
    per.push_back({{"n", cs.regime.n}, {"a", cs.regime.a}, {"p", cs.regime.p}, {"wall_seconds", cs.wall_seconds}});
  return {{"format_version", kFormatVersion}, {"wall_seconds", s.wall_seconds}, {"configs", per}};
}

void write_config_csv(const fs::path& path, const ConfigSummary& cs) {
  std::ostringstream os;
  os << "rank,replicate,lambda,rescaled_log,hurst_estimate\n";
  for (const auto& r : cs.records) {
    if (!r.ok) continue;
    for (std::size_t l = 0; l < r.eigenvalues.size(); ++l)
      os << (l + 1) << ',' << r.index << ',' << g17(r.eigenvalues[l]) << ',' << g17(r.rescaled_log[l]) << ','
         << g17(r.hurst_estimates[l]) << '\n';
  }
  write_text(path, os.str());
}

void write_trend_csv(const fs::path& path, const RunSummary& s) {
  std::ostringstream os;
  os << "n,a,p,replicates,failed,median_ks,band_lo,band_hi,median_ks_debiased,band_lo_debiased,band_hi_debiased\n";
  for (std::size_t c = 0; c < s.configs.size(); ++c) {
    const auto& cs = s.configs[c];
    os << cs.regime.n << ',' << cs.regime.a << ',' << cs.regime.p << ',' << cs.replicates << ',' << cs.failed << ','
       << g17(cs.ks.median);
    if (c < s.trend.bands.size())
      os << ',' << g17(s.trend.bands[c].first) << ',' << g17(s.trend.bands[c].second);
    else
      os << ",,";
    os << ',' << g17(cs.ks_debiased.median);
    if (c < s.trend_debiased.bands.size())
      os << ',' << g17(s.trend_debiased.bands[c].first) << ',' << g17(s.trend_debiased.bands[c].second);
    else
      os << ",,";
    os << '\n';
  }
  write_text(path, os.str());
}

// ---------------------------------------------------------------------------
// SVG

namespace {

void svg_panel(std::ostringstream& os, const Histogram& h, const std::vector<double>& markers,
               const std::string& title, double x0, double y0, double width, double height) {
  const double left = 50, right = 15, top = 30, bottom = 40;
  const double pw = width - left - right, ph = height - top - bottom;
  const double lo = h.lo, hi = h.lo + h.width * static_cast<double>(h.bins());
  double peak = 0.0;
  for (double m : h.masses) peak = std::max(peak, m);
  if (peak <= 0.0) peak = 1.0;
  const double ymax = peak * 1.1;
  auto sx = [&](double v) { return x0 + left + (v - lo) / (hi - lo) * pw; };
  auto sy = [&](double m) { return y0 + top + ph - m / ymax * ph; };

  os << "<g>\n";
  os << "<text x=\"" << fixed(x0 + left + pw / 2, 1) << "\" y=\"" << fixed(y0 + 18, 1)
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(title) << "</text>\n";
  for (std::size_t b = 0; b < h.bins(); ++b) {
    if (h.masses[b] <= 0.0) continue;
    const double x = sx(lo + h.width * static_cast<double>(b));
    os << "<rect x=\"" << fixed(x, 2) << "\" y=\"" << fixed(sy(h.masses[b]), 2) << "\" width=\""
       << fixed(pw * h.width / (hi - lo), 2) << "\" height=\"" << fixed(y0 + top + ph - sy(h.masses[b]), 2)
       << "\" fill=\"#4a78b0\" stroke=\"#ffffff\" stroke-width=\"0.5\"/>\n";
  }
  for (double m : markers) {
    if (m < lo || m > hi) continue;
    os << "<line x1=\"" << fixed(sx(m), 2) << "\" y1=\"" << fixed(y0 + top, 2) << "\" x2=\"" << fixed(sx(m), 2)
       << "\" y2=\"" << fixed(y0 + top + ph, 2) << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"/>\n";
  }
  // axes
  os << "<line x1=\"" << fixed(x0 + left, 2) << "\" y1=\"" << fixed(y0 + top + ph, 2) << "\" x2=\""
     << fixed(x0 + left + pw, 2) << "\" y2=\"" << fixed(y0 + top + ph, 2) << "\" stroke=\"#000\"/>\n";
  os << "<line x1=\"" << fixed(x0 + left, 2) << "\" y1=\"" << fixed(y0 + top, 2) << "\" x2=\"" << fixed(x0 + left, 2)
     << "\" y2=\"" << fixed(y0 + top + ph, 2) << "\" stroke=\"#000\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = lo + (hi - lo) * t / 5.0;
    os << "<text x=\"" << fixed(sx(v), 2) << "\" y=\"" << fixed(y0 + top + ph + 16, 2)
       << "\" text-anchor=\"middle\" font-size=\"10\">" << fixed(v, 1) << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double m = ymax * t / 4.0;
    os << "<text x=\"" << fixed(x0 + left - 5, 2) << "\" y=\"" << fixed(sy(m) + 3, 2)
       << "\" text-anchor=\"end\" font-size=\"10\">" << fixed(m, 3) << "</text>\n";
  }
  os << "</g>\n";
}

std::string svg_document(double width, double height, const std::string& body) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
     << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
     << body << "</svg>\n";
  return os.str();
}

}  // namespace

std::string histogram_svg(const Histogram& h, const std::vector<double>& markers, const std::string& title) {
  std::ostringstream body;
  svg_panel(body, h, markers, title, 0, 0, 480, 320);
  return svg_document(480, 320, body.str());
}

std::string summary_svg(const RunSummary& s) {
  const double pw = 400, ph = 300;
  std::ostringstream body;
  for (std::size_t c = 0; c < s.configs.size(); ++c) {
    const auto& cs = s.configs[c];
    std::ostringstream title;
    title << "(n, a, p) = (" << cs.regime.n << ", " << cs.regime.a << ", " << cs.regime.p << ")";
    svg_panel(body, cs.hurst_histogram, s.config.law.support(), title.str(), pw * static_cast<double>(c), 0, pw, ph);
  }
  return svg_document(std::max(1.0, pw * static_cast<double>(s.configs.size())), ph, body.str());
}

}  // namespace wavespec::io
