#include "framelab/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "framelab/error.hpp"

namespace framelab {
namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) throw FormatError("not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(line);
  while (std::getline(ss, item, sep)) {
    if (!item.empty() && item.back() == '\r') item.pop_back();
    out.push_back(item);
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

// Next line that is neither blank nor a '#' comment; false at end of input.
bool next_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return true;
  }
  return false;
}

void write_hash(std::ostream& os, const std::string& hash) {
  if (!hash.empty()) os << "# config_hash=" << hash << '\n';
}

std::size_t read_dim_header(std::istream& is, std::string& rest) {
  std::string line;
  if (!next_line(is, line)) throw FormatError("missing header line");
  const auto semi = line.find(';');
  const std::string head = line.substr(0, semi);
  rest = semi == std::string::npos ? std::string() : line.substr(semi + 1);
  if (!head.starts_with("dim=")) throw FormatError("header must start with dim=<d>, got '" + line + "'");
  const double d = parse_double(head.substr(4));
  if (!(d >= 1.0) || d != std::floor(d)) throw FormatError("bad dimension in header '" + line + "'");
  return static_cast<std::size_t>(d);
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("format_double failed");
  return std::string(buf.data(), ptr);
}

void write_measure_csv(std::ostream& os, const QuadratureMeasure& m, const std::string& config_hash) {
  write_hash(os, config_hash);
  os << "dim=" << m.dim() << '\n';
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (double x : m.point(j)) os << format_double(x) << ',';
    os << format_double(m.weight(j)) << '\n';
  }
}

QuadratureMeasure read_measure_csv(std::istream& is) {
  std::string rest, line;
  const std::size_t d = read_dim_header(is, rest);
  std::vector<double> coords, weights;
  while (next_line(is, line)) {
    auto cells = split(line, ',');
    if (cells.size() != d + 1)
      throw FormatError("measure row has " + std::to_string(cells.size()) + " columns, expected " +
                        std::to_string(d + 1));
    for (std::size_t a = 0; a < d; ++a) coords.push_back(parse_double(cells[a]));
    weights.push_back(parse_double(cells[d]));
  }
  try {
    return QuadratureMeasure(d, std::move(coords), std::move(weights), "csv");
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid measure file: ") + e.what());
  }
}

void write_windowed_csv(std::ostream& os, const WindowedMeasure& m, const std::string& config_hash) {
  write_hash(os, config_hash);
  os << "dim=" << m.dim() << '\n';
  for (std::size_t j = 0; j < m.size(); ++j) {
    for (double x : m.point(j)) os << format_double(x) << ',';
    os << format_double(m.cweight(j).real()) << ',' << format_double(m.cweight(j).imag()) << '\n';
  }
}

WindowedMeasure read_windowed_csv(std::istream& is) {
  std::string rest, line;
  const std::size_t d = read_dim_header(is, rest);
  std::vector<double> coords;
  std::vector<std::complex<double>> cw;
  while (next_line(is, line)) {
    auto cells = split(line, ',');
    if (cells.size() != d + 2)
      throw FormatError("windowed row has " + std::to_string(cells.size()) + " columns, expected " +
                        std::to_string(d + 2));
    for (std::size_t a = 0; a < d; ++a) coords.push_back(parse_double(cells[a]));
    cw.emplace_back(parse_double(cells[d]), parse_double(cells[d + 1]));
  }
  try {
    return WindowedMeasure(d, std::move(coords), std::move(cw), "csv");
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid windowed measure file: ") + e.what());
  }
}

void write_frequency_csv(std::ostream& os, const FrequencySet& lam, const std::string& config_hash) {
  write_hash(os, config_hash);
  os << "dim=" << lam.dim() << ";generator=" << lam.generator().tag() << '\n';
  for (std::size_t i = 0; i < lam.size(); ++i) {
    for (std::size_t a = 0; a < lam.dim(); ++a) {
      if (a) os << ',';
      os << (lam.is_exact() ? lam.exact_freq(i)[a].to_string() : format_double(lam.freq(i)[a]));
    }
    os << '\n';
  }
}

FrequencySet read_frequency_csv(std::istream& is) {
  std::string rest, line;
  const std::size_t d = read_dim_header(is, rest);
  Generator gen;
  if (!rest.empty()) {
    if (!rest.starts_with("generator=")) throw FormatError("unknown header field '" + rest + "'");
    gen = Generator::parse(rest.substr(10));
  }
  std::vector<std::string> cells_all;
  bool exact = true;
  while (next_line(is, line)) {
    auto cells = split(line, ',');
    if (cells.size() != d)
      throw FormatError("frequency row has " + std::to_string(cells.size()) + " columns, expected " +
                        std::to_string(d));
    for (auto& c : cells) {
      // integers and p/q are exact; anything else is read as a double
      if (c.find_first_not_of("0123456789+-/") != std::string::npos) exact = false;
      cells_all.push_back(std::move(c));
    }
  }
  try {
    if (exact) {
      std::vector<Rational> er;
      er.reserve(cells_all.size());
      for (const auto& c : cells_all) er.push_back(Rational::parse(c));
      return FrequencySet(d, std::move(er), gen, gen.tag());
    }
    std::vector<double> dr;
    dr.reserve(cells_all.size());
    for (const auto& c : cells_all) dr.push_back(parse_double(c));
    return FrequencySet(d, std::move(dr), gen, gen.tag());
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid frequency file: ") + e.what());
  }
}

void write_profile_csv(std::ostream& os, const RadialProfile& p, const std::string& config_hash) {
  p.validate();
  write_hash(os, config_hash);
  const std::size_t count = p.kind == RadialProfile::Kind::wiener_average ? p.meta.n_samples : p.meta.n_dirs;
  os << "r,value,kind,seed,n_samples\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i)
    os << format_double(p.radii[i]) << ',' << format_double(p.values[i]) << ',' << to_string(p.kind) << ','
       << p.meta.seed << ',' << count << '\n';
}

RadialProfile read_profile_csv(std::istream& is) {
  std::string line;
  if (!next_line(is, line) || line != "r,value,kind,seed,n_samples")
    throw FormatError("profile CSV must start with the header r,value,kind,seed,n_samples");
  RadialProfile p;
  bool first = true;
  while (next_line(is, line)) {
    auto cells = split(line, ',');
    if (cells.size() != 5) throw FormatError("profile row needs 5 columns: '" + line + "'");
    p.radii.push_back(parse_double(cells[0]));
    p.values.push_back(parse_double(cells[1]));
    const auto kind = parse_profile_kind(cells[2]);
    const auto seed = static_cast<std::uint64_t>(std::stoull(cells[3]));
    const auto count = static_cast<std::size_t>(std::stoull(cells[4]));
    if (first) {
      p.kind = kind;
      p.meta.seed = seed;
      (kind == RadialProfile::Kind::wiener_average ? p.meta.n_samples : p.meta.n_dirs) = count;
      first = false;
    } else if (kind != p.kind || seed != p.meta.seed) {
      throw FormatError("profile rows disagree on kind or seed");
    }
  }
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(std::string("invalid profile: ") + e.what());
  }
  return p;
}

nlohmann::ordered_json to_json(const FrameBounds& fb) {
  nlohmann::ordered_json j;
  j["A"] = fb.lower_A;
  j["B"] = fb.upper_B;
  j["method"] = to_string(fb.method);
  j["n_points"] = fb.n_points;
  j["n_freqs"] = fb.n_freqs;
  j["residual"] = fb.residual;
  j["aliasing_warning"] = fb.aliasing_warning;
  if (fb.aliasing_warning) j["aliasing_detail"] = fb.aliasing_detail;
  j["rank_deficient"] = fb.rank_deficient;
  j["converged"] = fb.converged;
  j["iterations"] = fb.iterations;
  if (fb.section_dim) j["section_dim"] = fb.section_dim;
  return j;
}

nlohmann::ordered_json to_json(const GapWitness& w) {
  nlohmann::ordered_json j;
  j["R"] = w.R;
  j["gamma"] = w.gamma;
  j["T"] = w.T;
  j["t0"] = w.t0;
  j["defect"] = w.defect ? nlohmann::ordered_json(*w.defect) : nlohmann::ordered_json(nullptr);
  j["samples_used"] = w.samples_used;
  j["seed"] = w.seed;
  j["n_near"] = w.n_near;
  j["min_distance"] = std::isfinite(w.min_distance) ? nlohmann::ordered_json(w.min_distance)
                                                    : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const CountingProfile& p) {
  nlohmann::ordered_json j;
  j["radii"] = p.radii;
  j["counts"] = p.counts;
  j["centers_meta"] = {{"strategy", to_string(p.centers)}, {"n_centers", p.n_centers}};
  j["fitted_alpha"] = p.fitted_alpha;
  j["fit_intercept"] = p.fit_intercept;
  j["fit_residual"] = p.fit_residual;
  return j;
}

nlohmann::ordered_json to_json(const LogLogFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"n_used", f.n_used}};
}

}  // namespace framelab
