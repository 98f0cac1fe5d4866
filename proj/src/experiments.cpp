#include "framelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "framelab/construct.hpp"
#include "framelab/dimension.hpp"
#include "framelab/error.hpp"
#include "framelab/fourier.hpp"
#include "framelab/frames.hpp"
#include "framelab/hash.hpp"
#include "framelab/io.hpp"
#include "framelab/measure.hpp"
#include "framelab/random.hpp"

#ifndef FRAMELAB_VERSION
#define FRAMELAB_VERSION "0.0.0"
#endif

namespace framelab {

using ojson = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- defaults

ojson header(const std::string& id) {
  ojson c;
  c["schema_version"] = kConfigSchemaVersion;
  c["experiment"] = id;
  c["seed"] = 20240601u;
  return c;
}

ojson merged_defaults() {
  ojson c;
  c["q"] = 3u;
  c["U_core_M"] = 8u;
  c["V_core_M"] = 4u;
  c["U_pool_M"] = 130u;
  c["V_pool_M"] = 8u;
  c["segment_n"] = 512u;
  c["square_n"] = 64u;
  c["A_U"] = 1.0;
  c["B_U"] = 1.0;
  c["A_V"] = 1.0;
  c["B_V"] = 1.0;
  return c;
}

const std::map<std::string, std::function<ojson()>>& registry() {
  static const std::map<std::string, std::function<ojson()>> r = {
      {"exp-graph-frame",
       [] {
         ojson c = header("exp-graph-frame");
         c["delta"] = "1/2";
         c["M"] = 32u;
         c["n"] = 2048u;
         c["E_lower"] = -0.5;
         c["E_upper"] = 0.5;
         c["phi"] = "x^2";
         c["weight"] = "one";
         c["method"] = "dense_svd";
         c["section_M"] = 4u;
         c["convergence_n"] = {256u, 512u, 1024u, 2048u};
         return c;
       }},
      {"exp-merged-frame",
       [] {
         ojson c = header("exp-merged-frame");
         c.update(merged_defaults());
         c["method"] = "dense_svd";
         c["bessel_t_samples"] = 16u;
         return c;
       }},
      {"exp-product-frame",
       [] {
         ojson c = header("exp-product-frame");
         c.update(merged_defaults());
         c["U_core_M"] = 2u;
         c["V_core_M"] = 1u;
         c["U_pool_M"] = 16u;
         c["V_pool_M"] = 2u;
         c["segment_n"] = 64u;
         c["square_n"] = 16u;
         c["sigma_n"] = 16u;
         c["Gamma_M"] = 3u;
         return c;
       }},
      {"exp-exotic-onb",
       [] {
         ojson c = header("exp-exotic-onb");
         c["M"] = 16u;
         c["n"] = 1024u;
         c["radii_log2_min"] = 2u;
         c["radii_log2_max"] = 20u;
         c["radii_per_octave"] = 1u;
         c["centers"] = "freq_centers";
         return c;
       }},
      {"exp-beurling",
       [] {
         ojson c = header("exp-beurling");
         c["set"] = "lattice";
         c["delta"] = "1";
         c["k"] = 2u;
         c["d"] = 2u;
         c["M"] = 64u;
         c["radii"] = {2.0, 4.0, 8.0, 16.0, 32.0};
         c["centers"] = "freq_centers";
         return c;
       }},
      {"exp-wiener",
       [] {
         ojson c = header("exp-wiener");
         c["measure"] = "segment";
         c["measure_d"] = 2u;
         c["measure_n"] = 512u;
         c["alphas"] = {1.0, 0.5};
         c["radii"] = {4.0, 8.0, 16.0, 32.0, 64.0};
         c["n_samples"] = 4096u;
         return c;
       }},
      {"exp-decay",
       [] {
         ojson c = header("exp-decay");
         c["measure"] = "sphere";
         c["measure_d"] = 3u;
         c["measure_n"] = 20000u;
         c["window"] = "one";
         c["cap_radius"] = 0.5;
         c["radii"] = {4.0, 8.0, 16.0, 32.0, 64.0};
         c["n_dirs"] = 8u;
         c["window_factor"] = 1.25;
         return c;
       }},
      {"exp-gap-witness",
       [] {
         ojson c = header("exp-gap-witness");
         c["sphere_d"] = 3u;
         c["sphere_n"] = 1000000u;
         c["window"] = "cap";
         c["cap_radius"] = 0.5;
         c["line_L"] = 256u;
         c["gamma"] = 0.6;
         c["alpha"] = 1.0;
         c["beta"] = 2.0;
         c["R"] = {16.0, 32.0, 64.0, 128.0};
         c["n_witnesses"] = 8u;
         c["max_samples"] = 100000u;
         return c;
       }},
      {"exp-obstruction",
       [] {
         ojson c = header("exp-obstruction");
         c["triples"] = ojson::array({ojson::array({1.0, 2.0, 3.0}), ojson::array({2.0, 3.0, 4.0})});
         c["sweep_d_max"] = 10u;
         return c;
       }},
      {"exp-cantor-probe",
       [] {
         ojson c = header("exp-cantor-probe");
         c["ratio_mu"] = 0.25;
         c["ratio_nu"] = 1.0 / 3.0;
         c["depth"] = 8u;
         c["K"] = {4u, 8u, 16u, 32u};
         c["radii"] = {4.0, 8.0, 16.0, 32.0, 64.0};
         c["n_samples"] = 2048u;
         return c;
       }},
  };
  return r;
}

// ---------------------------------------------------------- config access

bool same_kind(const nlohmann::json& def, const nlohmann::json& val) {
  if (def.is_number_float()) return val.is_number();
  if (def.is_number_unsigned()) return val.is_number_unsigned();
  if (def.is_number_integer()) return val.is_number_integer();
  if (def.is_string()) return val.is_string();
  if (def.is_boolean()) return val.is_boolean();
  if (def.is_array()) {
    if (!val.is_array()) return false;
    if (def.empty()) return true;
    for (const auto& v : val)
      if (!same_kind(def.front(), v)) return false;
    return true;
  }
  return def.type() == val.type();
}

double num(const ojson& c, const char* key) { return c.at(key).get<double>(); }
std::size_t count(const ojson& c, const char* key) { return c.at(key).get<std::size_t>(); }
std::string str(const ojson& c, const char* key) { return c.at(key).get<std::string>(); }
std::uint64_t seed_of(const ojson& c) { return c.at("seed").get<std::uint64_t>(); }

std::vector<double> nums(const ojson& c, const char* key) {
  std::vector<double> v;
  for (const auto& x : c.at(key)) v.push_back(x.get<double>());
  return v;
}

[[noreturn]] void bad_value(const char* key, const std::string& why) {
  throw ConfigError(std::string("config key '") + key + "': " + why);
}

// ------------------------------------------------------------------ output

class Sink {
 public:
  Sink(std::filesystem::path dir, std::string hash) : dir_(std::move(dir)), hash_(std::move(hash)) {
    std::filesystem::create_directories(dir_);
  }

  void text(const std::string& name, const std::string& content) {
    std::ofstream os(dir_ / name, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + (dir_ / name).string());
    os << content;
    if (!os) throw Error("write failed for " + (dir_ / name).string());
    files_.emplace_back(name, sha256_hex(content));
  }

  template <class Writer>
  void csv(const std::string& name, Writer&& w) {
    std::ostringstream os;
    w(os, hash_);
    text(name, os.str());
  }

  const std::string& hash() const { return hash_; }
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::string hash_;
  std::vector<std::pair<std::string, std::string>> files_;
};

struct Outcome {
  ojson body;
  int status = 0;
};

// --------------------------------------------------------------- builders

QuadratureMeasure measure_from(const ojson& c) {
  const std::string kind = str(c, "measure");
  const std::size_t d = count(c, "measure_d");
  const std::size_t n = c.contains("measure_n") ? count(c, "measure_n") : 1;
  if (kind == "segment") return make_segment_measure(d, n);
  if (kind == "sphere") return make_sphere_measure(d, n, seed_of(c));
  if (kind == "atom") return make_atom(std::vector<double>(d, 0.0));
  bad_value("measure", "expected segment, sphere or atom, got '" + kind + "'");
}

Window window_from(const ojson& c, std::size_t d) {
  const std::string kind = str(c, "window");
  if (kind == "one") return [](std::span<const double>) { return std::complex<double>(1.0, 0.0); };
  if (kind == "cap") {
    std::vector<double> pole(d, 0.0);
    pole[d - 1] = 1.0;
    return cap_bump_window(pole, num(c, "cap_radius"));
  }
  bad_value("window", "expected one or cap, got '" + kind + "'");
}

FrameOptions options_from(const ojson& c) {
  FrameOptions o;
  try {
    o.method = parse_frame_method(str(c, "method"));
  } catch (const InvalidArgument& e) {
    bad_value("method", e.what());
  }
  return o;
}

struct MergedSetup {
  QuadratureMeasure mu;
  QuadratureMeasure nu;
  QuadratureMeasure rho;
  MergeResult merge;
  FrameBounds core_U;
  FrameBounds core_V;
};

MergedSetup build_merged(const ojson& c) {
  QuadratureMeasure mu = make_segment_measure(1, count(c, "segment_n"));
  QuadratureMeasure nu = make_cube_measure(2, 2, 0, count(c, "square_n"));
  const Rational one(1);
  MergeInput in{lattice_frame(one, 1, 1, count(c, "U_core_M")),
                num(c, "A_U"),
                num(c, "B_U"),
                lattice_frame(one, 2, 2, count(c, "V_core_M")),
                num(c, "A_V"),
                num(c, "B_V"),
                FrequencySet(2),
                FrequencySet(1),
                count(c, "q")};
  in.V_pool = set_difference(lattice_frame(one, 2, 2, count(c, "V_pool_M")), in.V_core);
  in.U_pool = set_difference(lattice_frame(one, 1, 1, count(c, "U_pool_M")), in.U_core);
  if (in.q == 0) in.q = min_merge_q(std::min(in.A_U, in.A_V), std::max(in.B_U, in.B_V));
  FrameBounds core_U = frame_bounds(mu, in.U_core);
  FrameBounds core_V = frame_bounds(nu, in.V_core);
  MergeResult merge = merge_frames(in);
  QuadratureMeasure rho = mix_sum(mu, nu);
  return {std::move(mu), std::move(nu), std::move(rho), std::move(merge), core_U, core_V};
}

// ------------------------------------------------------------ experiments

Outcome run_graph(const ojson& c, Sink& out) {
  Rational delta;
  try {
    delta = Rational::parse(str(c, "delta"));
  } catch (const Error& e) {
    bad_value("delta", e.what());
  }
  const double lo = num(c, "E_lower"), hi = num(c, "E_upper");
  const std::string phi_name = str(c, "phi"), w_name = str(c, "weight");
  GraphMap phi;
  if (phi_name == "x^2")
    phi = [](std::span<const double> x, std::span<double> y) { y[0] = x[0] * x[0]; };
  else if (phi_name == "zero")
    phi = [](std::span<const double>, std::span<double> y) { y[0] = 0.0; };
  else
    bad_value("phi", "expected x^2 or zero");
  GraphWeight w;
  if (w_name == "one")
    w = [](std::span<const double>) { return 1.0; };
  else if (w_name == "1+x^2")
    w = [](std::span<const double> x) { return 1.0 + x[0] * x[0]; };
  else
    bad_value("weight", "expected one or 1+x^2");

  const FrequencySet lam = lattice_frame(delta, 1, 2, count(c, "M"));
  const FrameOptions opts = options_from(c);
  auto bounds_at = [&](std::size_t n, const FrameOptions& o) {
    const double lower[] = {lo}, upper[] = {hi};
    const QuadratureMeasure m = make_graph_measure(1, 2, midpoint_grid(lower, upper, n), phi, w);
    return frame_bounds(m, lam, o);
  };

  Outcome r;
  const FrameBounds fb = bounds_at(count(c, "n"), opts);
  r.body["frame_bounds"] = to_json(fb);
  r.body["parseval_constant"] = 1.0 / delta.to_double();
  if (!fb.converged) r.status = 3;
  if (const std::size_t sm = count(c, "section_M"); sm > 0) {
    FrameOptions so;
    so.section = lattice_frame(Rational(1), 1, 2, sm);
    r.body["section"] = to_json(bounds_at(count(c, "n"), so));
    r.body["section"]["test_frequencies"] = so.section->generator().tag();
  }
  std::ostringstream conv;
  conv << "# config_hash=" << out.hash() << "\nn_points,A,B,rank_deficient\n";
  for (const auto& n : c.at("convergence_n")) {
    const FrameBounds b = bounds_at(n.get<std::size_t>(), FrameOptions{});
    conv << n.get<std::size_t>() << ',' << format_double(b.lower_A) << ',' << format_double(b.upper_B) << ','
         << (b.rank_deficient ? 1 : 0) << '\n';
  }
  out.text("convergence.csv", conv.str());
  out.csv("frequencies.csv", [&](std::ostream& os, const std::string& h) { write_frequency_csv(os, lam, h); });
  return r;
}

Outcome run_merged(const ojson& c, Sink& out) {
  const MergedSetup s = build_merged(c);
  const FrameBounds fb = frame_bounds(s.rho, s.merge.lambda, options_from(c));
  Outcome r;
  r.body["q"] = s.merge.plan.q;
  r.body["plan_id"] = s.merge.plan.plan_id();
  r.body["n_lambda_mu"] = s.merge.n_mu;
  r.body["n_lambda_nu"] = s.merge.lambda.size() - s.merge.n_mu;
  r.body["core_bounds"] = {{"U_on_mu", to_json(s.core_U)}, {"V_on_nu", to_json(s.core_V)}};
  r.body["frame_bounds"] = to_json(fb);
  r.body["proof_lower_bound"] = s.merge.lower_bound;
  r.body["proof_upper_bound"] = s.merge.upper_bound;

  const std::size_t n_t = count(c, "bessel_t_samples");
  if (n_t > 0) {
    Rng rng(seed_of(c));
    std::vector<double> ts(3 * n_t);
    for (double& t : ts) t = rng.uniform();
    const BesselSup sup = bessel_sup_check(s.rho, s.merge.lambda, ts);
    r.body["bessel_sup"] = {{"sup_value", sup.sup_value},
                            {"argmax_t", sup.argmax_t},
                            {"B_times_mass", fb.upper_B * s.rho.total_mass()},
                            {"n_t", n_t}};
  }
  if (!fb.converged) r.status = 3;
  out.csv("frequencies.csv", [&](std::ostream& os, const std::string& h) { write_frequency_csv(os, s.merge.lambda, h); });
  return r;
}

Outcome run_product(const ojson& c, Sink& out) {
  const MergedSetup s = build_merged(c);
  const QuadratureMeasure sigma = make_segment_measure(1, count(c, "sigma_n"));
  const FrequencySet gam = lattice_frame(Rational(1), 1, 1, count(c, "Gamma_M"));
  const QuadratureMeasure prod = product_measure(s.rho, sigma);
  const FrequencySet lam = product_frame(s.merge.lambda, gam);
  const FrameBounds f1 = frame_bounds(s.rho, s.merge.lambda);
  const FrameBounds f2 = frame_bounds(sigma, gam);
  const FrameBounds fp = frame_bounds(prod, lam);
  Outcome r;
  r.body["factor_rho"] = to_json(f1);
  r.body["factor_sigma"] = to_json(f2);
  r.body["product"] = to_json(fp);
  r.body["A_rho_times_A_sigma"] = f1.lower_A * f2.lower_A;
  r.body["B_rho_times_B_sigma"] = f1.upper_B * f2.upper_B;
  out.csv("frequencies.csv", [&](std::ostream& os, const std::string& h) { write_frequency_csv(os, lam, h); });
  return r;
}

std::vector<double> octave_radii(const ojson& c) {
  const std::size_t lo = count(c, "radii_log2_min"), hi = count(c, "radii_log2_max"),
                    per = count(c, "radii_per_octave");
  if (hi <= lo || per == 0) throw ConfigError("radii_log2_min < radii_log2_max and radii_per_octave >= 1 required");
  std::vector<double> radii;
  for (std::size_t i = lo * per; i <= hi * per; ++i)
    radii.push_back(std::exp2(static_cast<double>(i) / static_cast<double>(per)));
  return radii;
}

CenterStrategy centers_from(const ojson& c) {
  try {
    return parse_center_strategy(str(c, "centers"));
  } catch (const InvalidArgument& e) {
    bad_value("centers", e.what());
  }
}

Outcome run_exotic(const ojson& c, Sink& out) {
  const FrequencySet lam = exotic_onb(count(c, "M"));
  const QuadratureMeasure m = make_segment_measure(2, count(c, "n"));
  const FrameBounds fb = frame_bounds(m, lam);
  const CountingProfile cp = counting_profile(lam, octave_radii(c), centers_from(c));
  Outcome r;
  r.body["frame_bounds"] = to_json(fb);
  r.body["counting"] = to_json(cp);
  out.csv("frequencies.csv", [&](std::ostream& os, const std::string& h) { write_frequency_csv(os, lam, h); });
  return r;
}

Outcome run_beurling(const ojson& c, Sink& out) {
  const std::string set = str(c, "set");
  std::optional<FrequencySet> lam;
  if (set == "lattice")
    lam = lattice_frame(Rational::parse(str(c, "delta")), count(c, "k"), count(c, "d"), count(c, "M"));
  else if (set == "exotic")
    lam = exotic_onb(count(c, "M"));
  else
    bad_value("set", "expected lattice or exotic");
  const CountingProfile cp = counting_profile(*lam, nums(c, "radii"), centers_from(c));
  Outcome r;
  r.body["generator"] = lam->generator().tag();
  r.body["n_freqs"] = lam->size();
  r.body["counting"] = to_json(cp);
  std::ostringstream os;
  os << "# config_hash=" << out.hash() << "\nr,count\n";
  for (std::size_t i = 0; i < cp.radii.size(); ++i) os << format_double(cp.radii[i]) << ',' << cp.counts[i] << '\n';
  out.text("counting.csv", os.str());
  return r;
}

Outcome run_wiener(const ojson& c, Sink& out) {
  const QuadratureMeasure m = measure_from(c);
  const auto radii = nums(c, "radii");
  Outcome r;
  r.body["measure"] = m.label();
  r.body["tests"] = ojson::array();
  std::size_t idx = 0;
  for (double alpha : nums(c, "alphas")) {
    const WienerTest t = wiener_alpha_test(m, alpha, radii, count(c, "n_samples"), seed_of(c));
    const std::string file = "wiener_" + std::to_string(idx++) + ".csv";
    r.body["tests"].push_back({{"alpha", alpha},
                               {"verdict", to_string(t.verdict)},
                               {"first_third_mean", t.first_third_mean},
                               {"last_third_mean", t.last_third_mean},
                               {"values", t.profile.values},
                               {"profile_file", file}});
    out.csv(file, [&](std::ostream& os, const std::string& h) { write_profile_csv(os, t.profile, h); });
  }
  r.body["rng_algorithm"] = std::string(Rng::kAlgorithm);
  return r;
}

Outcome run_decay(const ojson& c, Sink& out) {
  const QuadratureMeasure m = measure_from(c);
  const WindowedMeasure nu = window_measure(m, window_from(c, m.dim()));
  const BetaFit fit = decay_beta_fit(nu, nums(c, "radii"), count(c, "n_dirs"), seed_of(c), num(c, "window_factor"));
  Outcome r;
  r.body["measure"] = m.label();
  r.body["window"] = str(c, "window");
  r.body["beta_hat"] = fit.beta_hat;
  r.body["C_hat"] = fit.C_hat;
  r.body["fit_residual"] = fit.residual;
  r.body["envelope"] = fit.profile.values;
  r.body["rng_algorithm"] = std::string(Rng::kAlgorithm);
  out.csv("envelope.csv", [&](std::ostream& os, const std::string& h) { write_profile_csv(os, fit.profile, h); });
  return r;
}

Outcome run_gap(const ojson& c, Sink& out) {
  const std::size_t d = count(c, "sphere_d");
  const QuadratureMeasure sphere = make_sphere_measure(d, count(c, "sphere_n"), seed_of(c));
  const WindowedMeasure nu = drop_null_points(window_measure(sphere, window_from(c, d)));
  // sparse set on the last coordinate axis: counting exponent 1
  const auto L = static_cast<std::int64_t>(count(c, "line_L"));
  std::vector<Rational> pts;
  for (std::int64_t n = -L; n <= L; ++n) {
    for (std::size_t a = 0; a + 1 < d; ++a) pts.emplace_back(0);
    pts.emplace_back(n);
  }
  const FrequencySet lam(d, std::move(pts), Generator{}, "line(L=" + std::to_string(L) + ")");

  const double gamma = num(c, "gamma");
  const GammaWindow gw = admissible_gamma_window(num(c, "alpha"), num(c, "beta"), static_cast<double>(d));
  Outcome r;
  r.body["gamma_window"] = {{"lo", gw.lo}, {"hi", gw.hi}, {"contains_gamma", gw.contains(gamma)}};
  r.body["radii"] = ojson::array();
  std::ostringstream table;
  table << "# config_hash=" << out.hash() << "\nR,T,worst_defect,mean_defect,n_witnesses\n";
  const std::size_t n_w = count(c, "n_witnesses");
  std::vector<double> worst;
  for (double R : nums(c, "R")) {
    ojson entry;
    entry["R"] = R;
    entry["witnesses"] = ojson::array();
    double hi = 0.0, sum = 0.0;
    std::size_t found = 0;
    for (std::size_t i = 0; i < n_w; ++i) {
      const GapSearch gs = find_gap_point(lam, R, gamma, count(c, "max_samples"), seed_of(c) + i);
      if (!gs.witness) {
        entry["witnesses"].push_back({{"found", false}, {"covered_fraction", gs.covered_fraction}});
        r.status = 3;
        continue;
      }
      const GapWitness w = frame_defect_witness(nu, lam, *gs.witness);
      ojson wj = to_json(w);
      wj["verified"] = verify_separation(lam, w.R, w.T, w.t0);
      wj["covered_fraction"] = gs.covered_fraction;
      entry["witnesses"].push_back(wj);
      hi = std::max(hi, *w.defect);
      sum += *w.defect;
      ++found;
    }
    entry["worst_defect"] = hi;
    worst.push_back(hi);
    r.body["radii"].push_back(entry);
    table << format_double(R) << ',' << format_double(std::pow(R, gamma)) << ',' << format_double(hi) << ','
          << format_double(found ? sum / static_cast<double>(found) : 0.0) << ',' << found << '\n';
  }
  bool monotone = true;
  for (std::size_t i = 1; i < worst.size(); ++i) monotone = monotone && worst[i] <= worst[i - 1];
  r.body["worst_defect_nonincreasing"] = monotone;
  out.text("defects.csv", table.str());
  return r;
}

Outcome run_obstruction(const ojson& c, Sink&) {
  Outcome r;
  auto entry = [](double a, double b, double d) {
    const Obstruction o = obstruction_check(a, b, d);
    const GammaWindow g = admissible_gamma_window(a, b, d);
    return ojson{{"alpha", a},        {"beta", b},
                 {"d", d},            {"blocked", o.blocked},
                 {"landau_floor", o.landau_floor}, {"gamma_window", {g.lo, g.hi}}};
  };
  r.body["triples"] = ojson::array();
  for (const auto& t : c.at("triples")) {
    if (t.size() != 3) bad_value("triples", "each entry must be [alpha, beta, d]");
    r.body["triples"].push_back(entry(t[0].get<double>(), t[1].get<double>(), t[2].get<double>()));
  }
  r.body["sweep"] = ojson::array();
  for (std::size_t d = 2; d <= count(c, "sweep_d_max"); ++d)
    for (std::size_t k = 1; k <= (d - 1) / 2; ++k)
      r.body["sweep"].push_back(entry(static_cast<double>(k), static_cast<double>(d - 1), static_cast<double>(d)));
  return r;
}

Outcome run_cantor(const ojson& c, Sink& out) {
  const auto depth = static_cast<unsigned>(count(c, "depth"));
  const QuadratureMeasure mu = make_cantor_measure(num(c, "ratio_mu"), depth);
  const QuadratureMeasure nu = make_cantor_measure(num(c, "ratio_nu"), depth);
  const QuadratureMeasure sum = superpose(mu, nu);
  Outcome r;
  r.body["exploratory"] = true;
  r.body["note"] = "Finite-depth probe of a sum of two self-similar measures; no claim is made.";
  r.body["candidates"] = ojson::array();
  for (const auto& k : c.at("K")) {
    const std::size_t K = k.get<std::size_t>();
    std::vector<double> f(K);
    for (std::size_t i = 0; i < K; ++i) f[i] = static_cast<double>(i);
    const FrequencySet lam(1, f, Generator{}, "0..K-1");
    r.body["candidates"].push_back({{"K", K},
                                    {"on_mu", to_json(frame_bounds(mu, lam))},
                                    {"on_nu", to_json(frame_bounds(nu, lam))},
                                    {"on_sum", to_json(frame_bounds(sum, lam))}});
  }
  const auto radii = nums(c, "radii");
  const double a_mu = std::log(2.0) / -std::log(num(c, "ratio_mu"));
  const double a_nu = std::log(2.0) / -std::log(num(c, "ratio_nu"));
  const WienerTest w_mu = wiener_alpha_test(mu, a_mu, radii, count(c, "n_samples"), seed_of(c));
  const WienerTest w_nu = wiener_alpha_test(nu, a_nu, radii, count(c, "n_samples"), seed_of(c));
  r.body["wiener"] = {{"mu", {{"alpha", a_mu}, {"verdict", to_string(w_mu.verdict)}, {"values", w_mu.profile.values}}},
                      {"nu", {{"alpha", a_nu}, {"verdict", to_string(w_nu.verdict)}, {"values", w_nu.profile.values}}}};
  out.csv("wiener_mu.csv", [&](std::ostream& os, const std::string& h) { write_profile_csv(os, w_mu.profile, h); });
  out.csv("wiener_nu.csv", [&](std::ostream& os, const std::string& h) { write_profile_csv(os, w_nu.profile, h); });
  return r;
}

using Runner = Outcome (*)(const ojson&, Sink&);

Runner runner_for(const std::string& id) {
  static const std::map<std::string, Runner> r = {
      {"exp-graph-frame", run_graph},     {"exp-merged-frame", run_merged}, {"exp-product-frame", run_product},
      {"exp-exotic-onb", run_exotic},     {"exp-beurling", run_beurling},   {"exp-wiener", run_wiener},
      {"exp-decay", run_decay},           {"exp-gap-witness", run_gap},     {"exp-obstruction", run_obstruction},
      {"exp-cantor-probe", run_cantor},
  };
  auto it = r.find(id);
  if (it == r.end()) throw ConfigError("unknown experiment '" + id + "'");
  return it->second;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string library_version() { return FRAMELAB_VERSION; }

std::vector<std::string> experiment_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : registry()) ids.push_back(id);
  return ids;
}

ojson default_config(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw ConfigError("unknown experiment '" + id + "'");
  return it->second();
}

ojson resolve_config(const std::string& id, const nlohmann::json& user, std::optional<std::uint64_t> seed) {
  ojson cfg = default_config(id);
  if (!user.is_object()) throw ConfigError("config must be a JSON object");
  std::vector<std::string> unknown, mistyped;
  for (auto it = user.begin(); it != user.end(); ++it) {
    if (!cfg.contains(it.key())) {
      unknown.push_back(it.key());
      continue;
    }
    if (!same_kind(cfg[it.key()], it.value())) {
      mistyped.push_back(it.key());
      continue;
    }
    cfg[it.key()] = it.value();
  }
  std::string msg;
  auto list = [](const std::vector<std::string>& keys) {
    std::string s;
    for (const auto& k : keys) s += (s.empty() ? "" : ", ") + k;
    return s;
  };
  if (!unknown.empty()) msg += "unknown keys: " + list(unknown);
  if (!mistyped.empty()) msg += std::string(msg.empty() ? "" : "; ") + "wrong value type for keys: " + list(mistyped);
  if (!msg.empty()) throw ConfigError(id + " config: " + msg);
  if (cfg["schema_version"].get<int>() != kConfigSchemaVersion)
    throw ConfigError("unsupported schema_version " + cfg["schema_version"].dump() + " (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
  if (cfg["experiment"].get<std::string>() != id)
    throw ConfigError("config is for experiment '" + cfg["experiment"].get<std::string>() + "', not '" + id + "'");
  if (seed) cfg["seed"] = *seed;
  return cfg;
}

std::string config_hash(const ojson& resolved) { return sha256_hex(resolved.dump()); }

RunResult run_experiment(const std::string& id, const ojson& resolved, const std::filesystem::path& out_dir) {
  const Runner runner = runner_for(id);
  RunResult res;
  res.config_hash = config_hash(resolved);
  Sink sink(out_dir, res.config_hash);

  Outcome outcome;
  try {
    outcome = runner(resolved, sink);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config value error: ") + e.what());
  }

  ojson result;
  result["experiment"] = id;
  result["config_hash"] = res.config_hash;
  result["library_version"] = library_version();
  if (id == "exp-cantor-probe") result["label"] = "exploratory";
  for (auto& [k, v] : outcome.body.items()) result[k] = v;
  sink.text("result.json", dump(result));

  ojson manifest;
  manifest["experiment"] = id;
  manifest["config_hash"] = res.config_hash;
  manifest["library_version"] = library_version();
  manifest["schema_version"] = kConfigSchemaVersion;
  manifest["rng_algorithm"] = std::string(Rng::kAlgorithm);
  manifest["config"] = resolved;
  manifest["files"] = ojson::array();
  for (const auto& [name, digest] : sink.files()) {
    manifest["files"].push_back({{"name", name}, {"sha256", digest}});
    res.files.push_back(name);
  }
  std::ofstream(out_dir / "manifest.json", std::ios::binary | std::ios::trunc) << dump(manifest);
  res.files.push_back("manifest.json");
  res.status = outcome.status;
  res.summary = std::move(result);
  return res;
}

}  // namespace framelab
