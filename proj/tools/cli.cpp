#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "prodspec/error.hpp"
#include "prodspec/intervals.hpp"
#include "prodspec/io.hpp"
#include "prodspec/parallel.hpp"
#include "prodspec/prodsys.hpp"
#include "prodspec/qpcocycle.hpp"
#include "prodspec/randspec.hpp"
#include "prodspec/symdyn.hpp"
#include "prodspec/tracemap.hpp"

namespace prodspec::cli {

namespace {

enum class Kind { num, integer, num_list, int_list, str };

struct Param {
  std::string name;
  Kind kind;
  bool required;
  Json fallback;  // null: no default, the key is left out when absent
  std::string help;
};

struct Context {
  Json cfg;  // fully resolved, echoed into every artifact
  std::string format;
  Exec exec = Exec::parallel;
};

using Handler = std::function<std::string(const Context&)>;

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  bool stochastic;
  Handler run;
};

// --- parameter access -----------------------------------------------------

double num(const Json& cfg, const std::string& k) { return cfg.at(k).get<double>(); }
std::int64_t integer(const Json& cfg, const std::string& k) { return cfg.at(k).get<std::int64_t>(); }
std::vector<double> num_list(const Json& cfg, const std::string& k) { return cfg.at(k).get<std::vector<double>>(); }
std::vector<int> int_list(const Json& cfg, const std::string& k) { return cfg.at(k).get<std::vector<int>>(); }
std::string str(const Json& cfg, const std::string& k) { return cfg.at(k).get<std::string>(); }
bool has(const Json& cfg, const std::string& k) { return cfg.contains(k) && !cfg.at(k).is_null(); }

double parse_double(const std::string& name, const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError("--" + name + ": '" + s + "' is not a number");
  return x;
}

std::int64_t parse_int(const std::string& name, const std::string& s) {
  std::size_t used = 0;
  std::int64_t x = 0;
  try {
    x = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ValidationError("--" + name + ": '" + s + "' is not an integer");
  return x;
}

Json convert_tokens(const Param& p, const std::vector<std::string>& tok) {
  const bool scalar = p.kind == Kind::num || p.kind == Kind::integer || p.kind == Kind::str;
  if (scalar && tok.size() != 1) throw ValidationError("--" + p.name + " takes exactly one value");
  switch (p.kind) {
    case Kind::num: return parse_double(p.name, tok[0]);
    case Kind::integer: return parse_int(p.name, tok[0]);
    case Kind::str: return tok[0];
    case Kind::num_list: {
      Json a = Json::array();
      for (const auto& t : tok) a.push_back(parse_double(p.name, t));
      return a;
    }
    case Kind::int_list: {
      Json a = Json::array();
      for (const auto& t : tok) a.push_back(parse_int(p.name, t));
      return a;
    }
  }
  return nullptr;
}

void check_file_value(const Param& p, const Json& v) {
  auto fail = [&](const char* what) {
    throw ValidationError("config key '" + p.name + "' must be " + what);
  };
  switch (p.kind) {
    case Kind::num:
      if (!v.is_number()) fail("a number");
      break;
    case Kind::integer:
      if (!v.is_number_integer()) fail("an integer");
      break;
    case Kind::str:
      if (!v.is_string()) fail("a string");
      break;
    case Kind::num_list:
      if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); }))
        fail("an array of numbers");
      break;
    case Kind::int_list:
      if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number_integer(); }))
        fail("an array of integers");
      break;
  }
}

std::string render(const Json& doc) { return dump_json(doc) + "\n"; }

std::vector<double> linspace(double lo, double hi, std::int64_t n) {
  require(n >= 2, "grid needs at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

// --- models shared by the qp subcommands ----------------------------------

TrigPolyTuple qp_model(const Json& cfg) {
  if (has(cfg, "model")) {
    if (has(cfg, "lambda") || has(cfg, "background"))
      throw ValidationError("give either --model or --lambda with --background, not both");
    return trig_tuple_from_json(read_json_file(str(cfg, "model")));
  }
  if (!has(cfg, "lambda") || !has(cfg, "background"))
    throw ValidationError("missing model: give --model FILE or --lambda and --background");
  const auto bg = num_list(cfg, "background");
  return amo_with_background(num(cfg, "lambda"), bg);
}

ContinuedFraction qp_frequency(const Json& cfg) {
  const auto period = int_list(cfg, "cf-period");
  for (int a : period) require(a >= 1, "--cf-period entries must be >= 1");
  return ContinuedFraction::periodic(period, static_cast<int>(integer(cfg, "cf-depth")));
}

Json model_json(const TrigPolyTuple& f) {
  Json comps = Json::array();
  for (const TrigPoly& t : f.components) {
    Json modes = Json::array();
    for (int m = 0; m <= t.degree(); ++m) {
      const cplx c = t.coefficient(m);
      if (std::abs(c) == 0.0) continue;
      modes.push_back(Json{{"m", m}, {"re", c.real()}, {"im", c.imag()}});
    }
    comps.push_back(modes);
  }
  return Json{{"p", f.p()}, {"lambda", f.lambda}, {"components", comps}};
}

Substitution substitution_preset(const std::string& name) {
  if (name == "fibonacci") return Substitution::fibonacci();
  if (name == "period-doubling") return Substitution::period_doubling();
  if (name == "thue-morse") return Substitution::thue_morse();
  throw ValidationError("unknown preset '" + name + "' (expected fibonacci, period-doubling or thue-morse)");
}

Word fixed_point_prefix(const Substitution& sub, std::size_t length) {
  require(length >= 1 && length <= kMaxWordLength, "--length must be in [1, 2^22]");
  Word w{0};
  while (w.size() < length) {
    Word next = sub.apply(w, 1);
    require(next.size() > w.size(), "substitution does not grow from the first letter");
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

// --- subcommands ----------------------------------------------------------

std::string cmd_periodic_spectrum(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  const auto values = num_list(cfg, "values");
  const auto period = integer(cfg, "period");
  require(period >= 1, "--period must be >= 1");
  if (static_cast<std::int64_t>(values.size()) != period)
    throw ValidationError("--values has " + std::to_string(values.size()) + " entries but --period is " +
                          std::to_string(period));
  const auto bg = has(cfg, "background") ? num_list(cfg, "background") : std::vector<double>{};
  const std::size_t q = bg.empty() ? values.size() : std::lcm(values.size(), bg.size());
  std::vector<double> V(q);
  for (std::size_t n = 0; n < q; ++n) V[n] = values[n % values.size()] + (bg.empty() ? 0.0 : bg[n % bg.size()]);
  const BandSpectrum bs = periodic_bands(V, num(cfg, "tol"), ctx.exec);

  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"lo", "hi"});
    for (const Interval& b : bs.bands.intervals()) {
      csv.cell(b.lo).cell(b.hi);
      csv.end_row();
    }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["potential"] = V;
  doc["bands"] = to_json(bs.bands);
  doc["touching_points"] = bs.touching_points;
  doc["measure"] = bs.bands.measure();
  return render(doc);
}

std::string cmd_random_union(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  const auto letters = num_list(cfg, "letters");
  const auto bg = num_list(cfg, "background");
  require(!letters.empty() && !bg.empty(), "--letters and --background must be nonempty");
  const int p = static_cast<int>(bg.size());
  std::vector<double> probs = has(cfg, "probs") ? num_list(cfg, "probs")
                                                 : std::vector<double>(letters.size(), 1.0 / letters.size());
  std::vector<std::vector<double>> g;
  for (double a : letters) {
    std::vector<double> row;
    for (double c : bg) row.push_back(a + c);
    g.push_back(row);
  }
  const double tol = num(cfg, "tol");

  IntervalUnion bands;
  std::string bands_kind;
  if (p == 2) {
    Period2Model m;
    for (const auto& row : g) m.g.push_back({row[0], row[1]});
    bands = period2_spectrum(m, tol);
    bands_kind = "period-2 union (exact)";
  } else {
    std::int64_t maxq = integer(cfg, "max-period");
    if (maxq <= 0) maxq = std::max(1, 12 / p);
    bands = periodic_inner_approx(g, p, static_cast<int>(maxq), tol, ctx.exec).spectrum;
    bands_kind = "periodic inner approximation, q <= " + std::to_string(maxq);
  }
  const Interval hull = bands.hull();
  const auto treq = integer(cfg, "grid-points");
  const std::vector<double> grid = linspace(hull.lo, hull.hi, treq);

  Json certs = Json::array();
  if (p == 2) {
    Period2Model m;
    for (const auto& row : g) m.g.push_back({row[0], row[1]});
    const auto cc = map_index<ConeCertificate>(ctx.exec, grid.size(), [&](std::size_t i) { return cone_certificate(m, grid[i]); });
    for (const auto& c : cc) certs.push_back(Json{{"E", c.E}, {"verdict", c.verdict}, {"marginal", c.marginal}});
  }

  const auto ne = integer(cfg, "energies");
  require(ne >= 1, "--energies must be >= 1");
  std::vector<double> energies;
  for (std::int64_t i = 0; i < ne; ++i)
    energies.push_back(hull.lo + (hull.hi - hull.lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(ne));
  const auto samples = lyapunov_positivity_scan(probs, g, p, energies, static_cast<std::size_t>(integer(cfg, "orbit-length")),
                                                cfg.at("seed").get<std::uint64_t>(), ctx.exec);

  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"E", "L", "L_hat", "seed"});
    for (const auto& s : samples) {
      csv.cell(s.E).cell(s.L).cell(s.L_hat).cell(std::to_string(s.seed));
      csv.end_row();
    }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["model"] = Json{{"letters", letters}, {"background", bg}, {"probs", probs}, {"p", p}, {"bands_kind", bands_kind}};
  doc["grid"] = Json{{"lo", hull.lo}, {"hi", hull.hi}, {"points", treq}};
  doc["bands"] = to_json(bands);
  doc["certificates"] = certs;
  Json lyap = Json::array();
  for (const auto& s : samples) lyap.push_back(Json{{"E", s.E}, {"L", s.L}, {"L_hat", s.L_hat}, {"seed", s.seed}});
  doc["lyapunov"] = lyap;
  return render(doc);
}

std::string cmd_counterexample(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  CounterexampleModel model;
  model.letters = num_list(cfg, "letters");
  const auto bg = num_list(cfg, "background");
  require(bg.size() == 3, "--background needs exactly 3 values");
  std::copy(bg.begin(), bg.end(), model.background.begin());
  const auto t = num_list(cfg, "target");
  require(t.size() == 2 && t[0] <= t[1], "--target needs lo,hi with lo <= hi");
  model.target = {t[0], t[1]};
  model.slack = num(cfg, "slack");
  model.tol = num(cfg, "tol");
  const CounterexampleReport rep = counterexample_check(model);

  static const char* kLabels[] = {"aaa", "aab", "aba", "abb", "baa", "bab", "bba", "bbb"};
  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"word", "lo", "hi"});
    for (const Interval& b : rep.sigma6.intervals()) {
      csv.cell(std::string("aaabbb")).cell(b.lo).cell(b.hi);
      csv.end_row();
    }
    for (std::size_t i = 0; i < rep.sigma3.size(); ++i)
      for (const Interval& b : rep.sigma3[i].intervals()) {
        csv.cell(std::string(kLabels[i])).cell(b.lo).cell(b.hi);
        csv.end_row();
      }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["contained"] = rep.contained;
  doc["disjoint"] = rep.disjoint;
  doc["gap_found"] = rep.gap_found;
  doc["period6"] = Json{{"values", rep.period6_values}, {"bands", to_json(rep.sigma6)}};
  Json p3 = Json::array();
  for (std::size_t i = 0; i < rep.sigma3.size(); ++i)
    p3.push_back(Json{{"word", kLabels[i]},
                      {"values", rep.period3_values[i]},
                      {"bands", to_json(rep.sigma3[i])},
                      {"meets_target", rep.sigma3[i].intersects(model.target)}});
  doc["period3"] = p3;
  doc["period3_union"] = to_json(rep.period3_union);
  doc["uncovered"] = to_json(rep.uncovered);
  return render(doc);
}

std::string cmd_toeplitz_trace(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  std::optional<CodingSequence> coding;
  if (has(cfg, "coding")) {
    if (has(cfg, "ns")) throw ValidationError("give either --coding FILE or --ns with --depth, not both");
    coding = coding_from_json(read_json_file(str(cfg, "coding")));
  } else {
    if (!has(cfg, "ns") || !has(cfg, "depth")) throw ValidationError("missing coding: give --coding FILE or --ns and --depth");
    const auto ns = int_list(cfg, "ns");
    coding = CodingSequence::alternating_binary(ns, static_cast<int>(integer(cfg, "depth")));
  }
  const auto letters = num_list(cfg, "letters");
  const auto bg = num_list(cfg, "background");
  const DecoratedSampling dec = DecoratedSampling::separable(letters, bg);
  const auto grid = linspace(num(cfg, "emin"), num(cfg, "emax"), integer(cfg, "points"));
  const int k_min = static_cast<int>(integer(cfg, "k-min"));
  const int k_max = static_cast<int>(integer(cfg, "k-max"));
  const TraceMask mask = toeplitz_spectrum_mask(*coding, dec, grid, k_min, k_max, ctx.exec);
  const auto orbits = map_index<TraceOrbit>(ctx.exec, grid.size(),
                                            [&](std::size_t i) { return trace_orbit(*coding, dec, grid[i], k_max); });

  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"E", "k", "x_k", "y_k", "masked"});
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (const TracePair& tp : orbits[i].pairs) {
        csv.cell(grid[i]).cell(static_cast<std::int64_t>(tp.k));
        if (tp.saturated)
          csv.cell(std::string("inf")).cell(std::string("inf"));
        else
          csv.cell(tp.x).cell(tp.y);
        csv.cell(static_cast<std::int64_t>(mask.masked[i] ? 1 : 0));
        csv.end_row();
      }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["k0"] = orbits.empty() ? 0 : orbits.front().k0;
  doc["mask_measure"] = mask.measure();
  doc["masked_count"] = mask.count();
  Json rows = Json::array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Json levels = Json::array();
    for (const TracePair& tp : orbits[i].pairs) {
      if (tp.saturated)
        levels.push_back(Json{{"k", tp.k}, {"saturated", true}});
      else
        levels.push_back(Json{{"k", tp.k}, {"x", tp.x}, {"y", tp.y}});
    }
    rows.push_back(Json{{"E", grid[i]}, {"masked", static_cast<bool>(mask.masked[i])}, {"escape_level", orbits[i].escape_level},
                        {"levels", levels}});
  }
  doc["energies"] = rows;
  return render(doc);
}

ClassifyConfig classify_config(const Json& cfg) {
  ClassifyConfig c;
  c.N = static_cast<std::size_t>(integer(cfg, "N"));
  c.burn_in = static_cast<std::size_t>(integer(cfg, "burn-in"));
  c.x0 = num(cfg, "x0");
  c.margin = num(cfg, "margin");
  c.L_tol = num(cfg, "L-tol");
  c.eps_probe = num(cfg, "eps-probe");
  c.probe_points = static_cast<int>(integer(cfg, "probe-points"));
  c.max_q = integer(cfg, "max-q");
  c.phases = static_cast<int>(integer(cfg, "phases"));
  return c;
}

std::string cmd_qp_lyapunov(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  const TrigPolyTuple f = qp_model(cfg);
  const ContinuedFraction cf = qp_frequency(cfg);
  const auto energies = num_list(cfg, "energies");
  const auto eps = num_list(cfg, "eps");
  const ClassifyConfig ccfg = classify_config(cfg);
  require(!energies.empty(), "--energies must be nonempty");

  std::vector<LyapunovProfile> profiles;
  std::vector<HermanRadius> herman;
  for (double E : energies) {
    const PStepCocycle c(f, cf, E);
    LyapunovProfile prof = acceleration_profile(c, eps, ccfg.N, ccfg.burn_in, ccfg.x0, ctx.exec);
    prof.classification = classify(c, cf, ccfg, ctx.exec).verdict;
    profiles.push_back(std::move(prof));
    herman.push_back(herman_radius(f, E, 1e-10));
  }
  const double alpha = PStepCocycle(f, cf, 0.0).alpha;

  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"E", "eps", "L", "acceleration", "verdict"});
    for (const auto& prof : profiles)
      for (std::size_t i = 0; i < prof.epsilons.size(); ++i) {
        csv.cell(prof.E).cell(prof.epsilons[i]).cell(prof.L_values[i]);
        if (i < prof.accelerations_per_site.size())
          csv.cell(prof.accelerations_per_site[i]);
        else
          csv.cell(std::string(""));
        csv.cell(to_string(prof.classification));
        csv.end_row();
      }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["model"] = model_json(f);
  doc["alpha"] = alpha;
  Json arr = Json::array();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& prof = profiles[i];
    std::vector<double> per_site;
    for (double L : prof.L_values) per_site.push_back(L / prof.p);
    arr.push_back(Json{{"E", prof.E},
                       {"p", prof.p},
                       {"epsilons", prof.epsilons},
                       {"L_pstep", prof.L_values},
                       {"L_per_site", per_site},
                       {"acceleration", prof.accelerations},
                       {"acceleration_per_site", prof.accelerations_per_site},
                       {"integer_distance", prof.integer_distance},
                       {"convexity_violations", prof.convexity_violations},
                       {"herman_radius", herman[i].value},
                       {"herman_degenerate", herman[i].degenerate},
                       {"verdict", to_string(prof.classification)}});
  }
  doc["profiles"] = arr;
  return render(doc);
}

std::string cmd_classify(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  const TrigPolyTuple f = qp_model(cfg);
  const ContinuedFraction cf = qp_frequency(cfg);
  const auto energies = num_list(cfg, "energies");
  require(!energies.empty(), "--energies must be nonempty");
  const ClassifyConfig ccfg = classify_config(cfg);
  std::vector<Classification> res;
  for (double E : energies) res.push_back(classify(PStepCocycle(f, cf, E), cf, ccfg, ctx.exec));

  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"E", "verdict", "distance_to_spectrum", "margin", "L0"});
    for (std::size_t i = 0; i < res.size(); ++i) {
      csv.cell(energies[i]).cell(to_string(res[i].verdict)).cell(res[i].distance_to_spectrum).cell(res[i].margin_used).cell(res[i].L0);
      csv.end_row();
    }
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["model"] = model_json(f);
  Json arr = Json::array();
  for (std::size_t i = 0; i < res.size(); ++i)
    arr.push_back(Json{{"E", energies[i]},
                       {"verdict", to_string(res[i].verdict)},
                       {"reason", res[i].reason},
                       {"distance_to_spectrum", res[i].distance_to_spectrum},
                       {"margin_used", res[i].margin_used},
                       {"L0_per_site", res[i].L0},
                       {"probe_eps", res[i].probe_eps},
                       {"probe_L_per_site", res[i].probe_L}});
  doc["results"] = arr;
  return render(doc);
}

std::string cmd_minimal_components(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  const auto m = integer(cfg, "m");
  require(m >= 1, "--m must be >= 1");
  SFunction sfun;
  std::optional<Substitution> sub;
  if (has(cfg, "sfun")) {
    if (has(cfg, "preset")) throw ValidationError("give either --preset or --sfun, not both");
    sfun = sfunction_from_json(read_json_file(str(cfg, "sfun")));
  } else {
    if (!has(cfg, "preset")) throw ValidationError("missing model: give --preset NAME or --sfun FILE");
    const std::string name = str(cfg, "preset");
    // Both are constant length 2 with trivial height.
    if (name != "thue-morse" && name != "period-doubling")
      throw ValidationError("no s-function preset for '" + name + "' (expected thue-morse or period-doubling)");
    sfun = sfun_constant_length(2, 1);
    sub = substitution_preset(name);
  }
  const std::uint64_t s = s_of(static_cast<std::uint64_t>(m), sfun);
  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"m", "s"});
    csv.cell(m).cell(std::to_string(s));
    csv.end_row();
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["sfunction"] = to_json(sfun);
  doc["m"] = m;
  doc["s"] = s;
  if (sub) {
    const Word prefix = fixed_point_prefix(*sub, std::size_t{1} << 16);
    doc["empirical"] = empirical_components(prefix, static_cast<int>(m), 16);
  }
  return render(doc);
}

std::string cmd_gordon_scan(const Context& ctx) {
  const Json& cfg = ctx.cfg;
  std::optional<Substitution> sub;
  if (has(cfg, "rules")) {
    if (has(cfg, "preset")) throw ValidationError("give either --preset or --rules, not both");
    sub = substitution_from_json(read_json_file(str(cfg, "rules")));
  } else {
    if (!has(cfg, "preset")) throw ValidationError("missing model: give --preset NAME or --rules FILE");
    sub = substitution_preset(str(cfg, "preset"));
  }
  const Word x = fixed_point_prefix(*sub, static_cast<std::size_t>(integer(cfg, "length")));
  const GordonStats st = gordon_scan(x, static_cast<int>(integer(cfg, "n")), ctx.exec);
  if (ctx.format == "csv") {
    std::ostringstream os;
    CsvWriter csv(os, cfg, {"n", "hits", "window", "estimate"});
    csv.cell(static_cast<std::int64_t>(st.n)).cell(st.hits).cell(st.window).cell(st.estimate);
    csv.end_row();
    return os.str();
  }
  Json doc;
  doc["config"] = cfg;
  doc["n"] = st.n;
  doc["hits"] = st.hits;
  doc["window"] = st.window;
  doc["estimate"] = st.estimate;
  return render(doc);
}

const std::vector<Param>& qp_common() {
  static const std::vector<Param> p{
      {"model", Kind::str, false, nullptr, "trig polynomial JSON file"},
      {"lambda", Kind::num, false, nullptr, "AMO coupling (with --background)"},
      {"background", Kind::num_list, false, nullptr, "period-p background c_k for the AMO model"},
      {"cf-period", Kind::int_list, true, nullptr, "repeating partial quotients of alpha (1 = golden mean)"},
      {"cf-depth", Kind::integer, true, nullptr, "number of partial quotients"},
      {"energies", Kind::num_list, true, nullptr, "energies"},
      {"N", Kind::integer, false, 20000, "orbit length in p-steps"},
      {"burn-in", Kind::integer, false, 1000, "discarded p-steps"},
      {"x0", Kind::num, false, 0.1234, "starting phase"},
      {"margin", Kind::num, false, 1e-6, "minimal distance to the approximant spectrum"},
      {"L-tol", Kind::num, false, 0.05, "per-site exponent treated as zero"},
      {"eps-probe", Kind::num, false, 0.05, "width of the probed strip"},
      {"probe-points", Kind::integer, false, 4, "probes in the strip"},
      {"max-q", Kind::integer, false, 89, "largest convergent denominator for the spectrum"},
      {"phases", Kind::integer, false, 64, "phases per approximant"},
  };
  return p;
}

std::vector<Command> commands() {
  std::vector<Command> c;
  c.push_back({"periodic-spectrum",
               "band spectrum of a periodic potential",
               {{"values", Kind::num_list, true, nullptr, "potential over one period"},
                {"period", Kind::integer, true, nullptr, "period (must equal the number of values)"},
                {"background", Kind::num_list, false, nullptr, "added background, repeated with its own period"},
                {"tol", Kind::num, false, 1e-12, "band edge tolerance"}},
               false,
               cmd_periodic_spectrum});
  c.push_back({"random-union",
               "periodic union, cone certificates and Lyapunov scan for a random decorated model",
               {{"letters", Kind::num_list, true, nullptr, "letter values"},
                {"background", Kind::num_list, true, nullptr, "background c_j, j = 0..p-1"},
                {"probs", Kind::num_list, false, nullptr, "letter probabilities (default uniform)"},
                {"grid-points", Kind::integer, false, 10000, "certificate grid size over the hull"},
                {"energies", Kind::integer, false, 50, "Lyapunov energies over the hull"},
                {"orbit-length", Kind::integer, false, 100000, "sites per Lyapunov estimate"},
                {"max-period", Kind::integer, false, 0, "inner approximation depth for p != 2 (0 = auto)"},
                {"tol", Kind::num, false, 1e-12, "band edge tolerance"}},
               true,
               cmd_random_union});
  c.push_back({"counterexample",
               "period-6 band versus the eight period-3 spectra",
               {{"letters", Kind::num_list, false, Json::array({0.0, 3.0}), "the two letter values"},
                {"background", Kind::num_list, false, Json::array({0.0, 2.0, 3.0}), "period-3 background"},
                {"target", Kind::num_list, false, Json::array({1.385, 1.423}), "interval to test"},
                {"slack", Kind::num, false, 1e-3, "endpoint slack for containment"},
                {"tol", Kind::num, false, 1e-12, "band edge tolerance"}},
               false,
               cmd_counterexample});
  c.push_back({"toeplitz-trace",
               "trace map orbits and spectral mask for a Toeplitz model",
               {{"coding", Kind::str, false, nullptr, "coding JSON file"},
                {"ns", Kind::int_list, false, nullptr, "n_k cycle for an alternating binary coding"},
                {"depth", Kind::integer, false, nullptr, "coding depth"},
                {"letters", Kind::num_list, true, nullptr, "g(a), g(b)"},
                {"background", Kind::num_list, true, nullptr, "background c_j, j = 0..p-1"},
                {"emin", Kind::num, true, nullptr, "energy grid start"},
                {"emax", Kind::num, true, nullptr, "energy grid end"},
                {"points", Kind::integer, false, 1001, "energy grid size"},
                {"k-min", Kind::integer, true, nullptr, "first level of the mask"},
                {"k-max", Kind::integer, true, nullptr, "last level"}},
               false,
               cmd_toeplitz_trace});
  c.push_back({"qp-lyapunov", "complexified Lyapunov profiles and accelerations", qp_common(), false, cmd_qp_lyapunov});
  c.back().params.push_back({"eps", Kind::num_list, true, nullptr, "ascending imaginary parts, including 0"});
  c.push_back({"classify", "global-theory regime per energy", qp_common(), false, cmd_classify});
  c.push_back({"minimal-components",
               "number of minimal components s(m)",
               {{"preset", Kind::str, false, nullptr, "thue-morse or period-doubling"},
                {"sfun", Kind::str, false, nullptr, "s-function JSON file"},
                {"m", Kind::integer, true, nullptr, "power of the shift"}},
               false,
               cmd_minimal_components});
  c.push_back({"gordon-scan",
               "frequency of cubes of length-n blocks in a substitution fixed point",
               {{"preset", Kind::str, false, nullptr, "fibonacci, period-doubling or thue-morse"},
                {"rules", Kind::str, false, nullptr, "substitution JSON file"},
                {"length", Kind::integer, true, nullptr, "prefix length"},
                {"n", Kind::integer, true, nullptr, "block length"}},
               false,
               cmd_gordon_scan});
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::vector<Command> cmds = commands();
  CLI::App app{"prodspec: spectra of Schroedinger operators over product systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir, format = "json", config_path;
  std::int64_t threads = 0;
  std::vector<std::string> seed_tok;
  app.add_option("--out", out_dir, "directory for artifacts (default: stdout)");
  app.add_option("--threads", threads, "OpenMP threads (results do not depend on it)");
  app.add_option("--seed", seed_tok, "seed for stochastic subcommands")->expected(1);
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", config_path, "JSON config; flags override its values");

  std::map<std::string, std::map<std::string, std::vector<std::string>>> raw;
  std::map<std::string, CLI::App*> subs;
  for (const Command& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    subs[c.name] = sub;
    auto& store = raw[c.name];
    for (const Param& p : c.params) {
      auto* opt = sub->add_option("--" + p.name, store[p.name], p.help);
      if (p.kind == Kind::num_list || p.kind == Kind::int_list) opt->delimiter(',');
    }
  }

  std::vector<std::string> argv_store{"prodspec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kExitOk;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << " (see --help)\n";
      return kExitValidation;
    }

    const Command* cmd = nullptr;
    for (const Command& c : cmds)
      if (subs[c.name]->parsed()) cmd = &c;
    if (!cmd) throw ValidationError("no subcommand given");

    Json file = Json::object();
    if (!config_path.empty()) {
      file = read_json_file(config_path);
      if (!file.is_object()) throw ValidationError("config file must hold a JSON object");
    }
    if (file.contains("subcommand") && file["subcommand"] != cmd->name)
      throw ValidationError("config file is for '" + file["subcommand"].get<std::string>() + "', not '" + cmd->name + "'");

    Json cfg;
    cfg["subcommand"] = cmd->name;
    for (const auto& [k, v] : file.items()) {
      if (k == "subcommand" || k == "seed") continue;
      const bool known = std::any_of(cmd->params.begin(), cmd->params.end(), [&](const Param& p) { return p.name == k; });
      if (!known) throw ValidationError("unknown config key '" + k + "' for " + cmd->name);
    }

    if (!seed_tok.empty())
      cfg["seed"] = static_cast<std::uint64_t>(parse_int("seed", seed_tok[0]));
    else if (file.contains("seed")) {
      if (!file["seed"].is_number_integer()) throw ValidationError("config key 'seed' must be an integer");
      cfg["seed"] = file["seed"].get<std::uint64_t>();
    }
    if (cmd->stochastic && !cfg.contains("seed")) throw ValidationError(cmd->name + " is stochastic: pass --seed S");

    for (const Param& p : cmd->params) {
      const auto& tok = raw[cmd->name][p.name];
      if (!tok.empty()) {
        cfg[p.name] = convert_tokens(p, tok);
      } else if (file.contains(p.name)) {
        check_file_value(p, file[p.name]);
        cfg[p.name] = file[p.name];
      } else if (!p.fallback.is_null()) {
        cfg[p.name] = p.fallback;
      } else if (p.required) {
        throw ValidationError("missing required --" + p.name + " (" + p.help + ")");
      }
      if (cfg.contains(p.name) && p.kind == Kind::num && p.name.find("tol") != std::string::npos && num(cfg, p.name) <= 0)
        throw ValidationError("--" + p.name + " must be positive");
    }
    cfg["format"] = format;

    if (threads < 0) throw ValidationError("--threads must be >= 0");
    if (threads > 0) set_num_threads(static_cast<int>(threads));

    Context ctx{cfg, format, Exec::parallel};
    const std::string text = cmd->run(ctx);

    if (out_dir.empty()) {
      out << text;
    } else {
      std::filesystem::create_directories(out_dir);
      const auto path = std::filesystem::path(out_dir) / (cmd->name + "." + format);
      std::ofstream f(path);
      if (!f) throw ValidationError("cannot write '" + path.string() + "'");
      f << text;
      out << path.string() << "\n";
    }
    return kExitOk;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Json::exception& e) {
    err << "error: bad JSON value: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace prodspec::cli
