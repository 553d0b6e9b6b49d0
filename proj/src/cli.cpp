#include "rotlaw/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rotlaw/atomicity.hpp"
#include "rotlaw/config.hpp"
#include "rotlaw/errors.hpp"
#include "rotlaw/ifs.hpp"
#include "rotlaw/measure_lab.hpp"
#include "rotlaw/spectral.hpp"

namespace rotlaw {
namespace {

using nlohmann::json;

struct Globals {
  std::string config;
  std::string out_dir;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  int precision = 17;
};

struct Artifact {
  json result;
  std::string csv;  // non-empty for CSV artifacts
  int code = 0;
};

struct Context {
  Globals g;
  std::string config_hash;
  json config_json;
  std::shared_ptr<RotationSystem> system;

  const RotationSystem& sys() const { return *system; }
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound:
    case ErrorKind::NotAtomic:
    case ErrorKind::InjectivityNotVerified:
      return 3;
    case ErrorKind::DepthOverflow:
    case ErrorKind::PrefixExhausted:
      return 1;
    default:
      return 2;
  }
}

std::string fmt_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Decimal upper bound for a positive rational that may have huge terms.
std::string upper_text(const Rational& x) {
  double d = x.get_d();
  if (from_double(d) < x) d = std::nextafter(d, HUGE_VAL);
  return fmt_double(d, 17);
}

json interval_json(const RationalInterval& iv, int digits) {
  return {{"lo", to_decimal(iv.lo, digits)}, {"hi", to_decimal(iv.hi, digits)}};
}

json fourier_json(const FourierValue& v) {
  return {{"t", v.t},         {"re", v.value.real()},   {"im", v.value.imag()},
          {"modulus", v.modulus()}, {"error", v.error}, {"depth", v.depth}};
}

json atoms_json(const RotationSystem& s, const std::vector<Atom>& atoms, int digits) {
  json arr = json::array();
  for (const auto& a : atoms) {
    arr.push_back({{"value", a.value.to_string()},
                   {"value_decimal", decimal(a.value, digits)},
                   {"mass", a.mass.to_string()},
                   {"mass_decimal", decimal(s.angle(), a.mass, digits)}});
  }
  return arr;
}

std::vector<Rational> parse_tolerances(const std::vector<std::string>& list) {
  std::vector<Rational> out;
  for (const auto& s : list) out.push_back(parse_tolerance(s));
  return out;
}

std::vector<double> parse_doubles(const std::vector<std::string>& list) {
  std::vector<double> out;
  for (const auto& s : list) out.push_back(parse_tolerance(s).get_d());
  return out;
}

Side parse_side(const std::string& s) {
  if (s == "right") return Side::Right;
  if (s == "left") return Side::Left;
  throw LabError(ErrorKind::InvalidInput, "side must be \"left\" or \"right\"");
}

LambdaSpec lambda_argument(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    j = text;
  }
  if (j.is_number_integer()) j = std::to_string(j.get<long>());
  return parse_lambda(j);
}

std::string render(const std::string& command, const json& params, const Context& ctx, const Artifact& a) {
  json prov = {{"command", command},
               {"config", ctx.g.config},
               {"config_hash", ctx.config_hash},
               {"seed", ctx.g.seed},
               {"precision", ctx.g.precision},
               {"version", kVersion},
               {"params", params}};
  if (!a.csv.empty()) return "# provenance: " + prov.dump() + "\n" + a.csv;
  json report = {{"provenance", prov}, {"result", a.result}};
  return report.dump(2) + "\n";
}

// Command implementations. Each receives the loaded context and its parameters.

Artifact cmd_cf(const Context& ctx, std::size_t n) {
  const ConvergentTable t = cf_expand(ctx.sys().angle().spec(), n);
  json rows = json::array();
  for (std::size_t k = 1; k <= t.size(); ++k) {
    const long kk = static_cast<long>(k);
    const Integer det = t.q(kk) * t.p(kk - 1) - t.p(kk) * t.q(kk - 1);
    rows.push_back({{"k", k},
                    {"a", t.a(k).get_str()},
                    {"p", t.p(kk).get_str()},
                    {"q", t.q(kk).get_str()},
                    {"determinant", det.get_str()}});
  }
  return {{{"approx", ctx.sys().angle().approx()}, {"convergents", rows}}, {}, 0};
}

Artifact cmd_chains(const Context& ctx) {
  const ChainDecomposition cd = chain_decompose(ctx.sys());
  json arr = json::array();
  for (std::size_t k = 0; k < cd.K(); ++k) {
    const Chain& c = cd.chains[k];
    arr.push_back({{"k", k},
                   {"base", c.base},
                   {"base_point", c.base_point.to_string()},
                   {"offsets", c.offsets},
                   {"members", c.members},
                   {"p", c.p()},
                   {"m", c.m()}});
  }
  json pts = json::array();
  for (const auto& p : ctx.sys().breakpoints().points()) pts.push_back(p.to_string());
  return {{{"breakpoints", pts}, {"K", cd.K()}, {"chains", arr}}, {}, 0};
}

Artifact cmd_eval(const Context& ctx, const CirclePoint& x, Side side, const Rational& eps) {
  const XEnclosure e = eval_X(ctx.sys(), x, side, eps);
  const int d = ctx.g.precision;
  return {{{"x", x.to_string()},
           {"partial", e.partial.to_string()},
           {"depth", e.depth},
           {"radius", upper_text(e.radius)},
           {"interval", interval_json(e.interval, d)},
           {"value_decimal", to_decimal(e.interval.mid(), d)}},
          {},
          0};
}

Artifact cmd_cylinder(const Context& ctx, std::size_t n) {
  const CylinderMeasure cm = cylinder_measure(ctx.sys(), n, ctx.g.threads);
  return {{}, cylinder_csv(ctx.sys(), cm, ctx.g.precision), 0};
}

Artifact cmd_atomicity(const Context& ctx, const Rational& eps) {
  const AtomicityVerdict v = classify(ctx.sys(), eps, ctx.g.threads);
  const int d = ctx.g.precision;
  json jumps = json::array();
  for (const auto& j : v.jumps) {
    json row = {{"k", j.k},
                {"exact", j.exact},
                {"verdict", to_string(j.verdict)},
                {"interval", interval_json(j.interval, d)}};
    if (j.value) row["value"] = j.value->to_string();
    if (!j.polynomial.empty()) {
      json poly = json::array();
      for (const auto& c : j.polynomial) poly.push_back(to_string(c));
      row["polynomial"] = poly;
    }
    jumps.push_back(row);
  }
  json res = {{"verdict", to_string(v.verdict)}, {"K", v.chains.K()}, {"jumps", jumps}};
  if (v.verdict == Verdict::Atomic) res["support"] = atoms_json(ctx.sys(), v.support, d);
  return {res, {}, v.verdict == Verdict::Undecided ? 3 : 0};
}

Artifact cmd_support(const Context& ctx) {
  const std::vector<Atom> atoms = atom_support(ctx.sys(), ctx.g.threads);
  AlphaNumber total;
  for (const auto& a : atoms) total += a.mass;
  std::size_t bound = 0;
  for (const auto& c : chain_decompose(ctx.sys()).chains) bound += 1 + static_cast<std::size_t>(c.p());
  return {{{"atoms", atoms_json(ctx.sys(), atoms, ctx.g.precision)},
           {"count", atoms.size()},
           {"count_bound", bound},
           {"total_mass", total.to_string()}},
          {},
          0};
}

Artifact cmd_sample(const Context& ctx, std::size_t M, std::size_t depth, double link) {
  const SampleBatch b = sample_law(ctx.sys(), M, depth, ctx.g.seed, ctx.g.threads);
  std::ostringstream os;
  os << "index,x_numerator,x,value\n";
  for (std::size_t i = 0; i < b.count(); ++i) {
    os << i << ',' << b.x[i] << ',' << fmt_double(std::ldexp(static_cast<double>(b.x[i]), -64), ctx.g.precision)
       << ',' << fmt_double(b.values[i], ctx.g.precision) << '\n';
  }
  os << "# depth=" << b.depth << ",radius=" << upper_text(b.radius)
     << ",clusters=" << cluster_count(b.values, link) << ",link=" << fmt_double(link, 6) << '\n';
  return {{}, os.str(), 0};
}

Artifact cmd_boxdim(const Context& ctx, const std::vector<Rational>& eps) {
  const DimensionFit fit = dimension_fit(ctx.sys(), eps, ctx.g.threads);
  json covers = json::array();
  for (std::size_t i = 0; i < fit.covers.size(); ++i) {
    const CoverReport& c = fit.covers[i];
    covers.push_back({{"eps", to_string(c.eps)},
                      {"depth", c.depth},
                      {"radius", upper_text(c.radius)},
                      {"boxes", c.boxes},
                      {"balls", c.balls},
                      {"values", c.values.size()},
                      {"value_bound", c.depth * ctx.sys().N()},
                      {"ratio", fit.ratios[i]},
                      {"residual", fit.residuals[i]}});
  }
  return {{{"covers", covers}, {"slope", fit.slope}, {"intercept", fit.intercept}}, {}, 0};
}

Artifact cmd_profile(const Context& ctx, const std::vector<std::size_t>& depths) {
  json rows = json::array();
  for (const auto& w : max_weight_profile(ctx.sys(), depths, ctx.g.threads)) {
    rows.push_back({{"depth", w.depth}, {"max_weight", w.max_weight}, {"groups", w.groups}});
  }
  return {{{"profile", rows}}, {}, 0};
}

Artifact cmd_fourier(const Context& ctx, const std::vector<double>& ts, const Rational& eps) {
  double t_max = 0.0;
  for (double t : ts) t_max = std::max(t_max, std::fabs(t));
  const FourierEvaluator F(ctx.sys(), t_max, eps, ctx.g.threads);
  json rows = json::array();
  for (double t : ts) rows.push_back(fourier_json(F(t)));
  return {{{"depth", F.depth()}, {"atoms", F.atoms()}, {"values", rows}}, {}, 0};
}

Artifact cmd_wiener(const Context& ctx, double R, std::size_t grid, const Rational& eps) {
  const WienerReport w = wiener_average(ctx.sys(), R, grid, eps, ctx.g.threads);
  json res = {{"R", w.R},
              {"grid", w.grid},
              {"value", w.value},
              {"certified_error", w.certified_error},
              {"quadrature_error", w.quadrature_error},
              {"depth", w.depth}};
  return {res, {}, 0};
}

json m_range_json(const MRange& r) {
  return {{"m_min", r.m_min}, {"m_max", r.m_max}, {"feasible", r.feasible}, {"threshold", r.threshold}};
}

Artifact cmd_witness(const Context& ctx, std::size_t n, std::size_t m, std::size_t g, long long t_max,
                     const Rational& eps, const std::vector<unsigned>& multipliers) {
  const MRange range = feasible_m_range(ctx.sys(), n, g);
  const long long mm = static_cast<long long>(m);
  if (!range.feasible || mm < range.m_min || mm > range.m_max) {
    return {{{"status", "InfeasibleLevel"}, {"m", m}, {"m_range", m_range_json(range)}}, {}, 3};
  }
  const WitnessLevel level = build_witness_level(ctx.sys(), n, m, g);
  const int d = ctx.g.precision;
  json zvals = json::array();
  for (const auto& z : level.values) {
    zvals.push_back({{"value", z.value.to_string()},
                     {"value_decimal", decimal(z.value, d)},
                     {"weight", z.weight.to_string()}});
  }
  json lv = {{"n", level.n},
             {"m", level.m},
             {"g", level.g},
             {"q", level.q.get_str()},
             {"a_next", level.a_next.get_str()},
             {"delta", level.delta.to_string()},
             {"pieces", level.pieces},
             {"z_values", zvals},
             {"omega", level.omega.to_string()},
             {"omega_upper", to_string(level.omega_upper)},
             {"omega_decimal", to_decimal(level.omega_upper, d)},
             {"r_bound", upper_text(level.r_bound)},
             {"omega_within_bound", level.omega_within_bound},
             {"omega_within_quotient", level.omega_within_quotient}};
  json res = {{"level", lv}, {"m_range", m_range_json(range)}};
  WitnessCertificate cert;
  try {
    cert = witness_search(level, t_max, ctx.g.threads);
  } catch (const LabError& e) {
    if (e.kind() != ErrorKind::NotFound) throw;
    res["status"] = "NotFound";
    res["message"] = e.what();
    return {res, {}, 3};
  }
  cross_check(ctx.sys(), level, cert, eps, multipliers, ctx.g.threads);
  json mults = json::array();
  for (const auto& mc : cert.multipliers) {
    mults.push_back({{"multiplier", mc.multiplier},
                     {"bound", mc.bound},
                     {"measured", fourier_json(mc.measured)},
                     {"holds", mc.holds}});
  }
  json cj = {{"t", cert.t},
             {"gap", to_string(cert.gap)},
             {"gap_decimal", to_decimal(cert.gap, d)},
             {"certificate", to_string(cert.certificate)},
             {"certificate_decimal", to_decimal(cert.certificate, d)},
             {"asymptotic_bound", cert.asymptotic_bound},
             {"multipliers", mults}};
  if (cert.measured) cj["measured"] = fourier_json(*cert.measured);
  res["status"] = "Found";
  res["certificate"] = cj;
  return {res, {}, 0};
}

Artifact cmd_scan(const Context& ctx, long long from, long long to, long long step, const Rational& eps) {
  if (step < 1 || to < from) throw LabError(ErrorKind::InvalidInput, "scan needs from <= to and step >= 1");
  std::vector<double> ts;
  for (long long t = from; t <= to; t += step) ts.push_back(static_cast<double>(t));
  const ScanReport r = rajchman_scan(ctx.sys(), ts, eps, ctx.g.threads);
  json rows = json::array();
  for (const auto& v : r.values) rows.push_back(fourier_json(v));
  return {{{"values", rows}, {"tail_max", r.tail_max}, {"min_modulus", r.min_modulus}}, {}, 0};
}

Artifact cmd_pisot(const Context& ctx, std::size_t n_max, const Rational& eps, bool check, const CirclePoint& x0) {
  const PisotReport r = pisot_hat_sequence(ctx.sys(), n_max, eps, check, x0, ctx.g.threads);
  json conj = json::array();
  for (const auto& c : r.conjugates) conj.push_back({{"re", c.real()}, {"im", c.imag()}});
  json rows = json::array();
  for (const auto& p : r.points) {
    json row = {{"n", p.n}, {"hat", fourier_json(p.hat)}};
    if (r.checked) {
      row["power_sum"] = p.power_sum.get_str();
      row["conjugate_sum"] = p.conjugate_sum;
      row["y_value"] = p.y_value;
      row["residue"] = p.residue;
    }
    rows.push_back(row);
  }
  return {{{"checked", r.checked}, {"conjugates", conj}, {"points", rows}, {"min_modulus", r.min_modulus}}, {}, 0};
}

Artifact cmd_ifs_words(const Context& ctx, std::size_t n) {
  std::set<Word> minimal;
  for (const auto& w : minimal_words(ctx.sys(), n)) minimal.insert(w.letters);
  std::ostringstream os;
  os << "word,admissible,minimal,fix,fix_decimal\n";
  for (std::size_t len = 1; len <= n; ++len) {
    for (const auto& w : admissible_words(ctx.sys(), len)) {
      os << '"' << word_string(w.letters) << "\"," << (w.admissible ? 1 : 0) << ','
         << (minimal.count(w.letters) ? 1 : 0) << ',' << w.fix.to_string() << ','
         << decimal(w.fix, ctx.g.precision) << '\n';
    }
  }
  return {{}, os.str(), 0};
}

json word_json(const AffineWord& w, int digits) {
  return {{"word", word_string(w.letters)}, {"fix", w.fix.to_string()}, {"fix_decimal", decimal(w.fix, digits)}};
}

Artifact cmd_ifs_inject(const Context& ctx, std::size_t n) {
  const InjectivityReport r = injectivity_report(ctx.sys(), n);
  json cols = json::array();
  for (const auto& c : r.collisions) {
    cols.push_back({{"first", word_json(c.first, ctx.g.precision)},
                    {"second", word_json(c.second, ctx.g.precision)},
                    {"commute", c.commute}});
  }
  return {{{"depth", r.depth}, {"minimal_count", r.minimal_count}, {"injective", r.injective()}, {"collisions", cols}},
          {},
          0};
}

Artifact cmd_ifs_root(const Context& ctx, const std::string& lambda_text, std::size_t d_max) {
  LambdaSpec spec;
  if (!lambda_text.empty()) {
    spec = lambda_argument(lambda_text);
  } else if (ctx.config_json.contains("r") && ctx.config_json.at("r").is_object() &&
             ctx.config_json.at("r").contains("constant")) {
    spec = parse_lambda(ctx.config_json.at("r").at("constant"));
  } else if (ctx.sys().constant_ratio() && ctx.sys().r(0).is_rational()) {
    spec = LambdaSpec{ctx.sys().r(0).rational_part()};
  } else {
    throw LabError(ErrorKind::InvalidInput, "ifs-root needs --lambda or a constant r in the config");
  }
  const auto found = zpm_one_root_check(spec, d_max);
  json res = {{"d_max", d_max}, {"found", found.has_value()}};
  if (found) {
    res["coefficients"] = *found;
    res["degree"] = found->size() - 1;
  }
  return {res, {}, 0};
}

Artifact cmd_ifs_dichotomy(const Context& ctx, std::size_t n) {
  const DichotomyVerdict v = periodic_dichotomy(ctx.sys(), n);
  json range = json::array();
  for (const auto& x : v.range) range.push_back(x.to_string());
  return {{{"periodic", v.periodic}, {"period", v.period}, {"depth", v.depth}, {"range", range}, {"verdict", v.verdict}},
          {},
          0};
}

Context load_context(const Globals& g) {
  Context ctx;
  ctx.g = g;
  if (g.config.empty()) throw LabError(ErrorKind::InvalidInput, "--config is required");
  std::ifstream in(g.config, std::ios::binary);
  if (!in) throw LabError(ErrorKind::InvalidInput, "cannot open " + g.config);
  std::stringstream ss;
  ss << in.rdbuf();
  ctx.config_hash = fnv1a_hex(ss.str());
  try {
    ctx.config_json = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw LabError(ErrorKind::InvalidInput, g.config + ": " + e.what());
  }
  ctx.system = std::make_shared<RotationSystem>(build_system(parse_system_config(ctx.config_json)));
  return ctx;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laws of twisted Birkhoff sums over irrational rotations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "System configuration (JSON)");
  app.add_option("--out", g.out_dir, "Output directory (default: stdout)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--precision", g.precision, "Decimal digits in reports")->check(CLI::Range(1, 200));

  // Per-command parameters with their defaults; recorded verbatim in provenance.
  std::size_t cf_n = 20;
  std::string x_rat = "1/10", x_rot = "0", side = "right", eval_eps = "1e-12";
  std::size_t cyl_depth = 8;
  std::string atom_eps = "1e-30";
  std::size_t sample_m = 10000, sample_depth = 60;
  double sample_link = 1e-9;
  std::vector<std::string> box_eps = {"1e-3", "1e-4", "1e-5", "1e-6"};
  std::vector<std::size_t> depths = {10, 20, 30, 40, 50, 60};
  std::vector<std::string> fourier_t = {"1", "10", "100"};
  std::string fourier_eps = "1e-6";
  double wiener_R = 1e4;
  std::size_t wiener_grid = 200000;
  std::string wiener_eps = "1e-6";
  std::size_t w_n = 1, w_m = 25, w_g = 13;
  long long w_tmax = 28561;
  std::string w_eps = "1e-6";
  std::vector<unsigned> w_mult = {2, 3};
  long long scan_from = 1, scan_to = 1000, scan_step = 1;
  std::string scan_eps = "1e-6";
  std::size_t pisot_n = 15;
  std::string pisot_eps = "1e-6", pisot_x0 = "1/7";
  bool pisot_no_check = false;
  std::size_t words_n = 3, inject_n = 8, dich_n = 8, root_d = 20;
  std::string root_lambda;

  std::map<std::string, std::function<json()>> params;
  std::map<std::string, std::function<Artifact(const Context&)>> runners;

  auto* c = app.add_subcommand("cf", "Partial quotients, convergents and determinants");
  c->add_option("--n", cf_n, "Number of quotients");
  params["cf"] = [&] { return json{{"n", cf_n}}; };
  runners["cf"] = [&](const Context& ctx) { return cmd_cf(ctx, cf_n); };

  app.add_subcommand("chains", "Orbit chains of the breakpoints");
  params["chains"] = [] { return json::object(); };
  runners["chains"] = [](const Context& ctx) { return cmd_chains(ctx); };

  c = app.add_subcommand("eval", "Certified enclosure of X at a point");
  c->add_option("--x", x_rat, "Rational part of the point");
  c->add_option("--x-rot", x_rot, "Coefficient of alpha in the point");
  c->add_option("--side", side, "left or right");
  c->add_option("--eps", eval_eps, "Half-width target");
  params["eval"] = [&] { return json{{"x", x_rat}, {"x_rot", x_rot}, {"side", side}, {"eps", eval_eps}}; };
  runners["eval"] = [&](const Context& ctx) {
    return cmd_eval(ctx, CirclePoint(parse_rational(x_rat), parse_rational(x_rot)), parse_side(side),
                    parse_tolerance(eval_eps));
  };

  c = app.add_subcommand("cylinder", "Depth-n cylinder measure (CSV)");
  c->add_option("--depth", cyl_depth, "Truncation depth");
  params["cylinder"] = [&] { return json{{"depth", cyl_depth}}; };
  runners["cylinder"] = [&](const Context& ctx) { return cmd_cylinder(ctx, cyl_depth); };

  c = app.add_subcommand("atomicity", "Atomic / continuous classification");
  c->add_option("--eps", atom_eps, "Enclosure radius for X at chain ends");
  params["atomicity"] = [&] { return json{{"eps", atom_eps}}; };
  runners["atomicity"] = [&](const Context& ctx) { return cmd_atomicity(ctx, parse_tolerance(atom_eps)); };

  app.add_subcommand("support", "Exact atoms of an atomic law");
  params["support"] = [] { return json::object(); };
  runners["support"] = [](const Context& ctx) { return cmd_support(ctx); };

  c = app.add_subcommand("sample", "Seeded samples of X (CSV)");
  c->add_option("--m", sample_m, "Sample count");
  c->add_option("--depth", sample_depth, "Truncation depth");
  c->add_option("--link", sample_link, "Cluster linkage radius");
  params["sample"] = [&] { return json{{"m", sample_m}, {"depth", sample_depth}, {"link", sample_link}}; };
  runners["sample"] = [&](const Context& ctx) { return cmd_sample(ctx, sample_m, sample_depth, sample_link); };

  c = app.add_subcommand("boxdim", "Box counts and dimension fit");
  c->add_option("--eps", box_eps, "Scales, comma separated")->delimiter(',');
  params["boxdim"] = [&] { return json{{"eps", box_eps}}; };
  runners["boxdim"] = [&](const Context& ctx) { return cmd_boxdim(ctx, parse_tolerances(box_eps)); };

  c = app.add_subcommand("profile", "Largest cylinder cluster weight by depth");
  c->add_option("--depths", depths, "Depths, comma separated")->delimiter(',');
  params["profile"] = [&] { return json{{"depths", depths}}; };
  runners["profile"] = [&](const Context& ctx) { return cmd_profile(ctx, depths); };

  c = app.add_subcommand("fourier", "Fourier transform of the law");
  c->add_option("--t", fourier_t, "Frequencies, comma separated")->delimiter(',');
  c->add_option("--eps", fourier_eps, "Error target");
  params["fourier"] = [&] { return json{{"t", fourier_t}, {"eps", fourier_eps}}; };
  runners["fourier"] = [&](const Context& ctx) {
    return cmd_fourier(ctx, parse_doubles(fourier_t), parse_tolerance(fourier_eps));
  };

  c = app.add_subcommand("wiener", "Wiener average of |hat P|^2");
  c->add_option("--R", wiener_R, "Averaging window");
  c->add_option("--grid", wiener_grid, "Trapezoid intervals");
  c->add_option("--eps", wiener_eps, "Per-point Fourier error target");
  params["wiener"] = [&] { return json{{"R", wiener_R}, {"grid", wiener_grid}, {"eps", wiener_eps}}; };
  runners["wiener"] = [&](const Context& ctx) {
    return cmd_wiener(ctx, wiener_R, wiener_grid, parse_tolerance(wiener_eps));
  };

  c = app.add_subcommand("witness", "Non-decay witness at a convergent level");
  c->add_option("--n", w_n, "Convergent index");
  c->add_option("--m", w_m, "Block length");
  c->add_option("--g", w_g, "Pigeonhole resolution");
  c->add_option("--t-max", w_tmax, "Largest frequency scanned");
  c->add_option("--eps", w_eps, "Fourier error target for the measured value");
  c->add_option("--multipliers", w_mult, "Multipliers checked, comma separated")->delimiter(',');
  params["witness"] = [&] {
    return json{{"n", w_n}, {"m", w_m}, {"g", w_g}, {"t_max", w_tmax}, {"eps", w_eps}, {"multipliers", w_mult}};
  };
  runners["witness"] = [&](const Context& ctx) {
    return cmd_witness(ctx, w_n, w_m, w_g, w_tmax, parse_tolerance(w_eps), w_mult);
  };

  c = app.add_subcommand("scan", "|hat P| on an integer frequency range");
  c->add_option("--from", scan_from, "First frequency");
  c->add_option("--to", scan_to, "Last frequency");
  c->add_option("--step", scan_step, "Stride");
  c->add_option("--eps", scan_eps, "Error target");
  params["scan"] = [&] { return json{{"from", scan_from}, {"to", scan_to}, {"step", scan_step}, {"eps", scan_eps}}; };
  runners["scan"] = [&](const Context& ctx) { return cmd_scan(ctx, scan_from, scan_to, scan_step, parse_tolerance(scan_eps)); };

  c = app.add_subcommand("pisot", "|hat P| along powers of 1/lambda");
  c->add_option("--n-max", pisot_n, "Largest power");
  c->add_option("--eps", pisot_eps, "Error target");
  c->add_option("--x0", pisot_x0, "Base point of the conjugate-sum check");
  c->add_flag("--no-check", pisot_no_check, "Skip the Pisot and integer-b checks");
  params["pisot"] = [&] {
    return json{{"n_max", pisot_n}, {"eps", pisot_eps}, {"x0", pisot_x0}, {"check", !pisot_no_check}};
  };
  runners["pisot"] = [&](const Context& ctx) {
    return cmd_pisot(ctx, pisot_n, parse_tolerance(pisot_eps), !pisot_no_check, CirclePoint(parse_rational(pisot_x0)));
  };

  c = app.add_subcommand("ifs-words", "Admissible and minimal words (CSV)");
  c->add_option("--n", words_n, "Largest word length");
  params["ifs-words"] = [&] { return json{{"n", words_n}}; };
  runners["ifs-words"] = [&](const Context& ctx) { return cmd_ifs_words(ctx, words_n); };

  c = app.add_subcommand("ifs-inject", "Fixed-point collisions among minimal words");
  c->add_option("--n", inject_n, "Depth");
  params["ifs-inject"] = [&] { return json{{"n", inject_n}}; };
  runners["ifs-inject"] = [&](const Context& ctx) { return cmd_ifs_inject(ctx, inject_n); };

  c = app.add_subcommand("ifs-root", "Search for a {0,+-1} polynomial vanishing at lambda");
  c->add_option("--lambda", root_lambda, "Lambda (\"p/q\" or JSON); default: constant r of the config");
  c->add_option("--d-max", root_d, "Largest degree");
  params["ifs-root"] = [&] { return json{{"lambda", root_lambda}, {"d_max", root_d}}; };
  runners["ifs-root"] = [&](const Context& ctx) { return cmd_ifs_root(ctx, root_lambda, root_d); };

  c = app.add_subcommand("ifs-dichotomy", "Periodic coding versus continuity");
  c->add_option("--n", dich_n, "Injectivity depth");
  params["ifs-dichotomy"] = [&] { return json{{"n", dich_n}}; };
  runners["ifs-dichotomy"] = [&](const Context& ctx) { return cmd_ifs_dichotomy(ctx, dich_n); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  auto emit = [&](const Context& ctx, const Artifact& a) {
    const std::string text = render(command, params.at(command)(), ctx, a);
    if (g.out_dir.empty()) {
      out << text;
      return;
    }
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / (command + (a.csv.empty() ? ".json" : ".csv"));
    std::ofstream f(path, std::ios::binary);
    if (!f) throw LabError(ErrorKind::InvalidInput, "cannot write " + path.string());
    f << text;
    out << path.string() << '\n';
  };
  try {
    const Context ctx = load_context(g);
    Artifact a;
    try {
      a = runners.at(command)(ctx);
    } catch (const LabError& e) {
      if (exit_code(e.kind()) != 3) throw;
      a = {{{"status", std::string(to_string(e.kind()))}, {"message", e.what()}}, {}, 3};
    }
    emit(ctx, a);
    if (a.code == 3) err << command << ": outcome not decided (see report)\n";
    return a.code;
  } catch (const LabError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rotlaw
