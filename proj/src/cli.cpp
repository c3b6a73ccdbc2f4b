#include "bbm/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bbm/constants.hpp"
#include "bbm/energy.hpp"
#include "bbm/errors.hpp"
#include "bbm/heisenberg.hpp"
#include "bbm/sweep.hpp"
#include "json.hpp"

namespace bbm {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, json, csv };

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  unsigned workers = 1;

  [[nodiscard]] std::uint64_t seed_or_default() const { return seed.value_or(1); }
  [[nodiscard]] Execution exec() const { return {workers}; }
  [[nodiscard]] Format format_or(Format fallback) const {
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    if (format == "text") return Format::text;
    return fallback;
  }
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::vector<double> parse_list(const std::string& text, const std::string& flag, std::size_t expected = 0) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
      throw UsageError(flag + ": not a number list: '" + text + "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (expected != 0 && values.size() != expected)
    throw UsageError(flag + ": expected " + std::to_string(expected) + " values, got " + std::to_string(values.size()));
  return values;
}

heisenberg::HPoint parse_hpoint(const std::string& text, const std::string& flag) {
  const std::vector<double> v = parse_list(text, flag, 3);
  return {v[0], v[1], v[2]};
}

SpacePoint parse_point(const ModelSpace& space, const std::string& text) {
  const std::vector<double> v = parse_list(text, "--x");
  const Coords c = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
  switch (space.point_kind()) {
    case PointKind::euclidean:
      return SpacePoint::euclidean(c);
    case PointKind::torus:
      return SpacePoint::torus(c);
    case PointKind::sphere:
      if (v.size() != 3) throw UsageError("--x: sphere points have 3 coordinates");
      return SpacePoint::sphere(Eigen::Vector3d(v[0], v[1], v[2]));
    case PointKind::heisenberg:
      if (v.size() != 3) throw UsageError("--x: H^1 points have 3 coordinates");
      return SpacePoint::heisenberg({v[0], v[1], v[2]});
    case PointKind::glued:
      if (v.size() == 4) return SpacePoint::glued(glued::GluedPoint::on_euclidean(Eigen::Vector4d(v[0], v[1], v[2], v[3])));
      if (v.size() == 3) return SpacePoint::glued(glued::GluedPoint::on_heisenberg({v[0], v[1], v[2]}));
      throw UsageError("--x: glued points have 4 (R^4 side) or 3 (H^1 side) coordinates");
  }
  throw UsageError("--x: unsupported space");
}

Json estimate_json(const EnergyEstimate& e) {
  return Json{{"value", e.value}, {"std_error", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

std::string estimate_csv_row(const std::string& label, const EnergyEstimate& e) {
  return label + "," + num(e.value) + "," + num(e.std_error) + "," + std::to_string(e.samples) + "\n";
}

std::string estimate_text(const EnergyEstimate& e) {
  return num(e.value) + " std_error " + num(e.std_error) + " samples " + std::to_string(e.samples) + "\n";
}

// --- constant ------------------------------------------------------------

struct ConstantArgs {
  double p = 2.0;
  int n = 2;
  bool mc = false;
  std::size_t samples = 1000000;
};

std::string run_constant_euclidean(const ConstantArgs& a, const Globals& g) {
  const double closed = c_euclidean_closed(a.p, a.n);
  std::optional<EnergyEstimate> mc;
  if (a.mc) mc = c_euclidean_mc(a.p, a.n, a.samples, Stream(g.seed_or_default()), g.exec());
  switch (g.format_or(Format::text)) {
    case Format::json: {
      Json j{{"p", a.p}, {"n", a.n}, {"closed_form", closed}};
      j["monte_carlo"] = mc ? estimate_json(*mc) : Json(nullptr);
      return j.dump(2) + "\n";
    }
    case Format::csv: {
      std::string s = "source,value,std_error,samples\nclosed-form," + num(closed) + ",0,0\n";
      if (mc) s += estimate_csv_row("monte-carlo", *mc);
      return s;
    }
    case Format::text:
      break;
  }
  std::string s = num(closed) + "\n";
  if (mc) s += "monte-carlo " + estimate_text(*mc);
  return s;
}

std::string run_constant_heisenberg(const ConstantArgs& a, const Globals& g) {
  const EnergyEstimate c = c_heisenberg_mc(a.p, a.samples, Stream(g.seed_or_default()), g.exec());
  switch (g.format_or(Format::text)) {
    case Format::json: {
      Json j{{"p", a.p}};
      j["monte_carlo"] = estimate_json(c);
      return j.dump(2) + "\n";
    }
    case Format::csv:
      return "source,value,std_error,samples\n" + estimate_csv_row("monte-carlo", c);
    case Format::text:
      break;
  }
  return estimate_text(c);
}

// --- distance ------------------------------------------------------------

std::string run_distance(const std::string& xs, const std::string& ys, const Globals& g) {
  const heisenberg::HPoint x = parse_hpoint(xs, "--x");
  const heisenberg::HPoint y = parse_hpoint(ys, "--y");
  const double d = heisenberg::cc_distance(x, y);
  switch (g.format_or(Format::text)) {
    case Format::json:
      return Json{{"x", {x[0], x[1], x[2]}}, {"y", {y[0], y[1], y[2]}}, {"distance", d}}.dump(2) + "\n";
    case Format::csv:
      return "distance\n" + num(d) + "\n";
    case Format::text:
      break;
  }
  return num(d) + "\n";
}

// --- busemann ------------------------------------------------------------

struct BusemannArgs {
  std::string dir = "1,0";
  std::string z;
  double s_min = 10.0;
  double s_max = 1000.0;
  int points = 3;
  int sign = 1;
};

// Returns the report and whether |b_s - limit| <= 5 / s at the largest s
// with a nonincreasing sequence.
std::pair<std::string, bool> run_busemann(const BusemannArgs& a, const Globals& g) {
  if (a.points < 1) throw UsageError("--points must be >= 1");
  if (!(a.s_min > 0.0) || !(a.s_max >= a.s_min)) throw UsageError("need 0 < --s-min <= --s-max");
  if (a.sign != 1 && a.sign != -1) throw UsageError("--sign must be 1 or -1");
  const std::vector<double> dir = parse_list(a.dir, "--dir", 2);
  heisenberg::BusemannProbe probe{Eigen::Vector2d(dir[0], dir[1]), parse_hpoint(a.z, "--z"), {}};
  if (a.points == 1) {
    probe.s_values.push_back(a.s_max);
  } else {
    const double ratio = a.s_max / a.s_min;
    for (int k = 0; k < a.points; ++k) probe.s_values.push_back(a.s_min * std::pow(ratio, double(k) / (a.points - 1)));
    probe.s_values.back() = a.s_max;
  }
  const auto samples = heisenberg::busemann(probe, a.sign);
  const auto summary = heisenberg::summarize_busemann(probe, a.sign, samples);
  const double error = std::abs(summary.last_value - summary.limit);
  const bool pass = summary.monotone && error <= 5.0 / a.s_max;

  std::string s;
  switch (g.format_or(Format::text)) {
    case Format::json: {
      Json rows = Json::array();
      for (const auto& b : samples) rows.push_back(Json{{"s", b.s}, {"value", b.value}});
      Json j{{"direction", dir},   {"z", {probe.z[0], probe.z[1], probe.z[2]}},
             {"sign", a.sign},     {"samples", rows},
             {"limit", summary.limit}, {"last_error", error},
             {"rate_constant", summary.rate_constant}, {"monotone", summary.monotone},
             {"verdict", pass ? "pass" : "fail"}};
      s = j.dump(2) + "\n";
      break;
    }
    case Format::csv:
      s = "s,value\n";
      for (const auto& b : samples) s += num(b.s) + "," + num(b.value) + "\n";
      s += "limit," + num(summary.limit) + "\nverdict," + (pass ? "pass" : "fail") + "\n";
      break;
    case Format::text:
      for (const auto& b : samples) s += "s " + num(b.s) + " b " + num(b.value) + "\n";
      s += "limit " + num(summary.limit) + " error " + num(error) + " bound " + num(5.0 / a.s_max) +
           (summary.monotone ? " monotone" : " not-monotone") + (pass ? " pass" : " fail") + "\n";
      break;
  }
  return {s, pass};
}

// --- quotient ------------------------------------------------------------

struct QuotientArgs {
  std::string space;
  std::string function;
  double p = 2.0;
  double r = 0.0;
  std::size_t outer = 1u << 16;
  std::size_t inner = 1;
  std::string x;
};

std::string run_quotient(const QuotientArgs& a, const Globals& g) {
  const ModelSpace space = make_space(PresetSpec::parse(a.space));
  const TestFunction f = make_test_function(PresetSpec::parse(a.function), space);
  const Stream rng(g.seed_or_default());
  const bool pointwise = !a.x.empty();
  const EnergyEstimate e = pointwise
                               ? pointwise_quotient(space, f, parse_point(space, a.x), a.p, a.r, a.outer, rng, g.exec())
                               : global_quotient(space, f, a.p, a.r, {a.outer, a.inner}, rng, g.exec());
  const char* mode = pointwise ? "pointwise" : "global";
  switch (g.format_or(Format::text)) {
    case Format::json: {
      Json j{{"space", a.space}, {"function", a.function}, {"p", a.p}, {"r", a.r}, {"mode", mode}};
      j["estimate"] = estimate_json(e);
      return j.dump(2) + "\n";
    }
    case Format::csv:
      return "mode,value,std_error,samples\n" + estimate_csv_row(mode, e);
    case Format::text:
      break;
  }
  return estimate_text(e);
}

// --- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string config_file;
  std::string space;
  std::string function;
  std::optional<double> p;
  std::optional<double> r_max;
  std::optional<double> r_min;
  std::optional<int> levels;
  std::optional<std::size_t> outer;
  std::optional<std::size_t> inner;
  std::optional<double> tolerance;
  std::optional<double> residual_bound;
  std::optional<std::size_t> constant_samples;
  std::optional<std::size_t> cheeger_samples;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SweepConfig build_config(const SweepArgs& a, const Globals& g) {
  SweepConfig c;
  if (!a.config_file.empty()) {
    c = parse_config(read_file(a.config_file));
  } else if (a.space.empty() || a.function.empty()) {
    throw UsageError("sweep: give --config or both --space and --function");
  }
  if (!a.space.empty()) c.space = PresetSpec::parse(a.space);
  if (!a.function.empty()) c.function = PresetSpec::parse(a.function);
  if (a.p) c.p = *a.p;
  if (a.r_max) c.r_max = *a.r_max;
  if (a.r_min) c.r_min = *a.r_min;
  if (a.levels) c.levels = *a.levels;
  if (a.outer) c.outer_samples = *a.outer;
  if (a.inner) c.inner_samples = *a.inner;
  if (a.tolerance) c.tolerance = *a.tolerance;
  if (a.residual_bound) c.residual_bound = *a.residual_bound;
  if (a.constant_samples) c.constant_samples = *a.constant_samples;
  if (a.cheeger_samples) c.cheeger_samples = *a.cheeger_samples;
  if (g.seed) c.seed = *g.seed;
  c.validate();
  return c;
}

std::string sweep_text(const SweepReport& r) {
  std::ostringstream s;
  for (const auto& pt : r.points)
    s << "r " << num(pt.r) << " Q " << num(pt.estimate.value) << " std_error " << num(pt.estimate.std_error) << "\n";
  s << "limit " << num(r.fit.limit) << " +- " << num(r.fit.limit_sigma);
  if (r.fit.rate) s << " rate " << num(*r.fit.rate);
  if (r.fit.fallback) s << " (fallback to smallest r)";
  s << "\nreference " << num(r.reference.value) << " = " << num(r.reference.constant) << " x "
    << num(r.reference.cheeger) << " [" << r.reference.tangent << "]\n";
  s << "deviation " << num(r.deviation) << " tolerance " << num(*r.config.tolerance) << " "
    << (r.pass ? "pass" : "fail") << "\n";
  return s.str();
}

std::string render_sweep(const SweepReport& r, const Globals& g) {
  switch (g.format_or(Format::json)) {
    case Format::json:
      return render_json(r);
    case Format::csv:
      return render_csv(r);
    case Format::text:
      break;
  }
  return sweep_text(r);
}

std::string render_demo(const GluedDemo& d, const Globals& g) {
  switch (g.format_or(Format::json)) {
    case Format::json:
      return render_json(d);
    case Format::csv:
      return render_csv(d);
    case Format::text:
      break;
  }
  std::ostringstream s;
  s << "# bump on the R^4 side\n" << sweep_text(d.euclidean_side) << "# bump on the H^1 side\n"
    << sweep_text(d.heisenberg_side);
  s << "limit/Ch: R^4 side " << num(d.ratio_euclidean) << " +- " << num(d.ratio_euclidean_sigma) << ", H^1 side "
    << num(d.ratio_heisenberg) << " +- " << num(d.ratio_heisenberg_sigma) << "\n";
  s << "separation " << num(d.separation) << " sigma " << (d.pass ? "pass" : "fail") << "\n";
  return s.str();
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw UsageError("cannot write " + g.out);
  file << text;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Difference-quotient energies on model metric measure spaces", "bbmlab"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed (default 1)");
  app.add_option("--out", g.out, "Write the result to this file");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--workers", g.workers, "Worker threads; results do not depend on it")
      ->check(CLI::Range(1u, 1024u));

  ConstantArgs constant;
  auto* constant_cmd = app.add_subcommand("constant", "Tangent constants C_{p,N} and C_{p,H^1}");
  constant_cmd->require_subcommand(1);
  auto* ce = constant_cmd->add_subcommand("euclidean", "C_{p,N}, closed form and optional Monte-Carlo");
  ce->add_option("--p", constant.p)->required();
  ce->add_option("--n", constant.n)->required();
  ce->add_flag("--mc", constant.mc, "Also estimate by Monte-Carlo");
  ce->add_option("--samples", constant.samples, "Monte-Carlo samples");
  auto* ch = constant_cmd->add_subcommand("heisenberg", "C_{p,H^1} by Monte-Carlo");
  ch->add_option("--p", constant.p)->required();
  ch->add_option("--samples", constant.samples, "Monte-Carlo samples");

  std::string dx, dy;
  auto* distance_cmd = app.add_subcommand("distance", "Distances");
  distance_cmd->require_subcommand(1);
  auto* dh = distance_cmd->add_subcommand("h1", "Carnot-Caratheodory distance on H^1");
  dh->add_option("--x", dx, "a,b,c")->required();
  dh->add_option("--y", dy, "a,b,c")->required();

  BusemannArgs busemann;
  auto* bu = app.add_subcommand("busemann", "b_s(z) = d(z, gamma(s)) - s along a horizontal line");
  bu->add_option("--dir", busemann.dir, "Unit direction a,b");
  bu->add_option("--z", busemann.z, "a,b,c")->required();
  bu->add_option("--s-min", busemann.s_min);
  bu->add_option("--s-max", busemann.s_max);
  bu->add_option("--points", busemann.points, "Geometric grid size");
  bu->add_option("--sign", busemann.sign, "1 or -1");

  QuotientArgs quotient;
  auto* qu = app.add_subcommand("quotient", "Q_{r,p}(f), global or at a point");
  qu->add_option("--space", quotient.space)->required();
  qu->add_option("--function", quotient.function)->required();
  qu->add_option("--p", quotient.p);
  qu->add_option("--r", quotient.r)->required();
  qu->add_option("--outer", quotient.outer);
  qu->add_option("--inner", quotient.inner);
  qu->add_option("--x", quotient.x, "Evaluate the pointwise quotient at this point");

  SweepArgs sweep;
  auto* sw = app.add_subcommand("sweep", "Sweep r, extrapolate to r -> 0, compare with C Ch_p");
  sw->add_option("--config", sweep.config_file, "JSON config");
  sw->add_option("--space", sweep.space);
  sw->add_option("--function", sweep.function);
  sw->add_option("--p", sweep.p);
  sw->add_option("--r-max", sweep.r_max);
  sw->add_option("--r-min", sweep.r_min);
  sw->add_option("--levels", sweep.levels);
  sw->add_option("--outer", sweep.outer);
  sw->add_option("--inner", sweep.inner);
  sw->add_option("--tolerance", sweep.tolerance);
  sw->add_option("--residual-bound", sweep.residual_bound);
  sw->add_option("--constant-samples", sweep.constant_samples);
  sw->add_option("--cheeger-samples", sweep.cheeger_samples);

  double demo_p = 4.0;
  auto* gd = app.add_subcommand("glued-demo", "Sweeps on both sides of the glued space");
  gd->add_option("--p", demo_p);

  for (auto* sub : {constant_cmd, ce, ch, distance_cmd, dh, bu, qu, sw, gd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    int code = kExitPass;
    std::string text;
    if (*ce) {
      text = run_constant_euclidean(constant, g);
    } else if (*ch) {
      text = run_constant_heisenberg(constant, g);
    } else if (*dh) {
      text = run_distance(dx, dy, g);
    } else if (*bu) {
      const auto [s, pass] = run_busemann(busemann, g);
      text = s;
      code = pass ? kExitPass : kExitFail;
    } else if (*qu) {
      text = run_quotient(quotient, g);
    } else if (*sw) {
      const SweepReport r = run_sweep(build_config(sweep, g), g.exec());
      text = render_sweep(r, g);
      code = r.pass ? kExitPass : kExitFail;
    } else if (*gd) {
      const GluedDemo d = run_glued_demo(demo_p, g.seed_or_default(), g.exec());
      text = render_demo(d, g);
      code = d.pass ? kExitPass : kExitFail;
    }
    emit(text, g, out);
    return code;
  } catch (const UsageError& e) {
    err << "bbmlab: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "bbmlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedRegime& e) {
    err << "bbmlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "bbmlab: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace bbm
