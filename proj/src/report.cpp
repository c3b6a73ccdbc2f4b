#include <charconv>
#include <cmath>
#include <sstream>

#include "bbm/errors.hpp"
#include "bbm/sweep.hpp"
#include "json.hpp"

namespace bbm {
namespace {

using Json = nlohmann::ordered_json;

std::string number(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_or_nan(const Json& j) { return j.is_null() ? std::nan("") : j.get<double>(); }

Json config_json(const SweepConfig& c) {
  Json j;
  j["space"] = c.space.to_string();
  j["function"] = c.function.to_string();
  j["p"] = c.p;
  j["r_max"] = c.r_max;
  j["r_min"] = c.r_min ? Json(*c.r_min) : Json(nullptr);
  j["levels"] = c.levels;
  j["outer_samples"] = c.outer_samples;
  j["inner_samples"] = c.inner_samples;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance ? Json(*c.tolerance) : Json(nullptr);
  j["residual_bound"] = c.residual_bound;
  j["constant_samples"] = c.constant_samples;
  j["cheeger_samples"] = c.cheeger_samples;
  return j;
}

SweepConfig config_from(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const char* known[] = {"space",  "function",  "p",              "r_max",           "r_min",
                                "levels", "outer_samples", "inner_samples", "seed",         "tolerance",
                                "residual_bound", "constant_samples", "cheeger_samples"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw UsageError("config: unknown key '" + item.key() + "'");
  }
  SweepConfig c;
  try {
    if (!j.contains("space") || !j.contains("function")) throw UsageError("config: space and function are required");
    c.space = PresetSpec::parse(j.at("space").get<std::string>());
    c.function = PresetSpec::parse(j.at("function").get<std::string>());
    if (j.contains("p")) c.p = j.at("p").get<double>();
    if (j.contains("r_max")) c.r_max = j.at("r_max").get<double>();
    if (j.contains("r_min") && !j.at("r_min").is_null()) c.r_min = j.at("r_min").get<double>();
    if (j.contains("levels")) c.levels = j.at("levels").get<int>();
    if (j.contains("outer_samples")) c.outer_samples = j.at("outer_samples").get<std::size_t>();
    if (j.contains("inner_samples")) c.inner_samples = j.at("inner_samples").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerance") && !j.at("tolerance").is_null()) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("residual_bound")) c.residual_bound = j.at("residual_bound").get<double>();
    if (j.contains("constant_samples")) c.constant_samples = j.at("constant_samples").get<std::size_t>();
    if (j.contains("cheeger_samples")) c.cheeger_samples = j.at("cheeger_samples").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  return c;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string render_config(const SweepConfig& config) { return config_json(config).dump(2) + "\n"; }

SweepConfig parse_config(const std::string& json) { return config_from(parse_text(json)); }

namespace {

Json report_json(const SweepReport& r) {
  Json j;
  j["config"] = config_json(r.config);
  Json points = Json::array();
  for (const auto& pt : r.points) {
    points.push_back(Json{{"r", pt.r},
                          {"value", pt.estimate.value},
                          {"std_error", pt.estimate.std_error},
                          {"samples", pt.estimate.samples}});
  }
  j["points"] = points;
  const Extrapolation& f = r.fit;
  j["fit"] = Json{{"limit", finite_or_null(f.limit)},
                  {"limit_sigma", finite_or_null(f.limit_sigma)},
                  {"fitted_limit", finite_or_null(f.fitted_limit)},
                  {"rate", f.rate ? Json(*f.rate) : Json(nullptr)},
                  {"coefficient", finite_or_null(f.coefficient)},
                  {"residual", finite_or_null(f.residual)},
                  {"weighted", f.weighted},
                  {"degenerate_rate", f.degenerate_rate},
                  {"fallback", f.fallback}};
  const Reference& ref = r.reference;
  j["reference"] = Json{{"tangent", ref.tangent},
                        {"constant", ref.constant},
                        {"constant_sigma", ref.constant_sigma},
                        {"constant_source", ref.constant_source},
                        {"constant_samples", ref.constant_samples},
                        {"cheeger", ref.cheeger},
                        {"cheeger_sigma", ref.cheeger_sigma},
                        {"cheeger_source", ref.cheeger_source},
                        {"cheeger_samples", ref.cheeger_samples},
                        {"value", ref.value},
                        {"value_sigma", ref.value_sigma},
                        {"source", ref.constant_source + " constant x " + ref.cheeger_source + " Cheeger energy"}};
  j["uniform_bound"] = Json{{"constant", r.uniform_bound.constant},
                            {"bound", r.uniform_bound.bound},
                            {"max_quotient", r.uniform_bound.max_quotient},
                            {"violated", r.uniform_bound.violated}};
  j["deviation"] = finite_or_null(r.deviation);
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

}  // namespace

std::string render_json(const SweepReport& r) { return report_json(r).dump(2) + "\n"; }

std::string render_json(const GluedDemo& d) {
  Json j;
  j["p"] = d.p;
  j["sweeps"] = Json{{"euclidean4", report_json(d.euclidean_side)}, {"heisenberg1", report_json(d.heisenberg_side)}};
  j["ratios"] = Json{{"euclidean4", finite_or_null(d.ratio_euclidean)},
                     {"euclidean4_sigma", finite_or_null(d.ratio_euclidean_sigma)},
                     {"heisenberg1", finite_or_null(d.ratio_heisenberg)},
                     {"heisenberg1_sigma", finite_or_null(d.ratio_heisenberg_sigma)}};
  j["separation_sigma"] = finite_or_null(d.separation);
  j["verdict"] = d.pass ? "pass" : "fail";
  return j.dump(2) + "\n";
}

SweepReport parse_report(const std::string& text) {
  const Json j = parse_text(text);
  SweepReport r;
  try {
    r.config = config_from(j.at("config"));
    for (const auto& pt : j.at("points")) {
      r.points.push_back({pt.at("r").get<double>(),
                          EnergyEstimate{pt.at("value").get<double>(), pt.at("std_error").get<double>(),
                                         pt.at("samples").get<std::size_t>(), r.config.seed}});
    }
    const Json& f = j.at("fit");
    r.fit.limit = number_or_nan(f.at("limit"));
    r.fit.limit_sigma = number_or_nan(f.at("limit_sigma"));
    r.fit.fitted_limit = number_or_nan(f.at("fitted_limit"));
    if (!f.at("rate").is_null()) r.fit.rate = f.at("rate").get<double>();
    r.fit.coefficient = number_or_nan(f.at("coefficient"));
    r.fit.residual = number_or_nan(f.at("residual"));
    r.fit.weighted = f.at("weighted").get<bool>();
    r.fit.degenerate_rate = f.at("degenerate_rate").get<bool>();
    r.fit.fallback = f.at("fallback").get<bool>();
    const Json& ref = j.at("reference");
    r.reference.tangent = ref.at("tangent").get<std::string>();
    r.reference.constant = ref.at("constant").get<double>();
    r.reference.constant_sigma = ref.at("constant_sigma").get<double>();
    r.reference.constant_source = ref.at("constant_source").get<std::string>();
    r.reference.constant_samples = ref.at("constant_samples").get<std::size_t>();
    r.reference.cheeger = ref.at("cheeger").get<double>();
    r.reference.cheeger_sigma = ref.at("cheeger_sigma").get<double>();
    r.reference.cheeger_source = ref.at("cheeger_source").get<std::string>();
    r.reference.cheeger_samples = ref.at("cheeger_samples").get<std::size_t>();
    r.reference.value = ref.at("value").get<double>();
    r.reference.value_sigma = ref.at("value_sigma").get<double>();
    const Json& ub = j.at("uniform_bound");
    r.uniform_bound.constant = ub.at("constant").get<double>();
    r.uniform_bound.bound = ub.at("bound").get<double>();
    r.uniform_bound.max_quotient = ub.at("max_quotient").get<double>();
    r.uniform_bound.violated = ub.at("violated").get<bool>();
    r.deviation = number_or_nan(j.at("deviation"));
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "pass" && verdict != "fail") throw UsageError("report: verdict must be pass or fail");
    r.pass = verdict == "pass";
  } catch (const Json::exception& e) {
    throw UsageError(std::string("report: ") + e.what());
  }
  return r;
}

std::string render_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "r,value,std_error,samples\n";
  for (const auto& pt : r.points)
    out << number(pt.r) << ',' << number(pt.estimate.value) << ',' << number(pt.estimate.std_error) << ','
        << pt.estimate.samples << '\n';
  const Extrapolation& f = r.fit;
  out << "fit,limit=" << number(f.limit) << ",limit_sigma=" << number(f.limit_sigma)
      << ",rate=" << (f.rate ? number(*f.rate) : "none") << ",residual=" << number(f.residual)
      << ",fallback=" << (f.fallback ? "true" : "false") << '\n';
  const Reference& ref = r.reference;
  out << "reference,value=" << number(ref.value) << ",constant=" << number(ref.constant)
      << ",constant_sigma=" << number(ref.constant_sigma) << ",cheeger=" << number(ref.cheeger)
      << ",source=" << ref.constant_source << '/' << ref.cheeger_source << '\n';
  out << "verdict," << (r.pass ? "pass" : "fail") << ",deviation=" << number(r.deviation)
      << ",tolerance=" << number(r.config.tolerance.value_or(0.0)) << ",seed=" << r.config.seed << '\n';
  return out.str();
}

std::string render_csv(const GluedDemo& d) {
  std::ostringstream out;
  out << "# euclidean4\n" << render_csv(d.euclidean_side) << "# heisenberg1\n" << render_csv(d.heisenberg_side);
  out << "ratios,euclidean4=" << number(d.ratio_euclidean) << ",euclidean4_sigma=" << number(d.ratio_euclidean_sigma)
      << ",heisenberg1=" << number(d.ratio_heisenberg) << ",heisenberg1_sigma=" << number(d.ratio_heisenberg_sigma)
      << '\n';
  out << "demo," << (d.pass ? "pass" : "fail") << ",separation_sigma=" << number(d.separation) << '\n';
  return out.str();
}

}  // namespace bbm
