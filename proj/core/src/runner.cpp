#include "forge/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>
#include <vector>

#include "json.hpp"

#include "forge/cech.hpp"
#include "forge/curvature.hpp"
#include "forge/errors.hpp"
#include "forge/gen_engine.hpp"
#include "forge/joyce.hpp"
#include "forge/kahler.hpp"
#include "forge/so_engine.hpp"

namespace forge {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

HoloData data_from_json(const json& jd) {
  if (jd.contains("example")) {
    std::string ex = jd.at("example");
    if (ex != "fubini_study")
      throw ConfigError("unknown example: " + ex);
    double p1 = jd.at("p1"), p2 = jd.at("p2");
    return fubini_study_data(std::polar(1.0, p1), std::polar(1.0, p2));
  }
  double radius = jd.value("domain_radius", 1.0);
  bool reality = jd.value("reality", false);
  const json& jt = jd.at("tau");
  std::string kind = jt.at("kind");
  if (kind == "rational_d2") {
    const json& jl = jd.at("lambda");
    if (!jl.is_array() || jl.size() != 2)
      throw ConfigError("lambda must be a pair of expressions");
    std::array<ExprPtr, 2> le;
    for (int i = 0; i < 2; ++i) le[i] = parse(jl.at(i).get<std::string>());
    return make_holo_rational_d2(le, radius, reality);
  }
  TauSpec tau;
  if (kind == "linear") {
    tau.kind = TauKind::Linear;
  } else if (kind == "tau_c") {
    tau.kind = TauKind::TauC;
    const json& jc = jt.at("c");
    tau.c = cx{jc.at(0).get<double>(), jc.at(1).get<double>()};
  } else {
    throw ConfigError("unknown tau kind: " + kind);
  }
  const json& jp = jd.at("phi");
  if (!jp.is_array() || jp.size() != 2)
    throw ConfigError("phi must be a pair of expressions");
  std::array<ExprPtr, 2> pe;
  for (int i = 0; i < 2; ++i) pe[i] = parse(jp.at(i).get<std::string>());
  return make_holo(tau, pe, radius, reality);
}

std::vector<double> axis_values(const GridAxis& a) {
  std::vector<double> v;
  if (a.count <= 1) {
    v.push_back(a.lo);
    return v;
  }
  for (int i = 0; i < a.count; ++i)
    v.push_back(a.lo + (a.hi - a.lo) * i / (a.count - 1));
  return v;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << j.dump(2) << "\n";
}

MetricFn real_metric_fn(const HoloData& data) {
  return [data](const Vec4& x) -> Mat4 {
    MetricSample m = real_metric(data, x);
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = m.g[i][j].real();
    return g;
  };
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  try {
    if (j.value("schema", 0) != 1) throw ConfigError("config schema must be 1");
    RunConfig cfg;
    cfg.data = data_from_json(j.at("data"));
    const char* names[4] = {"x", "y", "u1", "u2"};
    if (j.contains("grid")) {
      for (int i = 0; i < 4; ++i) {
        if (!j["grid"].contains(names[i])) continue;
        const json& ja = j["grid"][names[i]];
        cfg.grid[i] = GridAxis{ja.at(0).get<double>(), ja.at(1).get<double>(),
                               ja.at(2).get<int>()};
        if (cfg.grid[i].count < 1) throw ConfigError("grid count must be >= 1");
      }
    } else {
      cfg.grid = {GridAxis{0.15, 0.75, 4}, GridAxis{0.2, 0.8, 4},
                  GridAxis{0, 0, 1}, GridAxis{0, 0, 1}};
    }
    if (j.contains("tolerances")) {
      for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it) {
        double v = it.value().get<double>();
        if (v <= 0) throw ConfigError("tolerances must be positive");
        cfg.tolerances[it.key()] = v;
      }
    }
    cfg.out_dir = j.value("out", std::string("."));
    cfg.jobs = j.value("jobs", 1);
    cfg.seed = j.value("seed", 1ull);
    if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

int cmd_validate(const RunConfig& config) {
  ValidationReport rep = validate(config.data);
  json j;
  j["tau"] = {{"pass", rep.tau_ok}, {"residual", rep.tau_residual}};
  j["oddness"] = {{"pass", rep.odd_ok}, {"residual", rep.odd_residual}};
  j["independence"] = {{"pass", rep.independent_ok}, {"det", rep.det_abs}};
  j["reality"] = {{"pass", rep.reality_ok}, {"residual", rep.reality_residual}};
  bool period_ok = true;
  try {
    double R = config.data.domain_radius;
    EllipticCover cover{cx{0.3 * R, 0}, cx{3.0 * R, 0}};
    auto p = period_check(config.data, cover);
    double pm = std::max(std::abs(p[0]), std::abs(p[1]));
    period_ok = pm < config.tol("period", 1e-10);
    j["period"] = {{"pass", period_ok}, {"residual", pm}};
  } catch (const Error& e) {
    period_ok = false;
    j["period"] = {{"pass", false}, {"error", e.what()}};
  }
  std::filesystem::create_directories(config.out_dir);
  write_json(config.out_dir + "/validate.json", j);
  std::printf("%s\n", j.dump(2).c_str());
  return (rep.pass() && period_ok) ? 0 : 1;
}

int cmd_metric(const RunConfig& config) {
  auto xs = axis_values(config.grid[0]);
  auto ys = axis_values(config.grid[1]);
  auto u1 = axis_values(config.grid[2]);
  auto u2 = axis_values(config.grid[3]);
  struct Row {
    Vec4 x;
    bool ok = false;
    Mat4 g{};
    std::string error;
  };
  std::vector<Row> rows;
  for (double a : xs)
    for (double b : ys)
      for (double c : u1)
        for (double d : u2) rows.push_back(Row{{a, b, c, d}});

  HoloData data = reality_complete(config.data);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < rows.size(); i += step) {
      try {
        MetricSample m = real_metric(data, rows[i].x);
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q) rows[i].g[p][q] = m.g[p][q].real();
        rows[i].ok = true;
      } catch (const Error& e) {
        rows[i].error = e.what();
      }
    }
  };
  int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back(work, std::size_t(t), std::size_t(jobs));
    for (auto& t : pool) t.join();
  }

  std::filesystem::create_directories(config.out_dir);
  std::ofstream csv(config.out_dir + "/metric.csv");
  std::ofstream err(config.out_dir + "/metric_errors.csv");
  if (!csv || !err) throw ConfigError("cannot write output files");
  csv << "x1,x2,v1,v2,g11,g12,g13,g14,g22,g23,g24,g33,g34,g44\n";
  std::size_t failures = 0;
  for (const Row& r : rows) {
    if (!r.ok) {
      ++failures;
      err << fmt(r.x[0]) << ',' << fmt(r.x[1]) << ',' << fmt(r.x[2]) << ','
          << fmt(r.x[3]) << ',' << r.error << "\n";
      continue;
    }
    csv << fmt(r.x[0]) << ',' << fmt(r.x[1]) << ',' << fmt(r.x[2]) << ','
        << fmt(r.x[3]);
    for (int p = 0; p < 4; ++p)
      for (int q = p; q < 4; ++q) csv << ',' << fmt(r.g[p][q]);
    csv << "\n";
  }
  return failures * 100 > rows.size() ? 1 : 0;
}

int cmd_verify(const RunConfig& config) {
  json j;
  std::string failed;
  try {
    ValidationReport vrep = validate(config.data);
    j["validate_pass"] = vrep.pass();
    if (!vrep.pass() && failed.empty()) failed = "validation";

    HoloData data = reality_complete(config.data);
    MetricFn g = real_metric_fn(data);

    // ASD gate over up to 20 interior grid points
    auto xs = axis_values(config.grid[0]);
    auto ys = axis_values(config.grid[1]);
    std::vector<Vec4> pts;
    for (double a : xs)
      for (double b : ys) {
        if (pts.size() >= 20) break;
        pts.push_back(Vec4{a, b, 0.0, 0.0});
      }
    double asd_tol = config.tol("asd", 1e-4);
    CurvatureReport crep = assess_asd(g, pts, asd_tol, 1e-3);
    j["asd"] = {{"vanishing_side", crep.vanishing_side},
                {"max_ratio", crep.max_vanish_ratio},
                {"signature_consistent", crep.signature_consistent},
                {"points", pts.size()}};
    if (crep.vanishing_side == "none" && failed.empty()) failed = "asd";

    // conformal Killing residuals for the torus directions
    double kill = 0;
    for (int dir = 2; dir < 4; ++dir) {
      VectorFn X = [dir](const Vec4&) {
        Vec4 v{};
        v[dir] = 1.0;
        return v;
      };
      kill = std::max(kill, conformal_killing_residual(g, X, pts.front()));
    }
    j["killing_residual"] = kill;
    if (kill > config.tol("killing", 1e-8) && failed.empty())
      failed = "killing";

    // G-equation residual at seeded admissible (r, s)
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double pde = 0;
    for (int it = 0; it < 5; ++it) {
      double rr = 0.05 + 0.1 * unif(rng);
      double ra = 2 * kPi * unif(rng);
      cx r = std::polar(rr, ra);
      cx s = 1.0 / std::conj(r);
      double h = 1e-4;
      auto A_at = [&](cx ss) { return compute_AB(data, r, ss).A; };
      auto a_p = A_at(s + h), a_m = A_at(s - h);
      ABPair ab = compute_AB(data, r, s);
      for (int i = 0; i < 2; ++i) {
        cx grs = (a_p[i] - a_m[i]) / (2.0 * h);
        cx rhs = (ab.A[i] - ab.B[i]) / (2.0 * (r - s));
        pde = std::max(pde, std::abs(grs - rhs));
      }
    }
    j["pde_residual"] = pde;
    if (pde > config.tol("pde", 1e-6) && failed.empty()) failed = "pde";

    // Kahler verdict
    KahlerVerdict kv = classify(config.data);
    j["kahler"] = {{"is_tau_c", kv.is_tau_c},
                   {"c", {kv.c.real(), kv.c.imag()}},
                   {"residual", kv.residual},
                   {"kahler", kv.kahler},
                   {"lagrangian", kv.lagrangian}};

    // d = 2 crosscheck for rational densities
    if (config.data.lambda_exprs[0]) {
      cx r{0.08, 0.02};
      cx s = 1.0 / std::conj(r);
      MNPair res = compute_MN(data, r, s);
      MNPair cf = compute_MN_closed_form(data, r, s);
      // each route fixes the square-root branch independently, so compare
      // up to one overall sign per frame vector
      double sm = std::abs(res.M[0] - cf.M[0]) < std::abs(res.M[0] + cf.M[0])
                      ? 1.0
                      : -1.0;
      double sn = std::abs(res.N[0] - cf.N[0]) < std::abs(res.N[0] + cf.N[0])
                      ? 1.0
                      : -1.0;
      double diff = 0, scale = 0;
      for (int i = 0; i < 2; ++i) {
        diff = std::max({diff, std::abs(res.M[i] - sm * cf.M[i]),
                         std::abs(res.N[i] - sn * cf.N[i])});
        scale = std::max({scale, std::abs(cf.M[i]), std::abs(cf.N[i])});
      }
      double rel = diff / std::max(scale, 1e-30);
      j["mn_crosscheck"] = rel;
      if (rel > config.tol("crosscheck", 1e-8) && failed.empty())
        failed = "crosscheck";
    }
  } catch (const NoConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  } catch (const ResolutionError& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  }
  j["failed_gate"] = failed;
  std::filesystem::create_directories(config.out_dir);
  write_json(config.out_dir + "/verify.json", j);
  std::printf("%s\n", j.dump(2).c_str());
  return failed.empty() ? 0 : 1;
}

int cmd_example(const std::string& name, const std::string& out_dir) {
  json j;
  j["schema"] = 1;
  // fubini_study: keep x between the corners at +-cot(pi/3) and y above the
  // circle through them, where the chart frame stays nondegenerate
  if (name == "fubini_study") {
    j["grid"] = {{"x", {-0.35, 0.35, 4}},
                 {"y", {0.65, 1.35, 4}},
                 {"u1", {0.0, 0.0, 1}},
                 {"u2", {0.0, 0.0, 1}}};
  } else {
    j["grid"] = {{"x", {0.15, 0.75, 4}},
                 {"y", {0.2, 0.8, 4}},
                 {"u1", {0.0, 0.0, 1}},
                 {"u2", {0.0, 0.0, 1}}};
  }
  if (name == "linear") {
    j["data"] = {{"tau", {{"kind", "linear"}}},
                 {"phi", {"z", "i*z"}},
                 {"domain_radius", 10.0},
                 {"reality", true}};
  } else if (name == "fubini_study") {
    j["data"] = {{"example", "fubini_study"},
                 {"p1", kPi / 3.0},
                 {"p2", 2.0 * kPi / 3.0}};
  } else if (name == "rational_d2") {
    j["data"] = {{"tau", {{"kind", "rational_d2"}}},
                 {"lambda", {"z - 2 + 1/z", "-(z + 2 + 1/z)"}},
                 {"domain_radius", 10.0},
                 {"reality", true}};
  } else {
    throw ConfigError("unknown example: " + name);
  }
  std::filesystem::create_directories(out_dir);
  write_json(out_dir + "/" + name + ".json", j);
  std::printf("wrote %s/%s.json\n", out_dir.c_str(), name.c_str());
  return 0;
}

}  // namespace forge
