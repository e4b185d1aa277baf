#include "qpvi/acceptance.hpp"
#include "qpvi/continuum.hpp"
#include "qpvi/laxpair.hpp"
#include "qpvi/opuc.hpp"
#include "qpvi/painleve.hpp"
#include "qpvi/qseries.hpp"
#include "qpvi/weyl.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace qpvi;
using nlohmann::json;

constexpr const char* kVersion = "1.0.0";
constexpr int kSchema = 1;

enum Exit { kOk = 0, kFail = 1, kConfig = 2, kNumerical = 3 };

struct Options {
  std::string a = "0.3,0.2";
  std::string b = "0.5";
  std::string q = "0.5";
  int N = 20;
  int K = -1;  // -1: N + 4
  unsigned prec = default_precision_bits();
  double tol = 0;
  std::uint64_t seed = 20241019;
  int jobs = 1;
  std::string format = "json";
  std::string out;
  std::string preset;
  // orbit
  int n_start = 1;
  int steps = 10;
  // weyl
  int points = 20;
  // ode
  std::string t0 = "0.6", t1 = "0.3", u0 = "0.1", v0 = "2.0";
  int samples = 16;
  bool limit = true;
};

struct Resolved {
  QWeightParams p;
  int N, K;
};

bool given(CLI::App& app, const std::string& flag) { return app.count(flag) > 0; }

void apply_preset(Options& o, CLI::App& app) {
  if (o.preset.empty()) return;
  if (o.preset != "reference") throw ConfigError("unknown preset '" + o.preset + "' (known: reference)");
  if (!given(app, "--a")) o.a = "0.3,0.2";
  if (!given(app, "--b")) o.b = "0.5";
  if (!given(app, "--q")) o.q = "0.5";
  if (!given(app, "--N")) o.N = 20;
  if (!given(app, "--prec")) o.prec = 192;
}

Resolved resolve(const Options& o) {
  if (o.N < 1) throw ConfigError("--N must be >= 1");
  if (o.K != -1 && o.K < o.N) throw ConfigError("--K must be >= --N");
  if (o.jobs < 1) throw ConfigError("--jobs must be >= 1");
  if (o.tol < 0) throw ConfigError("--tol must be >= 0");
  Resolved r;
  r.p = QWeightParams{complex_from_string(o.a), complex_from_string(o.b), real_from_string(o.q), o.prec, Real(0)};
  r.p.validate();
  r.N = o.N;
  r.K = o.K == -1 ? o.N + 4 : o.K;
  return r;
}

json config_json(const std::string& command, const Options& o, const Resolved* r) {
  json c;
  c["command"] = command;
  if (r) {
    c["a"] = complex_json(r->p.a);
    c["b"] = complex_json(r->p.b);
    c["q"] = to_double(r->p.q);
    c["N"] = r->N;
    c["K"] = r->K;
  }
  c["prec"] = o.prec;
  c["tol"] = o.tol;
  c["seed"] = o.seed;
  c["jobs"] = o.jobs;
  c["format"] = o.format;
  if (!o.preset.empty()) c["preset"] = o.preset;
  return c;
}

json envelope(const std::string& command, const Options& o, const Resolved* r) {
  json j;
  j["qpvi_version"] = kVersion;
  j["schema"] = kSchema;
  j["config"] = config_json(command, o, r);
  return j;
}

class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot open --out file '" + path + "'");
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::string real_csv(const Real& x) { return to_string(x, 17); }

int cmd_moments(const Options& o) {
  ScopedPrecision guard(o.prec);
  Resolved r = resolve(o);
  const MomentTable t = moments(r.p, r.K, 0, true, Real(o.tol));
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << "k,re_c,im_c\n";
    for (int k = -t.K; k <= t.K; ++k) out.os() << k << ',' << real_csv(t.at(k).re) << ',' << real_csv(t.at(k).im) << '\n';
    return kOk;
  }
  json j = envelope("moments", o, &r);
  j["moments"] = to_json(t, r.p);
  out.os() << j.dump(2) << '\n';
  return kOk;
}

int cmd_verblunsky(const Options& o) {
  ScopedPrecision guard(o.prec);
  Resolved r = resolve(o);
  const MomentTable t = moments(r.p, r.K, 0, true, Real(o.tol));
  const VerblunskyTable vt = verblunsky_from_moments(t, r.N);
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << to_csv(vt);
    return kOk;
  }
  const auto orth = check_orthogonality(vt, t);
  const auto wr = wronskian_check(vt);
  json j = envelope("verblunsky", o, &r);
  j["verblunsky"] = to_json(vt);
  j["orthogonality"] = {{"max_orth", to_double(orth.max_orth)}, {"max_norm", to_double(orth.max_norm)}};
  j["wronskian"] = {{"max_residual", to_double(wr.max_residual)}};
  j["szego_star_residual"] = to_double(szego_star_residual(vt));
  out.os() << j.dump(2) << '\n';
  return kOk;
}

int cmd_lax(const Options& o) {
  ScopedPrecision guard(o.prec);
  Resolved r = resolve(o);
  if (r.N < 3) throw ConfigError("lax needs --N >= 3");
  const VerblunskyTable vt = verblunsky_from_moments(moments(r.p, r.K), r.N);
  const int last = r.N - 1;
  std::vector<LaxFit> fits(last + 1);
  for (int n = 1; n <= last; ++n) fits[n] = fit_A(vt, r.p, n, Real(o.tol));
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << "n,fit_residual,theta_residual,corner_residual,det_constancy,det_modulus_error,det_sign,compat_residual\n";
  }
  json chain = json::array();
  for (int n = 1; n <= last; ++n) {
    const Real theta = max_abs_coeff(fits[n].theta - theta_closed_form(vt, r.p, n));
    const Real corner = corner_check(fits[n].A, r.p, n).max();
    const auto det = det_law(fits[n].A, r.p, n);
    std::optional<Real> compat;
    if (n < last) compat = check_compat(fits[n].A, fits[n + 1].A, build_B(vt.alpha[n + 1]), r.p.q);
    if (o.format == "csv") {
      out.os() << n << ',' << real_csv(fits[n].residual) << ',' << real_csv(theta) << ',' << real_csv(corner) << ','
               << real_csv(det.constancy) << ',' << real_csv(det.modulus_error) << ',' << det.sign << ','
               << (compat ? real_csv(*compat) : std::string()) << '\n';
      continue;
    }
    json e;
    e["n"] = n;
    e["A"] = to_json(fits[n].A);
    e["fit_residual"] = to_double(fits[n].residual);
    e["theta_residual"] = to_double(theta);
    e["corner_residual"] = to_double(corner);
    e["det"] = {{"constant", complex_json(det.constant)},
                {"constancy", to_double(det.constancy)},
                {"modulus_error", to_double(det.modulus_error)},
                {"sign", det.sign}};
    e["compat_residual"] = compat ? json(to_double(*compat)) : json(nullptr);
    chain.push_back(e);
  }
  if (o.format == "csv") return kOk;
  json j = envelope("lax", o, &r);
  j["chain"] = chain;
  out.os() << j.dump(2) << '\n';
  return kOk;
}

int cmd_orbit(const Options& o) {
  if (o.n_start < 1) throw ConfigError("--n-start must be >= 1");
  if (o.steps < 1) throw ConfigError("--steps must be >= 1");
  ScopedPrecision guard(o.prec);
  Resolved r = resolve(o);
  // The Verblunsky chain is available while fit_A(n + 1) has alpha_{n+2}.
  const int chain_last = r.N - 2;
  const VerblunskyTable vt = verblunsky_from_moments(moments(r.p, r.K), r.N);
  SurfaceParams sp = params_from_weight(r.p, o.n_start);
  if (o.n_start > chain_last) throw ConfigError("--n-start must be <= N - 2 to seed the orbit from the chain");
  SurfaceCoords pt = extract_coords(fit_A(vt, r.p, o.n_start).A, sp).coords;
  Output out(o.out);
  if (o.format == "csv") out.os() << "n,re_y,im_y,re_xi,im_xi,re_kappa1,im_kappa1,coordinate_vs_chain,matrix_vs_chain\n";
  const json run = envelope("orbit", o, &r);
  for (int k = 1; k <= o.steps; ++k) {
    const int n = o.n_start + k - 1;
    const StepResult st = phi_step(pt, sp);
    std::optional<Real> coord_res, matrix_res;
    if (n + 1 <= chain_last) {
      const LaxFit here = fit_A(vt, r.p, n);
      const auto chain = extract_coords(fit_A(vt, r.p, n + 1).A, params_from_weight(r.p, n + 1)).coords;
      const auto mc = extract_coords(matrix_step(here.A, sp).A, sp.stepped()).coords;
      coord_res = std::max(rel_diff(st.coords.y, chain.y), rel_diff(st.coords.xi, chain.xi));
      matrix_res = std::max(rel_diff(mc.y, chain.y), rel_diff(mc.xi, chain.xi));
    }
    if (o.format == "csv") {
      out.os() << n + 1 << ',' << real_csv(st.coords.y.re) << ',' << real_csv(st.coords.y.im) << ','
               << real_csv(st.coords.xi.re) << ',' << real_csv(st.coords.xi.im) << ',' << real_csv(st.params.kappa1.re)
               << ',' << real_csv(st.params.kappa1.im) << ',' << (coord_res ? real_csv(*coord_res) : "") << ','
               << (matrix_res ? real_csv(*matrix_res) : "") << '\n';
    } else {
      json rec = run;
      rec["n"] = n + 1;
      rec["coords"] = to_json(st.coords);
      rec["params"] = to_json(st.params);
      rec["coordinate_vs_chain"] = coord_res ? json(to_double(*coord_res)) : json(nullptr);
      rec["matrix_vs_chain"] = matrix_res ? json(to_double(*matrix_res)) : json(nullptr);
      out.os() << rec.dump() << '\n';
    }
    pt = st.coords;
    sp = st.params;
  }
  return kOk;
}

int cmd_weyl(const Options& o) {
  if (o.points < 1) throw ConfigError("--points must be >= 1");
  ScopedPrecision guard(o.prec);
  const PicMap M = phi_pic();
  const auto tr = check_translation(M);
  Sampler rng(o.seed);
  SurfaceParams sp;
  sp.q = rng.uniform(0.2, 0.9);
  sp.kappa1 = rng.uniform_disc(0.3, 2);
  sp.kappa2 = rng.uniform_disc(0.3, 2);
  sp.theta1 = rng.uniform_disc(0.3, 2);
  for (auto& c : sp.c) c = rng.uniform_disc(0.3, 2);
  sp.theta2 = sp.kappa1 * sp.kappa2 * sp.c[0] * sp.c[1] * sp.c[2] * sp.c[3] / sp.theta1;
  Real step(0), closed(0);
  Complex f_ratio, g_ratio;
  json pts = json::array();
  for (int k = 0; k < o.points; ++k) {
    const SurfaceCoords pt{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)};
    const auto st = phi_step(pt, sp);
    const BPoint bp = to_bpoint(pt, sp);
    const BPoint comp = composite_map(bp);
    const BPoint nz = normalize_gauge(comp, st.params);
    Real d = std::max(rel_diff(nz.f, st.coords.xi), rel_diff(nz.g, st.coords.y));
    const Complex fr = fbar_printed(bp) / comp.f, gr = gbar_printed(bp) / comp.g;
    if (k == 0) {
      f_ratio = fr;
      g_ratio = gr;
    }
    const Real c = std::max(rel_diff(fr, f_ratio), rel_diff(gr, g_ratio));
    step = std::max(step, d);
    closed = std::max(closed, c);
    pts.push_back({{"point", to_json(pt)}, {"composite_vs_step", to_double(d)}, {"closed_form_ratio_drift", to_double(c)}});
  }
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << "check,value\n";
    out.os() << "picard_all," << tr.all() << "\ncomposite_vs_step," << real_csv(step) << "\nclosed_form_ratio_drift,"
             << real_csv(closed) << '\n';
    return kOk;
  }
  json j = envelope("weyl", o, nullptr);
  j["picard"] = {{"matrix", to_json(M)},
                 {"isometry", tr.isometry},
                 {"fixes_delta", tr.fixes_delta},
                 {"fixes_alpha0_3", tr.fixes_alpha0_3},
                 {"alpha4_shift", tr.alpha4_shift},
                 {"alpha5_shift", tr.alpha5_shift},
                 {"d_permutation", tr.d_permutation},
                 {"e2_image", tr.e2_image},
                 {"delta_root_sum", tr.delta_root_sum}};
  j["surface_params"] = to_json(sp);
  j["composite"] = {{"points", pts},
                    {"max_composite_vs_step", to_double(step)},
                    {"max_closed_form_ratio_drift", to_double(closed)},
                    {"fbar_over_composite", complex_json(f_ratio)},
                    {"gbar_over_composite", complex_json(g_ratio)}};
  out.os() << j.dump(2) << '\n';
  return tr.all() ? kOk : kNumerical;
}

int cmd_ode(const Options& o) {
  if (o.samples < 0) throw ConfigError("--samples must be >= 0");
  ScopedPrecision guard(o.prec);
  LimitConfig cfg = reference_limit_config();
  cfg.s0 = ODEState{complex_from_string(o.t0), complex_from_string(o.u0), complex_from_string(o.v0)};
  cfg.t1 = complex_from_string(o.t1);
  const Real tol = o.tol > 0 ? Real(o.tol) : pow2(-44);
  std::vector<Complex> at;
  for (int i = 1; i <= o.samples; ++i) at.push_back(cfg.s0.t + (cfg.t1 - cfg.s0.t) * Complex(Real(i) / Real(o.samples + 1)));
  const Trajectory tr = integrate(cfg.lp, cfg.s0, cfg.t1, tol, at);
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << trajectory_csv(tr);
    return kOk;
  }
  json j = envelope("ode", o, nullptr);
  json traj = json::array();
  for (const auto& s : tr.samples)
    traj.push_back({{"t", complex_json(s.t)}, {"u", complex_json(s.u)}, {"v", complex_json(s.v)}});
  j["limit_params"] = {{"K1", complex_json(cfg.lp.K1)}, {"K2", complex_json(cfg.lp.K2)}, {"T1", complex_json(cfg.lp.T1)},
                       {"T2", complex_json(cfg.lp.T2)}};
  j["limit_params"]["C"] = json::array();
  for (const auto& c : cfg.lp.C) j["limit_params"]["C"].push_back(complex_json(c));
  j["trajectory"] = traj;
  j["accepted_steps"] = tr.accepted_steps;
  j["rejected_steps"] = tr.rejected_steps;
  if (o.limit) j["limit_check"] = to_json(limit_check(cfg));
  out.os() << j.dump(2) << '\n';
  return kOk;
}

int cmd_verify_all(const Options& o) {
  // The weight is parsed at the run precision; each criterion then sets its own.
  ScopedPrecision parse_guard(o.prec);
  Resolved r = resolve(o);
  AcceptanceConfig cfg;
  cfg.weight = r.p;
  cfg.N = r.N;
  cfg.prec = o.prec;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  if (cfg.N < 20) throw ConfigError("verify-all needs --N >= 20");
  const auto results = run_acceptance(cfg);
  int failed = 0;
  for (const auto& res : results) {
    std::cerr << format_line(res) << '\n';
    if (!res.pass) ++failed;
  }
  Output out(o.out);
  if (o.format == "csv") {
    out.os() << "id,name,pass,value,tolerance\n";
    for (const auto& res : results)
      out.os() << res.id << ',' << res.name << ',' << res.pass << ',' << res.value << ',' << res.tolerance << '\n';
  } else {
    json j = envelope("verify-all", o, &r);
    j["criteria"] = to_json(results);
    j["failed"] = failed;
    out.os() << j.dump(2) << '\n';
  }
  if (failed) {
    std::cerr << "failed checks:";
    for (const auto& res : results)
      if (!res.pass) std::cerr << ' ' << res.id << " (" << res.name << ')';
    std::cerr << '\n';
  }
  return failed ? kNumerical : kOk;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--a", o.a, "weight parameter a as \"re,im\"");
  sub->add_option("--b", o.b, "weight parameter b as \"re,im\"");
  sub->add_option("--q", o.q, "q in (0,1)");
  sub->add_option("--N", o.N, "largest polynomial degree");
  sub->add_option("--K", o.K, "moments c_-K..c_K (default N + 4)");
  sub->add_option("--prec", o.prec, "working precision in bits (default QPVI_PREC or 128)")->check(CLI::Range(53u, 100000u));
  sub->add_option("--tol", o.tol, "tolerance override (0 keeps the precision-derived default)");
  sub->add_option("--seed", o.seed, "seed for random-point checks");
  sub->add_option("--jobs", o.jobs, "worker threads for independent checks");
  sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--preset", o.preset, "named configuration: reference");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-Painleve VI from orthogonal polynomials on the unit circle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Sub subs[] = {
      {"moments", "trigonometric moments of the weight", cmd_moments},
      {"verblunsky", "Verblunsky coefficients with orthogonality and Wronskian reports", cmd_verblunsky},
      {"lax", "fitted A_n chain with closed-form, compatibility and determinant residuals", cmd_lax},
      {"orbit", "(y, xi) orbit of the q-Painleve map with route residuals, one JSON record per line", cmd_orbit},
      {"weyl", "Picard lattice checks and the reflection composite against the map", cmd_weyl},
      {"ode", "continuum system trajectory and discrete-to-continuous limit check", cmd_ode},
      {"verify-all", "full acceptance suite", cmd_verify_all},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    cmds.emplace_back(sub, s.run);
    const std::string name = s.name;
    if (name == "orbit") {
      sub->add_option("--n-start", o.n_start, "first index n");
      sub->add_option("--steps", o.steps, "number of map steps");
    } else if (name == "weyl") {
      sub->add_option("--points", o.points, "random points for the composite check");
    } else if (name == "ode") {
      sub->add_option("--t0", o.t0, "initial t as \"re,im\"");
      sub->add_option("--t1", o.t1, "final t as \"re,im\"");
      sub->add_option("--u0", o.u0, "initial u as \"re,im\"");
      sub->add_option("--v0", o.v0, "initial v as \"re,im\"");
      sub->add_option("--samples", o.samples, "interior trajectory samples");
      sub->add_flag("!--no-limit-check", o.limit, "skip the limit check");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  for (auto& [sub, run] : cmds) {
    if (!sub->parsed()) continue;
    try {
      apply_preset(o, *sub);
      return run(o);
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kConfig;
    } catch (const NumericalError& e) {
      std::cerr << "numerical failure in " << sub->get_name() << ": " << e.what() << '\n';
      return kNumerical;
    }
  }
  return kConfig;
}
