#include "qpvi/acceptance.hpp"

#include "qpvi/continuum.hpp"
#include "qpvi/laxpair.hpp"
#include "qpvi/opuc.hpp"
#include "qpvi/oracle.hpp"
#include "qpvi/painleve.hpp"
#include "qpvi/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

namespace qpvi {

namespace {

struct Outcome {
  Real value;
  double tolerance;
  std::string detail;
  bool pass_override = false;
  bool pass = false;
};

std::string sci(const Real& x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", to_double(x));
  return buf;
}

std::string sci(double x) { return sci(Real(x)); }

// Data shared by the criteria that run on the reference weight.
struct ReferenceData {
  QWeightParams p;
  MomentTable table;
  VerblunskyTable vt;
  std::vector<LaxFit> fits;  // fits[n], n = 1..N-3
};

ReferenceData build_reference(const AcceptanceConfig& cfg) {
  ReferenceData d;
  d.p = cfg.weight.promoted();
  d.p.prec = cfg.prec;
  d.table = moments(d.p, cfg.N + 4);
  d.vt = verblunsky_from_moments(d.table, cfg.N);
  d.fits.resize(cfg.N - 2);
  for (int n = 1; n <= cfg.N - 3; ++n) d.fits[n] = fit_A(d.vt, d.p, n);
  return d;
}

SurfaceParams random_surface(Sampler& rng) {
  SurfaceParams sp;
  sp.q = rng.uniform(0.2, 0.9);
  sp.kappa1 = rng.uniform_disc(0.3, 2);
  sp.kappa2 = rng.uniform_disc(0.3, 2);
  sp.theta1 = rng.uniform_disc(0.3, 2);
  for (auto& c : sp.c) c = rng.uniform_disc(0.3, 2);
  sp.theta2 = sp.kappa1 * sp.kappa2 * sp.c[0] * sp.c[1] * sp.c[2] * sp.c[3] / sp.theta1;
  return sp;
}

Outcome trivial_weight(const AcceptanceConfig& cfg) {
  const Complex cases[] = {cfg.weight.a, Complex(-0.5, 0.4)};
  Real worst(0);
  for (const Complex& a : cases) {
    const QWeightParams p = QWeightParams{a, a, cfg.weight.q, 128, Real(0)}.promoted();
    const auto vt = verblunsky_from_moments(moments(p, cfg.N + 4), cfg.N);
    for (int n = 1; n <= cfg.N; ++n) worst = std::max(worst, abs(vt.alpha[n]));
  }
  return {worst, 1e-25, "a = b at two points, 128-bit, n <= " + std::to_string(cfg.N) + ": max |alpha_n| = " + sci(worst)};
}

Outcome orthogonality(const ReferenceData& d) {
  const auto r = check_orthogonality(d.vt, d.table);
  return {std::max(r.max_orth, r.max_norm), 1e-18,
          "max |<phi_n, z^m>| = " + sci(r.max_orth) + ", max |<phi_n, phi_n> - sigma_n| = " + sci(r.max_norm)};
}

Outcome toeplitz_route(const ReferenceData& d) {
  const auto o = oracle::toeplitz_alpha(d.table, d.vt.N());
  Real worst(0);
  for (int n = 1; n <= d.vt.N(); ++n) worst = std::max(worst, abs(o[n] - d.vt.alpha[n]));
  return {worst, 1e-20, "recursion vs dense Toeplitz solve: max |delta alpha_n| = " + sci(worst)};
}

Outcome wronskians(const ReferenceData& d) {
  const auto w = wronskian_check(d.vt);
  Real a(0), b(0), c(0);
  for (const auto& x : w.phi_psi) a = std::max(a, x);
  for (const auto& x : w.phi_psi_star) b = std::max(b, x);
  for (const auto& x : w.phi_star_psi) c = std::max(c, x);
  return {w.max_residual, 1e-18,
          "phi/psi " + sci(a) + ", phi/psi* " + sci(b) + ", phi*/psi " + sci(c)};
}

Outcome lax_closed_forms(const ReferenceData& d) {
  Real th(0), co(0), fit(0);
  for (int n = 1; n <= 15; ++n) {
    th = std::max(th, max_abs_coeff(d.fits[n].theta - theta_closed_form(d.vt, d.p, n)));
    co = std::max(co, corner_check(d.fits[n].A, d.p, n).max());
    fit = std::max(fit, d.fits[n].residual);
  }
  return {std::max(th, co), 1e-15,
          "n <= 15: Theta_n " + sci(th) + ", corner data " + sci(co) + ", fit residual " + sci(fit)};
}

Outcome compatibility(const ReferenceData& d) {
  Real worst(0);
  for (int n = 1; n <= 15; ++n)
    worst = std::max(worst, check_compat(d.fits[n].A, d.fits[n + 1].A, build_B(d.vt.alpha[n + 1]), d.p.q));
  return {worst, 1e-15, "n = 1..15: max coefficient of A_{n+1} B_n - B_n(q.) A_n = " + sci(worst)};
}

Outcome determinant(const ReferenceData& d) {
  Real constancy(0), modulus(0);
  std::map<int, int> signs;
  for (int n = 1; n <= 15; ++n) {
    const auto r = det_law(d.fits[n].A, d.p, n);
    constancy = std::max(constancy, r.constancy);
    modulus = std::max(modulus, r.modulus_error);
    ++signs[r.sign];
  }
  std::string sign = signs.size() == 1 ? (signs.begin()->first > 0 ? "+q^n" : signs.begin()->first < 0 ? "-q^n" : "neither")
                                       : "mixed";
  Outcome o{constancy, 1e-15,
            "n <= 15: constancy " + sci(constancy) + ", ||c| - q^n| " + sci(modulus) + " (tol 1e-12), constant = " + sign};
  o.pass_override = true;
  o.pass = constancy < 1e-15 && modulus < 1e-12;
  return o;
}

Outcome three_routes(const ReferenceData& d) {
  Real coord(0), matrix(0);
  for (int n = 1; n <= 12; ++n) {
    const auto sp = params_from_weight(d.p, n);
    const auto here = extract_coords(d.fits[n].A, sp);
    const auto chain = extract_coords(d.fits[n + 1].A, params_from_weight(d.p, n + 1));
    const auto st = phi_step(here.coords, sp);
    coord = std::max({coord, rel_diff(st.coords.y, chain.coords.y), rel_diff(st.coords.xi, chain.coords.xi)});
    const auto ms = matrix_step(d.fits[n].A, sp);
    const auto mc = extract_coords(ms.A, sp.stepped());
    matrix = std::max({matrix, rel_diff(mc.coords.y, chain.coords.y), rel_diff(mc.coords.xi, chain.coords.xi),
                       rel_diff(mc.coords.y, st.coords.y), rel_diff(mc.coords.xi, st.coords.xi)});
  }
  return {std::max(coord, matrix), 1e-10,
          "n <= 12: coordinate map vs chain " + sci(coord) + ", matrix conjugation vs both " + sci(matrix)};
}

Outcome factorization(const AcceptanceConfig& cfg) {
  Sampler rng(cfg.seed + 9);
  Real worst(0), printed3(0), expanded(0);
  for (int i = 0; i < 20; ++i) {
    const SurfaceParams sp = random_surface(rng);
    const auto r = factorization_check(sp, rng.uniform_box(-2, 2));
    for (const auto& x : r.residual) worst = std::max(worst, x);
    printed3 = std::max(printed3, r.printed_i3);
    expanded = std::max(expanded, r.printed_expanded_i1);
  }
  return {worst, 1e-25,
          "20 parameter sets, i = 1..4 (i = 3 with the factor q restored): " + sci(worst) +
              "; displayed i = 3 without q: " + sci(printed3) + "; displayed expanded line: " + sci(expanded)};
}

Outcome picard() {
  const auto r = check_translation(phi_pic());
  std::ostringstream os;
  os << "isometry " << r.isometry << ", fixes delta " << r.fixes_delta << ", fixes a0..a3 " << r.fixes_alpha0_3
     << ", a4 - delta " << r.alpha4_shift << ", a5 + delta " << r.alpha5_shift << ", D permutation " << r.d_permutation
     << ", E2 image " << r.e2_image << ", delta root sum " << r.delta_root_sum;
  Outcome o{Real(r.all() ? 0 : 1), 0, os.str()};
  o.pass_override = true;
  o.pass = r.all();
  return o;
}

Outcome weyl_composite(const AcceptanceConfig& cfg) {
  Sampler rng(cfg.seed + 11);
  Real step(0), closed(0);
  int points = 0;
  for (int set = 0; set < 10; ++set) {
    const SurfaceParams sp = random_surface(rng);
    Complex f_ratio, g_ratio;
    for (int k = 0; k < 10; ++k, ++points) {
      const SurfaceCoords pt{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)};
      const auto st = phi_step(pt, sp);
      const BPoint bp = to_bpoint(pt, sp);
      const BPoint comp = composite_map(bp);
      const BPoint nz = normalize_gauge(comp, st.params);
      const BPoint want = to_bpoint(st.coords, st.params);
      step = std::max({step, rel_diff(nz.f, want.f), rel_diff(nz.g, want.g)});
      for (int i = 0; i < 8; ++i) step = std::max(step, rel_diff(nz.b[i], want.b[i]));
      const Complex fr = fbar_printed(bp) / comp.f, gr = gbar_printed(bp) / comp.g;
      if (k == 0) {
        f_ratio = fr;
        g_ratio = gr;
      } else {
        closed = std::max({closed, rel_diff(fr, f_ratio), rel_diff(gr, g_ratio)});
      }
    }
  }
  return {std::max(step, closed), 1e-10,
          std::to_string(points) + " points: composite vs phi_step (gauge-normalized) " + sci(step) +
              ", closed forms / composite constant to " + sci(closed)};
}

Outcome scattering(const AcceptanceConfig& cfg, const ReferenceData& d) {
  Real jost(0);
  for (int j = 0; j < 100; ++j) {
    const Real theta = Real(2) * pi() * Real(j) / Real(100) + Real("0.01");
    const Complex z = polar(Real(1), theta);
    const Complex f = fplus_eval(d.p, theta);
    jost = std::max(jost, abs(weight_eval(d.p, z) * Complex(norm2(f)) - Complex(1)));
  }
  // The series for F at |z| = r needs K with (rho r)^K below the working precision.
  const double r = 0.45, rho = std::max(to_double(abs(d.p.a)), to_double(abs(d.p.b)));
  const int K = static_cast<int>(std::ceil(d.p.prec / std::log2(1 / (rho * r)))) + 8;
  const MomentTable long_table = moments(d.p, K);
  Sampler rng(cfg.seed + 12);
  const auto fit = fit_caratheodory_U(d.p, long_table, rng, 20, r);
  Outcome o{std::max(jost, fit.max_residual), 1e-15,
            "w |f+|^2 - 1 at 100 angles " + sci(jost) + " (tol 1e-25), W F(q.) - V F - U " + sci(fit.max_residual) +
                " (tol 1e-15)"};
  o.pass_override = true;
  o.pass = jost < Real(1e-25) && fit.max_residual < Real(1e-15);
  return o;
}

Outcome continuum_limit() {
  const auto r = limit_check(reference_limit_config());
  std::ostringstream os;
  os << "error(eps)";
  for (size_t i = 0; i < r.eps.size(); ++i) os << ' ' << sci(r.error[i]);
  os << ", order";
  for (double x : r.order) os << ' ' << sci(x);
  os << ", monotone " << r.monotone << "; vs eps -> 0 difference field: error";
  for (double x : r.error_vs_field) os << ' ' << sci(x);
  os << ", order";
  for (double x : r.order_vs_field) os << ' ' << sci(x);
  for (const auto& n : r.notes) os << "; " << n;
  Outcome o{Real(std::isfinite(r.min_order) ? r.min_order : -1), 0.8, os.str()};
  o.pass_override = true;
  o.pass = r.pass;
  return o;
}

const char* kNames[kCriterionCount] = {
    "trivial-weight collapse",
    "orthogonality and norms",
    "Verblunsky route independence",
    "Wronskian identities",
    "Lax fit closed forms",
    "compatibility",
    "determinant law",
    "three-route Painleve step",
    "factorization identities",
    "Picard lattice translation",
    "Weyl composite",
    "scattering and Caratheodory identities",
    "continuum limit",
};

unsigned criterion_precision(int id, const AcceptanceConfig& cfg) {
  switch (id) {
    case 1: return 128;
    case 13: return std::max(128u, cfg.prec);
    default: return cfg.prec;
  }
}

bool needs_reference(int id) { return (id >= 2 && id <= 8) || id == 12; }

CriterionResult evaluate(int id, const AcceptanceConfig& cfg, const ReferenceData* ref) {
  CriterionResult r;
  r.id = id;
  r.name = kNames[id - 1];
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o;
    switch (id) {
      case 1: o = trivial_weight(cfg); break;
      case 2: o = orthogonality(*ref); break;
      case 3: o = toeplitz_route(*ref); break;
      case 4: o = wronskians(*ref); break;
      case 5: o = lax_closed_forms(*ref); break;
      case 6: o = compatibility(*ref); break;
      case 7: o = determinant(*ref); break;
      case 8: o = three_routes(*ref); break;
      case 9: o = factorization(cfg); break;
      case 10: o = picard(); break;
      case 11: o = weyl_composite(cfg); break;
      case 12: o = scattering(cfg, *ref); break;
      case 13: o = continuum_limit(); break;
      default: throw ConfigError("unknown criterion " + std::to_string(id));
    }
    r.value = to_double(o.value);
    r.tolerance = o.tolerance;
    r.detail = o.detail;
    if (o.pass_override)
      r.pass = o.pass;
    else
      r.pass = o.value < Real(o.tolerance);
  } catch (const NumericalError& e) {
    r.pass = false;
    r.value = std::nan("");
    r.detail = std::string("numerical failure: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

AcceptanceConfig reference_acceptance_config() {
  AcceptanceConfig cfg;
  ScopedPrecision guard(cfg.prec);
  cfg.weight = QWeightParams{complex_from_string("0.3,0.2"), complex_from_string("0.5"), real_from_string("0.5"),
                             cfg.prec, Real(0)};
  return cfg;
}

CriterionResult run_criterion(int id, const AcceptanceConfig& cfg) {
  if (id < 1 || id > kCriterionCount) throw ConfigError("criterion id must be in 1.." + std::to_string(kCriterionCount));
  ScopedPrecision guard(criterion_precision(id, cfg));
  if (!needs_reference(id)) return evaluate(id, cfg, nullptr);
  try {
    const ReferenceData ref = build_reference(cfg);
    return evaluate(id, cfg, &ref);
  } catch (const NumericalError& e) {
    CriterionResult r{id, kNames[id - 1], false, std::nan(""), 0, std::string("numerical failure: ") + e.what(), 0};
    return r;
  }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg) {
  std::vector<CriterionResult> out(kCriterionCount);
  std::map<unsigned, std::vector<int>> groups;
  for (int id = 1; id <= kCriterionCount; ++id) groups[criterion_precision(id, cfg)].push_back(id);
  for (const auto& [bits, ids] : groups) {
    ScopedPrecision guard(bits);
    // Reference data is built once per group, before any worker starts.
    std::unique_ptr<ReferenceData> ref;
    std::string ref_error;
    if (std::any_of(ids.begin(), ids.end(), needs_reference)) {
      try {
        ref = std::make_unique<ReferenceData>(build_reference(cfg));
      } catch (const NumericalError& e) {
        ref_error = std::string("numerical failure building reference data: ") + e.what();
      }
    }
    auto job = [&](int id) {
      if (needs_reference(id) && !ref) {
        out[id - 1] = CriterionResult{id, kNames[id - 1], false, std::nan(""), 0, ref_error, 0};
        return;
      }
      out[id - 1] = evaluate(id, cfg, ref.get());
    };
    const int workers = std::clamp(cfg.jobs, 1, static_cast<int>(ids.size()));
    if (workers == 1) {
      for (int id : ids) job(id);
      continue;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = next++; i < ids.size(); i = next++) job(ids[i]);
      });
    for (auto& t : pool) t.join();
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-40s", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
  return std::string(head) + " " + r.detail;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["name"] = r.name;
  j["pass"] = r.pass;
  j["value"] = std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json(nullptr);
  j["tolerance"] = r.tolerance;
  j["detail"] = r.detail;
  return j;
}

nlohmann::json to_json(const std::vector<CriterionResult>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs) a.push_back(to_json(r));
  return a;
}

}  // namespace qpvi
