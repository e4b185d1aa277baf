#include "qpvi/laxpair.hpp"
#include "qpvi/opuc.hpp"
#include "qpvi/painleve.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qpvi;

namespace {

struct Chain {
  QWeightParams p;
  VerblunskyTable vt;
  std::vector<LaxFit> fits;
};

Chain build(unsigned bits, int N) {
  Chain c;
  c.p = QWeightParams{complex_from_string("0.3,0.2"), complex_from_string("0.5"), real_from_string("0.5"), bits, Real(0)};
  c.vt = verblunsky_from_moments(moments(c.p, N + 4), N);
  c.fits.resize(N);
  for (int n = 1; n < N; ++n) c.fits[n] = fit_A(c.vt, c.p, n);
  return c;
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

// Worst relative gap between the coordinate map and the chain over n = 1..last.
Real chain_gap(const Chain& c, int last, const std::array<int, 4>& order) {
  Real worst(0);
  for (int n = 1; n <= last; ++n) {
    SurfaceParams sp = params_from_weight(c.p, n), next = params_from_weight(c.p, n + 1);
    const auto base = sp.c, base_next = next.c;
    for (int i = 0; i < 4; ++i) {
      sp.c[i] = base[order[i]];
      next.c[i] = base_next[order[i]];
    }
    const auto here = extract_coords(c.fits[n].A, sp);
    const auto want = extract_coords(c.fits[n + 1].A, next);
    const auto st = phi_step(here.coords, sp);
    worst = std::max({worst, rel_diff(st.coords.y, want.coords.y), rel_diff(st.coords.xi, want.coords.xi)});
  }
  return worst;
}

}  // namespace

TEST_CASE("weight parameters lie on the surface family") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 6);
  for (int n = 1; n <= 5; ++n) {
    const auto sp = params_from_weight(c.p, n);
    CHECK(sp.constraint_residual() < Real(1e-55));
    const auto s2 = sp.stepped();
    CHECK(abs(s2.kappa1 - Complex(c.p.q) * sp.kappa1) == 0);
    CHECK(s2.constraint_residual() < Real(1e-55));
  }
}

TEST_CASE("coordinate map, matrix conjugation and the Verblunsky chain agree") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 14);
  for (int n = 1; n <= 12; ++n) {
    const auto sp = params_from_weight(c.p, n);
    const auto here = extract_coords(c.fits[n].A, sp);
    CHECK(here.consistency < Real(1e-45));
    const auto want = extract_coords(c.fits[n + 1].A, params_from_weight(c.p, n + 1)).coords;
    const auto st = phi_step(here.coords, sp);
    CHECK(rel_diff(st.coords.y, want.y) < Real(1e-45));
    CHECK(rel_diff(st.coords.xi, want.xi) < Real(1e-45));
    const auto ms = matrix_step(c.fits[n].A, sp);
    const auto mc = extract_coords(ms.A, sp.stepped()).coords;
    CHECK(rel_diff(mc.y, want.y) < Real(1e-45));
    CHECK(rel_diff(mc.xi, want.xi) < Real(1e-45));
    const auto ck = check_matrix_step(gauge_normalize(c.fits[n].A), ms, sp);
    CHECK(std::max({ck.det_ratio, ck.lead_spectrum, ck.const_spectrum, ck.w_ytilde, ms.division_residual}) < Real(1e-45));
  }
}

TEST_CASE("y_n has the closed form in the Verblunsky coefficients") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 8);
  for (int n = 1; n <= 6; ++n) {
    const Complex qn = ipow(c.p.q, n), qn1 = ipow(c.p.q, n + 1);
    const Complex y = (conj(c.p.a) - conj(c.p.b) * qn) * c.vt.alpha[n] / ((c.p.a - c.p.b * qn1) * c.vt.alpha[n + 1]);
    CHECK(rel_diff(extract_coords(c.fits[n].A, params_from_weight(c.p, n)).coords.y, y) < Real(1e-45));
  }
}

TEST_CASE("every ordering of the c list reproduces the chain") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 8);
  std::array<int, 4> order{0, 1, 2, 3};
  do {
    CHECK(chain_gap(c, 5, order) < Real(1e-40));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("a c list with 1/b twice violates the surface constraint") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 4);
  SurfaceParams sp = params_from_weight(c.p, 2);
  sp.c[3] = Complex(1) / c.p.b;
  CHECK(sp.constraint_residual() > Real(1e-2));
  CHECK_THROWS_AS(sp.check(Real(1e-20)), ConstraintError);
}

TEST_CASE("Jimbo-Sakai matrix round trip") {
  ScopedPrecision guard(128);
  Sampler rng(6);
  for (int i = 0; i < 10; ++i) {
    const SurfaceParams sp = random_surface(rng);
    const SurfaceCoords pt{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)};
    const MatPoly2 A = js_matrix(pt, sp);
    const auto e = extract_coords(A, sp);
    CHECK(rel_diff(e.coords.y, pt.y) < Real(1e-30));
    CHECK(rel_diff(e.coords.xi, pt.xi) < Real(1e-30));
    const auto st = phi_step(pt, sp);
    const auto mc = extract_coords(matrix_step(A, sp).A, sp.stepped()).coords;
    CHECK(rel_diff(mc.y, st.coords.y) < Real(1e-25));
    CHECK(rel_diff(mc.xi, st.coords.xi) < Real(1e-25));
  }
}

TEST_CASE("displayed xi-tilde is q times the map value") {
  ScopedPrecision guard(128);
  Sampler rng(7);
  const SurfaceParams sp = random_surface(rng);
  const SurfaceCoords pt{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)};
  CHECK(rel_diff(xitilde_as_printed(pt, sp), Complex(sp.q) * phi_step(pt, sp).coords.xi) < Real(1e-35));
}

TEST_CASE("factorization identities") {
  ScopedPrecision guard(192);
  Sampler rng(8);
  for (int i = 0; i < 10; ++i) {
    const SurfaceParams sp = random_surface(rng);
    const auto r = factorization_check(sp, rng.uniform_box(-2, 2));
    for (const auto& x : r.residual) CHECK(x < Real(1e-50));
    CHECK(r.printed_i3 > Real(1e-3));
  }
}

TEST_CASE("indeterminacy is reported with the nearest blown-up point") {
  ScopedPrecision guard(128);
  Sampler rng(9);
  const SurfaceParams sp = random_surface(rng);
  CHECK_THROWS_AS(phi_step(SurfaceCoords{Complex(0), Complex(1)}, sp), IndeterminacyError);
  CHECK_THROWS_AS(phi_step(SurfaceCoords{sp.c[0], Complex(0)}, sp), IndeterminacyError);
  const auto pts = blown_up_points(sp);
  CHECK(pts.size() == 8);
}

TEST_CASE("constraint violations are rejected") {
  ScopedPrecision guard(128);
  Sampler rng(10);
  SurfaceParams sp = random_surface(rng);
  sp.theta2 = sp.theta2 * Complex(1.01);
  CHECK_THROWS_AS(sp.check(Real(1e-20)), ConstraintError);
}
