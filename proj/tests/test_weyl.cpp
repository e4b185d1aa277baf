#include "qpvi/weyl.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qpvi;

namespace {

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

Real gap(const BPoint& x, const BPoint& y) {
  Real d = std::max(rel_diff(x.f, y.f), rel_diff(x.g, y.g));
  for (int i = 0; i < 8; ++i) d = std::max(d, rel_diff(x.b[i], y.b[i]));
  return d;
}

// Equality modulo (g, b1..b4) *= mu, (f, b5..b8) *= lambda.
Real gauge_gap(const BPoint& x, const BPoint& y) {
  const Complex mu = y.b[0] / x.b[0], lambda = y.b[7] / x.b[7];
  BPoint z = x;
  for (int i = 0; i < 4; ++i) z.b[i] = z.b[i] * mu;
  for (int i = 4; i < 8; ++i) z.b[i] = z.b[i] * lambda;
  z.g = z.g * mu;
  z.f = z.f * lambda;
  return gap(z, y);
}

}  // namespace

TEST_CASE("the translation acts on the Picard lattice as stated") {
  const auto r = check_translation(phi_pic());
  CHECK(r.isometry);
  CHECK(r.fixes_delta);
  CHECK(r.fixes_alpha0_3);
  CHECK(r.alpha4_shift);
  CHECK(r.alpha5_shift);
  CHECK(r.d_permutation);
  CHECK(r.e2_image);
  CHECK(r.delta_root_sum);
}

TEST_CASE("intersection form and root data") {
  const auto k = pic_constants();
  for (const auto& a : k.alpha) CHECK(intersect(a, a) == -2);
  for (const auto& a : k.alpha) CHECK(intersect(a, k.delta) == 0);
  CHECK(intersect(k.delta, k.delta) == 0);
  CHECK(intersect(PicVec::basis(0), PicVec::basis(0)) == 1);
  CHECK(intersect(PicVec::basis(3), PicVec::basis(3)) == -1);
}

TEST_CASE("simple reflections are involutions preserving q") {
  ScopedPrecision guard(128);
  Sampler rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const SurfaceParams sp = random_surface(rng);
    const BPoint bp = to_bpoint(SurfaceCoords{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)}, sp);
    for (auto r : {Reflection::W0, Reflection::W1, Reflection::W2, Reflection::W3, Reflection::W4, Reflection::W5}) {
      CHECK(gap(elementary(r, elementary(r, bp)), bp) < Real(1e-30));
      CHECK(rel_diff(bpoint_q(elementary(r, bp)), bpoint_q(bp)) < Real(1e-30));
    }
    // The diagram automorphism squares to the identity up to the scaling gauge.
    CHECK(gauge_gap(elementary(Reflection::Sigma, elementary(Reflection::Sigma, bp)), bp) < Real(1e-30));
    CHECK(rel_diff(bpoint_q(elementary(Reflection::Sigma, bp)), bpoint_q(bp)) < Real(1e-30));
  }
}

TEST_CASE("displayed w0 is not an involution on the parameters") {
  ScopedPrecision guard(128);
  Sampler rng(12);
  const SurfaceParams sp = random_surface(rng);
  const BPoint bp = to_bpoint(SurfaceCoords{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)}, sp);
  CHECK(gap(elementary(Reflection::W0AsPrinted, elementary(Reflection::W0AsPrinted, bp)), bp) > Real(1e-3));
}

TEST_CASE("reduced word reproduces the map") {
  ScopedPrecision guard(128);
  Sampler rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const SurfaceParams sp = random_surface(rng);
    Complex f_ratio, g_ratio;
    for (int k = 0; k < 5; ++k) {
      const SurfaceCoords pt{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2)};
      const auto st = phi_step(pt, sp);
      const BPoint bp = to_bpoint(pt, sp);
      const BPoint comp = composite_map(bp);
      CHECK(gap(normalize_gauge(comp, st.params), to_bpoint(st.coords, st.params)) < Real(1e-30));
      const Complex fr = fbar_printed(bp) / comp.f, gr = gbar_printed(bp) / comp.g;
      if (k == 0) {
        f_ratio = fr;
        g_ratio = gr;
      }
      CHECK(rel_diff(fr, f_ratio) < Real(1e-30));
      CHECK(rel_diff(gr, g_ratio) < Real(1e-30));
    }
  }
}

TEST_CASE("Picard map serializes as a 10 x 10 integer matrix") {
  const auto j = to_json(phi_pic());
  REQUIRE(j.is_array());
  CHECK(j.size() == 10);
  CHECK(j[0].size() == 10);
}
