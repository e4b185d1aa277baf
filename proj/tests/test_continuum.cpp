#include "qpvi/continuum.hpp"

#include <doctest.h>

using namespace qpvi;

TEST_CASE("two transcriptions of the continuum system agree") {
  ScopedPrecision guard(128);
  Sampler rng(14);
  for (int i = 0; i < 1000; ++i) {
    const LimitParams lp = LimitParams::with_constraint(rng.uniform_box(-1, 1), rng.uniform_box(-1, 1), rng.uniform_box(-1, 1),
                                                        {rng.uniform_box(-1, 1), rng.uniform_box(-1, 1),
                                                         rng.uniform_box(-1, 1), rng.uniform_box(-1, 1)});
    const ODEState s{rng.uniform_box(-2, 2), rng.uniform_box(-2, 2), rng.uniform_disc(0.2, 2)};
    const Derivative a = ode_rhs(s, lp), b = ode_rhs_expanded(s, lp);
    CHECK(rel_diff(a.du, b.du, Real(1)) < Real(1e-30));
    CHECK(rel_diff(a.dv, b.dv, Real(1)) < Real(1e-30));
  }
}

TEST_CASE("singular points are guarded") {
  ScopedPrecision guard(128);
  const LimitParams lp = reference_limit_config().lp;
  CHECK_THROWS_AS(ode_rhs(ODEState{Complex(0), Complex(0.1), Complex(1)}, lp), SingularityError);
  CHECK_THROWS_AS(ode_rhs(ODEState{Complex(0.5), Complex(0.1), Complex(0)}, lp), SingularityError);
  CHECK_THROWS_AS(integrate(lp, ODEState{Complex(0.6), Complex(0.1), Complex(2)}, Complex(1), pow2(-30)), SingularityError);
}

TEST_CASE("adaptive integrator reaches its tolerance on an exact solution") {
  ScopedPrecision guard(128);
  // u' = u, v' = -v / t from t = 2 to 3: u = e^(t-2), v = 2/t.
  const RhsFn rhs = [](const ODEState& s) { return Derivative{s.u, -s.v / s.t}; };
  const Trajectory tr = integrate(rhs, ODEState{Complex(2), Complex(1), Complex(1)}, Complex(3), pow2(-40),
                                  {Complex(2.5)});
  REQUIRE(tr.samples.size() == 3);
  CHECK(abs(tr.samples[1].u - exp(Complex(0.5))) < Real(1e-10));
  CHECK(abs(tr.samples[2].u - exp(Complex(1))) < Real(1e-10));
  CHECK(abs(tr.samples[2].v - Complex(2) / Complex(3)) < Real(1e-10));
  CHECK(tr.samples[2].t == Complex(3));
  const std::string csv = trajectory_csv(tr);
  CHECK(csv.rfind("re_t,im_t,re_u,im_u,re_v,im_v\n", 0) == 0);
}

TEST_CASE("integration runs through complex t") {
  ScopedPrecision guard(128);
  const RhsFn rhs = [](const ODEState& s) { return Derivative{s.u, s.v}; };
  const Trajectory tr = integrate(rhs, ODEState{Complex(2), Complex(1), Complex(1)}, Complex(2, 1), pow2(-40));
  CHECK(abs(tr.samples.back().u - exp(Complex(0, 1))) < Real(1e-10));
}

TEST_CASE("specialized system against the general one") {
  ScopedPrecision guard(128);
  Sampler rng(15);
  // Under kappa1 = t(1 + eps K1) the v equation is the image of the general one.
  const auto k = specialized_substitution_check(Real("0.3"), Real("-0.4"), KappaConvention::Kappa, rng);
  CHECK(k.dv_residual < Real(1e-30));
  // The u equation carries (u - a + 1)(u - b + 1) where the general system gives (u - a - 1)(u - b - 1).
  CHECK(k.du_residual > Real(1e-3));
}

TEST_CASE("the discrete difference field is well resolved") {
  ScopedPrecision guard(128);
  Sampler rng(16);
  const auto r = expansion_check(reference_limit_config().lp, rng);
  CHECK(r.fd_noise < Real(1e-8));
}

TEST_CASE("discrete orbit converges at first order to the difference field") {
  ScopedPrecision guard(128);
  const auto r = limit_check(reference_limit_config());
  REQUIRE(r.error_vs_field.size() == 3);
  CHECK(r.error_vs_field[2] < r.error_vs_field[1]);
  CHECK(r.error_vs_field[1] < r.error_vs_field[0]);
  for (double o : r.order_vs_field) CHECK(o > 0.8);
  CHECK(r.steps[0] == 69);
  CHECK(r.steps[2] == 277);
}

TEST_CASE("discrete parameters stay on the surface") {
  ScopedPrecision guard(128);
  const auto sp = discrete_params(reference_limit_config().lp, Complex(0.4), Real("0.01"));
  CHECK(sp.constraint_residual() < Real(1e-35));
  CHECK(abs(sp.q - Real("0.99")) < Real(1e-35));
}
