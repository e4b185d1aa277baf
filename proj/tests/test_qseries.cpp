#include "qpvi/oracle.hpp"
#include "qpvi/qseries.hpp"

#include <doctest.h>

using namespace qpvi;

namespace {

QWeightParams reference(unsigned bits) {
  return QWeightParams{complex_from_string("0.3,0.2"), complex_from_string("0.5"), real_from_string("0.5"), bits, Real(0)};
}

}  // namespace

TEST_CASE("q-Pochhammer agrees with the log-series oracle") {
  ScopedPrecision guard(160);
  Sampler rng(1);
  const Real q("0.7");
  for (int i = 0; i < 20; ++i) {
    const Complex z = rng.uniform_disc(0.05, 0.9);
    const Complex a = qpoch_inf(z, q, pow2(-170));
    const Complex b = oracle::qpoch_log_series(z, q, pow2(-170));
    CHECK(rel_diff(a, b) < Real(1e-40));
  }
}

TEST_CASE("weight is identically one when a = b") {
  ScopedPrecision guard(128);
  QWeightParams p = reference(128);
  p.b = p.a;
  Sampler rng(2);
  for (int i = 0; i < 10; ++i) CHECK(abs(weight_eval(p, rng.on_circle(1)) - Complex(1)) < Real(1e-35));
}

TEST_CASE("weight satisfies w(qz) W(z) = V(z) w(z)") {
  ScopedPrecision guard(128);
  const QWeightParams p = reference(128);
  const auto vw = vw_polys(p);
  Sampler rng(3);
  for (int i = 0; i < 10; ++i) {
    const Complex z = rng.uniform_disc(0.8, 1.2);
    const Complex lhs = weight_eval(p, Complex(p.q) * z) * vw.W(z);
    const Complex rhs = vw.V(z) * weight_eval(p, z);
    CHECK(rel_diff(lhs, rhs) < Real(1e-30));
  }
}

TEST_CASE("moments are Hermitian and normalized") {
  ScopedPrecision guard(128);
  const QWeightParams p = reference(128);
  const MomentTable t = moments(p, 12);
  CHECK(t.c0_normalized);
  CHECK(abs(t.at(0) - Complex(1)) < Real(1e-35));
  for (int k = 1; k <= 12; ++k) CHECK(t.at(-k) == conj(t.at(k)));
  CHECK(t.quadrature_error < Real(1e-30));
  CHECK(abs(t.mass.im) < Real(1e-35));
}

TEST_CASE("invalid weight parameters are configuration errors") {
  ScopedPrecision guard(128);
  QWeightParams p = reference(128);
  p.a = Complex(1.2);
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = reference(128);
  p.q = Real(1);
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = reference(128);
  p.b = Complex(0.6, 0.8);
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(complex_from_string("1,2,3"), ConfigError);
}

TEST_CASE("weight pole on a factor zero is reported") {
  ScopedPrecision guard(128);
  QWeightParams p = reference(128);
  CHECK_THROWS_AS(weight_eval(p, Complex(1) / p.b), PoleError);
  CHECK_THROWS_AS(weight_eval(p, Complex(0)), DomainError);
}

TEST_CASE("Jost function inverts the weight on the circle") {
  ScopedPrecision guard(192);
  const QWeightParams p = reference(192);
  for (int j = 0; j < 16; ++j) {
    const Real theta = Real(j) / Real(3);
    const Complex f = fplus_eval(p, theta);
    CHECK(abs(weight_eval(p, polar(Real(1), theta)) * Complex(norm2(f)) - Complex(1)) < Real(1e-50));
  }
}

TEST_CASE("Caratheodory function solves the first-order q-difference equation") {
  ScopedPrecision guard(128);
  const QWeightParams p = reference(128);
  const MomentTable t = moments(p, 140);
  Sampler rng(4);
  const auto fit = fit_caratheodory_U(p, t, rng);
  CHECK(fit.U.degree() <= 2);
  CHECK(fit.max_residual < Real(1e-30));
  CHECK_THROWS_AS(caratheodory_eval(p, moments(p, 4), Complex(0.45)), ConvergenceError);
}

TEST_CASE("promoted copies take the working precision") {
  Real low;
  {
    ScopedPrecision guard(64);
    low = real_from_string("0.1");
  }
  ScopedPrecision guard(256);
  CHECK(abs(promote(low) - real_from_string("0.1")) > Real(1e-30));
  CHECK(promote(low).precision() > low.precision());
}
