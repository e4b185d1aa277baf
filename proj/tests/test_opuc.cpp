#include "qpvi/opuc.hpp"
#include "qpvi/oracle.hpp"

#include <doctest.h>

using namespace qpvi;

namespace {

QWeightParams reference(unsigned bits) {
  return QWeightParams{complex_from_string("0.3,0.2"), complex_from_string("0.5"), real_from_string("0.5"), bits, Real(0)};
}

}  // namespace

TEST_CASE("Lebesgue measure has vanishing Verblunsky coefficients") {
  ScopedPrecision guard(128);
  QWeightParams p = reference(128);
  p.b = p.a;
  const auto vt = verblunsky_from_moments(moments(p, 14), 10);
  for (int n = 1; n <= 10; ++n) {
    CHECK(abs(vt.alpha[n]) < Real(1e-35));
    CHECK(abs(vt.sigma[n] - Real(1)) < Real(1e-35));
  }
}

TEST_CASE("recursion agrees with the Toeplitz oracle") {
  ScopedPrecision guard(192);
  const QWeightParams p = reference(192);
  const MomentTable t = moments(p, 24);
  const auto vt = verblunsky_from_moments(t, 20);
  const auto o = oracle::toeplitz_alpha(t, 20);
  for (int n = 1; n <= 20; ++n) CHECK(abs(o[n] - vt.alpha[n]) < Real(1e-50));
}

TEST_CASE("reference coefficients stay in the disc and norms follow the recursion") {
  ScopedPrecision guard(192);
  const auto vt = verblunsky_from_moments(moments(reference(192), 24), 20);
  CHECK(abs(vt.alpha[1] - complex_from_string("-0.42117,-0.31532")) < Real(1e-4));
  for (int n = 1; n <= 20; ++n) {
    CHECK(abs(vt.alpha[n]) < Real(1));
    CHECK(abs(vt.sigma[n] - vt.sigma[n - 1] * (Real(1) - norm2(vt.alpha[n]))) < Real(1e-50));
    CHECK(vt.phi[n].degree() == n);
    CHECK(vt.phi[n].coeff(n) == Complex(1));
  }
}

TEST_CASE("orthogonality, Wronskians and the starred recursion") {
  ScopedPrecision guard(192);
  const MomentTable t = moments(reference(192), 24);
  const auto vt = verblunsky_from_moments(t, 20);
  const auto orth = check_orthogonality(vt, t);
  CHECK(orth.max_orth < Real(1e-50));
  CHECK(orth.max_norm < Real(1e-50));
  CHECK(wronskian_check(vt).max_residual < Real(1e-50));
  CHECK(szego_star_residual(vt) < Real(1e-50));
}

TEST_CASE("star reflects coefficients and rejects low degree") {
  ScopedPrecision guard(128);
  const CPoly p{Complex(1, 2), Complex(3), Complex(0, 1)};
  const CPoly s = star(p, 3);
  CHECK(s.coeff(0) == Complex(0));
  CHECK(s.coeff(1) == Complex(0, -1));
  CHECK(s.coeff(3) == Complex(1, -2));
  CHECK_THROWS_AS(star(p, 1), DegreeError);
}

TEST_CASE("second-kind functions have the stated asymptotics") {
  ScopedPrecision guard(192);
  const QWeightParams p = reference(192);
  const auto vt = verblunsky_from_moments(moments(p, 24), 10);
  const auto e = epsilon_asymptotics_check(vt, p, 3);
  CHECK(e.small_z < Real(1e-2));
  CHECK(e.large_z < Real(1e-3));
  CHECK(e.star_large_z < Real(1e-2));
}

TEST_CASE("csv export") {
  ScopedPrecision guard(128);
  QWeightParams p = reference(128);
  const auto vt = verblunsky_from_moments(moments(p, 6), 2);
  const std::string csv = to_csv(vt);
  CHECK(csv.rfind("n,re_alpha,im_alpha,sigma\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
