#include "qpvi/laxpair.hpp"
#include "qpvi/opuc.hpp"

#include <doctest.h>

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

}  // namespace

TEST_CASE("fitted A_n matches the closed forms") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 14);
  for (int n = 1; n <= 12; ++n) {
    CHECK(c.fits[n].residual < Real(1e-50));
    CHECK(max_abs_coeff(c.fits[n].theta - theta_closed_form(c.vt, c.p, n)) < Real(1e-45));
    CHECK(corner_check(c.fits[n].A, c.p, n).max() < Real(1e-50));
    CHECK(c.fits[n].A.e12().degree() == 1);
  }
}

TEST_CASE("zero-curvature compatibility along the chain") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 14);
  for (int n = 1; n <= 12; ++n)
    CHECK(check_compat(c.fits[n].A, c.fits[n + 1].A, build_B(c.vt.alpha[n + 1]), c.p.q) < Real(1e-50));
}

TEST_CASE("determinant is q^n V W") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 12);
  for (int n = 1; n <= 10; ++n) {
    const auto d = det_law(c.fits[n].A, c.p, n);
    CHECK(d.constancy < Real(1e-50));
    CHECK(d.modulus_error < Real(1e-50));
    CHECK(d.sign == 1);
  }
}

TEST_CASE("q-shift identities hold for polynomials and second-kind functions") {
  ScopedPrecision guard(192);
  const Chain c = build(192, 8);
  Sampler rng(5);
  for (int n : {1, 3, 5}) {
    const auto r = check_lax_q(c.vt, c.p, n, c.fits[n].A, rng);
    CHECK(r.phi_identity < Real(1e-50));
    CHECK(r.phi_star_identity < Real(1e-50));
    CHECK(r.eps_identity < Real(1e-40));
    CHECK(r.eps_star_identity < Real(1e-40));
  }
}

TEST_CASE("vanishing Verblunsky coefficient is degenerate") {
  ScopedPrecision guard(128);
  QWeightParams p{complex_from_string("0.3,0.2"), complex_from_string("0.3,0.2"), real_from_string("0.5"), 128, Real(0)};
  const auto vt = verblunsky_from_moments(moments(p, 8), 4);
  CHECK_THROWS_AS(fit_A(vt, p, 1), DegenerateError);
}

TEST_CASE("B_n has the Szego form") {
  ScopedPrecision guard(128);
  const Complex a(0.2, -0.1);
  const MatPoly2 B = build_B(a);
  CHECK(B.e11().coeff(1) == Complex(1));
  CHECK(B.e12().coeff(0) == a);
  CHECK(B.e21().coeff(1) == conj(a));
  CHECK(B.e22().coeff(0) == Complex(1));
}
