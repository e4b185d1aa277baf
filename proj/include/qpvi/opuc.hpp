#pragma once

#include "qpvi/poly.hpp"
#include "qpvi/qseries.hpp"

#include <json.hpp>

#include <string>

namespace qpvi {

struct VerblunskyTable {
  std::vector<Complex> alpha;  // alpha[0] = 1, alpha[n] = phi_n(0)
  std::vector<Real> sigma;     // sigma[0] = 1
  std::vector<CPoly> phi;      // monic, degree n
  std::vector<CPoly> psi;      // second kind, monic, degree n

  int N() const { return static_cast<int>(alpha.size()) - 1; }
};

// z^n conj(p(1/conj z)); throws DegreeError if deg p > n.
CPoly star(const CPoly& p, int n);

// <p, r> = sum_jk p_j conj(r_k) c_{k-j}
Complex inner(const CPoly& p, const CPoly& r, const MomentTable& t);

VerblunskyTable verblunsky_from_moments(const MomentTable& t, int N, const Real& tol = Real(0));

struct OrthogonalityReport {
  std::vector<Real> per_n_orth;  // max_m<n |<phi_n, z^m>|
  std::vector<Real> per_n_norm;  // |<phi_n, phi_n> - sigma_n|
  Real max_orth{0};
  Real max_norm{0};
};

OrthogonalityReport check_orthogonality(const VerblunskyTable& vt, const MomentTable& t);

struct WronskianReport {
  std::vector<Real> phi_psi;       // phi_{n+1} psi_n - psi_{n+1} phi_n - 2 alpha_{n+1} sigma_n z^n
  std::vector<Real> phi_psi_star;  // starred variant, 2 conj(alpha_{n+1}) sigma_n z^{n+1}
  std::vector<Real> phi_star_psi;  // phi_n psi*_n + psi_n phi*_n - 2 sigma_n z^n
  Real max_residual{0};
};

WronskianReport wronskian_check(const VerblunskyTable& vt);

// phi*_{n+1} = phi*_n + conj(alpha_{n+1}) z phi_n, max coefficient residual.
Real szego_star_residual(const VerblunskyTable& vt);

// eps_n = psi_n + F phi_n and eps*_n = psi*_n - F phi*_n by quadrature
// against the normalized weight.
Complex epsilon_eval(const CPoly& phi_n, const CircleQuadrature& cq, const Complex& z);
Complex epsilon_star_eval(const CPoly& phi_n, int n, const CircleQuadrature& cq, const Complex& z);

struct EpsilonReport {
  Real small_z;         // |eps_n(z)/(2 sigma_n z^n) - 1| at |z| = r_small
  Real large_z;         // |z eps_n(z) - 2 sigma_n alpha_{n+1}| at |z| = r_large
  Real star_large_z;    // |eps*_n(z) - 2 sigma_n| at |z| = r_large
  Real small_radius;
  Real large_radius;
};

EpsilonReport epsilon_asymptotics_check(const VerblunskyTable& vt, const QWeightParams& p, int n,
                                        double r_small = 1e-3, double r_large = 1e3);

nlohmann::json to_json(const VerblunskyTable& vt);
std::string to_csv(const VerblunskyTable& vt);

}  // namespace qpvi
