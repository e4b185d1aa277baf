#pragma once

#include "qpvi/numeric.hpp"
#include "qpvi/painleve.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace qpvi {

using BigInt = boost::multiprecision::cpp_int;

// Divisor class in the basis E0..E9.
struct PicVec {
  std::array<BigInt, 10> v{};

  static PicVec basis(int i);
  static PicVec from(std::initializer_list<long> coeffs);
  bool operator==(const PicVec& o) const { return v == o.v; }
};

PicVec operator+(const PicVec& a, const PicVec& b);
PicVec operator-(const PicVec& a, const PicVec& b);
PicVec operator*(long k, const PicVec& a);
// <u, v> = u0 v0 - sum_{i>=1} ui vi
BigInt intersect(const PicVec& a, const PicVec& b);
std::string to_string(const PicVec& p);

// Integer 10x10 map; column j is the image of E_j.
struct PicMap {
  std::array<std::array<BigInt, 10>, 10> m{};

  PicVec operator()(const PicVec& u) const;
};

struct PicConstants {
  PicVec delta;
  std::array<PicVec, 4> D;
  std::array<PicVec, 6> alpha;
  std::array<PicVec, 8> F;  // F1..F8 expressed in the E basis
};

PicConstants pic_constants();
PicMap phi_pic();

struct TranslationReport {
  bool isometry = false;
  bool fixes_delta = false;
  bool fixes_alpha0_3 = false;
  bool alpha4_shift = false;   // alpha4 -> alpha4 - delta
  bool alpha5_shift = false;   // alpha5 -> alpha5 + delta
  bool d_permutation = false;  // D0->D2, D1->D3, D2->D0, D3->D1
  bool e2_image = false;       // E2 -> 2E0 - E1 - E3 - E5 - E6 - E8
  bool delta_root_sum = false; // delta = a0 + a1 + 2a2 + 2a3 + a4 + a5
  bool all() const;
};

TranslationReport check_translation(const PicMap& M);

// Point of P1 x P1 with the eight parameters b1..b8 (stored 0-based).
struct BPoint {
  std::array<Complex, 8> b;
  Complex f, g;
};

Complex bpoint_q(const BPoint& p);  // b3 b4 b5 b6 / (b1 b2 b7 b8)

enum class Reflection { W0, W1, W2, W3, W4, W5, Sigma, W0AsPrinted, SigmaAsPrinted };

std::string reflection_name(Reflection r);

// Throws ChartError where the P2 chart change is singular and IndeterminacyError
// at the base points of the map.
BPoint elementary(Reflection r, const BPoint& pt);

// sigma w4 w3 w2 w0 w1 w2 w3 w4, applied right to left.
BPoint composite_map(const BPoint& pt, bool as_printed = false);

// f-bar and g-bar closed forms as displayed.
Complex fbar_printed(const BPoint& pt);
Complex gbar_printed(const BPoint& pt);

// b = (c1, c2, c3, c4, c1c2/theta1, c1c2/theta2, 1/kappa1, q/kappa2), f = xi, g = y.
BPoint to_bpoint(const SurfaceCoords& c, const SurfaceParams& sp);

// Removes the P1 x P1 scaling gauge (g, b1..b4) *= mu, (f, b5..b8) *= lambda by
// matching b1 to c1 and b8 to q/kappa2 of `target`.
BPoint normalize_gauge(const BPoint& pt, const SurfaceParams& target);

nlohmann::json to_json(const PicMap& m);

}  // namespace qpvi
