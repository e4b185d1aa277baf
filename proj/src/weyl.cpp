#include "qpvi/weyl.hpp"

#include <sstream>

namespace qpvi {

PicVec PicVec::basis(int i) {
  PicVec p;
  p.v[i] = 1;
  return p;
}

PicVec PicVec::from(std::initializer_list<long> coeffs) {
  PicVec p;
  int i = 0;
  for (long c : coeffs) p.v[i++] = c;
  return p;
}

PicVec operator+(const PicVec& a, const PicVec& b) {
  PicVec r;
  for (int i = 0; i < 10; ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}

PicVec operator-(const PicVec& a, const PicVec& b) {
  PicVec r;
  for (int i = 0; i < 10; ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}

PicVec operator*(long k, const PicVec& a) {
  PicVec r;
  for (int i = 0; i < 10; ++i) r.v[i] = k * a.v[i];
  return r;
}

BigInt intersect(const PicVec& a, const PicVec& b) {
  BigInt s = a.v[0] * b.v[0];
  for (int i = 1; i < 10; ++i) s -= a.v[i] * b.v[i];
  return s;
}

std::string to_string(const PicVec& p) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 10; ++i) {
    if (p.v[i] == 0) continue;
    if (p.v[i] < 0) os << (first ? "-" : " - ");
    else if (!first) os << " + ";
    BigInt a = p.v[i] < 0 ? BigInt(-p.v[i]) : p.v[i];
    if (a != 1) os << a;
    os << 'E' << i;
    first = false;
  }
  return first ? "0" : os.str();
}

PicVec PicMap::operator()(const PicVec& u) const {
  PicVec r;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) r.v[i] += m[i][j] * u.v[j];
  return r;
}

PicConstants pic_constants() {
  auto E = PicVec::basis;
  PicConstants k;
  k.delta = 3 * E(0);
  for (int i = 1; i < 10; ++i) k.delta = k.delta - E(i);
  k.D = {E(8) - E(9), E(0) - E(6) - E(7) - E(8), E(0) - E(1) - E(2) - E(3), E(0) - E(4) - E(5) - E(8)};
  k.alpha = {E(0) - E(1) - E(8) - E(9), E(2) - E(3), E(1) - E(2), E(0) - E(1) - E(4) - E(6), E(6) - E(7), E(4) - E(5)};
  // E2=F1, E3=F2, E0-E1-E8=F3, E9=F4, E4=F5, E5=F6, E6=F7, E7=F8
  k.F = {E(2), E(3), E(0) - E(1) - E(8), E(9), E(4), E(5), E(6), E(7)};
  return k;
}

PicMap phi_pic() {
  static const int rows[10][10] = {
      {6, 2, 2, 2, 3, 0, 0, 3, 2, 1},
      {-2, 0, -1, -1, -1, 0, 0, -1, -1, 0},
      {-2, -1, 0, -1, -1, 0, 0, -1, -1, 0},
      {-2, -1, -1, 0, -1, 0, 0, -1, -1, 0},
      {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
      {-3, -1, -1, -1, -2, 0, 0, -1, -1, -1},
      {-3, -1, -1, -1, -1, 0, 0, -2, -1, -1},
      {0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
      {-2, -1, -1, -1, -1, 0, 0, -1, 0, 0},
      {-1, 0, 0, 0, -1, 0, 0, -1, 0, 0},
  };
  PicMap M;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) M.m[i][j] = rows[i][j];
  return M;
}

bool TranslationReport::all() const {
  return isometry && fixes_delta && fixes_alpha0_3 && alpha4_shift && alpha5_shift && d_permutation && e2_image &&
         delta_root_sum;
}

TranslationReport check_translation(const PicMap& M) {
  const auto k = pic_constants();
  TranslationReport r;
  r.isometry = true;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      auto ei = PicVec::basis(i), ej = PicVec::basis(j);
      if (intersect(M(ei), M(ej)) != intersect(ei, ej)) r.isometry = false;
    }
  r.fixes_delta = M(k.delta) == k.delta;
  r.fixes_alpha0_3 = true;
  for (int i = 0; i < 4; ++i) r.fixes_alpha0_3 = r.fixes_alpha0_3 && M(k.alpha[i]) == k.alpha[i];
  r.alpha4_shift = M(k.alpha[4]) == k.alpha[4] - k.delta;
  r.alpha5_shift = M(k.alpha[5]) == k.alpha[5] + k.delta;
  r.d_permutation = M(k.D[0]) == k.D[2] && M(k.D[1]) == k.D[3] && M(k.D[2]) == k.D[0] && M(k.D[3]) == k.D[1];
  auto E = PicVec::basis;
  r.e2_image = M(E(2)) == 2 * E(0) - E(1) - E(3) - E(5) - E(6) - E(8);
  const auto& a = k.alpha;
  r.delta_root_sum = k.delta == a[0] + a[1] + 2 * a[2] + 2 * a[3] + a[4] + a[5];
  return r;
}

Complex bpoint_q(const BPoint& p) {
  const auto& b = p.b;
  return b[2] * b[3] * b[4] * b[5] / (b[0] * b[1] * b[6] * b[7]);
}

std::string reflection_name(Reflection r) {
  switch (r) {
    case Reflection::W0: return "w0";
    case Reflection::W1: return "w1";
    case Reflection::W2: return "w2";
    case Reflection::W3: return "w3";
    case Reflection::W4: return "w4";
    case Reflection::W5: return "w5";
    case Reflection::Sigma: return "sigma";
    case Reflection::W0AsPrinted: return "w0(printed)";
    case Reflection::SigmaAsPrinted: return "sigma(printed)";
  }
  return "?";
}

namespace {

Real guard() { return pow2(-static_cast<int>(working_precision_bits()) / 2); }

bool tiny(const Complex& x, const Real& scale) { return abs(x) <= guard() * std::max(scale, Real(1e-300)); }

// a1..a8 stored at index 1..8.
struct P2Point {
  std::array<Complex, 9> a;
  Complex x, y, z;
};

P2Point to_p2(const BPoint& p) {
  const auto& b = p.b;
  P2Point r;
  r.a[1] = Complex(1) / b[2];
  r.a[2] = Complex(1) / b[0];
  r.a[3] = Complex(1) / b[1];
  r.a[8] = b[3];
  r.a[6] = b[4];
  r.a[7] = b[5];
  r.a[4] = -(b[2] / b[6]);
  r.a[5] = -(b[2] / b[7]);
  // f = y / (x - a1 z), g = z / x with x = 1
  r.x = Complex(1);
  r.z = p.g;
  r.y = p.f * (Complex(1) - r.a[1] * p.g);
  return r;
}

BPoint from_p2(const P2Point& p) {
  const auto& a = p.a;
  BPoint r;
  r.b = {Complex(1) / a[2], Complex(1) / a[3], Complex(1) / a[1], a[8], a[6], a[7],
         Complex(-1) / (a[4] * a[1]), Complex(-1) / (a[5] * a[1])};
  const Complex den = p.x - a[1] * p.z;
  const Real scale = abs(p.x) + abs(a[1] * p.z) + abs(p.y);
  if (tiny(p.x, scale) || tiny(den, scale)) throw ChartError("P2 point lies on a chart boundary of P1 x P1");
  r.f = p.y / den;
  r.g = p.z / p.x;
  return r;
}

BPoint w0(const BPoint& pt, bool printed) {
  P2Point p = to_p2(pt);
  const auto a = p.a;
  P2Point r = p;
  r.a[1] = Complex(1) / a[8];
  r.a[8] = Complex(1) / a[1];
  if (printed) {
    r.a[4] = a[1] * a[4];
    r.a[5] = a[5] * a[1];
    r.a[6] = a[6] * a[8];
    r.a[7] = a[7] * a[8];
  } else {
    r.a[4] = a[1] * a[8] * a[4];
    r.a[5] = a[1] * a[8] * a[5];
  }
  const Complex l1 = p.x - a[1] * p.z, l2 = p.x - p.z / a[8];
  r.x = p.x * l1;
  r.y = p.y * l2;
  r.z = p.z * l1;
  const Real scale = abs(p.x) * abs(p.x) + abs(p.y) * abs(p.y) + abs(p.z) * abs(p.z);
  if (tiny(r.x, scale) && tiny(r.y, scale) && tiny(r.z, scale)) throw IndeterminacyError("w0: base point");
  return from_p2(r);
}

BPoint transpose_a(const BPoint& pt, int i, int j) {
  P2Point p = to_p2(pt);
  std::swap(p.a[i], p.a[j]);
  return from_p2(p);
}

}  // namespace

BPoint elementary(Reflection r, const BPoint& pt) {
  const auto& b = pt.b;
  switch (r) {
    case Reflection::W0: return w0(pt, false);
    case Reflection::W0AsPrinted: return w0(pt, true);
    case Reflection::W1: return transpose_a(pt, 2, 3);
    case Reflection::W4: return transpose_a(pt, 4, 5);
    case Reflection::W5: return transpose_a(pt, 6, 7);
    case Reflection::W2: {
      const Complex den = pt.g - b[0];
      if (tiny(den, abs(pt.g) + abs(b[0]))) throw IndeterminacyError("w2: g = b1");
      const Complex s = b[2] / b[0];
      return BPoint{{b[2], b[1], b[0], b[3], b[4] * s, b[5] * s, b[6], b[7]}, pt.f * (pt.g - b[2]) / den, pt.g};
    }
    case Reflection::W3: {
      const Complex den = pt.f - b[4];
      if (tiny(den, abs(pt.f) + abs(b[4]))) throw IndeterminacyError("w3: f = b5");
      const Complex s = b[4] / b[6];
      return BPoint{{b[0], b[1], s * b[2], s * b[3], b[6], b[5], b[4], b[7]}, pt.f, s * pt.g * (pt.f - b[6]) / den};
    }
    case Reflection::Sigma: {
      if (tiny(pt.f, Real(1)) || tiny(pt.g, Real(1))) throw IndeterminacyError("sigma: f or g = 0");
      const Complex b34 = b[2] * b[3], b78 = b[6] * b[7];
      return BPoint{{b[3], b[2], b34 / b[0], b34 / b[1], b[7], b[6], b78 / b[4], b78 / b[5]}, b78 / pt.f, b34 / pt.g};
    }
    case Reflection::SigmaAsPrinted: {
      if (tiny(pt.f, Real(1)) || tiny(pt.g, Real(1))) throw IndeterminacyError("sigma: f or g = 0");
      return BPoint{b, b[6] * b[7] / pt.f, b[2] * b[3] / pt.g};
    }
  }
  throw DomainError("unknown reflection");
}

BPoint composite_map(const BPoint& pt, bool as_printed) {
  using R = Reflection;
  const R w0 = as_printed ? R::W0AsPrinted : R::W0;
  const R s = as_printed ? R::SigmaAsPrinted : R::Sigma;
  const R word[] = {s, R::W4, R::W3, R::W2, w0, R::W1, R::W2, R::W3, R::W4};
  BPoint p = pt;
  for (int i = 8; i >= 0; --i) p = elementary(word[i], p);
  return p;
}

Complex fbar_printed(const BPoint& pt) {
  const auto& b = pt.b;
  const Complex& f = pt.f;
  const Complex& g = pt.g;
  const Complex &b1 = b[0], &b2 = b[1], &b3 = b[2], &b4 = b[3], &b5 = b[4], &b8 = b[7];
  const Complex num = (f * (g - b1 * b8 / b5) - b8 * (g - b1)) * (f * (g - b2 * b8 / b5) - b8 * (g - b2));
  const Complex den = (f * (g - b3) - b8 * (g - b3 * b5 / b8)) * (f * (g - b4) - b8 * (g - b4 * b5 / b8));
  return b1 * b2 * b8 / (b5 * f) * num / den;
}

Complex gbar_printed(const BPoint& pt) {
  const auto& b = pt.b;
  const Complex& f = pt.f;
  const Complex& g = pt.g;
  const Complex &b1 = b[0], &b2 = b[1], &b3 = b[2], &b4 = b[3], &b5 = b[4], &b7 = b[6], &b8 = b[7];
  const Complex h = g * (f - b8) / (f - b5);
  const Complex X = f * (h - b3) / (h - b1 * b8 / b5) * (h - b4) / (h - b2 * b8 / b5);
  return b5 * b7 / g * (f - b5) / (f - b8) * (X - b3 * b4 * b5 * b5 / (b1 * b2 * b8)) / (X - b5);
}

BPoint to_bpoint(const SurfaceCoords& c, const SurfaceParams& sp) {
  const auto& cc = sp.c;
  const Complex c12 = cc[0] * cc[1];
  return BPoint{{cc[0], cc[1], cc[2], cc[3], c12 / sp.theta1, c12 / sp.theta2, Complex(1) / sp.kappa1,
                 Complex(sp.q) / sp.kappa2},
                c.xi, c.y};
}

BPoint normalize_gauge(const BPoint& pt, const SurfaceParams& target) {
  const Complex mu = pt.b[0] / target.c[0];
  const Complex lambda = pt.b[7] / (Complex(target.q) / target.kappa2);
  BPoint r = pt;
  for (int i = 0; i < 4; ++i) r.b[i] = pt.b[i] / mu;
  for (int i = 4; i < 8; ++i) r.b[i] = pt.b[i] / lambda;
  r.g = pt.g / mu;
  r.f = pt.f / lambda;
  return r;
}

nlohmann::json to_json(const PicMap& M) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < 10; ++k) row.push_back(M.m[i][k].convert_to<long>());
    j.push_back(row);
  }
  return j;
}

}  // namespace qpvi
