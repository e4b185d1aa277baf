#include "qpvi/numeric.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace qpvi {

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

unsigned env_default_bits() {
  if (const char* env = std::getenv("QPVI_PREC")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 53 && v <= 100000) return static_cast<unsigned>(v);
  }
  return kDefaultPrecisionBits;
}

// Values created before any ScopedPrecision get the library default, not the backend's 20 digits.
[[maybe_unused]] const bool kDefaultPrecisionSet =
    (Real::default_precision(bits_to_digits10(env_default_bits())), true);

}  // namespace

unsigned default_precision_bits() { return env_default_bits(); }

unsigned working_precision_bits() {
  return static_cast<unsigned>(boost::multiprecision::detail::digits10_2_2(Real::default_precision()));
}

ScopedPrecision::ScopedPrecision(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

ScopedPrecision::~ScopedPrecision() { Real::default_precision(saved_digits10_); }

Real promote(const Real& x) { return Real(x, Real::default_precision()); }

Complex promote(const Complex& z) { return Complex(promote(z.re), promote(z.im)); }

Real pow2(int e) { return boost::multiprecision::ldexp(Real(1), e); }

Real pi() { return boost::math::constants::pi<Real>(); }

Real real_from_string(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw ConfigError("not a real number: '" + s + "'");
  }
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm keeps the intermediate scale bounded.
  if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
    Real r = o.im / o.re;
    Real d = o.re + o.im * r;
    Real nr = (re + im * r) / d;
    im = (im - re * r) / d;
    re = std::move(nr);
  } else {
    Real r = o.re / o.im;
    Real d = o.re * r + o.im;
    Real nr = (re * r + im) / d;
    im = (im * r - re) / d;
    re = std::move(nr);
  }
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex log(const Complex& z) {
  return Complex(boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re));
}

Complex polar(const Real& r, const Real& theta) {
  return Complex(r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta));
}

Complex pow(const Complex& z, int n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1), base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

Complex ipow(const Real& q, int n) { return Complex(boost::multiprecision::pow(q, n)); }

Real rel_diff(const Complex& a, const Complex& b, const Real& floor) {
  Real scale = abs(b);
  if (scale < floor) scale = floor;
  return abs(a - b) / scale;
}

Complex complex_from_string(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(real_from_string(s));
  return Complex(real_from_string(s.substr(0, comma)), real_from_string(s.substr(comma + 1)));
}

double to_double(const Real& x) { return x.convert_to<double>(); }

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits > 0 ? digits : 17);
  os << x;
  return os.str();
}

std::string to_string(const Complex& z, int digits) {
  return "(" + to_string(z.re, digits) + ", " + to_string(z.im, digits) + ")";
}

Real Sampler::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return Real(d(gen_));
}

Complex Sampler::uniform_box(double lo, double hi) {
  Real r = uniform(lo, hi);
  Real i = uniform(lo, hi);
  return Complex(r, i);
}

Complex Sampler::uniform_disc(double rmin, double rmax) {
  Real r = uniform(rmin, rmax);
  Real t = uniform(0.0, 2.0 * M_PI);
  return polar(r, t);
}

Complex Sampler::on_circle(double r) { return polar(Real(r), uniform(0.0, 2.0 * M_PI)); }

}  // namespace qpvi
