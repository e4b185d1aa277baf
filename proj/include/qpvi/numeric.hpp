#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpvi {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

constexpr unsigned kDefaultPrecisionBits = 128;

// Precision from QPVI_PREC if set and valid, else kDefaultPrecisionBits.
unsigned default_precision_bits();

// Working precision of newly created Real values, in bits.
unsigned working_precision_bits();

// Sets the MPFR working precision for its lifetime. The backend keeps this
// setting process-wide, so regions must not be entered concurrently.
class ScopedPrecision {
public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

private:
  unsigned saved_digits10_;
};

Real pow2(int e);
Real pi();
Real real_from_string(const std::string& s);

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r) {}
  Complex(double r) : re(r) {}
  Complex(double r, double i) : re(r), im(i) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator-(const Complex& a);
bool operator==(const Complex& a, const Complex& b);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm2(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex pow(const Complex& z, int n);
Complex ipow(const Real& q, int n);

// |a - b| / max(|b|, floor)
Real rel_diff(const Complex& a, const Complex& b, const Real& floor = Real(1e-300));

// Copy rounded to the working precision; copies otherwise keep the source precision.
Real promote(const Real& x);
Complex promote(const Complex& z);

// Parses "re" or "re,im".
Complex complex_from_string(const std::string& s);
double to_double(const Real& x);
std::string to_string(const Real& x, int digits = 0);
std::string to_string(const Complex& z, int digits = 0);

// Deterministic uniform samples; draws doubles so streams match across precisions.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  Real uniform(double lo, double hi);
  Complex uniform_box(double lo, double hi);
  Complex uniform_disc(double rmin, double rmax);
  Complex on_circle(double r);

private:
  std::mt19937_64 gen_;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QPVI_NUMERICAL_ERROR(Name) \
  struct Name : NumericalError { using NumericalError::NumericalError; }

QPVI_NUMERICAL_ERROR(DomainError);
QPVI_NUMERICAL_ERROR(PoleError);
QPVI_NUMERICAL_ERROR(PrecisionError);
QPVI_NUMERICAL_ERROR(ConvergenceError);
QPVI_NUMERICAL_ERROR(DegreeError);
QPVI_NUMERICAL_ERROR(SingularMeasureError);
QPVI_NUMERICAL_ERROR(FitError);
QPVI_NUMERICAL_ERROR(DegenerateError);
QPVI_NUMERICAL_ERROR(GaugeError);
QPVI_NUMERICAL_ERROR(ConsistencyError);
QPVI_NUMERICAL_ERROR(ConstraintError);
QPVI_NUMERICAL_ERROR(IndeterminacyError);
QPVI_NUMERICAL_ERROR(SingularGaugeError);
QPVI_NUMERICAL_ERROR(ChartError);
QPVI_NUMERICAL_ERROR(SingularityError);
QPVI_NUMERICAL_ERROR(StepFailure);
QPVI_NUMERICAL_ERROR(SingularMatrixError);

#undef QPVI_NUMERICAL_ERROR

}  // namespace qpvi
