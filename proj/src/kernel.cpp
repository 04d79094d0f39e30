#include "stefanrad/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stefanrad/errors.hpp"

namespace stefanrad::kernel {
namespace {

constexpr double kSeriesSplit = 1.0;
constexpr int kMaxTerms = 200;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// exp(-x) underflows to subnormals past this point; E1 is zero for all purposes.
constexpr double kUnderflow = 740.0;

double e1_series(double x) {
  // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term *= -x / k;
    const double contribution = term / k;
    sum += contribution;
    if (std::abs(contribution) < kEps * std::abs(sum)) break;
  }
  return -euler_gamma - std::log(x) - sum;
}

double e1_continued_fraction(double x) {
  // Modified Lentz on E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxTerms; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h * std::exp(-x);
}

}  // namespace

double e1(double x) {
  if (!(x > 0.0)) throw DomainError("e1: argument must be positive, got " + std::to_string(x));
  if (x >= kUnderflow) return 0.0;
  return x <= kSeriesSplit ? e1_series(x) : e1_continued_fraction(x);
}

double kernel_E(double x) {
  if (x == 0.0) throw DomainError("kernel_E: logarithmic singularity at 0");
  return 0.5 * e1(std::abs(x));
}

double kernel_tail(double a) {
  if (!(a >= 0.0)) throw DomainError("kernel_tail: argument must be nonnegative");
  if (a == 0.0) return 0.5;
  if (a >= kUnderflow) return 0.0;
  return 0.5 * (std::exp(-a) - a * e1(a));
}

double kernel_first_moment_tail(double a) {
  if (!(a >= 0.0)) throw DomainError("kernel_first_moment_tail: argument must be nonnegative");
  if (a == 0.0) return 0.25;
  if (a >= kUnderflow) return 0.0;
  return 0.25 * ((a + 1.0) * std::exp(-a) - a * a * e1(a));
}

double kernel_cell_integral(double a, double b) {
  if (!(a <= b)) throw DomainError("kernel_cell_integral: requires a <= b");
  if (a == b) return 0.0;
  // Tails are evaluated on the positive side only; std::isinf endpoints give 0.
  auto tail = [](double t) { return std::isinf(t) ? 0.0 : kernel_tail(t); };
  if (a >= 0.0) return tail(a) - tail(b);
  if (b <= 0.0) return tail(-b) - tail(-a);
  return (0.5 - tail(-a)) + (0.5 - tail(b));
}

CellMoments kernel_cell_moments(double a, double b) {
  if (!(a <= b)) throw DomainError("kernel_cell_moments: requires a <= b");
  if (a == b) return {0.0, 0.0};
  if (a >= 0.0) {
    return {kernel_tail(a) - kernel_tail(b),
            kernel_first_moment_tail(a) - kernel_first_moment_tail(b)};
  }
  if (b <= 0.0) {
    return {kernel_tail(-b) - kernel_tail(-a),
            kernel_first_moment_tail(-a) - kernel_first_moment_tail(-b)};
  }
  return {(0.5 - kernel_tail(-a)) + (0.5 - kernel_tail(b)),
          kernel_first_moment_tail(-a) - kernel_first_moment_tail(b)};
}

double kernel_exp_moment(double a) {
  if (!(std::abs(a) < 1.0)) {
    throw DomainError("kernel_exp_moment: diverges for |a| >= 1");
  }
  if (a == 0.0) return 1.0;
  return std::atanh(a) / a;
}

double planck_B(double nu, double temperature) {
  if (!(nu > 0.0)) throw DomainError("planck_B: frequency must be positive");
  if (!(temperature > 0.0)) throw DomainError("planck_B: temperature must be positive");
  using namespace si;
  const double x = planck_h * nu / (boltzmann_k * temperature);
  const double prefactor = 2.0 * planck_h * nu * nu * nu / (speed_of_light * speed_of_light);
  return prefactor / std::expm1(x);
}

}  // namespace stefanrad::kernel
