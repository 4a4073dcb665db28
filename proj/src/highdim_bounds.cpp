#include "kissbound/highdim_bounds.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <sstream>

#include "kissbound/errors.hpp"
#include "kissbound/spherical_caps.hpp"

namespace kissbound {
namespace {

constexpr int kMaxPanels = 1 << 16;

void require_dimension(int d) {
  if (d < kMinDimension || d > kMaxDimension) {
    std::ostringstream msg;
    msg << "dimension must lie in [" << kMinDimension << ", " << kMaxDimension << "], got " << d;
    throw DomainError(msg.str());
  }
}

void require_half_angle(double alpha) {
  if (!(alpha >= 0.0) || !(alpha <= kPi / 2.0 + defaults::kGuardTolerance)) {
    std::ostringstream msg;
    msg << "cap radius must lie in [0, pi/2], got " << alpha;
    throw DomainError(msg.str());
  }
}

double integrand(int d, double theta) { return 2.0 * std::pow(std::sin(theta), d - 2); }

}  // namespace

double sine_power_integral(int d, double alpha, int panels) {
  require_dimension(d);
  require_half_angle(alpha);
  if (panels < 1) throw DomainError("quadrature needs at least one panel");
  using Rule = boost::math::quadrature::gauss<double, 20>;
  const double h = alpha / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = i * h;
    const double hi = (i + 1 == panels) ? alpha : lo + h;
    total += Rule::integrate([d](double t) { return integrand(d, t); }, lo, hi);
  }
  return total;
}

double sine_power_integral(int d, double alpha) {
  require_dimension(d);
  require_half_angle(alpha);
  if (alpha == 0.0) return 0.0;
  int panels = 2;
  double previous = sine_power_integral(d, alpha, panels);
  while (panels < kMaxPanels) {
    panels *= 2;
    const double current = sine_power_integral(d, alpha, panels);
    if (std::abs(current - previous) <= 1e-15 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

double cap_area_d(int d, double alpha) {
  require_dimension(d);
  require_half_angle(alpha);
  // pi^{(d-1)/2} / Gamma((d-1)/2) is the (d-2)-sphere area over 2; with it
  // the hemisphere comes out as exactly half the full sphere.
  const double half_dim = 0.5 * (d - 1);
  const double prefactor = std::pow(kPi, half_dim) / std::tgamma(half_dim);
  return prefactor * sine_power_integral(d, alpha);
}

double g_profile(int d, double C, double x) {
  require_dimension(d);
  if (!(C > 1.0) || !(C < 2.0)) throw DomainError("g_profile needs C in (1, 2)");
  if (!(x >= C - 1.0) || !(x <= 1.0)) throw DomainError("g_profile needs x in [C - 1, 1]");
  // 1 - x^2 = sin^2(acos x)
  return sine_power_integral(d, std::acos(x)) + sine_power_integral(d, std::acos(C - x));
}

double min_pair_coverage(int d, double rho) {
  require_dimension(d);
  if (!(rho > 1.0) || !(rho < 3.0)) throw DomainError("inflation ratio must lie in (1, 3)");
  const double cap_cos = (rho * rho + 3.0) / (4.0 * rho);
  return sine_power_integral(d, std::acos(cap_cos)) / sine_power_integral(d, kPi / 2.0);
}

double area_bound(int d) {
  require_dimension(d);
  return 2.0 * sine_power_integral(d, kPi / 2.0) / sine_power_integral(d, kPi / 6.0);
}

DimBoundResult k_bound_highdim(int d, double rho) {
  DimBoundResult r;
  r.d = d;
  r.rho = rho;
  r.f_d = min_pair_coverage(d, rho);
  r.bound = 2.0 / r.f_d;
  return r;
}

double round_up_third_decimal(double value) {
  return (std::floor(value * 1000.0) + 1.0) / 1000.0;
}

}  // namespace kissbound
