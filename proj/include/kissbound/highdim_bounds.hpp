#pragma once

// Area bounds for average kissing numbers in dimension d >= 3, using only the
// pairwise coverage identity and the trivial density bound dens_d <= 1.
namespace kissbound {

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 64;

struct DimBoundResult {
  int d = 0;
  double rho = 0.0;
  double f_d = 0.0;    // minimum of a(X,Y) + a(Y,X), attained by congruent balls
  double bound = 0.0;  // 2 / f_d, an upper bound on k_d
};

// Incomplete-beta type integral
//   ∫_0^{sin^2 alpha} t^{(d-3)/2} (1-t)^{-1/2} dt  =  ∫_0^alpha 2 sin^{d-2}(theta) dtheta,
// evaluated in the smooth theta form. Panels are doubled until two
// successive composite Gauss-Legendre sums agree to ~1e-15 relative.
double sine_power_integral(int d, double alpha);

// Same integral with a fixed number of composite Gauss-Legendre panels.
double sine_power_integral(int d, double alpha, int panels);

// (d-1)-dimensional area of a cap of angular radius alpha on the unit sphere
// in R^d. alpha in [0, pi/2].
double cap_area_d(int d, double alpha);

// g(x) = B(1 - x^2) + B(1 - (C - x)^2), with B(s) the integral above with
// upper limit s. C in (1, 2), x in [C - 1, 1].
double g_profile(int d, double C, double x);

// f_d(rho): the congruent-ball minimum of the pair coverage sum.
double min_pair_coverage(int d, double rho);

// a(d) = 2 / f_d(sqrt 3).
double area_bound(int d);

DimBoundResult k_bound_highdim(int d, double rho);

// Smallest number with three decimals that is strictly greater than value.
double round_up_third_decimal(double value);

}  // namespace kissbound
