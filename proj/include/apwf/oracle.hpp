#ifndef APWF_ORACLE_HPP_
#define APWF_ORACLE_HPP_

#include <functional>

#include "apwf/geometry_bundle.hpp"
#include "apwf/linalg.hpp"
#include "apwf/radial_graph.hpp"

namespace apwf {

// Adaptive Gauss-Kronrod (G7/K15) quadrature on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12, double abs_tol = 0.0);

// Round sphere of Euclidean radius R centred at tau * R * axis in exact
// Schwarzschild of mass m.
struct SphereSpec {
  double mass = 1.0;
  double radius = 10.0;
  double tau = 0.0;           // |centre| / radius, in [0, 1)
  Vec3 axis = {0.0, 0.0, 1.0};

  static constexpr double kTauMax = 0.9;
  void validate() const;
  Vec3 center() const { return (tau * radius) * normalized(axis); }
};

struct CenteredQuantities {
  double mean_curvature = 0.0;    // 2 R^-1 phi^-2 - 2 m R^-2 phi^-3
  double area = 0.0;              // 4 pi R^2 phi^4
  double willmore_integral = 0.0; // int H^2 dmu = 16 pi (1 - m/(R phi))^2
  double hawking_mass = 0.0;      // equals m identically
  double lambda_star = 0.0;       // 2 m R^-3 phi^-6
};

CenteredQuantities centered_quantities(double mass, double radius);

enum class OffcenterMode {
  quadrature,  // exact 1-D reduction, all conformal factors retained
  closed,      // log closed form, remainder O(R^-3)
  taylor       // 16 pi - 32 pi m/R + 32 pi m^2/R^2 (1 + tau^2)
};

// int H_S^2 dmu_S over the off-centre sphere.
double offcenter_willmore(const SphereSpec& spec, OffcenterMode mode);

// Schwarzschild area of the off-centre sphere by 1-D quadrature.
double offcenter_area(const SphereSpec& spec);
double offcenter_hawking_mass(const SphereSpec& spec);

// d/ds int H_S^2 dmu_S under translation of the centre along the axis,
// from the exact 1-D integral (Richardson-extrapolated differencing in tau).
// Leading order: 64 pi m^2 tau / R^3.
double translation_sensitivity(const SphereSpec& spec);

// I_lambda = int (nu_e . axis) r^-2 (1 - m/2r) (d_r . nu_e) dmu_e.
// Leading order: -(8 pi / 3) tau.
double lambda_translation_integral(const SphereSpec& spec);

struct DriftRate {
  double translation_term = 0.0;  // -64 pi m^2 tau / R^3
  double lambda_term = 0.0;       // +32 pi m^2 tau / (3 R^3)
  double prefactor = 0.0;         // (3 - 2 m / R_g) / (|Sigma|_S R_g)
  double leading_rate = 0.0;      // prefactor * (translation + lambda)
  double paper_headline = 0.0;    // -160 m^2 R_g^-6 tau, reported for comparison
};

// Leading-order predicted d tau_g / dt of the re-centring drift, assembled
// from the translation sensitivity of the Willmore energy and the Lagrange
// term. The assembled asymptotic coefficient is 40 m^2 R^-6 (not the 160 of
// the headline form, which is reported alongside, never asserted).
DriftRate drift_rate(const SphereSpec& spec);

// Surface integral int Rc_S(direction, nu_S) dmu_S over a radial graph;
// vanishes for null-homologous surfaces in the Schwarzschild exterior.
double pohozaev_integral(const RadialGraph& graph, const Vec3& direction,
                         double mass);

}  // namespace apwf

#endif  // APWF_ORACLE_HPP_
