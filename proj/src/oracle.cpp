#include "apwf/oracle.hpp"

#include <cmath>

#include "apwf/errors.hpp"
#include "apwf/metric.hpp"

namespace apwf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Kronrod 7-15 pair on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
constexpr double kKronrodWeights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
constexpr double kGaussWeights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082};

struct PanelResult {
  double kronrod = 0.0;
  double error = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fk[8][2];
  fk[0][0] = f(mid);
  fk[0][1] = 0.0;
  for (int i = 1; i < 8; ++i) {
    fk[i][0] = f(mid + half * kKronrodNodes[i]);
    fk[i][1] = f(mid - half * kKronrodNodes[i]);
  }
  double kron = kKronrodWeights[0] * fk[0][0];
  for (int i = 1; i < 8; ++i) kron += kKronrodWeights[i] * (fk[i][0] + fk[i][1]);
  // Gauss nodes are the even Kronrod nodes 0, 2, 4, 6.
  double gauss = kGaussWeights[0] * fk[0][0];
  for (int i = 1; i < 4; ++i)
    gauss += kGaussWeights[i] * (fk[2 * i][0] + fk[2 * i][1]);
  PanelResult out;
  out.kronrod = kron * half;
  out.error = std::abs((kron - gauss) * half);
  return out;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                double tol, int depth) {
  const PanelResult panel = gk15(f, a, b);
  if (panel.error <= tol || depth >= 48) return panel.kronrod;
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive(f, mid, b, 0.5 * tol, depth + 1);
}

// Exact 1-D reduction of the m-dependent part of int H_S^2 dmu_S over the
// off-centre sphere, using the substitution theta -> r:
//   int X dmu_e = (2 pi / tau) int X(r) r dr over [R(1-tau), R(1+tau)],
//   d_r . nu_e = (r^2 + R^2(1 - tau^2)) / (2 r R).
// The tau-independent Euclidean part contributes exactly 16 pi and is kept
// out so that differencing in tau stays well conditioned.
double willmore_mass_part(const SphereSpec& spec) {
  const double m = spec.mass;
  const double R = spec.radius;
  const double tau = spec.tau;
  const double bsq = R * R * (1.0 - tau * tau);
  auto integrand = [&](double r) {
    const double phi = 1.0 + m / (2.0 * r);
    const double u = (r * r + bsq) / (2.0 * r * R);
    return (-8.0 * m / R / (r * r * phi) * u +
            4.0 * m * m / std::pow(r, 4) / (phi * phi) * u * u) *
           r;
  };
  const double lo = R * (1.0 - tau);
  const double hi = R * (1.0 + tau);
  return (2.0 * kPi / tau) * integrate_adaptive(integrand, lo, hi, 1e-13, 1e-15);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, double abs_tol) {
  const PanelResult whole = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole.kronrod));
  if (whole.error <= tol) return whole.kronrod;
  return adaptive(f, a, b, tol, 0);
}

void SphereSpec::validate() const {
  if (mass < 0.0) throw ArgumentError("SphereSpec: mass must be non-negative");
  if (radius <= 0.0) throw ArgumentError("SphereSpec: radius must be positive");
  if (tau < 0.0 || tau >= 1.0)
    throw DomainError("SphereSpec: tau must lie in [0, 1)");
  if (tau > kTauMax)
    throw DomainError("SphereSpec: tau beyond the valid substitution range");
  const double r_floor = 1.1 * mass / 2.0;
  if (radius * (1.0 - tau) <= r_floor)
    throw DomainError("SphereSpec: sphere dips below r_floor");
}

CenteredQuantities centered_quantities(double mass, double radius) {
  if (radius <= 1.1 * mass / 2.0)
    throw DomainError("centered_quantities: radius below r_floor");
  const double phi = 1.0 + mass / (2.0 * radius);
  CenteredQuantities q;
  q.mean_curvature = 2.0 / (radius * phi * phi) -
                     2.0 * mass / (radius * radius * phi * phi * phi);
  q.area = 4.0 * kPi * radius * radius * std::pow(phi, 4);
  const double w = 1.0 - mass / (radius * phi);
  q.willmore_integral = 16.0 * kPi * w * w;
  q.hawking_mass = std::sqrt(q.area) / std::pow(16.0 * kPi, 1.5) *
                   (16.0 * kPi - q.willmore_integral);
  q.lambda_star = 2.0 * mass / std::pow(radius, 3) / std::pow(phi, 6);
  return q;
}

double offcenter_willmore(const SphereSpec& spec, OffcenterMode mode) {
  spec.validate();
  const double m = spec.mass;
  const double R = spec.radius;
  const double tau = spec.tau;

  switch (mode) {
    case OffcenterMode::quadrature:
      if (tau == 0.0) return centered_quantities(m, R).willmore_integral;
      return 16.0 * kPi + willmore_mass_part(spec);
    case OffcenterMode::closed: {
      if (tau <= 0.0)
        throw DomainError("offcenter_willmore: closed mode requires tau > 0");
      const double t2 = tau * tau;
      return 16.0 * kPi - 32.0 * kPi * m / R +
             6.0 * kPi * m * m / (R * R * tau) * std::log((1.0 + tau) / (1.0 - tau)) +
             4.0 * kPi * m * m / (R * R) * (5.0 - 3.0 * t2) / ((1.0 - t2) * (1.0 - t2));
    }
    case OffcenterMode::taylor:
      return 16.0 * kPi - 32.0 * kPi * m / R +
             32.0 * kPi * m * m / (R * R) * (1.0 + tau * tau);
  }
  throw ArgumentError("offcenter_willmore: unknown mode");
}

double offcenter_area(const SphereSpec& spec) {
  spec.validate();
  const double m = spec.mass;
  const double R = spec.radius;
  const double tau = spec.tau;
  if (tau == 0.0) return centered_quantities(m, R).area;
  auto integrand = [&](double r) {
    const double phi = 1.0 + m / (2.0 * r);
    return std::pow(phi, 4) * r;
  };
  const double lo = R * (1.0 - tau);
  const double hi = R * (1.0 + tau);
  return (2.0 * kPi / tau) * integrate_adaptive(integrand, lo, hi, 1e-13, 1e-15);
}

double offcenter_hawking_mass(const SphereSpec& spec) {
  const double area = offcenter_area(spec);
  const double willmore = offcenter_willmore(spec, OffcenterMode::quadrature);
  return std::sqrt(area) / std::pow(16.0 * kPi, 1.5) * (16.0 * kPi - willmore);
}

double translation_sensitivity(const SphereSpec& spec) {
  spec.validate();
  if (spec.mass == 0.0) return 0.0;
  if (spec.tau <= 0.0)
    throw DomainError("translation_sensitivity: tau must be positive");
  // d/ds = (1/R) d/dtau; Richardson-extrapolated central differences of the
  // mass part (the Euclidean 16 pi is translation invariant).
  const double h = std::min(spec.tau / 8.0, 0.25 * (1.0 - spec.tau));
  auto at_tau = [&](double tau) {
    SphereSpec s = spec;
    s.tau = tau;
    return willmore_mass_part(s);
  };
  const double d_h =
      (at_tau(spec.tau + h) - at_tau(spec.tau - h)) / (2.0 * h);
  const double d_h2 =
      (at_tau(spec.tau + 0.5 * h) - at_tau(spec.tau - 0.5 * h)) / h;
  return (4.0 * d_h2 - d_h) / 3.0 / spec.radius;
}

double lambda_translation_integral(const SphereSpec& spec) {
  spec.validate();
  if (spec.tau <= 0.0)
    throw DomainError("lambda_translation_integral: tau must be positive");
  const double m = spec.mass;
  const double R = spec.radius;
  const double tau = spec.tau;
  const double asq = R * R * (1.0 + tau * tau);
  const double bsq = R * R * (1.0 - tau * tau);
  // (nu_e . axis) = cos(angle from centre axis) = (r^2 - R^2(1 + tau^2)) / (2 R^2 tau)
  auto integrand = [&](double r) {
    const double cos_axis = (r * r - asq) / (2.0 * R * R * tau);
    const double u = (r * r + bsq) / (2.0 * r * R);
    return cos_axis / (r * r) * (1.0 - m / (2.0 * r)) * u * r;
  };
  const double lo = R * (1.0 - tau);
  const double hi = R * (1.0 + tau);
  return (2.0 * kPi / tau) * integrate_adaptive(integrand, lo, hi, 1e-13, 1e-15);
}

DriftRate drift_rate(const SphereSpec& spec) {
  spec.validate();
  if (spec.tau > 0.2)
    throw ArgumentError("drift_rate: leading-order formula needs tau <= 0.2");
  DriftRate out;
  const double m = spec.mass;
  if (m == 0.0) return out;
  const double R = spec.radius;
  const double tau = spec.tau;
  const double r3 = R * R * R;

  out.translation_term = -64.0 * kPi * m * m * tau / r3;
  out.lambda_term = 32.0 * kPi * m * m * tau / (3.0 * r3);
  const CenteredQuantities c = centered_quantities(m, R);
  const double r_g = std::sqrt(c.area / (4.0 * kPi));
  out.prefactor = (3.0 - 2.0 * m / r_g) / (c.area * r_g);
  out.leading_rate = out.prefactor * (out.translation_term + out.lambda_term);
  out.paper_headline = -160.0 * m * m * tau / std::pow(r_g, 6);
  return out;
}

double pohozaev_integral(const RadialGraph& graph, const Vec3& direction,
                         double mass) {
  const Vec3 b = normalized(direction);
  const auto bundle =
      geometry_bundle(graph, MetricFlavor::schwarzschild,
                      MetricParams::schwarzschild(mass), dealias_grid(graph.degree()));
  std::vector<double> integrand(bundle.n_nodes());
  for (int k = 0; k < bundle.n_nodes(); ++k) {
    const Vec3& x = bundle.position[k];
    const double r = bundle.radius[k];
    const double phi = bundle.phi[k];
    const Vec3 rhat = (1.0 / r) * x;
    const Vec3& nu = bundle.normal[k];
    // Closed-form Rc_S(b, nu) = m r^-3 phi^-2 (b.nu - 3 (rhat.b)(rhat.nu)),
    // Euclidean contractions of the chart components.
    integrand[k] = mass / (r * r * r * phi * phi) *
                   (dot(b, nu) - 3.0 * dot(rhat, b) * dot(rhat, nu));
  }
  return integrate(integrand, bundle);
}

}  // namespace apwf
