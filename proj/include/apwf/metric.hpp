#ifndef APWF_METRIC_HPP_
#define APWF_METRIC_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apwf/linalg.hpp"

namespace apwf {

// Analytic decay-compatible perturbation families h_ab added on top of the
// conformally flat background. All carry hand-coded first and second
// derivatives; no differencing is used anywhere in the 2-jet.
enum class PerturbationFamily {
  zero,        // h = 0
  isotropic,   // h_ab = eta r^-2 delta_ab
  radial,      // h_ab = eta r^-2 x_a x_b / r^2
  anisotropic  // h_ab = eta r^-2 C_ab, C fixed constant trace-free
};

PerturbationFamily family_from_name(std::string_view name);
std::string family_name(PerturbationFamily family);

struct MetricParams {
  double mass = 1.0;    // geometrized units; 0 selects exact Euclidean space
  double eta = 0.0;     // decay coefficient; 0 forces h = 0
  PerturbationFamily family = PerturbationFamily::zero;
  double r_floor = 0.55;  // default 1.1 * mass / 2

  static MetricParams euclidean() { return {0.0, 0.0, PerturbationFamily::zero, 1e-12}; }
  static MetricParams schwarzschild(double m) {
    return {m, 0.0, PerturbationFamily::zero, 1.1 * m / 2.0};
  }
  static MetricParams perturbed(double m, double eta, PerturbationFamily family) {
    return {m, eta, family, 1.1 * m / 2.0};
  }

  bool is_euclidean() const { return mass == 0.0 && eta == 0.0; }
  bool has_perturbation() const {
    return eta != 0.0 && family != PerturbationFamily::zero;
  }
  // Throws ConfigError on inconsistent parameters.
  void validate() const;
};

// Closed-form 2-jet of the ambient metric at a chart point.
struct MetricJet {
  Vec3 point{};
  Mat3 g{};
  Ten3 dg{};   // dg[c][a][b] = partial_c g_ab
  Ten4 ddg{};  // ddg[c][d][a][b] = partial_c partial_d g_ab
};

struct CurvatureData {
  Mat3 ricci{};
  double scalar = 0.0;
  Ten3 christoffels{};  // christoffels[a][b][c] = Gamma^a_bc
  // -Hess_S f + f Rc_S with f = (2 - phi)/phi; filled in Schwarzschild mode
  // (eta = 0, mass > 0) and zero otherwise.
  Mat3 potential_hessian_defect{};
  bool has_static_defect = false;
};

// Conformal factor phi = 1 + m/(2r) and the closed-form Schwarzschild Ricci
// tensor m r^-3 phi^-2 (delta - 3 rhat rhat) in the chart.
double conformal_phi(double mass, double r);
Mat3 schwarzschild_ricci_closed_form(double mass, const Vec3& point);

MetricJet metric_jet_at(const MetricParams& params, const Vec3& point);
CurvatureData curvature_at(const MetricParams& params, const Vec3& point);

// Christoffels of the exact Schwarzschild background (used for the static
// defect and by conformal-identity checks).
Ten3 christoffels_from_jet(const MetricJet& jet);

// Pointwise ambient data needed by surface geometry. For the unperturbed
// conformally flat background the Christoffels and Ricci tensor come from
// closed forms; with a perturbation they are assembled from the 2-jet. Both
// routes agree to round-off (tested).
struct AmbientData {
  Mat3 g{};
  Mat3 g_inv{};
  Ten3 christoffels{};  // Gamma^a_bc
  Mat3 ricci{};
  double scalar = 0.0;
  double phi = 1.0;  // conformal factor of the background
};

AmbientData ambient_data_at(const MetricParams& params, const Vec3& point);

struct DecayRow {
  double radius = 0.0;
  // sup over sampled directions of r^{2+j} |d^j h| (Frobenius norm), j = 0..3.
  std::array<double, 4> h_bound{};
  double scalar_bound = 0.0;  // sup of r^5 |Sc_g|
};

struct DecayReport {
  std::vector<DecayRow> rows;  // sorted by radius
  // Largest measured r^{2+j}|d^j h| / eta over all rows and j (0 when eta=0).
  // The constant depends on the family and the Frobenius norm convention;
  // the pass flags below test the decay ORDER instead: r^{2+j}|d^j h| must
  // not grow with r for j <= 3 (decay_ok), and likewise r^5|Sc| (scalar_ok).
  // Generic families have Sc ~ r^-4, so scalar_ok typically fails and is
  // reported rather than enforced.
  double bound_factor = 0.0;
  double scalar_factor = 0.0;
  bool decay_ok = false;
  bool scalar_ok = false;
};

// Samples a fixed set of directions per radius. The derivative bounds for
// j <= 2 come from the analytic jet; j = 3 is centred differencing of the
// analytic second derivatives (report-only, never used by the flow).
DecayReport decay_report(const MetricParams& params, std::span<const double> radii);

}  // namespace apwf

#endif  // APWF_METRIC_HPP_
