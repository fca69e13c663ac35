#ifndef APWF_SPHERE_GRID_HPP_
#define APWF_SPHERE_GRID_HPP_

#include <memory>
#include <span>
#include <vector>

namespace apwf {

// Gauss-Legendre x equispaced-longitude collocation grid with real
// spherical-harmonic transforms up to degree L. Colatitude nodes are the
// Gauss-Legendre points in cos(theta), so the poles are never on the grid and
// the quadrature integrates spherical harmonics up to combined degree 2L+1
// exactly.
//
// Real coefficient convention: index(l, m) = l^2 + l + m with
//   m = 0   : Y = Pbar_{l0}(cos theta)
//   m > 0   : Y = sqrt(2) Pbar_{lm} cos(m phi)
//   m < 0   : Y = sqrt(2) Pbar_{l|m|} sin(|m| phi)
// where Pbar is the fully normalized associated Legendre function, so the
// basis is orthonormal on the unit sphere.
class SphereGrid {
 public:
  explicit SphereGrid(int degree);

  // Shared, cached instance (grids are immutable).
  static std::shared_ptr<const SphereGrid> shared(int degree);

  int degree() const { return degree_; }
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int n_nodes() const { return n_theta_ * n_phi_; }
  int n_coeffs() const { return (degree_ + 1) * (degree_ + 1); }

  double theta(int i) const { return theta_[i]; }
  double phi(int j) const { return phi_[j]; }
  double cos_theta(int i) const { return cos_theta_[i]; }
  double sin_theta(int i) const { return sin_theta_[i]; }
  // Solid-angle quadrature weight of node (i, j).
  double weight(int i) const { return w_theta_[i] * w_phi_; }

  static int coeff_count(int degree) { return (degree + 1) * (degree + 1); }
  static int coeff_index(int l, int m) { return l * l + l + m; }

  // Forward transform: node values -> coefficients (exact for fields band
  // limited to degree L).
  std::vector<double> analyze(std::span<const double> values) const;

  // Backward transform: coefficients -> node values. Accepts coefficient
  // vectors of any (L'+1)^2 length; degrees above the grid degree must be
  // absent.
  std::vector<double> synthesize(std::span<const double> coeffs) const;

  // Values plus first partial derivatives with respect to theta and phi.
  void synthesize_with_derivatives(std::span<const double> coeffs,
                                   std::vector<double>& values,
                                   std::vector<double>& d_theta,
                                   std::vector<double>& d_phi) const;

  // Second partial derivatives (theta-theta, theta-phi, phi-phi).
  void synthesize_second_derivatives(std::span<const double> coeffs,
                                     std::vector<double>& d_tt,
                                     std::vector<double>& d_tp,
                                     std::vector<double>& d_pp) const;

  // Coefficients of the round-sphere divergence of a tangent vector field
  // given by chart components (V^theta, V^phi), computed in weak form:
  //   (div V)_lm = -sum_nodes (d_theta Y_lm V^theta + d_phi Y_lm V^phi) w.
  std::vector<double> divergence_coeffs(std::span<const double> v_theta,
                                        std::span<const double> v_phi) const;

  // Quadrature of a node field against the solid-angle measure.
  double integrate(std::span<const double> values) const;

  // Utility: zero-pad or truncate a coefficient vector between degrees.
  static std::vector<double> resize_coeffs(std::span<const double> coeffs,
                                           int degree_to);

 private:
  void check_values_size(std::size_t n) const;

  // Pbar table block for order m: row i in [0, n_theta), column l - m.
  const double* p_block(int m) const { return p_.data() + block_offset_[m]; }
  const double* dp_block(int m) const { return dp_.data() + block_offset_[m]; }
  int block_cols(int m) const { return degree_ - m + 1; }

  // Fourier stage helpers (cos/sin tables include the sqrt(2) factor and the
  // longitude quadrature weight where appropriate).
  void fourier_analyze(std::span<const double> values,
                       std::vector<double>& fc, std::vector<double>& fs) const;

  int degree_;
  int n_theta_;
  int n_phi_;
  double w_phi_;
  std::vector<double> theta_, cos_theta_, sin_theta_, w_theta_, phi_;
  std::vector<double> cos_table_, sin_table_;  // [m * n_phi + j], unit amplitude
  std::vector<double> p_, dp_;                 // Legendre tables
  std::vector<std::size_t> block_offset_;
};

}  // namespace apwf

#endif  // APWF_SPHERE_GRID_HPP_
