#ifndef APWF_RADIAL_GRAPH_HPP_
#define APWF_RADIAL_GRAPH_HPP_

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "apwf/linalg.hpp"
#include "apwf/sphere_grid.hpp"

namespace apwf {

// One real spherical-harmonic mode of a multiplicative radius perturbation.
struct Harmonic {
  int l = 0;
  int m = 0;
  double amplitude = 0.0;
};

// Star-shaped surface represented as a radial graph rho(omega) over the unit
// sphere, stored as real spherical-harmonic coefficients with node values
// cached on the graph's own grid.
class RadialGraph {
 public:
  RadialGraph(std::shared_ptr<const SphereGrid> grid, std::vector<double> coeffs);

  static RadialGraph round_sphere(int degree, double radius);
  // Round sphere of the given radius centred at `center` (|center| < radius).
  static RadialGraph offset_sphere(int degree, double radius, const Vec3& center);

  // Multiplies the radius field by (1 + sum_k amp_k Y_{l_k m_k}) and
  // re-projects onto the band limit.
  RadialGraph perturbed(std::span<const Harmonic> modes) const;

  const SphereGrid& grid() const { return *grid_; }
  std::shared_ptr<const SphereGrid> grid_ptr() const { return grid_; }
  int degree() const { return grid_->degree(); }
  const std::vector<double>& coeffs() const { return coeffs_; }
  const std::vector<double>& node_values() const { return values_; }

  double min_radius() const;
  double max_radius() const;
  // Mean coefficient radius rho_00 / sqrt(4 pi).
  double mean_radius() const;

  RadialGraph scaled(double factor) const;
  RadialGraph with_coeffs(std::vector<double> coeffs) const;

  void save(const std::filesystem::path& path) const;
  static RadialGraph load(const std::filesystem::path& path);

 private:
  std::shared_ptr<const SphereGrid> grid_;
  std::vector<double> coeffs_;
  std::vector<double> values_;
};

}  // namespace apwf

#endif  // APWF_RADIAL_GRAPH_HPP_
