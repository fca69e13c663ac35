#ifndef APWF_GEOMETRY_BUNDLE_HPP_
#define APWF_GEOMETRY_BUNDLE_HPP_

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "apwf/linalg.hpp"
#include "apwf/metric.hpp"
#include "apwf/radial_graph.hpp"
#include "apwf/sphere_grid.hpp"

namespace apwf {

// Which background a geometric quantity is computed against.
enum class MetricFlavor { euclidean, schwarzschild, full };

MetricFlavor flavor_from_name(std::string_view name);

// Induced geometry of a radial graph on an evaluation grid. The evaluation
// grid may be finer than the graph's own grid (3/2 padding keeps quartic
// nonlinearities alias-free); all fields are per evaluation node.
struct GeometryBundle {
  std::shared_ptr<const SphereGrid> grid;
  MetricFlavor flavor = MetricFlavor::euclidean;
  MetricParams params;

  std::vector<Vec3> position;      // x = rho(omega) omega
  std::vector<Vec3> tangent_theta; // d_theta x
  std::vector<Vec3> tangent_phi;   // d_phi x
  std::vector<Vec3> normal;        // outward unit normal of the flavor metric
  std::vector<Sym2> first_ff;      // gamma_ij
  std::vector<Sym2> first_ff_inv;  // gamma^{ij}
  std::vector<Sym2> second_ff;     // A_ij, sign fixed by H(round sphere) = +2/R
  std::vector<double> mean_curvature;   // H = gamma^{ij} A_ij
  std::vector<double> acirc_sq;         // |A - H/2 gamma|^2
  std::vector<double> area_density;     // dmu = area_density dOmega
  std::vector<double> ricci_nn;         // ambient Rc(nu, nu)
  std::vector<double> ricci_tan_sq;     // |Rc(nu, .)^T|^2
  std::vector<double> einstein_nn;      // Rc(nu,nu) - Sc/2
  std::vector<double> scalar_curv;      // ambient Sc at the node
  std::vector<double> omega_dot_nu;     // <omega, nu> in the flavor metric
  std::vector<double> phi;              // conformal factor at the node
  std::vector<double> radius;           // |x|

  double area = 0.0;  // total measured area

  int n_nodes() const { return grid->n_nodes(); }
};

// Builds the bundle; `eval_grid` defaults to the graph's own grid.
GeometryBundle geometry_bundle(const RadialGraph& graph, MetricFlavor flavor,
                               const MetricParams& params = MetricParams::euclidean(),
                               std::shared_ptr<const SphereGrid> eval_grid = nullptr);

// 3/2-rule evaluation grid for a graph of the given degree.
std::shared_ptr<const SphereGrid> dealias_grid(int degree);

// Quadrature of a node field against the bundle's area measure.
double integrate(std::span<const double> field, const GeometryBundle& bundle);

// Vector-valued quadrature: integral of field * weight over the surface.
Vec3 integrate_vector(std::span<const Vec3> field, std::span<const double> weight,
                      const GeometryBundle& bundle);

// Laplace-Beltrami operator of the bundle's induced metric applied to a node
// field, evaluated pseudo-spectrally in divergence form.
std::vector<double> laplace_beltrami(std::span<const double> field,
                                     const GeometryBundle& bundle);

// |grad f|^2 = gamma^{ij} d_i f d_j f at the nodes.
std::vector<double> gradient_squared(std::span<const double> field,
                                     const GeometryBundle& bundle);

// Integrated Gauss defect 16 pi - int H^2 + 2 int |Acirc|^2 + 4 int G(nu,nu);
// identically zero for spheres, decays spectrally in the discretization.
double gauss_defect(const GeometryBundle& bundle);

}  // namespace apwf

#endif  // APWF_GEOMETRY_BUNDLE_HPP_
