#include "apwf/radial_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "apwf/errors.hpp"

namespace apwf {

namespace {
constexpr double kSqrt4Pi = 3.5449077018110320546;  // sqrt(4 pi)
}

RadialGraph::RadialGraph(std::shared_ptr<const SphereGrid> grid,
                         std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_->n_coeffs())
    throw ArgumentError("RadialGraph: coefficient count does not match grid degree");
  values_ = grid_->synthesize(coeffs_);
  for (double v : values_)
    if (!(v > 0.0))
      throw DomainError("RadialGraph: radius field not strictly positive");
}

RadialGraph RadialGraph::round_sphere(int degree, double radius) {
  auto grid = SphereGrid::shared(degree);
  std::vector<double> coeffs(grid->n_coeffs(), 0.0);
  coeffs[0] = radius * kSqrt4Pi;
  return RadialGraph(std::move(grid), std::move(coeffs));
}

RadialGraph RadialGraph::offset_sphere(int degree, double radius, const Vec3& center) {
  const double a = norm(center);
  if (a >= radius)
    throw DomainError("offset_sphere: |center| must be < radius for a star-shaped graph");
  auto grid = SphereGrid::shared(degree);
  std::vector<double> values(grid->n_nodes());
  for (int i = 0; i < grid->n_theta(); ++i) {
    for (int j = 0; j < grid->n_phi(); ++j) {
      const Vec3 omega = {grid->sin_theta(i) * std::cos(grid->phi(j)),
                          grid->sin_theta(i) * std::sin(grid->phi(j)),
                          grid->cos_theta(i)};
      const double proj = dot(center, omega);
      // |rho omega - center| = radius, star-shaped root
      values[static_cast<std::size_t>(i) * grid->n_phi() + j] =
          proj + std::sqrt(radius * radius - a * a + proj * proj);
    }
  }
  return RadialGraph(grid, grid->analyze(values));
}

RadialGraph RadialGraph::perturbed(std::span<const Harmonic> modes) const {
  std::vector<double> factor_coeffs(grid_->n_coeffs(), 0.0);
  for (const Harmonic& h : modes) {
    if (h.l > degree() || std::abs(h.m) > h.l)
      throw ArgumentError("perturbed: harmonic (l, m) outside valid range");
    factor_coeffs[SphereGrid::coeff_index(h.l, h.m)] += h.amplitude;
  }
  const std::vector<double> factor = grid_->synthesize(factor_coeffs);
  std::vector<double> values(values_);
  for (std::size_t k = 0; k < values.size(); ++k) values[k] *= 1.0 + factor[k];
  return RadialGraph(grid_, grid_->analyze(values));
}

double RadialGraph::min_radius() const {
  return *std::min_element(values_.begin(), values_.end());
}

double RadialGraph::max_radius() const {
  return *std::max_element(values_.begin(), values_.end());
}

double RadialGraph::mean_radius() const { return coeffs_[0] / kSqrt4Pi; }

RadialGraph RadialGraph::scaled(double factor) const {
  std::vector<double> coeffs(coeffs_);
  for (double& c : coeffs) c *= factor;
  return RadialGraph(grid_, std::move(coeffs));
}

RadialGraph RadialGraph::with_coeffs(std::vector<double> coeffs) const {
  return RadialGraph(grid_, std::move(coeffs));
}

void RadialGraph::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open '" + path.string() + "' for writing");
  out << "rgraph 1\n";
  out << degree() << " " << grid_->n_theta() << " " << grid_->n_phi() << "\n";
  char buf[40];
  for (double c : coeffs_) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", c);
    out << buf;
  }
}

RadialGraph RadialGraph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
  std::string tag;
  int version = 0;
  in >> tag >> version;
  if (tag != "rgraph" || version != 1)
    throw ArgumentError("'" + path.string() + "' is not a radial-graph file");
  int degree = 0, n_theta = 0, n_phi = 0;
  in >> degree >> n_theta >> n_phi;
  auto grid = SphereGrid::shared(degree);
  if (n_theta != grid->n_theta() || n_phi != grid->n_phi())
    throw ArgumentError("radial-graph header grid sizes inconsistent with degree");
  std::vector<double> coeffs(grid->n_coeffs());
  for (double& c : coeffs)
    if (!(in >> c)) throw ArgumentError("radial-graph file truncated");
  return RadialGraph(std::move(grid), std::move(coeffs));
}

}  // namespace apwf
