#include "apwf/geometry_bundle.hpp"

#include <cmath>

#include "apwf/errors.hpp"

namespace apwf {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MetricFlavor flavor_from_name(std::string_view name) {
  if (name == "euclidean") return MetricFlavor::euclidean;
  if (name == "schwarzschild") return MetricFlavor::schwarzschild;
  if (name == "full") return MetricFlavor::full;
  throw ConfigError("unknown metric flavor '" + std::string(name) + "'");
}

std::shared_ptr<const SphereGrid> dealias_grid(int degree) {
  return SphereGrid::shared((3 * degree) / 2);
}

GeometryBundle geometry_bundle(const RadialGraph& graph, MetricFlavor flavor,
                               const MetricParams& params,
                               std::shared_ptr<const SphereGrid> eval_grid) {
  GeometryBundle b;
  b.grid = eval_grid ? std::move(eval_grid) : graph.grid_ptr();
  if (b.grid->degree() < graph.degree())
    throw ArgumentError("geometry_bundle: evaluation grid coarser than the graph");
  b.flavor = flavor;
  switch (flavor) {
    case MetricFlavor::euclidean:
      b.params = MetricParams::euclidean();
      break;
    case MetricFlavor::schwarzschild:
      b.params = params;
      b.params.eta = 0.0;
      b.params.family = PerturbationFamily::zero;
      break;
    case MetricFlavor::full:
      b.params = params;
      break;
  }
  if (b.params.mass == 0.0) b.params.r_floor = std::min(b.params.r_floor, 1e-12);

  const SphereGrid& grid = *b.grid;
  const int n = grid.n_nodes();
  const int n_phi = grid.n_phi();

  // Radius field and derivatives on the evaluation grid (exact: the graph is
  // band limited and the grid at least as fine).
  const std::vector<double> coeffs =
      grid.degree() == graph.degree()
          ? graph.coeffs()
          : SphereGrid::resize_coeffs(graph.coeffs(), grid.degree());
  std::vector<double> rho, rho_t, rho_p, rho_tt, rho_tp, rho_pp;
  grid.synthesize_with_derivatives(coeffs, rho, rho_t, rho_p);
  grid.synthesize_second_derivatives(coeffs, rho_tt, rho_tp, rho_pp);

  b.position.resize(n);
  b.tangent_theta.resize(n);
  b.tangent_phi.resize(n);
  b.normal.resize(n);
  b.first_ff.resize(n);
  b.first_ff_inv.resize(n);
  b.second_ff.resize(n);
  b.mean_curvature.resize(n);
  b.acirc_sq.resize(n);
  b.area_density.resize(n);
  b.ricci_nn.resize(n);
  b.ricci_tan_sq.resize(n);
  b.einstein_nn.resize(n);
  b.scalar_curv.resize(n);
  b.omega_dot_nu.resize(n);
  b.phi.resize(n);
  b.radius.resize(n);

  double area = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    const double st = grid.sin_theta(i);
    const double ct = grid.cos_theta(i);
    for (int j = 0; j < n_phi; ++j) {
      const int k = i * n_phi + j;
      const double cp = std::cos(grid.phi(j));
      const double sp = std::sin(grid.phi(j));

      const Vec3 omega = {st * cp, st * sp, ct};
      const Vec3 omega_t = {ct * cp, ct * sp, -st};
      const Vec3 omega_p = {-st * sp, st * cp, 0.0};
      const Vec3 omega_tp = {-ct * sp, ct * cp, 0.0};
      const Vec3 omega_pp = {-st * cp, -st * sp, 0.0};

      const double r = rho[k];
      const Vec3 x = r * omega;
      const Vec3 xt = rho_t[k] * omega + r * omega_t;
      const Vec3 xp = rho_p[k] * omega + r * omega_p;
      const Vec3 xtt = rho_tt[k] * omega + (2.0 * rho_t[k]) * omega_t +
                       (-r) * omega;  // omega_tt = -omega
      const Vec3 xtp = rho_tp[k] * omega + rho_t[k] * omega_p +
                       rho_p[k] * omega_t + r * omega_tp;
      const Vec3 xpp = rho_pp[k] * omega + (2.0 * rho_p[k]) * omega_p + r * omega_pp;

      const AmbientData amb = ambient_data_at(b.params, x);

      Sym2 gamma;
      gamma.tt = bilinear(amb.g, xt, xt);
      gamma.tp = bilinear(amb.g, xt, xp);
      gamma.pp = bilinear(amb.g, xp, xp);
      const double det = gamma.det();
      if (!(det > 0.0) || !(gamma.tt > 0.0))
        throw DegeneracyError("geometry_bundle: induced metric singular at a node");
      const Sym2 gamma_inv = gamma.inverse();

      // Euclidean cross product of the tangents is a conormal; raise and
      // normalize in the flavor metric.
      const Vec3 conormal = cross(xt, xp);
      const Vec3 raised = mat_vec(amb.g_inv, conormal);
      const double nn = dot(conormal, raised);
      const Vec3 nu = (1.0 / std::sqrt(nn)) * raised;
      const Vec3 nu_flat = (1.0 / std::sqrt(nn)) * conormal;  // g_ab nu^b

      // A_ij = -<d_i d_j x + Gamma(d_i x, d_j x), nu>; round spheres get
      // H = +2/R with the outward normal.
      auto second_form = [&](const Vec3& xij, const Vec3& xi, const Vec3& xj) {
        double s = dot(xij, nu_flat);
        for (int a = 0; a < 3; ++a) {
          double gam = 0.0;
          for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d) gam += amb.christoffels[a][c][d] * xi[c] * xj[d];
          s += gam * nu_flat[a];
        }
        return -s;
      };
      Sym2 a2;
      a2.tt = second_form(xtt, xt, xt);
      a2.tp = second_form(xtp, xt, xp);
      a2.pp = second_form(xpp, xp, xp);

      const double h = a2.trace_against(gamma_inv);
      Sym2 acirc{a2.tt - 0.5 * h * gamma.tt, a2.tp - 0.5 * h * gamma.tp,
                 a2.pp - 0.5 * h * gamma.pp};

      b.position[k] = x;
      b.tangent_theta[k] = xt;
      b.tangent_phi[k] = xp;
      b.normal[k] = nu;
      b.first_ff[k] = gamma;
      b.first_ff_inv[k] = gamma_inv;
      b.second_ff[k] = a2;
      b.mean_curvature[k] = h;
      b.acirc_sq[k] = Sym2::contract(gamma_inv, acirc, acirc);
      b.area_density[k] = std::sqrt(det) / st;
      b.radius[k] = r;
      b.phi[k] = amb.phi;
      b.omega_dot_nu[k] = bilinear(amb.g, omega, nu);

      const Vec3 rc_nu = mat_vec(amb.ricci, nu);
      b.ricci_nn[k] = dot(nu, rc_nu);
      // Tangential part: gamma^{ij} Rc(nu, x_i) Rc(nu, x_j)
      const double rt = dot(rc_nu, xt);
      const double rp = dot(rc_nu, xp);
      b.ricci_tan_sq[k] = gamma_inv.tt * rt * rt + 2.0 * gamma_inv.tp * rt * rp +
                          gamma_inv.pp * rp * rp;
      b.scalar_curv[k] = amb.scalar;
      b.einstein_nn[k] = b.ricci_nn[k] - 0.5 * amb.scalar;

      area += b.area_density[k] * grid.weight(i);
    }
  }
  b.area = area;
  return b;
}

double integrate(std::span<const double> field, const GeometryBundle& bundle) {
  const SphereGrid& grid = *bundle.grid;
  if (field.size() != static_cast<std::size_t>(grid.n_nodes()))
    throw ArgumentError("integrate: field size does not match bundle grid");
  double total = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    double row = 0.0;
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = i * grid.n_phi() + j;
      row += field[k] * bundle.area_density[k];
    }
    total += row * grid.weight(i);
  }
  return total;
}

Vec3 integrate_vector(std::span<const Vec3> field, std::span<const double> weight,
                      const GeometryBundle& bundle) {
  const SphereGrid& grid = *bundle.grid;
  Vec3 total = {0.0, 0.0, 0.0};
  for (int i = 0; i < grid.n_theta(); ++i) {
    Vec3 row = {0.0, 0.0, 0.0};
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int k = i * grid.n_phi() + j;
      const double w = weight.empty() ? 1.0 : weight[k];
      row += (w * bundle.area_density[k]) * field[k];
    }
    total += grid.weight(i) * row;
  }
  return total;
}

std::vector<double> laplace_beltrami(std::span<const double> field,
                                     const GeometryBundle& bundle) {
  const SphereGrid& grid = *bundle.grid;
  const std::vector<double> coeffs = grid.analyze(field);
  std::vector<double> f, ft, fp;
  grid.synthesize_with_derivatives(coeffs, f, ft, fp);

  const int n = grid.n_nodes();
  std::vector<double> vt(n), vp(n);
  for (int k = 0; k < n; ++k) {
    const Sym2& gi = bundle.first_ff_inv[k];
    const double jd = bundle.area_density[k];
    vt[k] = jd * (gi.tt * ft[k] + gi.tp * fp[k]);
    vp[k] = jd * (gi.tp * ft[k] + gi.pp * fp[k]);
  }
  const std::vector<double> div = grid.synthesize(grid.divergence_coeffs(vt, vp));
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = div[k] / bundle.area_density[k];
  return out;
}

std::vector<double> gradient_squared(std::span<const double> field,
                                     const GeometryBundle& bundle) {
  const SphereGrid& grid = *bundle.grid;
  const std::vector<double> coeffs = grid.analyze(field);
  std::vector<double> f, ft, fp;
  grid.synthesize_with_derivatives(coeffs, f, ft, fp);
  std::vector<double> out(grid.n_nodes());
  for (int k = 0; k < grid.n_nodes(); ++k) {
    const Sym2& gi = bundle.first_ff_inv[k];
    out[k] = gi.tt * ft[k] * ft[k] + 2.0 * gi.tp * ft[k] * fp[k] +
             gi.pp * fp[k] * fp[k];
  }
  return out;
}

double gauss_defect(const GeometryBundle& bundle) {
  const int n = bundle.n_nodes();
  std::vector<double> integrand(n);
  for (int k = 0; k < n; ++k)
    integrand[k] = -bundle.mean_curvature[k] * bundle.mean_curvature[k] +
                   2.0 * bundle.acirc_sq[k] + 4.0 * bundle.einstein_nn[k];
  return 16.0 * kPi + integrate(integrand, bundle);
}

}  // namespace apwf
