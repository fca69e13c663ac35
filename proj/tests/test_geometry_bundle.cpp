#include "apwf/geometry_bundle.hpp"

#include <cmath>

#include "apwf/errors.hpp"
#include "apwf/rng.hpp"
#include "doctest.h"

using namespace apwf;

namespace {

constexpr double kPi = 3.14159265358979323846;

RadialGraph random_near_round_graph(int degree, double radius, double amplitude,
                                    Rng& rng, int lmax = 6) {
  std::vector<Harmonic> modes;
  for (int l = 2; l <= lmax; ++l)
    for (int m = -l; m <= l; ++m)
      modes.push_back({l, m, amplitude * rng.uniform(-1.0, 1.0) / (1.0 + l * l)});
  return RadialGraph::round_sphere(degree, radius).perturbed(modes);
}

}  // namespace

TEST_CASE("euclidean round sphere: H = 2/R, traceless part zero, area 4 pi R^2") {
  const double R = 3.0;
  const auto graph = RadialGraph::round_sphere(16, R);
  const auto b = geometry_bundle(graph, MetricFlavor::euclidean);
  for (int k = 0; k < b.n_nodes(); ++k) {
    CHECK(b.mean_curvature[k] == doctest::Approx(2.0 / R).epsilon(1e-12));
    CHECK(std::abs(b.acirc_sq[k]) < 1e-20);
    CHECK(norm(b.normal[k] - normalized(b.position[k])) < 1e-12);
  }
  CHECK(b.area == doctest::Approx(4.0 * kPi * R * R).epsilon(1e-13));
}

TEST_CASE("schwarzschild centred sphere reproduces the closed-form mean curvature") {
  const double m = 1.0, R = 10.0;
  const auto graph = RadialGraph::round_sphere(16, R);
  const auto b = geometry_bundle(graph, MetricFlavor::schwarzschild,
                                 MetricParams::schwarzschild(m));
  const double phi = 1.0 + m / (2.0 * R);
  const double h_bar = 2.0 / (R * phi * phi) - 2.0 * m / (R * R * phi * phi * phi);
  CHECK(h_bar == doctest::Approx(0.164129).epsilon(1e-6));
  for (int k = 0; k < b.n_nodes(); ++k)
    CHECK(b.mean_curvature[k] == doctest::Approx(h_bar).epsilon(1e-12));
  CHECK(b.area == doctest::Approx(4.0 * kPi * R * R * std::pow(phi, 4)).epsilon(1e-13));

  std::vector<double> h_sq(b.n_nodes());
  for (int k = 0; k < b.n_nodes(); ++k)
    h_sq[k] = b.mean_curvature[k] * b.mean_curvature[k];
  const double willmore = integrate(h_sq, b);
  const double closed = 16.0 * kPi * std::pow(1.0 - m / (R * phi), 2);
  CHECK(willmore == doctest::Approx(closed).epsilon(1e-12));
  CHECK(willmore == doctest::Approx(41.1470).epsilon(1e-5));
}

TEST_CASE("bundle invariants: unit normal, trace identities") {
  Rng rng(11);
  const auto graph = random_near_round_graph(16, 12.0, 0.05, rng);
  const auto params = MetricParams::schwarzschild(1.0);
  for (const auto flavor :
       {MetricFlavor::euclidean, MetricFlavor::schwarzschild, MetricFlavor::full}) {
    const auto b = geometry_bundle(graph, flavor, params);
    for (int k = 0; k < b.n_nodes(); ++k) {
      const auto amb = ambient_data_at(b.params, b.position[k]);
      CHECK(bilinear(amb.g, b.normal[k], b.normal[k]) == doctest::Approx(1.0).epsilon(1e-10));
      // tr_gamma(A) = H by construction; check tr of the traceless part
      const Sym2& g = b.first_ff[k];
      const Sym2& gi = b.first_ff_inv[k];
      const Sym2& a = b.second_ff[k];
      const double h = b.mean_curvature[k];
      const Sym2 ac{a.tt - 0.5 * h * g.tt, a.tp - 0.5 * h * g.tp, a.pp - 0.5 * h * g.pp};
      CHECK(std::abs(ac.trace_against(gi)) < 1e-10);
      CHECK(b.first_ff[k].det() > 0.0);
    }
  }
}

TEST_CASE("conformal identities hold nodewise on arbitrary graphs") {
  Rng rng(23);
  const double m = 1.0;
  const auto params = MetricParams::schwarzschild(m);
  for (int trial = 0; trial < 5; ++trial) {
    const auto graph = random_near_round_graph(16, rng.uniform(8.0, 40.0), 0.04, rng);
    const auto be = geometry_bundle(graph, MetricFlavor::euclidean);
    const auto bs = geometry_bundle(graph, MetricFlavor::schwarzschild, params);
    for (int k = 0; k < be.n_nodes(); ++k) {
      const double r = be.radius[k];
      const double phi = 1.0 + m / (2.0 * r);
      const double phi2 = phi * phi;
      // nu_S = phi^-2 nu_e
      CHECK(norm(bs.normal[k] - (1.0 / phi2) * be.normal[k]) < 1e-9);
      // dmu_S = phi^4 dmu_e
      CHECK(bs.area_density[k] ==
            doctest::Approx(phi2 * phi2 * be.area_density[k]).epsilon(1e-9));
      // Acirc_S = phi^2 Acirc_e componentwise
      const double he = be.mean_curvature[k];
      const double hs = bs.mean_curvature[k];
      const Sym2& ge = be.first_ff[k];
      const Sym2& gs = bs.first_ff[k];
      const Sym2& ae = be.second_ff[k];
      const Sym2& as = bs.second_ff[k];
      const Sym2 ace{ae.tt - 0.5 * he * ge.tt, ae.tp - 0.5 * he * ge.tp,
                     ae.pp - 0.5 * he * ge.pp};
      const Sym2 acs{as.tt - 0.5 * hs * gs.tt, as.tp - 0.5 * hs * gs.tp,
                     as.pp - 0.5 * hs * gs.pp};
      CHECK(acs.tt == doctest::Approx(phi2 * ace.tt).epsilon(1e-9).scale(1e-3));
      CHECK(acs.tp == doctest::Approx(phi2 * ace.tp).epsilon(1e-9).scale(1e-3));
      CHECK(acs.pp == doctest::Approx(phi2 * ace.pp).epsilon(1e-9).scale(1e-3));
      // H_S = phi^-2 H_e - 2 m r^-2 phi^-3 (nu_e . d_r)
      const Vec3 rhat = normalized(be.position[k]);
      const double nu_dr = dot(be.normal[k], rhat);
      const double hs_expected =
          he / phi2 - 2.0 * m / (r * r * phi2 * phi) * nu_dr;
      CHECK(hs == doctest::Approx(hs_expected).epsilon(1e-10));
      // |Acirc_S|^2 = phi^-4 |Acirc_e|^2
      CHECK(bs.acirc_sq[k] ==
            doctest::Approx(be.acirc_sq[k] / (phi2 * phi2)).epsilon(1e-8).scale(1e-12));
    }
    // Conformal invariance of the traceless energy.
    const double inv_e = integrate(be.acirc_sq, be);
    const double inv_s = integrate(bs.acirc_sq, bs);
    CHECK(inv_s == doctest::Approx(inv_e).epsilon(1e-9));
  }
}

TEST_CASE("tangential Ricci identity (corrected exponents) when eta = 0") {
  Rng rng(37);
  const double m = 2.0;
  const auto params = MetricParams::schwarzschild(m);
  const auto graph = random_near_round_graph(16, 25.0, 0.05, rng);
  const auto be = geometry_bundle(graph, MetricFlavor::euclidean);
  const auto bs = geometry_bundle(graph, MetricFlavor::schwarzschild, params);
  for (int k = 0; k < bs.n_nodes(); ++k) {
    const double r = bs.radius[k];
    const double phi = bs.phi[k];
    const Vec3 rhat = normalized(bs.position[k]);
    const double u = dot(be.normal[k], rhat);
    const double lhs =
        std::pow(r, 6) * std::pow(phi, 12) / (m * m) * bs.ricci_tan_sq[k];
    const double rhs = 9.0 * u * u * (1.0 - u * u);
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
  // Zero on centred spheres.
  const auto round = RadialGraph::round_sphere(12, 20.0);
  const auto bc = geometry_bundle(round, MetricFlavor::schwarzschild, params);
  for (int k = 0; k < bc.n_nodes(); ++k) CHECK(std::abs(bc.ricci_tan_sq[k]) < 1e-24);
}

TEST_CASE("integrate: unity over flavors") {
  const auto graph = RadialGraph::round_sphere(16, 10.0);
  const auto be = geometry_bundle(graph, MetricFlavor::euclidean);
  std::vector<double> ones(be.n_nodes(), 1.0);
  CHECK(integrate(ones, be) == doctest::Approx(400.0 * kPi).epsilon(1e-13));
  const auto bs = geometry_bundle(graph, MetricFlavor::schwarzschild,
                                  MetricParams::schwarzschild(1.0));
  CHECK(integrate(ones, bs) == doctest::Approx(400.0 * kPi * 1.21550625).epsilon(1e-13));
}

TEST_CASE("laplace-beltrami: constants, eigenfunctions, divergence theorem") {
  const double R = 4.0;
  const auto graph = RadialGraph::round_sphere(16, R);
  const auto b = geometry_bundle(graph, MetricFlavor::euclidean);

  std::vector<double> c(b.n_nodes(), 3.7);
  for (double v : laplace_beltrami(c, b)) CHECK(std::abs(v) < 1e-10);

  // Y_1^0 restricted to the round sphere: eigenvalue -2/R^2.
  std::vector<double> mode(b.grid->n_coeffs(), 0.0);
  mode[SphereGrid::coeff_index(1, 0)] = 1.0;
  const auto f = b.grid->synthesize(mode);
  const auto lap = laplace_beltrami(f, b);
  for (int k = 0; k < b.n_nodes(); ++k)
    CHECK(lap[k] == doctest::Approx(-2.0 / (R * R) * f[k]).epsilon(1e-8).scale(1e-8));

  // Divergence theorem on a random bundle.
  Rng rng(5);
  const auto g2 = random_near_round_graph(16, 9.0, 0.05, rng);
  const auto bf = geometry_bundle(g2, MetricFlavor::full, MetricParams::schwarzschild(1.0));
  std::vector<double> coeffs(bf.grid->n_coeffs(), 0.0);
  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m)
      coeffs[SphereGrid::coeff_index(l, m)] = rng.uniform(-1.0, 1.0);
  const auto field = bf.grid->synthesize(coeffs);
  CHECK(std::abs(integrate(laplace_beltrami(field, bf), bf)) < 1e-9);
}

TEST_CASE("gauss defect: exactly zero analytically for centred spheres, spectral decay") {
  const auto params = MetricParams::schwarzschild(1.0);
  const auto round = RadialGraph::round_sphere(16, 10.0);
  const auto bc = geometry_bundle(round, MetricFlavor::schwarzschild, params);
  CHECK(std::abs(gauss_defect(bc)) < 1e-9);

  Rng rng(71);
  std::vector<Harmonic> modes = {{2, 1, 0.04}, {3, -2, 0.03}, {4, 0, 0.02}};
  for (const auto flavor :
       {MetricFlavor::euclidean, MetricFlavor::schwarzschild, MetricFlavor::full}) {
    double defect_lo = 0.0, defect_hi = 0.0;
    for (const int L : {12, 24}) {
      const auto graph = RadialGraph::round_sphere(L, 15.0).perturbed(modes);
      const auto b = geometry_bundle(graph, flavor, params);
      (L == 12 ? defect_lo : defect_hi) = std::abs(gauss_defect(b));
    }
    CHECK(defect_hi < 0.5 * defect_lo);
    CHECK(defect_hi < 1e-8);
  }
}

TEST_CASE("H converges spectrally for a non-band-limited graph") {
  // Ellipsoid-like surface: rho = R / sqrt(1 + 0.3 cos^2 theta), sampled.
  auto make_graph = [](int L) {
    auto grid = SphereGrid::shared(L);
    std::vector<double> values(grid->n_nodes());
    for (int i = 0; i < grid->n_theta(); ++i)
      for (int j = 0; j < grid->n_phi(); ++j) {
        const double ct = grid->cos_theta(i);
        values[static_cast<std::size_t>(i) * grid->n_phi() + j] =
            10.0 / std::sqrt(1.0 + 0.3 * ct * ct);
      }
    return RadialGraph(grid, grid->analyze(values));
  };
  std::array<double, 3> willmore{};
  int idx = 0;
  for (const int L : {8, 16, 32}) {
    const auto b = geometry_bundle(make_graph(L), MetricFlavor::euclidean);
    std::vector<double> h2(b.n_nodes());
    for (int k = 0; k < b.n_nodes(); ++k)
      h2[k] = b.mean_curvature[k] * b.mean_curvature[k];
    willmore[idx++] = integrate(h2, b);
  }
  const double err_lo = std::abs(willmore[0] - willmore[2]);
  const double err_hi = std::abs(willmore[1] - willmore[2]);
  CHECK(err_hi < 1e-4 * err_lo);  // faster than any fixed power
}

TEST_CASE("dealiased evaluation grid reproduces integrals") {
  Rng rng(3);
  const auto graph = random_near_round_graph(16, 10.0, 0.05, rng);
  const auto params = MetricParams::schwarzschild(1.0);
  const auto plain = geometry_bundle(graph, MetricFlavor::full, params);
  const auto padded = geometry_bundle(graph, MetricFlavor::full, params,
                                      dealias_grid(graph.degree()));
  CHECK(padded.grid->degree() == 24);
  CHECK(padded.area == doctest::Approx(plain.area).epsilon(1e-10));
}

TEST_CASE("mismatched field size raises") {
  const auto graph = RadialGraph::round_sphere(8, 5.0);
  const auto b = geometry_bundle(graph, MetricFlavor::euclidean);
  std::vector<double> bad(7, 1.0);
  CHECK_THROWS_AS(integrate(bad, b), ArgumentError);
}
