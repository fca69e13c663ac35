#include "apwf/metric.hpp"

#include <cmath>

#include "apwf/errors.hpp"
#include "apwf/rng.hpp"
#include "doctest.h"

using namespace apwf;

namespace {

// max_{ab} |(g(p+he) - g(p-he))/2h - dg_e(p)| over all components and e.
double jet_first_derivative_defect(const MetricParams& params, const Vec3& p,
                                   double h) {
  const MetricJet jet = metric_jet_at(params, p);
  double worst = 0.0;
  for (int e = 0; e < 3; ++e) {
    Vec3 pp = p, pm = p;
    pp[e] += h;
    pm[e] -= h;
    const MetricJet jp = metric_jet_at(params, pp);
    const MetricJet jm = metric_jet_at(params, pm);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double fd = (jp.g[a][b] - jm.g[a][b]) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - jet.dg[e][a][b]));
      }
  }
  return worst;
}

double jet_second_derivative_defect(const MetricParams& params, const Vec3& p,
                                    double h) {
  const MetricJet jet = metric_jet_at(params, p);
  double worst = 0.0;
  for (int e = 0; e < 3; ++e) {
    Vec3 pp = p, pm = p;
    pp[e] += h;
    pm[e] -= h;
    const MetricJet jp = metric_jet_at(params, pp);
    const MetricJet jm = metric_jet_at(params, pm);
    for (int c = 0; c < 3; ++c)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double fd = (jp.dg[c][a][b] - jm.dg[c][a][b]) / (2.0 * h);
          worst = std::max(worst, std::abs(fd - jet.ddg[e][c][a][b]));
        }
  }
  return worst;
}

}  // namespace

TEST_CASE("schwarzschild metric at a reference point") {
  const auto params = MetricParams::schwarzschild(1.0);
  const MetricJet jet = metric_jet_at(params, {10.0, 0.0, 0.0});
  // phi = 1.05, phi^4 = 1.21550625
  CHECK(jet.g[0][0] == doctest::Approx(1.21550625).epsilon(1e-14));
  CHECK(jet.g[1][1] == doctest::Approx(1.21550625).epsilon(1e-14));
  CHECK(jet.g[2][2] == doctest::Approx(1.21550625).epsilon(1e-14));
  CHECK(std::abs(jet.g[0][1]) < 1e-15);
}

TEST_CASE("euclidean mode is exactly flat") {
  const auto params = MetricParams::euclidean();
  const MetricJet jet = metric_jet_at(params, {3.0, -2.0, 7.0});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      CHECK(jet.g[a][b] == (a == b ? 1.0 : 0.0));
      for (int c = 0; c < 3; ++c) {
        CHECK(jet.dg[c][a][b] == 0.0);
        for (int d = 0; d < 3; ++d) CHECK(jet.ddg[c][d][a][b] == 0.0);
      }
    }
  const CurvatureData curv = curvature_at(params, {1.0, 2.0, 2.0});
  CHECK(std::abs(curv.scalar) < 1e-15);
}

TEST_CASE("isotropic perturbation adds eta r^-2 on the diagonal") {
  const auto params = MetricParams::perturbed(1.0, 0.1, PerturbationFamily::isotropic);
  const MetricJet jet = metric_jet_at(params, {10.0, 0.0, 0.0});
  CHECK(jet.g[0][0] == doctest::Approx(1.21550625 + 0.001).epsilon(1e-14));
}

TEST_CASE("eta = 0 switches any family off") {
  auto params = MetricParams::schwarzschild(1.0);
  params.family = PerturbationFamily::radial;
  const MetricJet with_family = metric_jet_at(params, {4.0, 3.0, 1.0});
  const MetricJet plain = metric_jet_at(MetricParams::schwarzschild(1.0), {4.0, 3.0, 1.0});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(with_family.g[a][b] == plain.g[a][b]);
}

TEST_CASE("points below r_floor are rejected") {
  const auto params = MetricParams::schwarzschild(1.0);
  CHECK_THROWS_AS(metric_jet_at(params, {0.5, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(curvature_at(params, {0.1, 0.1, 0.1}), DomainError);
}

TEST_CASE("unknown family name raises a configuration error") {
  CHECK_THROWS_AS(family_from_name("cubic"), ConfigError);
  CHECK(family_from_name("radial") == PerturbationFamily::radial);
}

TEST_CASE("schwarzschild curvature at the reference point") {
  const auto params = MetricParams::schwarzschild(1.0);
  const CurvatureData curv = curvature_at(params, {10.0, 0.0, 0.0});
  // Rc(d_r, d_r) = -2 m r^-3 phi^-2, tangential eigenvalue +m r^-3 phi^-2
  const double radial = -2e-3 / (1.05 * 1.05);
  CHECK(curv.ricci[0][0] == doctest::Approx(radial).epsilon(1e-10));
  CHECK(curv.ricci[1][1] == doctest::Approx(9.0702948e-4).epsilon(1e-7));
  CHECK(std::abs(curv.scalar) < 1e-10);
}

TEST_CASE("assembled ricci matches the closed form at random points") {
  const double m = 1.0;
  const auto params = MetricParams::schwarzschild(m);
  Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const double r = rng.uniform(5.0 * m, 500.0 * m);
    const Vec3 p = r * rng.unit_vector();
    const CurvatureData curv = curvature_at(params, p);
    const Mat3 closed = schwarzschild_ricci_closed_form(m, p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::abs(curv.ricci[a][b] - closed[a][b]) < 1e-10);
    CHECK(std::abs(curv.scalar) < 1e-10);
  }
}

TEST_CASE("static defect vanishes in schwarzschild mode") {
  const auto params = MetricParams::schwarzschild(1.0);
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const double r = rng.uniform(5.0, 500.0);
    const CurvatureData curv = curvature_at(params, r * rng.unit_vector());
    REQUIRE(curv.has_static_defect);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::abs(curv.potential_hessian_defect[a][b]) < 1e-10);
  }
}

TEST_CASE("conformal factor identity g(d_r, d_r) = phi^4 when eta = 0") {
  const auto params = MetricParams::schwarzschild(2.0);
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double r = rng.uniform(12.0, 200.0);
    const Vec3 p = r * rng.unit_vector();
    const MetricJet jet = metric_jet_at(params, p);
    const Vec3 rhat = normalized(p);
    const double phi4 = std::pow(conformal_phi(2.0, r), 4);
    CHECK(bilinear(jet.g, rhat, rhat) == doctest::Approx(phi4).epsilon(1e-14));
  }
}

TEST_CASE("jets are consistent 2-jets: finite differences converge at order 2") {
  for (const auto family :
       {PerturbationFamily::zero, PerturbationFamily::isotropic,
        PerturbationFamily::radial, PerturbationFamily::anisotropic}) {
    const auto params = MetricParams::perturbed(1.0, 0.05, family);
    const Vec3 p = {6.0, -3.0, 2.0};
    const double e1a = jet_first_derivative_defect(params, p, 0.02);
    const double e1b = jet_first_derivative_defect(params, p, 0.01);
    CHECK(e1b < e1a);
    CHECK(e1a / e1b == doctest::Approx(4.0).epsilon(0.25));
    const double e2a = jet_second_derivative_defect(params, p, 0.02);
    const double e2b = jet_second_derivative_defect(params, p, 0.01);
    CHECK(e2a / e2b == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("fast ambient path agrees with jet assembly") {
  const auto params = MetricParams::schwarzschild(1.5);
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec3 p = rng.uniform(8.0, 120.0) * rng.unit_vector();
    const AmbientData fast = ambient_data_at(params, p);
    const CurvatureData slow = curvature_at(params, p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        CHECK(std::abs(fast.ricci[a][b] - slow.ricci[a][b]) < 1e-12);
        for (int c = 0; c < 3; ++c)
          CHECK(std::abs(fast.christoffels[a][b][c] -
                         slow.christoffels[a][b][c]) < 1e-12);
      }
  }
}

TEST_CASE("decay report: zero perturbation reports zeros") {
  const auto params = MetricParams::schwarzschild(1.0);
  const double radii[] = {10.0, 20.0, 50.0};
  const DecayReport report = decay_report(params, radii);
  for (const DecayRow& row : report.rows) {
    for (double b : row.h_bound) CHECK(b == 0.0);
    CHECK(row.scalar_bound < 1e-9);
  }
  CHECK(report.decay_ok);
}

TEST_CASE("decay report: isotropic family Frobenius norm and decay order") {
  const auto params = MetricParams::perturbed(1.0, 0.1, PerturbationFamily::isotropic);
  const double radii[] = {20.0, 40.0, 80.0};
  const DecayReport report = decay_report(params, radii);
  // |h| r^2 = eta sqrt(3) in the Frobenius convention
  CHECK(report.rows[0].h_bound[0] == doctest::Approx(0.1 * std::sqrt(3.0)).epsilon(1e-10));
  CHECK(report.decay_ok);
  // Sc ~ eta r^-4 for this family, so the r^-5 scalar bound degrades with r.
  CHECK_FALSE(report.scalar_ok);
}

TEST_CASE("decay report: radial family obeys the j <= 3 decay order") {
  const auto params = MetricParams::perturbed(1.0, 0.1, PerturbationFamily::radial);
  const double radii[] = {25.0, 50.0, 100.0};
  const DecayReport report = decay_report(params, radii);
  CHECK(report.decay_ok);
  // r^2 |h| = eta exactly for the rank-one family
  for (const DecayRow& row : report.rows)
    CHECK(row.h_bound[0] == doctest::Approx(0.1).epsilon(1e-9));
  CHECK(report.bound_factor > 1.0);  // higher derivatives carry constants
}

TEST_CASE("decay report rejects an empty radius list") {
  const auto params = MetricParams::schwarzschild(1.0);
  CHECK_THROWS_AS(decay_report(params, {}), ArgumentError);
}
