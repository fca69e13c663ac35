#include "apwf/metric.hpp"

#include <algorithm>
#include <cmath>

#include "apwf/errors.hpp"

namespace apwf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Fixed constant trace-free direction matrix for the anisotropic family,
// normalized to unit Frobenius norm.
Mat3 anisotropic_direction() {
  const double s = 1.0 / std::sqrt(6.0);
  Mat3 c = zero_mat3();
  c[0][0] = s;
  c[1][1] = s;
  c[2][2] = -2.0 * s;
  return c;
}

struct ScalarJet {
  double value = 0.0;
  Vec3 grad{};
  Mat3 hess{};
};

// 2-jet of r^{-p} at x.
ScalarJet inverse_power_jet(const Vec3& x, int p, double r) {
  ScalarJet jet;
  const double rp = std::pow(r, -p);
  jet.value = rp;
  const double c1 = -p * rp / (r * r);
  for (int a = 0; a < 3; ++a) jet.grad[a] = c1 * x[a];
  const double c2 = p * (p + 2) * rp / (r * r * r * r);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      jet.hess[a][b] = c2 * x[a] * x[b];
      if (a == b) jet.hess[a][b] += c1;
    }
  }
  return jet;
}

// Adds the perturbation-family jet (value, first, second derivatives) of
// h_ab onto the given jet arrays.
void add_perturbation_jet(const MetricParams& params, const Vec3& x, double r,
                          Mat3& g, Ten3& dg, Ten4& ddg) {
  if (!params.has_perturbation()) return;
  const double eta = params.eta;

  switch (params.family) {
    case PerturbationFamily::zero:
      return;
    case PerturbationFamily::isotropic:
    case PerturbationFamily::anisotropic: {
      const Mat3 c = params.family == PerturbationFamily::isotropic
                         ? identity_mat3()
                         : anisotropic_direction();
      const ScalarJet s = inverse_power_jet(x, 2, r);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          g[a][b] += eta * s.value * c[a][b];
          for (int e = 0; e < 3; ++e) {
            dg[e][a][b] += eta * s.grad[e] * c[a][b];
            for (int f = 0; f < 3; ++f)
              ddg[e][f][a][b] += eta * s.hess[e][f] * c[a][b];
          }
        }
      return;
    }
    case PerturbationFamily::radial: {
      // h_ab = eta x_a x_b r^-4
      const ScalarJet t = inverse_power_jet(x, 4, r);
      auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          g[a][b] += eta * x[a] * x[b] * t.value;
          for (int e = 0; e < 3; ++e) {
            dg[e][a][b] += eta * ((delta(e, a) * x[b] + delta(e, b) * x[a]) * t.value +
                                  x[a] * x[b] * t.grad[e]);
            for (int f = 0; f < 3; ++f) {
              double second =
                  (delta(e, a) * delta(f, b) + delta(e, b) * delta(f, a)) * t.value;
              second += (delta(e, a) * x[b] + delta(e, b) * x[a]) * t.grad[f];
              second += (delta(f, a) * x[b] + delta(f, b) * x[a]) * t.grad[e];
              second += x[a] * x[b] * t.hess[e][f];
              ddg[e][f][a][b] += eta * second;
            }
          }
        }
      return;
    }
  }
}

// Jet of the perturbation alone (for decay reports).
void perturbation_only_jet(const MetricParams& params, const Vec3& x, double r,
                           Mat3& h, Ten3& dh, Ten4& ddh) {
  h = zero_mat3();
  for (auto& m : dh) m = zero_mat3();
  for (auto& t : ddh)
    for (auto& m : t) m = zero_mat3();
  add_perturbation_jet(params, x, r, h, dh, ddh);
}

double frobenius(const Ten3& t) {
  double s = 0.0;
  for (const auto& m : t)
    for (const auto& row : m)
      for (double v : row) s += v * v;
  return std::sqrt(s);
}

double frobenius(const Ten4& t) {
  double s = 0.0;
  for (const auto& t3 : t)
    for (const auto& m : t3)
      for (const auto& row : m)
        for (double v : row) s += v * v;
  return std::sqrt(s);
}

// Deterministic, reasonably uniform direction sample.
std::vector<Vec3> fibonacci_directions(int n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double az = golden * i;
    dirs.push_back({rho * std::cos(az), rho * std::sin(az), z});
  }
  return dirs;
}

}  // namespace

PerturbationFamily family_from_name(std::string_view name) {
  if (name == "zero") return PerturbationFamily::zero;
  if (name == "isotropic") return PerturbationFamily::isotropic;
  if (name == "radial") return PerturbationFamily::radial;
  if (name == "anisotropic") return PerturbationFamily::anisotropic;
  throw ConfigError("unknown perturbation family '" + std::string(name) +
                    "'; available: zero, isotropic, radial, anisotropic");
}

std::string family_name(PerturbationFamily family) {
  switch (family) {
    case PerturbationFamily::zero: return "zero";
    case PerturbationFamily::isotropic: return "isotropic";
    case PerturbationFamily::radial: return "radial";
    case PerturbationFamily::anisotropic: return "anisotropic";
  }
  return "zero";
}

void MetricParams::validate() const {
  if (mass < 0.0) throw ConfigError("mass must be non-negative");
  if (eta < 0.0) throw ConfigError("eta must be non-negative");
  if (mass == 0.0 && eta > 0.0)
    throw ConfigError("perturbed mode requires mass > 0");
  if (mass > 0.0 && r_floor <= 0.0)
    throw ConfigError("r_floor must be positive");
}

double conformal_phi(double mass, double r) { return 1.0 + mass / (2.0 * r); }

Mat3 schwarzschild_ricci_closed_form(double mass, const Vec3& point) {
  const double r = norm(point);
  const double phi = conformal_phi(mass, r);
  const double scale = mass / (r * r * r * phi * phi);
  Mat3 rc = zero_mat3();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double rhat_ab = point[a] * point[b] / (r * r);
      rc[a][b] = scale * ((a == b ? 1.0 : 0.0) - 3.0 * rhat_ab);
    }
  }
  return rc;
}

MetricJet metric_jet_at(const MetricParams& params, const Vec3& point) {
  params.validate();
  MetricJet jet;
  jet.point = point;
  const double r = norm(point);
  if (!(r >= params.r_floor) || r == 0.0)
    throw DomainError("metric queried below r_floor (r = " + std::to_string(r) +
                      ", r_floor = " + std::to_string(params.r_floor) + ")");

  jet.g = identity_mat3();
  for (auto& m : jet.dg) m = zero_mat3();
  for (auto& t : jet.ddg)
    for (auto& m : t) m = zero_mat3();

  if (params.mass > 0.0) {
    const double m = params.mass;
    const double phi = conformal_phi(m, r);
    const double r3 = r * r * r;
    const double r5 = r3 * r * r;
    Vec3 dphi;
    for (int a = 0; a < 3; ++a) dphi[a] = -0.5 * m * point[a] / r3;
    Mat3 ddphi;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        ddphi[a][b] = -0.5 * m * ((a == b ? 1.0 : 0.0) / r3 - 3.0 * point[a] * point[b] / r5);

    const double phi2 = phi * phi;
    const double phi3 = phi2 * phi;
    const double phi4 = phi2 * phi2;
    for (int a = 0; a < 3; ++a) {
      jet.g[a][a] = phi4;
      for (int c = 0; c < 3; ++c) {
        jet.dg[c][a][a] = 4.0 * phi3 * dphi[c];
        for (int d = 0; d < 3; ++d)
          jet.ddg[c][d][a][a] =
              12.0 * phi2 * dphi[c] * dphi[d] + 4.0 * phi3 * ddphi[c][d];
      }
    }
  }

  add_perturbation_jet(params, point, r, jet.g, jet.dg, jet.ddg);
  return jet;
}

Ten3 christoffels_from_jet(const MetricJet& jet) {
  const Mat3 ginv = inverse3(jet.g);
  Ten3 gamma;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += ginv[a][d] *
               (jet.dg[b][d][c] + jet.dg[c][d][b] - jet.dg[d][b][c]);
        gamma[a][b][c] = 0.5 * s;
      }
    }
  }
  return gamma;
}

CurvatureData curvature_at(const MetricParams& params, const Vec3& point) {
  const MetricJet jet = metric_jet_at(params, point);
  CurvatureData out;

  const Mat3 ginv = inverse3(jet.g);
  out.christoffels = christoffels_from_jet(jet);
  const Ten3& gamma = out.christoffels;

  // dginv[e][a][b] = partial_e g^{ab} = -g^{af} dg[e][f][g] g^{gb}
  Ten3 dginv;
  for (int e = 0; e < 3; ++e) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double s = 0.0;
        for (int f = 0; f < 3; ++f)
          for (int g = 0; g < 3; ++g)
            s += ginv[a][f] * jet.dg[e][f][g] * ginv[g][b];
        dginv[e][a][b] = -s;
      }
    }
  }

  // dgamma[e][a][b][c] = partial_e Gamma^a_bc
  std::array<Ten3, 3> dgamma;
  for (int e = 0; e < 3; ++e) {
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int d = 0; d < 3; ++d) {
            s += dginv[e][a][d] *
                 (jet.dg[b][d][c] + jet.dg[c][d][b] - jet.dg[d][b][c]);
            s += ginv[a][d] * (jet.ddg[e][b][d][c] + jet.ddg[e][c][d][b] -
                               jet.ddg[e][d][b][c]);
          }
          dgamma[e][a][b][c] = 0.5 * s;
        }
      }
    }
  }

  for (int b = 0; b < 3; ++b) {
    for (int d = 0; d < 3; ++d) {
      double r_bd = 0.0;
      for (int a = 0; a < 3; ++a) {
        r_bd += dgamma[a][a][b][d] - dgamma[b][a][a][d];
        for (int e = 0; e < 3; ++e)
          r_bd += gamma[a][a][e] * gamma[e][b][d] - gamma[a][d][e] * gamma[e][a][b];
      }
      out.ricci[b][d] = r_bd;
    }
  }

  out.scalar = 0.0;
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) out.scalar += ginv[b][d] * out.ricci[b][d];

  if (params.mass > 0.0 && !params.has_perturbation()) {
    // Static defect -Hess_S f + f Rc_S with f = (2 - phi)/phi = 2/phi - 1.
    const double r = norm(point);
    const double m = params.mass;
    const double phi = conformal_phi(m, r);
    const double r3 = r * r * r;
    const double r5 = r3 * r * r;
    Vec3 dphi;
    for (int a = 0; a < 3; ++a) dphi[a] = -0.5 * m * point[a] / r3;
    Mat3 ddphi;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        ddphi[a][b] = -0.5 * m * ((a == b ? 1.0 : 0.0) / r3 - 3.0 * point[a] * point[b] / r5);

    const double f = 2.0 / phi - 1.0;
    Vec3 df;
    for (int a = 0; a < 3; ++a) df[a] = -2.0 * dphi[a] / (phi * phi);
    Mat3 hess;  // coordinate Hessian of f
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        hess[a][b] = 4.0 * dphi[a] * dphi[b] / (phi * phi * phi) -
                     2.0 * ddphi[a][b] / (phi * phi);

    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        double cov = hess[a][b];
        for (int c = 0; c < 3; ++c) cov -= gamma[c][a][b] * df[c];
        out.potential_hessian_defect[a][b] = -cov + f * out.ricci[a][b];
      }
    }
    out.has_static_defect = true;
  }

  return out;
}

AmbientData ambient_data_at(const MetricParams& params, const Vec3& point) {
  AmbientData out;
  if (params.is_euclidean()) {
    out.g = identity_mat3();
    out.g_inv = identity_mat3();
    for (auto& m : out.christoffels) m = zero_mat3();
    out.ricci = zero_mat3();
    return out;
  }

  if (params.has_perturbation()) {
    const CurvatureData curv = curvature_at(params, point);
    const MetricJet jet = metric_jet_at(params, point);
    out.g = jet.g;
    out.g_inv = inverse3(jet.g);
    out.christoffels = curv.christoffels;
    out.ricci = curv.ricci;
    out.scalar = curv.scalar;
    out.phi = conformal_phi(params.mass, norm(point));
    return out;
  }

  // Exact Schwarzschild: g = phi^4 delta. Conformal closed forms,
  // Gamma^a_bc = delta^a_b u_c + delta^a_c u_b - delta_bc u_a with u = 2 ln phi.
  const double r = norm(point);
  if (!(r >= params.r_floor) || r == 0.0)
    throw DomainError("metric queried below r_floor");
  const double m = params.mass;
  const double phi = conformal_phi(m, r);
  const double phi2 = phi * phi;
  const double phi4 = phi2 * phi2;
  out.phi = phi;
  out.g = zero_mat3();
  out.g_inv = zero_mat3();
  for (int a = 0; a < 3; ++a) {
    out.g[a][a] = phi4;
    out.g_inv[a][a] = 1.0 / phi4;
  }
  Vec3 u;  // grad of 2 ln phi
  const double r3 = r * r * r;
  for (int a = 0; a < 3; ++a) u[a] = -m * point[a] / (phi * r3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double v = 0.0;
        if (a == b) v += u[c];
        if (a == c) v += u[b];
        if (b == c) v -= u[a];
        out.christoffels[a][b][c] = v;
      }
  out.ricci = schwarzschild_ricci_closed_form(m, point);
  out.scalar = 0.0;
  return out;
}

DecayReport decay_report(const MetricParams& params, std::span<const double> radii) {
  params.validate();
  if (radii.empty()) throw ArgumentError("decay_report: empty radius list");
  for (double r : radii)
    if (r < params.r_floor)
      throw DomainError("decay_report: radius below r_floor");

  const auto dirs = fibonacci_directions(48);
  DecayReport report;
  report.rows.reserve(radii.size());

  for (double r : radii) {
    DecayRow row;
    row.radius = r;
    for (const Vec3& d : dirs) {
      const Vec3 x = r * d;
      Mat3 h;
      Ten3 dh;
      Ten4 ddh;
      perturbation_only_jet(params, x, r, h, dh, ddh);
      row.h_bound[0] = std::max(row.h_bound[0], r * r * frobenius_norm(h));
      row.h_bound[1] = std::max(row.h_bound[1], r * r * r * frobenius(dh));
      row.h_bound[2] = std::max(row.h_bound[2], r * r * r * r * frobenius(ddh));

      // Third derivative by centred differencing of the analytic ddh.
      const double step = 1e-3 * r;
      double d3_sq = 0.0;
      for (int e = 0; e < 3; ++e) {
        Vec3 xp = x, xm = x;
        xp[e] += step;
        xm[e] -= step;
        Mat3 hp, hm;
        Ten3 dhp, dhm;
        Ten4 ddhp, ddhm;
        perturbation_only_jet(params, xp, norm(xp), hp, dhp, ddhp);
        perturbation_only_jet(params, xm, norm(xm), hm, dhm, ddhm);
        for (int c = 0; c < 3; ++c)
          for (int f = 0; f < 3; ++f)
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b) {
                const double v =
                    (ddhp[c][f][a][b] - ddhm[c][f][a][b]) / (2.0 * step);
                d3_sq += v * v;
              }
      }
      row.h_bound[3] =
          std::max(row.h_bound[3], std::pow(r, 5) * std::sqrt(d3_sq));

      const CurvatureData curv = curvature_at(params, x);
      row.scalar_bound =
          std::max(row.scalar_bound, std::pow(r, 5) * std::abs(curv.scalar));
    }
    report.rows.push_back(row);
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const DecayRow& a, const DecayRow& b) { return a.radius < b.radius; });

  if (params.eta > 0.0) {
    for (const DecayRow& row : report.rows) {
      for (double b : row.h_bound)
        report.bound_factor = std::max(report.bound_factor, b / params.eta);
      report.scalar_factor =
          std::max(report.scalar_factor, row.scalar_bound / params.eta);
    }
  }

  // Decay-order check: the normalized bounds must not grow with r.
  constexpr double kOrderSlack = 1.05;
  report.decay_ok = true;
  report.scalar_ok = true;
  for (std::size_t k = 1; k < report.rows.size(); ++k) {
    const DecayRow& lo = report.rows[k - 1];
    const DecayRow& hi = report.rows[k];
    for (int j = 0; j <= 3; ++j)
      if (hi.h_bound[j] > kOrderSlack * lo.h_bound[j] + 1e-14)
        report.decay_ok = false;
    if (hi.scalar_bound > kOrderSlack * lo.scalar_bound + 1e-14)
      report.scalar_ok = false;
  }
  return report;
}

}  // namespace apwf
