#include "apwf/sphere_grid.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "apwf/errors.hpp"

namespace apwf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    // Chebyshev-like initial guess for the k-th root (descending in x).
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Polish once more for the weight.
    double p0 = 1.0, p1 = x;
    for (int l = 2; l <= n; ++l) {
      const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[k] = x;
    weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace

SphereGrid::SphereGrid(int degree) : degree_(degree) {
  if (degree < 1) throw ArgumentError("SphereGrid: degree must be >= 1");
  n_theta_ = degree_ + 1;
  n_phi_ = 2 * degree_ + 2;
  w_phi_ = 2.0 * kPi / n_phi_;

  std::vector<double> x, w;
  gauss_legendre(n_theta_, x, w);
  theta_.resize(n_theta_);
  cos_theta_.resize(n_theta_);
  sin_theta_.resize(n_theta_);
  w_theta_.resize(n_theta_);
  for (int i = 0; i < n_theta_; ++i) {
    // gauss_legendre returns x descending, so theta is increasing.
    cos_theta_[i] = x[i];
    theta_[i] = std::acos(x[i]);
    sin_theta_[i] = std::sqrt(1.0 - x[i] * x[i]);
    w_theta_[i] = w[i];
  }

  phi_.resize(n_phi_);
  cos_table_.resize(static_cast<std::size_t>(degree_ + 1) * n_phi_);
  sin_table_.resize(static_cast<std::size_t>(degree_ + 1) * n_phi_);
  for (int j = 0; j < n_phi_; ++j) phi_[j] = w_phi_ * j;
  for (int m = 0; m <= degree_; ++m) {
    for (int j = 0; j < n_phi_; ++j) {
      cos_table_[static_cast<std::size_t>(m) * n_phi_ + j] = std::cos(m * phi_[j]);
      sin_table_[static_cast<std::size_t>(m) * n_phi_ + j] = std::sin(m * phi_[j]);
    }
  }

  // Fully normalized associated Legendre tables and their theta-derivatives.
  block_offset_.resize(degree_ + 2);
  block_offset_[0] = 0;
  for (int m = 0; m <= degree_; ++m)
    block_offset_[m + 1] = block_offset_[m] +
                           static_cast<std::size_t>(n_theta_) * (degree_ - m + 1);
  p_.resize(block_offset_[degree_ + 1]);
  dp_.resize(block_offset_[degree_ + 1]);

  std::vector<double> pmm(n_theta_, 1.0 / std::sqrt(4.0 * kPi));
  for (int m = 0; m <= degree_; ++m) {
    double* pm = p_.data() + block_offset_[m];
    const int cols = block_cols(m);
    if (m > 0) {
      const double diag = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
      for (int i = 0; i < n_theta_; ++i) pmm[i] *= diag * sin_theta_[i];
    }
    for (int i = 0; i < n_theta_; ++i) pm[i * cols] = pmm[i];
    if (m + 1 <= degree_) {
      const double c = std::sqrt(2.0 * m + 3.0);
      for (int i = 0; i < n_theta_; ++i)
        pm[i * cols + 1] = c * cos_theta_[i] * pmm[i];
    }
    for (int l = m + 2; l <= degree_; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) /
                                 (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      for (int i = 0; i < n_theta_; ++i)
        pm[i * cols + (l - m)] =
            a * (cos_theta_[i] * pm[i * cols + (l - 1 - m)] -
                 b * pm[i * cols + (l - 2 - m)]);
    }

    // d/dtheta via  sin(theta) P'_{lm} = l cos(theta) P_{lm} - e_{lm} P_{l-1,m}
    // with e_{lm} = sqrt((l^2 - m^2)(2l+1)/(2l-1)).
    double* dpm = dp_.data() + block_offset_[m];
    for (int l = m; l <= degree_; ++l) {
      const double e = l > m ? std::sqrt((static_cast<double>(l) * l - m * m) *
                                         (2.0 * l + 1.0) / (2.0 * l - 1.0))
                             : 0.0;
      for (int i = 0; i < n_theta_; ++i) {
        const double plm = pm[i * cols + (l - m)];
        const double plm1 = l > m ? pm[i * cols + (l - 1 - m)] : 0.0;
        dpm[i * cols + (l - m)] =
            (l * cos_theta_[i] * plm - e * plm1) / sin_theta_[i];
      }
    }
  }
}

std::shared_ptr<const SphereGrid> SphereGrid::shared(int degree) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SphereGrid>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[degree];
  if (!slot) slot = std::make_shared<SphereGrid>(degree);
  return slot;
}

void SphereGrid::check_values_size(std::size_t n) const {
  if (n != static_cast<std::size_t>(n_nodes()))
    throw ArgumentError("field size does not match grid node count");
}

void SphereGrid::fourier_analyze(std::span<const double> values,
                                 std::vector<double>& fc,
                                 std::vector<double>& fs) const {
  // fc[m * n_theta + i] = sum_j values(i,j) C_m(phi_j) w_phi, with the
  // sqrt(2) of the real basis folded in for m > 0; similarly fs with S_m.
  fc.assign(static_cast<std::size_t>(degree_ + 1) * n_theta_, 0.0);
  fs.assign(static_cast<std::size_t>(degree_ + 1) * n_theta_, 0.0);
  for (int m = 0; m <= degree_; ++m) {
    const double amp = (m == 0 ? 1.0 : kSqrt2) * w_phi_;
    const double* ct = cos_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    const double* st = sin_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    for (int i = 0; i < n_theta_; ++i) {
      const double* row = values.data() + static_cast<std::size_t>(i) * n_phi_;
      double sc = 0.0, ss = 0.0;
      for (int j = 0; j < n_phi_; ++j) {
        sc += row[j] * ct[j];
        ss += row[j] * st[j];
      }
      fc[static_cast<std::size_t>(m) * n_theta_ + i] = amp * sc;
      fs[static_cast<std::size_t>(m) * n_theta_ + i] = amp * ss;
    }
  }
}

std::vector<double> SphereGrid::analyze(std::span<const double> values) const {
  check_values_size(values.size());
  std::vector<double> fc, fs;
  fourier_analyze(values, fc, fs);

  std::vector<double> coeffs(n_coeffs(), 0.0);
  for (int m = 0; m <= degree_; ++m) {
    const double* pm = p_block(m);
    const int cols = block_cols(m);
    const double* fcm = fc.data() + static_cast<std::size_t>(m) * n_theta_;
    const double* fsm = fs.data() + static_cast<std::size_t>(m) * n_theta_;
    for (int l = m; l <= degree_; ++l) {
      double ac = 0.0, as = 0.0;
      for (int i = 0; i < n_theta_; ++i) {
        const double pw = w_theta_[i] * pm[i * cols + (l - m)];
        ac += pw * fcm[i];
        as += pw * fsm[i];
      }
      coeffs[coeff_index(l, m)] = ac;
      if (m > 0) coeffs[coeff_index(l, -m)] = as;
    }
  }
  return coeffs;
}

namespace {

int degree_of_coeffs(std::size_t n) {
  const int l = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)))) - 1;
  if (SphereGrid::coeff_count(l) != static_cast<int>(n))
    throw ArgumentError("coefficient vector length is not a perfect square");
  return l;
}

}  // namespace

std::vector<double> SphereGrid::synthesize(std::span<const double> coeffs) const {
  std::vector<double> values, dt, dp;
  synthesize_with_derivatives(coeffs, values, dt, dp);
  return values;
}

void SphereGrid::synthesize_with_derivatives(std::span<const double> coeffs,
                                             std::vector<double>& values,
                                             std::vector<double>& d_theta,
                                             std::vector<double>& d_phi) const {
  const int lsrc = degree_of_coeffs(coeffs.size());
  const int lmax = std::min(lsrc, degree_);
  for (int l = degree_ + 1; l <= lsrc; ++l)
    for (int m = -l; m <= l; ++m)
      if (coeffs[coeff_index(l, m)] != 0.0)
        throw ArgumentError("synthesize: coefficients exceed grid degree");

  const std::size_t n = n_nodes();
  values.assign(n, 0.0);
  d_theta.assign(n, 0.0);
  d_phi.assign(n, 0.0);

  // Legendre stage: per order m, accumulate g(i) and g'(i).
  std::vector<double> gc(n_theta_), gs(n_theta_), dgc(n_theta_), dgs(n_theta_);
  for (int m = 0; m <= lmax; ++m) {
    const double* pm = p_block(m);
    const double* dpm = dp_block(m);
    const int cols = block_cols(m);
    for (int i = 0; i < n_theta_; ++i) {
      double vc = 0.0, vs = 0.0, dvc = 0.0, dvs = 0.0;
      for (int l = m; l <= lmax; ++l) {
        const double ac = coeffs[coeff_index(l, m)];
        const double p = pm[i * cols + (l - m)];
        const double dp = dpm[i * cols + (l - m)];
        vc += ac * p;
        dvc += ac * dp;
        if (m > 0) {
          const double as = coeffs[coeff_index(l, -m)];
          vs += as * p;
          dvs += as * dp;
        }
      }
      gc[i] = vc;
      gs[i] = vs;
      dgc[i] = dvc;
      dgs[i] = dvs;
    }

    const double amp = m == 0 ? 1.0 : kSqrt2;
    const double* ct = cos_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    const double* st = sin_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    for (int i = 0; i < n_theta_; ++i) {
      double* v = values.data() + static_cast<std::size_t>(i) * n_phi_;
      double* vt = d_theta.data() + static_cast<std::size_t>(i) * n_phi_;
      double* vp = d_phi.data() + static_cast<std::size_t>(i) * n_phi_;
      for (int j = 0; j < n_phi_; ++j) {
        const double c = amp * ct[j];
        const double s = amp * st[j];
        v[j] += gc[i] * c + gs[i] * s;
        vt[j] += dgc[i] * c + dgs[i] * s;
        vp[j] += m * (gs[i] * c - gc[i] * s);
      }
    }
  }
}

void SphereGrid::synthesize_second_derivatives(std::span<const double> coeffs,
                                               std::vector<double>& d_tt,
                                               std::vector<double>& d_tp,
                                               std::vector<double>& d_pp) const {
  const int lsrc = degree_of_coeffs(coeffs.size());
  const int lmax = std::min(lsrc, degree_);

  const std::size_t n = n_nodes();
  d_tt.assign(n, 0.0);
  d_tp.assign(n, 0.0);
  d_pp.assign(n, 0.0);

  std::vector<double> gc(n_theta_), gs(n_theta_), dgc(n_theta_), dgs(n_theta_),
      d2gc(n_theta_), d2gs(n_theta_);
  for (int m = 0; m <= lmax; ++m) {
    const double* pm = p_block(m);
    const double* dpm = dp_block(m);
    const int cols = block_cols(m);
    for (int i = 0; i < n_theta_; ++i) {
      const double cot = cos_theta_[i] / sin_theta_[i];
      const double msin2 = static_cast<double>(m) * m / (sin_theta_[i] * sin_theta_[i]);
      double vc = 0.0, vs = 0.0, dvc = 0.0, dvs = 0.0, d2vc = 0.0, d2vs = 0.0;
      for (int l = m; l <= lmax; ++l) {
        const double p = pm[i * cols + (l - m)];
        const double dp = dpm[i * cols + (l - m)];
        // From the associated Legendre equation:
        // P'' = -cot(theta) P' + (m^2/sin^2 - l(l+1)) P
        const double d2p = -cot * dp + (msin2 - static_cast<double>(l) * (l + 1)) * p;
        const double ac = coeffs[coeff_index(l, m)];
        vc += ac * p;
        dvc += ac * dp;
        d2vc += ac * d2p;
        if (m > 0) {
          const double as = coeffs[coeff_index(l, -m)];
          vs += as * p;
          dvs += as * dp;
          d2vs += as * d2p;
        }
      }
      gc[i] = vc;
      gs[i] = vs;
      dgc[i] = dvc;
      dgs[i] = dvs;
      d2gc[i] = d2vc;
      d2gs[i] = d2vs;
    }

    const double amp = m == 0 ? 1.0 : kSqrt2;
    const double* ct = cos_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    const double* st = sin_table_.data() + static_cast<std::size_t>(m) * n_phi_;
    for (int i = 0; i < n_theta_; ++i) {
      double* tt = d_tt.data() + static_cast<std::size_t>(i) * n_phi_;
      double* tp = d_tp.data() + static_cast<std::size_t>(i) * n_phi_;
      double* pp = d_pp.data() + static_cast<std::size_t>(i) * n_phi_;
      for (int j = 0; j < n_phi_; ++j) {
        const double c = amp * ct[j];
        const double s = amp * st[j];
        tt[j] += d2gc[i] * c + d2gs[i] * s;
        tp[j] += m * (dgs[i] * c - dgc[i] * s);
        pp[j] -= m * m * (gc[i] * c + gs[i] * s);
      }
    }
  }
}

std::vector<double> SphereGrid::divergence_coeffs(
    std::span<const double> v_theta, std::span<const double> v_phi) const {
  check_values_size(v_theta.size());
  check_values_size(v_phi.size());

  std::vector<double> tc, ts, pc, ps;
  fourier_analyze(v_theta, tc, ts);
  fourier_analyze(v_phi, pc, ps);

  std::vector<double> coeffs(n_coeffs(), 0.0);
  for (int m = 0; m <= degree_; ++m) {
    const double* pm = p_block(m);
    const double* dpm = dp_block(m);
    const int cols = block_cols(m);
    const double* tcm = tc.data() + static_cast<std::size_t>(m) * n_theta_;
    const double* tsm = ts.data() + static_cast<std::size_t>(m) * n_theta_;
    const double* pcm = pc.data() + static_cast<std::size_t>(m) * n_theta_;
    const double* psm = ps.data() + static_cast<std::size_t>(m) * n_theta_;
    for (int l = m; l <= degree_; ++l) {
      double ac = 0.0, as = 0.0;
      for (int i = 0; i < n_theta_; ++i) {
        const double p = w_theta_[i] * pm[i * cols + (l - m)];
        const double dp = w_theta_[i] * dpm[i * cols + (l - m)];
        // cos-type Y: d_theta Y ~ dP C_m, d_phi Y ~ -m P S_m
        ac -= dp * tcm[i] - m * p * psm[i];
        if (m > 0) as -= dp * tsm[i] + m * p * pcm[i];
      }
      coeffs[coeff_index(l, m)] = ac;
      if (m > 0) coeffs[coeff_index(l, -m)] = as;
    }
  }
  return coeffs;
}

double SphereGrid::integrate(std::span<const double> values) const {
  check_values_size(values.size());
  double total = 0.0;
  for (int i = 0; i < n_theta_; ++i) {
    const double* row = values.data() + static_cast<std::size_t>(i) * n_phi_;
    double s = 0.0;
    for (int j = 0; j < n_phi_; ++j) s += row[j];
    total += w_theta_[i] * s;
  }
  return total * w_phi_;
}

std::vector<double> SphereGrid::resize_coeffs(std::span<const double> coeffs,
                                              int degree_to) {
  const int lsrc = degree_of_coeffs(coeffs.size());
  std::vector<double> out(coeff_count(degree_to), 0.0);
  const int lcopy = std::min(lsrc, degree_to);
  std::copy(coeffs.begin(), coeffs.begin() + coeff_count(lcopy), out.begin());
  return out;
}

}  // namespace apwf
