#include "tfd/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tfd {

void QuadratureFrame::validate() const {
  if (norm2() <= 0.0) {
    throw std::invalid_argument("QuadratureFrame: (f, g) must be nonzero");
  }
}

Complex QuadratureFrame::exp_2iphi() const {
  const Complex u = Complex(f, g) / std::sqrt(norm2());  // e^{i phi}
  return u * u;
}

Complex QuadratureFrame::g_factor(Complex pair_coeff) const {
  return 1.0 + 2.0 * exp_2iphi() * pair_coeff;
}

double WignerGrid::integral() const {
  // pairwise row sums keep the reduction order fixed
  double total = 0.0;
  for (Eigen::Index i = 0; i < nq(); ++i) total += values.row(i).sum();
  return total * dq * dp;
}

double WignerGrid::edge_max() const {
  double m = 0.0;
  m = std::max(m, values.row(0).cwiseAbs().maxCoeff());
  m = std::max(m, values.row(nq() - 1).cwiseAbs().maxCoeff());
  m = std::max(m, values.col(0).cwiseAbs().maxCoeff());
  m = std::max(m, values.col(np() - 1).cwiseAbs().maxCoeff());
  return m;
}

double wigner_closed(const ModelParams& p, const PhasePoint& pt) {
  const DerivedParams dp = thermal_params(p);
  const double t = std::tanh(0.5 * p.beta * dp.omega_eff);
  const double quad = p.omega * std::norm(pt.alpha) +
                      2.0 * (p.kappa * pt.alpha * pt.alpha).real();
  return t / M_PI * std::exp(-2.0 / dp.omega_eff * quad * t);
}

std::pair<double, double> wigner_principal_sigmas(const ModelParams& p) {
  // exponent = -(A q² + B p² + 2 C q p); sigma = 1/sqrt(2 eig)
  const DerivedParams dp = thermal_params(p);
  const double t = std::tanh(0.5 * p.beta * dp.omega_eff);
  const double scale = t / dp.omega_eff;
  const double a = scale * (p.omega + 2.0 * p.kappa.real());
  const double b = scale * (p.omega - 2.0 * p.kappa.real());
  const double c = -2.0 * scale * p.kappa.imag();
  const double mean = 0.5 * (a + b);
  const double dev = std::sqrt(0.25 * (a - b) * (a - b) + c * c);
  const double lo = mean - dev, hi = mean + dev;
  return {1.0 / std::sqrt(2.0 * hi), 1.0 / std::sqrt(2.0 * lo)};
}

WignerGrid wigner_closed_grid(const ModelParams& p, const GridSpec& spec) {
  WignerGrid grid;
  double half = std::max(std::abs(spec.qmin), std::abs(spec.qmax));
  if (spec.auto_extent) {
    const auto [slo, shi] = wigner_principal_sigmas(p);
    half = std::max(half, std::ceil(8.0 * shi / spec.step) * spec.step);
  }
  grid.qmin = grid.pmin = -half;
  grid.qmax = grid.pmax = half;
  grid.dq = grid.dp = spec.step;
  const Eigen::Index n = Eigen::Index(std::lround(2.0 * half / spec.step)) + 1;
  grid.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double q = grid.q_at(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      grid.values(i, j) = wigner_closed(p, PhasePoint::from_qp(q, grid.p_at(j)));
    }
  }
  return grid;
}

double wigner_numeric(const DensityOperator& rho, const PhasePoint& pt,
                      const ToleranceProfile& tol) {
  const Eigen::Index n = rho.cutoff();
  const FockOperators ops = fock_operators(n);
  const CMatrix gen = pt.alpha * ops.raise - std::conj(pt.alpha) * ops.lower;
  const CMatrix disp = expm_antihermitian(gen, tol);
  const CMatrix displaced = disp.adjoint() * rho.matrix * disp;

  double tail = 0.0;
  for (Eigen::Index k = n - 4; k < n; ++k) tail += displaced(k, k).real();
  if (tail > tol.wigner_support_tail) {
    std::ostringstream os;
    os << "wigner_numeric: displaced state leaks past the cutoff (tail mass "
       << tail << " > " << tol.wigner_support_tail << ")";
    throw NonConvergenceError(os.str(), tail);
  }

  double parity_sum = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = displaced(k, k).real();
    parity_sum += (k % 2 == 0) ? d : -d;
  }
  return parity_sum / M_PI;
}

CVector quadrature_state(const QuadratureFrame& frame, double q,
                         Eigen::Index cutoff) {
  frame.validate();
  if (cutoff < 2) {
    throw std::invalid_argument("quadrature_state: cutoff must be >= 2");
  }
  const double r2 = frame.norm2();
  const Complex u = std::sqrt(2.0) * q / frame.a_coeff();
  const Complex v = -0.5 * frame.exp_2iphi();
  const double c0 =
      std::pow(M_PI * r2, -0.25) * std::exp(-q * q / (2.0 * r2));
  CVector psi(cutoff);
  psi[0] = c0;
  psi[1] = u * c0;
  // psi_{n+1} = (u psi_n + 2 v sqrt(n) psi_{n-1}) / sqrt(n+1)
  for (Eigen::Index n = 1; n + 1 < cutoff; ++n) {
    psi[n + 1] = (u * psi[n] + 2.0 * v * std::sqrt(double(n)) * psi[n - 1]) /
                 std::sqrt(double(n) + 1.0);
  }
  return psi;
}

double tomogram_fock(const DensityOperator& rho, const QuadratureFrame& frame,
                     double q) {
  const CVector psi = quadrature_state(frame, q, rho.cutoff());
  const double value = (psi.adjoint() * rho.matrix * psi)(0).real();
  if (value < -1e-10) {
    std::ostringstream os;
    os << "tomogram_fock: negative value " << value;
    throw std::runtime_error(os.str());
  }
  return value;
}

namespace {

// Catmull-Rom interpolation weights for fractional offset s in [0, 1].
inline void cubic_weights(double s, double w[4]) {
  const double s2 = s * s, s3 = s2 * s;
  w[0] = 0.5 * (-s3 + 2.0 * s2 - s);
  w[1] = 0.5 * (3.0 * s3 - 5.0 * s2 + 2.0);
  w[2] = 0.5 * (-3.0 * s3 + 4.0 * s2 + s);
  w[3] = 0.5 * (s3 - s2);
}

double grid_bicubic(const WignerGrid& grid, double q, double p) {
  const double fi = (q - grid.qmin) / grid.dq;
  const double fj = (p - grid.pmin) / grid.dp;
  const Eigen::Index nq = grid.nq(), np = grid.np();
  Eigen::Index i0 = Eigen::Index(std::floor(fi));
  Eigen::Index j0 = Eigen::Index(std::floor(fj));
  if (fi < 1.0 || fj < 1.0 || i0 + 2 >= nq || j0 + 2 >= np) {
    return 0.0;  // outside or on the frame ring: support is zero there
  }
  double wi[4], wj[4];
  cubic_weights(fi - double(i0), wi);
  cubic_weights(fj - double(j0), wj);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      row += wj[b] * grid.values(i0 - 1 + a, j0 - 1 + b);
    }
    out += wi[a] * row;
  }
  return out;
}

}  // namespace

double radon_numeric(const WignerGrid& grid, const QuadratureFrame& frame,
                     double q, const ToleranceProfile& tol) {
  frame.validate();
  if (grid.edge_max() > tol.radon_edge_support) {
    std::ostringstream os;
    os << "radon_numeric: grid does not cover the Wigner support (edge max "
       << grid.edge_max() << " > " << tol.radon_edge_support << ")";
    throw std::invalid_argument(os.str());
  }
  const double r = std::sqrt(frame.norm2());
  // line f q' + g p' = q, parameterized by arclength around the foot point
  const double bq = frame.f * q / (r * r);
  const double bp = frame.g * q / (r * r);
  const double tq = -frame.g / r;
  const double tp = frame.f / r;
  const double half_diag = std::hypot(grid.qmax - grid.qmin, grid.pmax - grid.pmin);
  const double step = std::min(grid.dq, grid.dp);
  Eigen::Index nsteps = Eigen::Index(std::ceil(2.0 * half_diag / step));
  if (nsteps % 2 == 1) ++nsteps;
  const double h = 2.0 * half_diag / double(nsteps);
  // composite Simpson along the line
  double sum = 0.0;
  for (Eigen::Index k = 0; k <= nsteps; ++k) {
    const double t = -half_diag + h * double(k);
    const double w = (k == 0 || k == nsteps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * grid_bicubic(grid, bq + t * tq, bp + t * tp);
  }
  return sum * h / 3.0 / r;
}

double tomogram_printed(const ModelParams& p, const QuadratureFrame& frame,
                        double q) {
  frame.validate();
  const DerivedParams dp = thermal_params(p);
  const double r2 = frame.norm2();
  const Complex a = frame.a_coeff();
  const Complex g = frame.g_factor(dp.pair_coeff);
  const double lambda = dp.lambda;
  const double den = lambda + std::norm(g) / lambda;
  const double c2 = std::pow(M_PI * r2, -0.5) * std::exp(-q * q / r2);
  const double bracket =
      (1.0 - lambda * (1.0 / g).real()) / (r2 * den) +
      (2.0 * dp.pair_coeff / (a * a * g)).real();
  return 2.0 * std::sinh(0.5 * p.beta * dp.omega_eff) * c2 / std::sqrt(den) *
         std::exp(2.0 * q * q * bracket);
}

TomogramFrameAudit tomogram_frame_audit(const ModelParams& p,
                                        const DensityOperator& rho,
                                        const WignerGrid& grid,
                                        const QuadratureFrame& frame,
                                        const std::vector<double>& qs,
                                        const ToleranceProfile& tol) {
  TomogramFrameAudit audit;
  audit.frame_f = frame.f;
  audit.frame_g = frame.g;
  for (const double q : qs) {
    TomogramAuditRow row;
    row.q = q;
    row.fock = tomogram_fock(rho, frame, q);
    row.radon = radon_numeric(grid, frame, q, tol);
    row.printed = tomogram_printed(p, frame, q);
    row.fock_radon_abs = std::abs(row.fock - row.radon);
    row.printed_fock_abs = std::abs(row.printed - row.fock);
    row.printed_fock_rel =
        row.printed_fock_abs / std::max(std::abs(row.fock), 1e-300);
    audit.max_fock_radon_abs =
        std::max(audit.max_fock_radon_abs, row.fock_radon_abs);
    audit.max_printed_fock_abs =
        std::max(audit.max_printed_fock_abs, row.printed_fock_abs);
    audit.rows.push_back(row);
  }
  // normalization sweep over a wide q range, composite Simpson; the frame
  // quadrature spread is bounded by |(f,g)| times the widest Wigner sigma
  const double sigma_q =
      std::sqrt(frame.norm2()) * wigner_principal_sigmas(p).second;
  const double qmax = std::max(10.0, 9.0 * sigma_q);
  const double hstep = 0.02;
  Eigen::Index nsteps = Eigen::Index(std::ceil(2.0 * qmax / hstep));
  if (nsteps % 2 == 1) ++nsteps;
  const double h = 2.0 * qmax / double(nsteps);
  double sf = 0.0, sr = 0.0, sp = 0.0;
  for (Eigen::Index k = 0; k <= nsteps; ++k) {
    const double q = -qmax + h * double(k);
    const double w = (k == 0 || k == nsteps) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sf += w * tomogram_fock(rho, frame, q);
    sr += w * radon_numeric(grid, frame, q, tol);
    sp += w * tomogram_printed(p, frame, q);
  }
  audit.fock_norm = sf * h / 3.0;
  audit.radon_norm = sr * h / 3.0;
  audit.printed_norm = sp * h / 3.0;
  return audit;
}

}  // namespace tfd
