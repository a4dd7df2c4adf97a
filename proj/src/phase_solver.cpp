#include "qrecon/phase_solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "qrecon/errors.hpp"
#include "qrecon/sampling.hpp"

namespace qrecon {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": dimension mismatch");
  }
}

}  // namespace

double wrap_phase(double angle) noexcept {
  double w = std::remainder(angle, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

PhaseMatrix::PhaseMatrix(RealMatrix phi) : phi_(std::move(phi)) {
  if (phi_.rows() != phi_.cols() || phi_.rows() == 0) throw DimensionError("phase matrix must be square");
  for (Eigen::Index k = 0; k < phi_.rows(); ++k) {
    if (phi_(0, k) != 0.0 || phi_(k, 0) != 0.0) {
      throw DomainError("phase matrix is not gauge fixed: first row and column must be zero");
    }
  }
  for (Eigen::Index k = 0; k < phi_.size(); ++k) {
    const double v = phi_.data()[k];
    if (!std::isfinite(v) || v <= -kPi || v > kPi) throw DomainError("phase outside (-pi, pi]");
  }
}

PhaseMatrix PhaseMatrix::zeros(std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  return PhaseMatrix(RealMatrix::Zero(dim, dim));
}

PhaseMatrix gauge_fix(const RealMatrix& raw) {
  if (raw.rows() != raw.cols() || raw.rows() == 0) throw DimensionError("gauge_fix: phases must be square");
  const Eigen::Index n = raw.rows();
  RealMatrix fixed = RealMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = 1; j < n; ++j) {
      fixed(i, j) = wrap_phase(raw(i, j) - raw(i, 0) - raw(0, j) + raw(0, 0));
    }
  }
  return PhaseMatrix(std::move(fixed));
}

PhaseMatrix gauge_fix_phases_of(const ComplexMatrix& m, double zero_tol) {
  RealMatrix raw(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      raw(i, j) = std::abs(m(i, j)) > zero_tol ? std::arg(m(i, j)) : 0.0;
    }
  }
  return gauge_fix(raw);
}

RealMatrix sqrt_matrix(const ProbabilityMatrix& pi) {
  // Entries may sit up to the validation tolerance below zero.
  return pi.values().cwiseMax(0.0).cwiseSqrt();
}

ComplexMatrix apply_phases(const RealMatrix& sigma, const RealMatrix& phi) {
  require_same_shape(sigma, phi, "apply_phases");
  ComplexMatrix out(sigma.rows(), sigma.cols());
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = 0; j < sigma.cols(); ++j) out(i, j) = std::polar(sigma(i, j), phi(i, j));
  }
  return out;
}

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(PairAxis a) noexcept { return a == PairAxis::Row ? "row" : "column"; }

N3Certificate certify_n3(const ProbabilityMatrix& pi, double tol) {
  if (pi.dimension() != 3) throw DimensionError("certify_n3 needs a 3x3 matrix");
  const RealMatrix s = sqrt_matrix(pi);
  constexpr std::array<std::pair<Eigen::Index, Eigen::Index>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (PairAxis axis : {PairAxis::Row, PairAxis::Column}) {
    for (const auto& [a, b] : pairs) {
      std::array<double, 3> links{};
      for (Eigen::Index k = 0; k < 3; ++k) {
        links[static_cast<std::size_t>(k)] = axis == PairAxis::Row ? s(a, k) * s(b, k) : s(k, a) * s(k, b);
      }
      const double longest = *std::max_element(links.begin(), links.end());
      const double gap = longest - (links[0] + links[1] + links[2] - longest);
      if (gap > tol) {
        return {false, ObstructionPair{axis, static_cast<std::size_t>(a), static_cast<std::size_t>(b), gap}};
      }
    }
  }
  return {true, std::nullopt};
}

void SolverConfig::validate() const {
  if (starts == 0) throw ConfigError("solver needs at least one start");
  if (max_iter == 0) throw ConfigError("solver needs at least one iteration per start");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ConfigError("solver tolerance must be positive and finite");
}

namespace objective {

std::size_t parameter_count(std::size_t n) { return n == 0 ? 0 : (n - 1) * (n - 1); }

RealMatrix unpack(const RealVector& x, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(n);
  if (static_cast<std::size_t>(x.size()) != parameter_count(n)) throw DimensionError("phase vector size");
  RealMatrix phi = RealMatrix::Zero(dim, dim);
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    for (Eigen::Index j = 1; j < dim; ++j) phi(i, j) = x(k++);
  }
  return phi;
}

RealVector pack(const RealMatrix& phi) {
  const Eigen::Index dim = phi.rows();
  RealVector x(static_cast<Eigen::Index>(parameter_count(static_cast<std::size_t>(dim))));
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < dim; ++i) {
    for (Eigen::Index j = 1; j < dim; ++j) x(k++) = phi(i, j);
  }
  return x;
}

namespace {

ComplexMatrix gram_defect(const ComplexMatrix& s) {
  return s.adjoint() * s - ComplexMatrix::Identity(s.rows(), s.cols());
}

}  // namespace

double value(const RealMatrix& sigma, const RealVector& x) {
  const ComplexMatrix s = apply_phases(sigma, unpack(x, static_cast<std::size_t>(sigma.rows())));
  return gram_defect(s).squaredNorm();
}

RealVector gradient(const RealMatrix& sigma, const RealVector& x) {
  const auto n = static_cast<std::size_t>(sigma.rows());
  const ComplexMatrix s = apply_phases(sigma, unpack(x, n));
  // df/dphi_ij = -4 Im(S_ij (G S^dagger)_ji), G = S^dagger S - I.
  const ComplexMatrix gs = gram_defect(s) * s.adjoint();
  RealMatrix full(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) full(i, j) = -4.0 * (s(i, j) * gs(j, i)).imag();
  }
  return pack(full);
}

RealVector residuals(const RealMatrix& sigma, const RealVector& x) {
  const auto n = static_cast<std::size_t>(sigma.rows());
  const ComplexMatrix g = gram_defect(apply_phases(sigma, unpack(x, n)));
  const Eigen::Index dim = g.rows();
  RealVector r(dim + dim * (dim - 1));
  Eigen::Index k = 0;
  for (Eigen::Index l = 0; l < dim; ++l) r(k++) = g(l, l).real();
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b) {
      r(k++) = std::numbers::sqrt2 * g(a, b).real();
      r(k++) = std::numbers::sqrt2 * g(a, b).imag();
    }
  }
  return r;
}

RealMatrix jacobian(const RealMatrix& sigma, const RealVector& x) {
  const auto n = static_cast<std::size_t>(sigma.rows());
  const ComplexMatrix s = apply_phases(sigma, unpack(x, n));
  const Eigen::Index dim = s.rows();
  RealMatrix jac = RealMatrix::Zero(dim + dim * (dim - 1), static_cast<Eigen::Index>(parameter_count(n)));
  // G_ab = sum_i conj(S_ia) S_ib. Phi_ij enters through column j only:
  //   dG_ab/dphi_ij = i conj(S_ia) S_ib ([j == b] - [j == a]).
  Eigen::Index row = dim;
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a + 1; b < dim; ++b, row += 2) {
      for (Eigen::Index i = 1; i < dim; ++i) {
        const Complex term = Complex(0.0, 1.0) * std::conj(s(i, a)) * s(i, b);
        if (b >= 1) {
          const Eigen::Index col = (i - 1) * (dim - 1) + (b - 1);
          jac(row, col) += std::numbers::sqrt2 * term.real();
          jac(row + 1, col) += std::numbers::sqrt2 * term.imag();
        }
        if (a >= 1) {
          const Eigen::Index col = (i - 1) * (dim - 1) + (a - 1);
          jac(row, col) -= std::numbers::sqrt2 * term.real();
          jac(row + 1, col) -= std::numbers::sqrt2 * term.imag();
        }
      }
    }
  }
  return jac;
}

}  // namespace objective

namespace {

struct StartResult {
  RealVector x;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Levenberg damping on the normal equations; lambda grows on every rejected
// step and shrinks on accepted ones. Stops at the target, on a stall, or
// when `budget` trial steps are spent.
StartResult descend(const RealMatrix& sigma, RealVector x, std::size_t budget, double target) {
  constexpr double kInitialDamping = 1e-3;
  constexpr double kMaxDamping = 1e12;

  RealVector r = objective::residuals(sigma, x);
  double f = r.squaredNorm();
  double lambda = kInitialDamping;
  std::size_t iter = 0;
  const Eigen::Index p = x.size();

  while (iter < budget && p > 0 && std::sqrt(f) > target) {
    const RealMatrix jac = objective::jacobian(sigma, x);
    const RealVector g = jac.transpose() * r;
    if (g.norm() < 1e-300) break;
    const RealMatrix jtj = jac.transpose() * jac;
    bool accepted = false;
    while (iter < budget) {
      ++iter;
      RealMatrix a = jtj;
      a.diagonal().array() += lambda;
      const RealVector step = a.ldlt().solve(-g);
      const RealVector trial = x + step;
      const RealVector r_trial = objective::residuals(sigma, trial);
      const double f_trial = r_trial.squaredNorm();
      if (f_trial < f) {
        // A step that barely moves f means the start has stalled.
        accepted = f - f_trial > 1e-14 * f;
        x = trial;
        r = r_trial;
        f = f_trial;
        lambda = std::max(lambda * 0.3, 1e-12);
        break;
      }
      lambda *= 10.0;
      if (lambda > kMaxDamping) break;
    }
    if (!accepted) break;
  }
  return {std::move(x), std::sqrt(f), iter};
}

// One start: seeded uniform phases (all zero for start 0), descent, then a
// few Gaussian kicks from the best point while the residual is above tol.
// All kicks share the start's max_iter budget and its random stream.
StartResult run_start(const RealMatrix& sigma, std::size_t start, std::size_t params, const SolverConfig& cfg) {
  constexpr int kMaxKicks = 10;
  constexpr double kKickScale = 0.7;
  const double target = cfg.tol * 1e-3;

  Rng rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(start))));
  RealVector x = RealVector::Zero(static_cast<Eigen::Index>(params));
  if (start != 0) {
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = uni(rng);
  }

  StartResult best = descend(sigma, std::move(x), cfg.max_iter, target);
  std::size_t used = best.iterations;
  std::normal_distribution<double> kick(0.0, kKickScale);
  for (int k = 0; k < kMaxKicks && params > 0 && best.residual >= cfg.tol && used < cfg.max_iter; ++k) {
    RealVector y = best.x;
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += kick(rng);
    StartResult trial = descend(sigma, std::move(y), cfg.max_iter - used, target);
    used += trial.iterations;
    if (trial.residual < best.residual) best = std::move(trial);
  }
  best.iterations = used;
  return best;
}

}  // namespace

SolveReport solve_phases_closed_form_n2(const ProbabilityMatrix& pi) {
  if (pi.dimension() != 2) throw DimensionError("closed-form completion is for N = 2 only");
  const RealMatrix sigma = sqrt_matrix(pi);
  RealMatrix phi = RealMatrix::Zero(2, 2);
  // With vanishing off-diagonal links the (1,1) phase is pure gauge.
  if (sigma(0, 1) != 0.0 && sigma(1, 0) != 0.0) phi(1, 1) = kPi;
  if (sigma(1, 1) == 0.0) phi(1, 1) = 0.0;
  SolveReport report;
  report.phases = PhaseMatrix(phi);
  report.residual = unitarity_residual(apply_phases(sigma, phi));
  report.status = SolveStatus::Feasible;
  report.starts_used = 0;
  report.iterations_total = 0;
  return report;
}

SolveReport solve_phases(const ProbabilityMatrix& pi, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = pi.dimension();
  const RealMatrix sigma = sqrt_matrix(pi);
  const std::size_t params = objective::parameter_count(n);

  std::vector<StartResult> results(cfg.starts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cfg.starts; k = next++) {
      results[k] = run_start(sigma, k, params, cfg);
    }
  };
  std::size_t threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  threads = std::min(threads, cfg.starts);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SolveReport report;
  report.seed = cfg.seed;
  report.starts_used = cfg.starts;
  std::size_t best = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    report.iterations_total += results[k].iterations;
    if (results[k].residual < results[best].residual) best = k;
  }
  report.best_start = best;

  RealMatrix phi = objective::unpack(results[best].x, n);
  for (Eigen::Index k = 0; k < phi.size(); ++k) {
    if (sigma.data()[k] == 0.0) phi.data()[k] = 0.0;
  }
  const PhaseMatrix canonical = gauge_fix(phi);
  report.residual = unitarity_residual(apply_phases(sigma, canonical));

  if (report.residual < cfg.tol) {
    report.status = SolveStatus::Feasible;
    report.phases = canonical;
  } else if (n == 3) {
    const N3Certificate cert = certify_n3(pi);
    report.status = cert.feasible ? SolveStatus::Inconclusive : SolveStatus::Infeasible;
    report.obstruction = cert.obstruction;
  } else {
    report.status = SolveStatus::Inconclusive;
  }
  return report;
}

}  // namespace qrecon
