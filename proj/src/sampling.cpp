#include "qrecon/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qrecon/errors.hpp"

namespace qrecon {

namespace {

std::vector<double> dirichlet_ones(std::size_t k, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("haar_unitary: dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

RealMatrix random_permutation_matrix(std::size_t n, Rng& rng) {
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  // Hand-rolled Fisher-Yates so the draw sequence does not depend on the
  // standard library's shuffle.
  for (std::size_t k = n; k > 1; --k) {
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::swap(perm[k - 1], perm[pick(rng)]);
  }
  const auto dim = static_cast<Eigen::Index>(n);
  RealMatrix p = RealMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1.0;
  return p;
}

RealMatrix random_bistochastic(std::size_t n, Rng& rng, std::size_t terms) {
  if (n == 0) throw DomainError("random_bistochastic: dimension must be positive");
  if (terms == 0) terms = n;
  const auto w = dirichlet_ones(terms, rng);
  const auto dim = static_cast<Eigen::Index>(n);
  RealMatrix b = RealMatrix::Zero(dim, dim);
  for (double weight : w) b += weight * random_permutation_matrix(n, rng);
  return b;
}

Eigen::VectorXcd random_pure_state(std::size_t n, Rng& rng) {
  if (n == 0) throw DomainError("random_pure_state: dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(k) = Complex(re, im);
  }
  return v / v.norm();
}

ComplexMatrix random_density_matrix(std::size_t n, Rng& rng, std::size_t components) {
  if (components == 0) components = n;
  const auto w = dirichlet_ones(components, rng);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (double weight : w) {
    const Eigen::VectorXcd psi = random_pure_state(n, rng);
    rho += weight * psi * psi.adjoint();
  }
  return rho;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace qrecon
