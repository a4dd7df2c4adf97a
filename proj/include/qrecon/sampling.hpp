#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qrecon/linalg.hpp"

namespace qrecon {

using Rng = std::mt19937_64;

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
// diag(R) pushed back into Q.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

// Uniformly random permutation matrix.
RealMatrix random_permutation_matrix(std::size_t n, Rng& rng);

// Convex combination of `terms` uniformly drawn permutation matrices with
// Dirichlet(1) weights. terms == 0 means n terms.
RealMatrix random_bistochastic(std::size_t n, Rng& rng, std::size_t terms = 0);

// Unit vector distributed uniformly on the complex sphere.
Eigen::VectorXcd random_pure_state(std::size_t n, Rng& rng);

// Mixture of `components` Haar-random pure states with Dirichlet(1) weights.
ComplexMatrix random_density_matrix(std::size_t n, Rng& rng, std::size_t components = 0);

// 64-bit mix used to derive independent per-start seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace qrecon
