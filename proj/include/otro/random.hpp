#pragma once

// Seeded random matrices for sampling-based checks. Callers own the engine.

#include <cstdint>
#include <random>

#include "otro/linalg.hpp"

namespace otro {

using Rng = std::mt19937_64;

/// Entries with independent standard complex Gaussian real and imaginary parts.
CMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);
CMatrix random_square(std::size_t d, Rng& rng);
CMatrix random_hermitian(std::size_t d, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian matrix with phase fix).
CMatrix random_unitary(std::size_t d, Rng& rng);
/// Orthogonal projection of the given rank onto a random subspace.
CMatrix random_projection(std::size_t d, std::size_t rank, Rng& rng);
/// Random complex combination of the basis of s.
CMatrix random_element(const Subspace& s, Rng& rng);
/// Random real combination of the given (Hermitian) matrices.
CMatrix random_real_combination(std::span<const CMatrix> mats, std::size_t d, Rng& rng);

}  // namespace otro
