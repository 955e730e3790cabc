#pragma once

#include <cstdint>
#include <random>

#include "tracelab/spectral.hpp"

namespace tracelab {

using Rng = std::mt19937_64;

// splitmix64 finalizer over (base, index). Per-task seeds for parallel loops.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

// i.i.d. standard complex Gaussian entries, E|z|^2 = 1.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

// Haar unitary: QR of a Ginibre matrix with the phases of diag(R) divided out.
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);
ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed);

// (G + G*)/2 for Ginibre G.
HermitianMatrix random_hermitian(Eigen::Index dim, Rng& rng);

// U diag(lambda) U* with Haar U. The condition number is log-uniform on
// [1, max_condition] and the spectrum sits log-uniformly inside
// [cond^{-1/2}, cond^{1/2}] with both endpoints attained.
PositiveMatrix random_positive(Eigen::Index dim, Rng& rng, double max_condition = 10.0);
PositiveMatrix random_positive(Eigen::Index dim, std::uint64_t seed, double max_condition = 10.0);

// Ginibre K scaled by 1/sqrt(dim), so E||K||_F^2 = dim. Invertible almost surely.
ComplexMatrix random_invertible(Eigen::Index dim, Rng& rng);

// U diag(sigma) V with Haar U, V and singular values spread like the
// spectrum of random_positive. Condition number at most max_condition.
ComplexMatrix random_invertible(Eigen::Index dim, Rng& rng, double max_condition);

}  // namespace tracelab
