#pragma once

#include <cstddef>
#include <cstdint>

#include "seqbias/permutation.hpp"

namespace seqbias {

// All distances are normalized by n^2 (entry-wise error by n) and require
// equal sizes; a mismatch throws std::domain_error.

/// Spearman's footrule: sum_t |a(t) - b(t)| / n^2.
double d_sf(const Permutation& a, const Permutation& b);

/// Entry-wise error at position t: |a(t) - b(t)| / n.
double d_entrywise(const Permutation& a, const Permutation& b, std::size_t t);

/// Kendall tau: number of pairs ordered one way by b and the other by a, / n^2.
double d_kt(const Permutation& a, const Permutation& b);

/// Unnormalized flip count behind d_kt, O(n log n).
std::int64_t kendall_flips(const Permutation& a, const Permutation& b);

/// l1 distance between inversion vectors, / n^2.
double d_inv(const Permutation& a, const Permutation& b);

} // namespace seqbias
