#ifndef OPCHAOS_ORACLE_HPP
#define OPCHAOS_ORACLE_HPP

#include <functional>

#include "opchaos/atomic_system.hpp"

namespace opchaos {

// Dense matrix picture of the operator restricted to an atom window.
// matrix[r][c] = weight(atoms[r]) when f(atoms[r]) = atoms[c], else 0.
struct DenseTruncation {
    std::vector<index_t> atoms; // row/column -> atom id
    std::vector<std::vector<double>> matrix;
};

DenseTruncation dense_truncation(const AtomicSystem& system, IndexRange window,
                                 size_t cap = 4096);

using Matrix = std::vector<std::vector<double>>;

Matrix matrix_power(const Matrix& m, index_t n);

// Largest singular value by power iteration on A^T A; deterministic start.
double largest_singular_value(const Matrix& m, int iterations = 3000);

// ||T^n|| from the matrix power, independent of any closed form.
// p=1: max column sum; Sup: max row sum; p=2: max entry for weighted-
// permutation powers, cross-checked against the singular-value iteration.
double brute_norm(const DenseTruncation& trunc, index_t n, const Space& space);

index_t brute_count(const std::function<bool(index_t)>& predicate, index_t N);

} // namespace opchaos

#endif
