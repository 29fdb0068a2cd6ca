#pragma once

#include <optional>
#include <vector>

#include "cremona/rational.hpp"

namespace cremona {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

// Result of an exact linear solve. For homogeneous systems `basis` spans
// the kernel; for inhomogeneous ones `particular` holds one solution and
// `basis` the kernel of the associated homogeneous system.
struct LinSystemSolution {
    QMatrix basis;      // echelonized, pairwise independent
    int rank = 0;
    int free_dim = 0;   // rank + free_dim = number of unknowns
    bool consistent = true;
    std::optional<QVector> particular;
};

// Exact kernel/solution basis via fraction-free (Bareiss) elimination with
// deterministic pivoting: leftmost nonzero column, then smallest row
// index. An inconsistent inhomogeneous system is reported through
// `consistent = false`, not an exception.
LinSystemSolution solve_exact(const QMatrix& matrix,
                              const std::optional<QVector>& rhs = std::nullopt);

// Reduced row echelon form over the rationals (deterministic, in place
// convention: returns the reduced matrix and pivot columns).
std::pair<QMatrix, std::vector<int>> rref(QMatrix m);

// Determinant via exact elimination.
Rational det(QMatrix m);

// Kernel basis via elimination modulo word-size primes with Chinese
// remaindering and rational reconstruction. The result is exact once it
// stabilizes; callers are expected to verify it downstream (the solver
// re-checks annihilation of the input matrix exactly before returning).
// Falls back to solve_exact when reconstruction does not stabilize.
QMatrix kernel_reconstructed(const QMatrix& matrix);

// Inverse of a square rational matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);

QVector mat_vec(const QMatrix& m, const QVector& v);
QMatrix mat_mul(const QMatrix& a, const QMatrix& b);

} // namespace cremona
