#include "cremona/linalg.hpp"

#include <cstdint>

#include "cremona/errors.hpp"

namespace cremona {

namespace {

using ZMatrix = std::vector<std::vector<Integer>>;

// Clear denominators row by row (row scaling preserves solution sets).
ZMatrix to_integer_rows(const QMatrix& m) {
    ZMatrix z(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Integer l(1);
        for (const auto& q : m[i])
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
        z[i].reserve(m[i].size());
        for (const auto& q : m[i]) {
            Rational scaled = q * Rational(l);
            z[i].push_back(scaled.get_num());
        }
    }
    return z;
}

} // namespace

LinSystemSolution solve_exact(const QMatrix& matrix, const std::optional<QVector>& rhs) {
    const std::size_t rows = matrix.size();
    const std::size_t cols = rows == 0 ? (rhs ? 0 : 0) : matrix[0].size();
    for (const auto& r : matrix)
        if (r.size() != cols) throw Error("solve_exact: ragged matrix");
    if (rhs && rhs->size() != rows) throw Error("solve_exact: rhs dimension mismatch");

    QMatrix work = matrix;
    if (rhs)
        for (std::size_t i = 0; i < rows; ++i) work[i].push_back((*rhs)[i]);
    const std::size_t width = cols + (rhs ? 1 : 0);

    ZMatrix z = to_integer_rows(work);

    // Fraction-free forward elimination (Bareiss), pivoting on the
    // leftmost nonzero column, then the smallest row index.
    std::vector<int> pivot_cols;
    Integer prev(1);
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = prow; i < rows; ++i)
            if (z[i][col] != 0) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(z[prow], z[sel]);
        for (std::size_t i = prow + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < width; ++j) {
                Integer t = z[i][j] * z[prow][col] - z[i][col] * z[prow][j];
                if (prev != 1) {
                    if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
                        throw Error("solve_exact: inexact Bareiss division");
                    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                }
                z[i][j] = t;
            }
            z[i][col] = 0;
        }
        prev = z[prow][col];
        pivot_cols.push_back(static_cast<int>(col));
        ++prow;
    }
    const std::size_t rank = prow;

    LinSystemSolution out;
    out.rank = static_cast<int>(rank);
    out.free_dim = static_cast<int>(cols - rank);

    // Consistency for inhomogeneous systems: a zero row with nonzero rhs.
    if (rhs) {
        for (std::size_t i = rank; i < rows; ++i)
            if (z[i][cols] != 0) { out.consistent = false; break; }
    }

    // Back substitution to reduced row echelon form over Q.
    QMatrix red(rank, QVector(width, Rational(0)));
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < width; ++j)
            red[i][j] = Rational(z[i][j]);
    for (std::size_t i = rank; i-- > 0;) {
        int pc = pivot_cols[i];
        Rational lead = red[i][pc];
        for (std::size_t j = 0; j < width; ++j) red[i][j] /= lead;
        for (std::size_t k = 0; k < i; ++k) {
            Rational f = red[k][pc];
            if (f == 0) continue;
            for (std::size_t j = 0; j < width; ++j) red[k][j] -= f * red[i][j];
        }
    }

    // Canonical kernel basis: one vector per free column.
    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_cols) is_pivot[pc] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[pivot_cols[i]] = -red[i][f];
        out.basis.push_back(std::move(v));
    }

    if (rhs && out.consistent) {
        QVector x(cols, Rational(0));
        for (std::size_t i = 0; i < rank; ++i) x[pivot_cols[i]] = red[i][cols];
        out.particular = std::move(x);
    }
    return out;
}

std::pair<QMatrix, std::vector<int>> rref(QMatrix m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<int> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols && prow < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = prow; i < rows; ++i)
            if (m[i][col] != 0) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(m[prow], m[sel]);
        Rational lead = m[prow][col];
        for (std::size_t j = col; j < cols; ++j) m[prow][j] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == prow || m[i][col] == 0) continue;
            Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[prow][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++prow;
    }
    return {std::move(m), std::move(pivots)};
}

Rational det(QMatrix m) {
    const std::size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n) throw Error("det: non-square matrix");
    Rational sign(1), scale(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = n;
        for (std::size_t i = col; i < n; ++i)
            if (m[i][col] != 0) { sel = i; break; }
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(m[sel], m[col]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    Rational d = sign;
    for (std::size_t i = 0; i < n; ++i) d *= m[i][i];
    return d * scale;
}

namespace {

using u64 = std::uint64_t;

u64 mod_pow(u64 base, u64 exp, u64 p) {
    unsigned __int128 acc = 1, b = base % p;
    while (exp) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<u64>(acc);
}

u64 mod_inv(u64 a, u64 p) { return mod_pow(a % p, p - 2, p); }

u64 rational_mod(const Rational& q, u64 p) {
    Integer num = q.get_num(), den = q.get_den();
    u64 n = mpz_fdiv_ui(num.get_mpz_t(), p);
    u64 d = mpz_fdiv_ui(den.get_mpz_t(), p);
    if (d == 0) throw Error("rational_mod: denominator divisible by the prime");
    return static_cast<u64>(static_cast<unsigned __int128>(n) * mod_inv(d, p) % p);
}

// RREF kernel over Z/p. Returns pivot columns and the canonical kernel
// basis (one vector per free column).
std::pair<std::vector<int>, std::vector<std::vector<u64>>> kernel_modp(
    std::vector<std::vector<u64>> m, std::size_t cols, u64 p) {
    std::vector<int> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < cols && prow < m.size(); ++col) {
        std::size_t sel = m.size();
        for (std::size_t i = prow; i < m.size(); ++i)
            if (m[i][col] != 0) { sel = i; break; }
        if (sel == m.size()) continue;
        std::swap(m[prow], m[sel]);
        u64 inv = mod_inv(m[prow][col], p);
        for (std::size_t j = col; j < cols; ++j)
            m[prow][j] = static_cast<u64>(static_cast<unsigned __int128>(m[prow][j]) * inv % p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == prow || m[i][col] == 0) continue;
            u64 f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                unsigned __int128 t = static_cast<unsigned __int128>(f) * m[prow][j] % p;
                m[i][j] = (m[i][j] + p - static_cast<u64>(t)) % p;
            }
        }
        pivots.push_back(static_cast<int>(col));
        ++prow;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivots) is_pivot[pc] = true;
    std::vector<std::vector<u64>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = (p - m[i][f]) % p;
        basis.push_back(std::move(v));
    }
    return {pivots, basis};
}

// Rational reconstruction of v mod M with |num|, |den| <= sqrt(M/2).
std::optional<Rational> rational_reconstruct(const Integer& v, const Integer& M) {
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(M / 2).get_mpz_t());
    Integer r0 = M, r1 = v, t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1; r1 = r2; t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Integer num = r1, den = t1;
    if (den < 0) { den = -den; num = -num; }
    if (cmp(den, bound) > 0) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return std::nullopt;
    return make_rational(num, den);
}

} // namespace

QMatrix kernel_reconstructed(const QMatrix& matrix) {
    const std::size_t rows = matrix.size();
    const std::size_t cols = rows ? matrix[0].size() : 0;
    if (rows == 0 || cols == 0) return solve_exact(matrix).basis;

    static const u64 primes[] = {
        2305843009213693951ULL,  // 2^61 - 1
        4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL,
        4611686018427387761ULL, 4611686018427387739ULL, 4611686018427387733ULL,
        4611686018427387719ULL, 4611686018427387641ULL, 4611686018427387619ULL,
        4611686018427387593ULL, 4611686018427387581ULL, 4611686018427387553ULL,
        4611686018427387499ULL, 4611686018427387479ULL, 4611686018427387429ULL,
    };

    std::vector<int> ref_pivots;
    std::size_t ref_dim = 0;
    // Accumulated CRT residues per kernel vector entry.
    std::vector<std::vector<Integer>> acc;
    Integer modulus(1);
    bool have = false;

    for (u64 p : primes) {
        std::vector<std::vector<u64>> mp(rows, std::vector<u64>(cols));
        bool bad = false;
        for (std::size_t i = 0; i < rows && !bad; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                try {
                    mp[i][j] = rational_mod(matrix[i][j], p);
                } catch (const Error&) {
                    bad = true;
                    break;
                }
            }
        if (bad) continue;
        auto [pivots, basis] = kernel_modp(std::move(mp), cols, p);
        if (!have) {
            ref_pivots = pivots;
            ref_dim = basis.size();
            acc.assign(basis.size(), std::vector<Integer>(cols, Integer(0)));
            for (std::size_t k = 0; k < basis.size(); ++k)
                for (std::size_t j = 0; j < cols; ++j) acc[k][j] = Integer(basis[k][j]);
            modulus = Integer(static_cast<unsigned long>(p));
            have = true;
        } else {
            if (pivots != ref_pivots || basis.size() != ref_dim) continue;  // unlucky prime
            Integer pz(static_cast<unsigned long>(p));
            Integer minv;
            if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), pz.get_mpz_t()) == 0)
                continue;
            Integer new_mod = modulus * pz;
            for (std::size_t k = 0; k < ref_dim; ++k)
                for (std::size_t j = 0; j < cols; ++j) {
                    Integer rp(static_cast<unsigned long>(basis[k][j]));
                    // x = acc + modulus * ((rp - acc) * minv mod p)
                    Integer diff = (rp - acc[k][j]) % pz;
                    if (diff < 0) diff += pz;
                    Integer t = diff * minv % pz;
                    acc[k][j] = acc[k][j] + modulus * t;
                }
            modulus = new_mod;
        }
        if (!have) continue;

        // Try to reconstruct and verify exactly.
        QMatrix candidate(ref_dim, QVector(cols, Rational(0)));
        bool recon_ok = true;
        for (std::size_t k = 0; k < ref_dim && recon_ok; ++k)
            for (std::size_t j = 0; j < cols; ++j) {
                auto r = rational_reconstruct(acc[k][j] % modulus, modulus);
                if (!r) { recon_ok = false; break; }
                candidate[k][j] = *r;
            }
        if (!recon_ok) continue;
        bool annihilates = true;
        for (std::size_t k = 0; k < ref_dim && annihilates; ++k)
            for (std::size_t i = 0; i < rows; ++i) {
                Rational dot(0);
                for (std::size_t j = 0; j < cols; ++j)
                    if (candidate[k][j] != 0) dot += matrix[i][j] * candidate[k][j];
                if (dot != 0) { annihilates = false; break; }
            }
        if (annihilates) return candidate;
    }
    // Reconstruction did not stabilize: exact fallback.
    return solve_exact(matrix).basis;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    const std::size_t n = m.size();
    QMatrix aug(n, QVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw Error("inverse: non-square matrix");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto [red, pivots] = rref(std::move(aug));
    if (pivots.size() != n || pivots.back() != static_cast<int>(n) - 1)
        return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        if (pivots[i] != static_cast<int>(i)) return std::nullopt;
    QMatrix inv(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = red[i][n + j];
    return inv;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
    QVector out(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != v.size()) throw Error("mat_vec: dimension mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    }
    return out;
}

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    QMatrix out(n, QVector(m, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw Error("mat_mul: dimension mismatch");
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
    }
    return out;
}

} // namespace cremona
