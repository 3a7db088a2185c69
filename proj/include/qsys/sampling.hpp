// Deterministic random generators used by the self-test suites, the unit
// tests and the acceptance harness: random quaternions and matrices,
// unitary matrices via quaternionic Gram-Schmidt, and moderately
// conditioned invertible matrices with an explicit inverse.

#pragma once

#include <random>

#include "qsys/quat_matrix.hpp"

namespace qsys::sampling {

inline Quaternion random_quaternion(std::mt19937_64& rng, double bound) {
    std::uniform_real_distribution<double> c(-bound, bound);
    return {c(rng), c(rng), c(rng), c(rng)};
}

inline QuatMatrix random_matrix(std::mt19937_64& rng, std::size_t m, double bound) {
    QuatMatrix a(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = random_quaternion(rng, bound);
    return a;
}

// Hermitian inner product of columns i, j with respect to the standard
// positive form (right-module convention).
inline Quaternion column_dot(const QuatMatrix& a, std::size_t i, std::size_t j) {
    Quaternion s;
    for (std::size_t r = 0; r < a.size(); ++r) s = s + conj(a(r, i)) * a(r, j);
    return s;
}

// Unitary matrix built by Gram-Schmidt on a random matrix; coefficients
// multiply columns from the right.  One re-orthogonalization pass keeps
// the result unitary to near machine precision.
inline QuatMatrix random_unitary(std::mt19937_64& rng, std::size_t m) {
    while (true) {
        QuatMatrix a = random_matrix(rng, m, 1.0);
        bool degenerate = false;
        for (int pass = 0; pass < 2 && !degenerate; ++pass) {
            for (std::size_t j = 0; j < m && !degenerate; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    Quaternion coef = column_dot(a, i, j);
                    for (std::size_t r = 0; r < m; ++r) a(r, j) = a(r, j) - a(r, i) * coef;
                }
                double nrm = std::sqrt(re(column_dot(a, j, j)));
                if (nrm < 1e-6) {
                    degenerate = true;
                    break;
                }
                for (std::size_t r = 0; r < m; ++r) a(r, j) = a(r, j) * (1.0 / nrm);
            }
        }
        if (!degenerate) return a;
    }
}

struct InvertiblePair {
    QuatMatrix p;
    QuatMatrix p_inv;
};

// P = U diag(s) V with unitary U, V and scales in [1/2, 2]; the inverse
// comes from the factorization, so the pair is consistent to roundoff.
inline InvertiblePair random_invertible(std::mt19937_64& rng, std::size_t m) {
    QuatMatrix u = random_unitary(rng, m);
    QuatMatrix v = random_unitary(rng, m);
    std::uniform_real_distribution<double> sc(0.5, 2.0);
    std::vector<double> s(m);
    for (auto& x : s) x = sc(rng);

    QuatMatrix ud = u;
    QuatMatrix udi = star(u);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            ud(i, j) = ud(i, j) * s[j];
            udi(i, j) = udi(i, j) * (1.0 / s[i]);
        }
    return {ud * v, star(v) * udi};
}

}  // namespace qsys::sampling
