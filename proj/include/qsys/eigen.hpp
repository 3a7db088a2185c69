// Dense complex eigenvalue machinery: balancing, unitary Hessenberg
// reduction, shifted QR iteration with deflation, plus small spectral
// utilities (canonical ordering, tolerant multiset matching, LU solve
// for residual checks).  Written for the small dense matrices this
// project produces; no external linear algebra dependency.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace qsys {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), e_(n * n) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix adjoint() const;
    Complex trace() const;
    double max_abs() const;

private:
    std::size_t n_ = 0;
    std::vector<Complex> e_;
};

struct EigenNoConvergence : std::runtime_error {
    explicit EigenNoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct EigenOptions {
    // Deflation threshold: |h(k,k-1)| <= deflation_tol * (|h(k-1,k-1)| + |h(k,k)|).
    double deflation_tol = 1e-13;
    // Total QR sweeps allowed, as a multiple of the matrix dimension.
    unsigned iterations_per_dimension = 100;
};

// All eigenvalues of a general complex matrix, in canonical spectral
// order.  Throws EigenNoConvergence if the QR iteration exhausts its cap.
std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& opts = {});

// Canonical spectral order: |t| descending, then Re descending, then Im
// descending.  Makes multiset comparisons and printed output deterministic.
void canonical_spectral_sort(std::vector<Complex>& ts);

// Greedy tolerant multiset matching: true iff `b` is a permutation of `a`
// within absolute tolerance `tol` per entry.
bool multisets_match(std::vector<Complex> a, std::vector<Complex> b, double tol);

// Solves a x = b by LU with partial pivoting; throws std::domain_error on
// (numerically) singular input.
std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b);

// An eigenvector for the (approximate) eigenvalue t, by one step of
// inverse iteration from a deterministic start vector.
std::vector<Complex> inverse_iteration_eigenvector(const ComplexMatrix& a, Complex t);

}  // namespace qsys
