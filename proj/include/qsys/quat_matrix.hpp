// Square matrices over quaternions, floating and exact, with conjugate
// transpose, hermitian/unitary/form predicates, the complex 2m x 2m
// image of a quaternionic matrix, right eigenvalues and real trace.

#pragma once

#include <optional>
#include <vector>

#include "qsys/eigen.hpp"
#include "qsys/quaternion.hpp"

namespace qsys {

class QuatMatrix {
public:
    QuatMatrix() = default;
    explicit QuatMatrix(std::size_t m) : m_(m), e_(m * m) {}

    static QuatMatrix identity(std::size_t m);

    std::size_t size() const { return m_; }
    Quaternion& operator()(std::size_t i, std::size_t j) { return e_[i * m_ + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }

    QuatMatrix operator*(const QuatMatrix& o) const;
    QuatMatrix operator+(const QuatMatrix& o) const;
    QuatMatrix operator-(const QuatMatrix& o) const;

private:
    std::size_t m_ = 0;
    std::vector<Quaternion> e_;
};

QuatMatrix star(const QuatMatrix& a);
double real_trace(const QuatMatrix& a);
double max_abs_entry(const QuatMatrix& a);

// The ring embedding of m x m quaternionic matrices into 2m x 2m complex
// matrices, via A = A1 + j A2 with (A1)_st = q0 + q1 i, (A2)_st = q2 - q3 i:
//
//     [ A1   -conj(A2) ]
//     [ A2    conj(A1) ]
ComplexMatrix complexify(const QuatMatrix& a);

// Right eigenvalues of A (spectrum of its complex image), canonically
// sorted; 2m values closed under complex conjugation up to roundoff.
std::vector<Complex> right_eigenvalues(const QuatMatrix& a, const EigenOptions& opts = {});

bool is_hermitian(const QuatMatrix& a, double tol = 1e-12);
bool is_unitary(const QuatMatrix& a, double tol = 1e-12);

// A* diag(-a, 1, ..., 1) A = diag(-a, 1, ..., 1) within tol (infinity norm).
bool preserves_form(const QuatMatrix& a, double form_a, double tol = 1e-9);

// Residual |A v - v t| of the right-eigenvector equation for the
// eigenvalue t, using an eigenvector recovered from the complex image.
double right_eigen_residual(const QuatMatrix& a, Complex t);

class ExactQuatMatrix {
public:
    ExactQuatMatrix() = default;
    explicit ExactQuatMatrix(std::size_t m) : m_(m), e_(m * m) {}

    static ExactQuatMatrix identity(std::size_t m);

    std::size_t size() const { return m_; }
    ExactQuaternion& operator()(std::size_t i, std::size_t j) { return e_[i * m_ + j]; }
    const ExactQuaternion& operator()(std::size_t i, std::size_t j) const { return e_[i * m_ + j]; }

    bool operator==(const ExactQuatMatrix& o) const { return m_ == o.m_ && e_ == o.e_; }
    bool is_integral() const;

    ExactQuatMatrix operator+(const ExactQuatMatrix& o) const;
    ExactQuatMatrix operator-(const ExactQuatMatrix& o) const;

private:
    std::size_t m_ = 0;
    std::vector<ExactQuaternion> e_;
};

ExactQuatMatrix star(const ExactQuatMatrix& a);
FieldElement real_trace(const ExactQuatMatrix& a);
ExactQuatMatrix mul(const ExactQuatMatrix& a, const ExactQuatMatrix& b, const QuaternionAlgebra& alg);
ExactQuatMatrix pow(const ExactQuatMatrix& a, unsigned long k, const QuaternionAlgebra& alg);
QuatMatrix embed(const ExactQuatMatrix& a, const QuaternionAlgebra& alg, Place place);

bool is_hermitian(const ExactQuatMatrix& a);

// Exact test of A* diag(-a, 1, ..., 1) A = diag(-a, 1, ..., 1).
bool preserves_form(const ExactQuatMatrix& a, const FieldElement& form_a, const QuaternionAlgebra& alg);

}  // namespace qsys
