// Quaternions in two flavours: floating-point Hamilton quaternions, and
// exact elements of a quaternion algebra (delta, gamma / k) over a real
// quadratic field.  The exact algebra carries its structure constants in
// a QuaternionAlgebra context; elements themselves are plain coordinate
// 4-tuples in the basis 1, i, j, ij.

#pragma once

#include <array>
#include <complex>

#include "qsys/number_field.hpp"

namespace qsys {

struct Quaternion {
    double q0 = 0, q1 = 0, q2 = 0, q3 = 0;

    Quaternion() = default;
    Quaternion(double a, double b, double c, double d) : q0(a), q1(b), q2(c), q3(d) {}
    explicit Quaternion(double a) : q0(a) {}
    explicit Quaternion(std::complex<double> z) : q0(z.real()), q1(z.imag()) {}

    Quaternion operator+(const Quaternion& o) const { return {q0 + o.q0, q1 + o.q1, q2 + o.q2, q3 + o.q3}; }
    Quaternion operator-(const Quaternion& o) const { return {q0 - o.q0, q1 - o.q1, q2 - o.q2, q3 - o.q3}; }
    Quaternion operator-() const { return {-q0, -q1, -q2, -q3}; }
    Quaternion operator*(const Quaternion& o) const {
        return {q0 * o.q0 - q1 * o.q1 - q2 * o.q2 - q3 * o.q3,
                q0 * o.q1 + q1 * o.q0 + q2 * o.q3 - q3 * o.q2,
                q0 * o.q2 + q2 * o.q0 - q1 * o.q3 + q3 * o.q1,
                q0 * o.q3 + q3 * o.q0 + q1 * o.q2 - q2 * o.q1};
    }
    Quaternion operator*(double s) const { return {q0 * s, q1 * s, q2 * s, q3 * s}; }
};

inline Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }
inline double re(const Quaternion& q) { return q.q0; }
inline Quaternion im(const Quaternion& q) { return {0, q.q1, q.q2, q.q3}; }
inline double squared_norm(const Quaternion& q) {
    return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}
double abs(const Quaternion& q);
Quaternion inverse(const Quaternion& q);
double max_abs_coord(const Quaternion& q);

// Complex-pair decomposition q = a + j b with a = q0 + q1 i, b = q2 - q3 i.
// This ordering makes the 2x2 complex image of j equal [[0,-1],[1,0]].
inline std::complex<double> complex_first(const Quaternion& q) { return {q.q0, q.q1}; }
inline std::complex<double> complex_second(const Quaternion& q) { return {q.q2, -q.q3}; }
inline Quaternion from_complex_pair(std::complex<double> a, std::complex<double> b) {
    return {a.real(), a.imag(), b.real(), -b.imag()};
}

struct SimilarityWitness {
    std::complex<double> c;  // Re(q) + |Im(q)| i
    Quaternion r;            // invertible with r c r^-1 = q
};

// Every quaternion is conjugate to a complex number with the same real
// part and the same norm.  The generic conjugator Im(q) + |Im(q)| i
// degenerates when Im(q) is a nonpositive multiple of i; there j works,
// and for real q the identity does.
SimilarityWitness similar_to_complex(const Quaternion& q, double degenerate_tol = 1e-8);

struct ExactQuaternion {
    FieldElement x0, x1, x2, x3;

    ExactQuaternion() = default;
    ExactQuaternion(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
        : x0(std::move(a)), x1(std::move(b)), x2(std::move(c)), x3(std::move(d)) {}
    static ExactQuaternion scalar(FieldElement a) { return {std::move(a), {}, {}, {}}; }

    bool is_zero() const { return x0.is_zero() && x1.is_zero() && x2.is_zero() && x3.is_zero(); }
    bool is_integral() const {
        return x0.is_integral() && x1.is_integral() && x2.is_integral() && x3.is_integral();
    }

    ExactQuaternion operator+(const ExactQuaternion& o) const { return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    ExactQuaternion operator-(const ExactQuaternion& o) const { return {x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    ExactQuaternion operator-() const { return {-x0, -x1, -x2, -x3}; }
    bool operator==(const ExactQuaternion& o) const {
        return x0 == o.x0 && x1 == o.x1 && x2 == o.x2 && x3 == o.x3;
    }
};

inline ExactQuaternion conj(const ExactQuaternion& q) { return {q.x0, -q.x1, -q.x2, -q.x3}; }
inline const FieldElement& re(const ExactQuaternion& q) { return q.x0; }

// Structure constants of D = (delta, gamma / k): i^2 = delta, j^2 = gamma,
// ij = -ji.  Requires delta, gamma nonzero and integral.  Totally negative
// constants make both real-place completions division algebras; that is
// checked by `totally_definite` and demanded by the admissibility layer,
// while norm-form computations remain available for any signs.
class QuaternionAlgebra {
public:
    QuaternionAlgebra(const RealQuadraticField& k, FieldElement delta, FieldElement gamma);

    // The Hamilton default (-1, -1 / k).
    static QuaternionAlgebra hamilton(const RealQuadraticField& k);

    const RealQuadraticField& field() const { return field_; }
    const FieldElement& delta() const { return delta_; }
    const FieldElement& gamma() const { return gamma_; }

    // True iff delta and gamma are negative under both real embeddings.
    bool totally_definite() const;

    ExactQuaternion mul(const ExactQuaternion& a, const ExactQuaternion& b) const;
    FieldElement reduced_norm(const ExactQuaternion& q) const;

    // Real-place embedding D -> H sending i to sqrt(-delta)*i, j to
    // sqrt(-gamma)*j.  Norm-compatible: |embed(q)|^2 = embed(rnorm(q)).
    // Throws std::domain_error when delta or gamma is not negative at
    // the requested place.
    Quaternion embed(const ExactQuaternion& q, Place place) const;

    // Coordinatewise reduction in the basis 1, i, j, ij of the standard
    // order; q lies in p^e O_D iff all four residues vanish.
    std::array<ResidueElement, 4> reduce(const ExactQuaternion& q, const ResidueRing& ring) const;

private:
    RealQuadraticField field_;
    FieldElement delta_, gamma_;
};

}  // namespace qsys
