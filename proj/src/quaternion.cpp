#include "qsys/quaternion.hpp"

#include <cmath>

namespace qsys {

double abs(const Quaternion& q) {
    return std::sqrt(squared_norm(q));
}

Quaternion inverse(const Quaternion& q) {
    double n = squared_norm(q);
    if (n == 0) throw std::domain_error("Quaternion inverse of zero");
    return {q.q0 / n, -q.q1 / n, -q.q2 / n, -q.q3 / n};
}

double max_abs_coord(const Quaternion& q) {
    return std::max(std::max(std::fabs(q.q0), std::fabs(q.q1)),
                    std::max(std::fabs(q.q2), std::fabs(q.q3)));
}

SimilarityWitness similar_to_complex(const Quaternion& q, double degenerate_tol) {
    double im_norm = std::sqrt(q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3);
    std::complex<double> c(q.q0, im_norm);
    Quaternion r(0, q.q1 + im_norm, q.q2, q.q3);
    if (abs(r) < degenerate_tol) {
        if (im_norm < degenerate_tol)
            r = Quaternion(1);          // q is (numerically) real
        else
            r = Quaternion(0, 0, 1, 0); // Im(q) = -|Im(q)| i; j conjugates c to its complex conjugate
    }
    return {c, r};
}

QuaternionAlgebra::QuaternionAlgebra(const RealQuadraticField& k, FieldElement delta, FieldElement gamma)
    : field_(k), delta_(std::move(delta)), gamma_(std::move(gamma)) {
    for (const auto* s : {&delta_, &gamma_}) {
        if (s->is_zero() || !s->is_integral())
            throw std::invalid_argument("QuaternionAlgebra: structure constants must be nonzero integral");
        if (s->d() != 0 && s->d() != k.d())
            throw std::invalid_argument("QuaternionAlgebra: structure constant from a different field");
    }
}

bool QuaternionAlgebra::totally_definite() const {
    return delta_.sign_at(Place::principal) < 0 && delta_.sign_at(Place::conjugate) < 0 &&
           gamma_.sign_at(Place::principal) < 0 && gamma_.sign_at(Place::conjugate) < 0;
}

QuaternionAlgebra QuaternionAlgebra::hamilton(const RealQuadraticField& k) {
    return QuaternionAlgebra(k, FieldElement(k, -1, 0), FieldElement(k, -1, 0));
}

ExactQuaternion QuaternionAlgebra::mul(const ExactQuaternion& a, const ExactQuaternion& b) const {
    const FieldElement& dl = delta_;
    const FieldElement& gm = gamma_;
    FieldElement dg = dl * gm;
    return {a.x0 * b.x0 + dl * (a.x1 * b.x1) + gm * (a.x2 * b.x2) - dg * (a.x3 * b.x3),
            a.x0 * b.x1 + a.x1 * b.x0 - gm * (a.x2 * b.x3) + gm * (a.x3 * b.x2),
            a.x0 * b.x2 + a.x2 * b.x0 + dl * (a.x1 * b.x3) - dl * (a.x3 * b.x1),
            a.x0 * b.x3 + a.x3 * b.x0 + a.x1 * b.x2 - a.x2 * b.x1};
}

FieldElement QuaternionAlgebra::reduced_norm(const ExactQuaternion& q) const {
    return q.x0 * q.x0 - delta_ * (q.x1 * q.x1) - gamma_ * (q.x2 * q.x2) +
           delta_ * gamma_ * (q.x3 * q.x3);
}

Quaternion QuaternionAlgebra::embed(const ExactQuaternion& q, Place place) const {
    if (delta_.sign_at(place) >= 0 || gamma_.sign_at(place) >= 0)
        throw std::domain_error(
            "QuaternionAlgebra::embed: structure constants not negative at the requested place");
    double sd = std::sqrt(-delta_.embed(place));
    double sg = std::sqrt(-gamma_.embed(place));
    return {q.x0.embed(place), q.x1.embed(place) * sd, q.x2.embed(place) * sg,
            q.x3.embed(place) * sd * sg};
}

std::array<ResidueElement, 4> QuaternionAlgebra::reduce(const ExactQuaternion& q,
                                                        const ResidueRing& ring) const {
    return {ring.reduce(q.x0), ring.reduce(q.x1), ring.reduce(q.x2), ring.reduce(q.x3)};
}

}  // namespace qsys
