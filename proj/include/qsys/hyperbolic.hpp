// The projective model of quaternionic hyperbolic space for the form
// h_a(x, y) = -a conj(x0) y0 + sum conj(xi) yi: points as negative lines,
// the cross-ratio distance, the isometry action, loxodromic detection
// from spectra, and translation lengths.

#pragma once

#include <optional>
#include <span>

#include "qsys/quat_matrix.hpp"

namespace qsys {

// Signals an eigenvalue pattern incompatible with an isometry that
// translates along a geodesic (wrong off-circle count or pairing).
struct SpectralStructureError : std::runtime_error {
    explicit SpectralStructureError(const std::string& what) : std::runtime_error(what) {}
};

Quaternion herm(std::span<const Quaternion> z, std::span<const Quaternion> w, double form_a);

// A point of hyperbolic space: a vector with h_a(rep, rep) < 0, up to
// right scalar multiples.  Construction rejects nonnegative vectors.
class ProjectivePoint {
public:
    ProjectivePoint(std::vector<Quaternion> rep, double form_a);

    static ProjectivePoint basepoint(std::size_t n, double form_a);

    const std::vector<Quaternion>& rep() const { return rep_; }
    double form_a() const { return form_a_; }

    // The same point with the representative multiplied by lambda != 0.
    ProjectivePoint rescaled(const Quaternion& lambda) const;

private:
    std::vector<Quaternion> rep_;
    double form_a_;
};

// Distance from cosh^2(rho/2) = h(z,w) h(w,z) / (h(z,z) h(w,w)).  Throws
// std::domain_error when the cross-ratio falls below 1 - 1e-9 (points
// outside the model or inconsistent forms).
double distance(const ProjectivePoint& z, const ProjectivePoint& w);

struct Isometry {
    QuatMatrix mat;
    double form_a = 1.0;
    std::optional<ExactQuatMatrix> exact_source;

    std::size_t dim_n() const { return mat.size() - 1; }
};

ProjectivePoint apply(const Isometry& iso, const ProjectivePoint& z);

struct SpectralClass {
    bool loxodromic = false;
    Complex t;  // the off-circle eigenvalue with |t| > 1, when loxodromic
};

// Spectral classification: loxodromic iff some eigenvalue leaves the unit
// circle by more than tol; then the four off-circle eigenvalues must form
// {t, conj t, 1/t, 1/conj t} (a real t is its own conjugate and shows up
// with multiplicity two).  Anything else raises SpectralStructureError.
SpectralClass classify(const Isometry& iso, double tol = 1e-6);

// 2 ln |t| for a loxodromic isometry; throws std::domain_error on unit
// spectrum input.
double translation_length(const Isometry& iso, double tol = 1e-6);

// Trace bound for the translation length: 2 ln(|Re tr| / (n+1)) when the
// trace clears n+1, otherwise -infinity.  Never exceeds the translation
// length of a loxodromic isometry (up to roundoff).
double trace_length_bound(const Isometry& iso);

}  // namespace qsys
