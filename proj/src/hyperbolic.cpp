#include "qsys/hyperbolic.hpp"

#include <cmath>
#include <limits>

namespace qsys {

Quaternion herm(std::span<const Quaternion> z, std::span<const Quaternion> w, double form_a) {
    if (z.size() != w.size() || z.empty())
        throw std::invalid_argument("herm: vectors must have equal nonzero length");
    Quaternion s = conj(z[0]) * w[0] * (-form_a);
    for (std::size_t i = 1; i < z.size(); ++i) s = s + conj(z[i]) * w[i];
    return s;
}

ProjectivePoint::ProjectivePoint(std::vector<Quaternion> rep, double form_a)
    : rep_(std::move(rep)), form_a_(form_a) {
    if (rep_.empty()) throw std::invalid_argument("ProjectivePoint: empty representative");
    double h = re(herm(rep_, rep_, form_a_));
    if (!(h < 0))
        throw std::domain_error("ProjectivePoint: representative has h(z,z) >= 0");
}

ProjectivePoint ProjectivePoint::basepoint(std::size_t n, double form_a) {
    std::vector<Quaternion> e0(n + 1);
    e0[0] = Quaternion(1);
    return ProjectivePoint(std::move(e0), form_a);
}

ProjectivePoint ProjectivePoint::rescaled(const Quaternion& lambda) const {
    if (abs(lambda) == 0) throw std::invalid_argument("ProjectivePoint: zero rescaling");
    std::vector<Quaternion> out = rep_;
    for (auto& q : out) q = q * lambda;
    return ProjectivePoint(std::move(out), form_a_);
}

double distance(const ProjectivePoint& z, const ProjectivePoint& w) {
    if (z.form_a() != w.form_a())
        throw std::invalid_argument("distance: points carry different forms");
    double num = squared_norm(herm(z.rep(), w.rep(), z.form_a()));
    double den = re(herm(z.rep(), z.rep(), z.form_a())) * re(herm(w.rep(), w.rep(), w.form_a()));
    double ratio = num / den;
    if (ratio < 1.0 - 1e-9)
        throw std::domain_error("distance: cross-ratio below 1, input inconsistent with the model");
    if (ratio < 1.0) ratio = 1.0;
    return 2.0 * std::acosh(std::sqrt(ratio));
}

ProjectivePoint apply(const Isometry& iso, const ProjectivePoint& z) {
    const std::size_t m = iso.mat.size();
    if (z.rep().size() != m) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Quaternion> out(m);
    for (std::size_t i = 0; i < m; ++i) {
        Quaternion s;
        for (std::size_t k = 0; k < m; ++k) s = s + iso.mat(i, k) * z.rep()[k];
        out[i] = s;
    }
    double h = re(herm(out, out, iso.form_a));
    if (!(h < 0))
        throw std::domain_error("apply: image left the model; matrix is not form-preserving");
    return ProjectivePoint(std::move(out), iso.form_a);
}

SpectralClass classify(const Isometry& iso, double tol) {
    std::vector<Complex> ev = right_eigenvalues(iso.mat);
    std::vector<Complex> off;
    for (const Complex& t : ev)
        if (std::fabs(std::abs(t) - 1.0) > tol) off.push_back(t);

    if (off.empty()) return SpectralClass{false, Complex(0)};

    if (off.size() != 4)
        throw SpectralStructureError("off-circle eigenvalue count " + std::to_string(off.size()) +
                                     ", expected 0 or 4 counted with multiplicity");
    canonical_spectral_sort(off);
    Complex t = off[0];
    if (t.imag() < 0) t = std::conj(t);
    std::vector<Complex> expected = {t, std::conj(t), 1.0 / t, 1.0 / std::conj(t)};
    if (!multisets_match(off, expected, 1e-6))
        throw SpectralStructureError("off-circle eigenvalues do not match {t, conj t, 1/t, 1/conj t}");
    return SpectralClass{true, t};
}

double translation_length(const Isometry& iso, double tol) {
    SpectralClass c = classify(iso, tol);
    if (!c.loxodromic)
        throw std::domain_error("translation_length: isometry has unit spectrum");
    return 2.0 * std::log(std::abs(c.t));
}

double trace_length_bound(const Isometry& iso) {
    double n_plus_1 = static_cast<double>(iso.mat.size());
    double tr = std::fabs(real_trace(iso.mat));
    if (tr <= n_plus_1) return -std::numeric_limits<double>::infinity();
    return 2.0 * std::log(tr / n_plus_1);
}

}  // namespace qsys
