#include "qsys/quat_matrix.hpp"

#include <cmath>

namespace qsys {

QuatMatrix QuatMatrix::identity(std::size_t m) {
    QuatMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) a(i, i) = Quaternion(1);
    return a;
}

QuatMatrix QuatMatrix::operator*(const QuatMatrix& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuatMatrix: size mismatch");
    QuatMatrix out(m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < m_; ++j) {
            Quaternion s;
            for (std::size_t k = 0; k < m_; ++k) s = s + (*this)(i, k) * o(k, j);
            out(i, j) = s;
        }
    return out;
}

QuatMatrix QuatMatrix::operator+(const QuatMatrix& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuatMatrix: size mismatch");
    QuatMatrix out(m_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
    return out;
}

QuatMatrix QuatMatrix::operator-(const QuatMatrix& o) const {
    if (m_ != o.m_) throw std::invalid_argument("QuatMatrix: size mismatch");
    QuatMatrix out(m_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
    return out;
}

QuatMatrix star(const QuatMatrix& a) {
    QuatMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out(j, i) = conj(a(i, j));
    return out;
}

double real_trace(const QuatMatrix& a) {
    double t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a(i, i).q0;
    return t;
}

double max_abs_entry(const QuatMatrix& a) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, max_abs_coord(a(i, j)));
    return m;
}

ComplexMatrix complexify(const QuatMatrix& a) {
    const std::size_t m = a.size();
    ComplexMatrix out(2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Complex a1 = complex_first(a(i, j));
            Complex a2 = complex_second(a(i, j));
            out(i, j) = a1;
            out(i, j + m) = -std::conj(a2);
            out(i + m, j) = a2;
            out(i + m, j + m) = std::conj(a1);
        }
    return out;
}

std::vector<Complex> right_eigenvalues(const QuatMatrix& a, const EigenOptions& opts) {
    return eigenvalues(complexify(a), opts);
}

bool is_hermitian(const QuatMatrix& a, double tol) {
    QuatMatrix d = star(a) - a;
    return max_abs_entry(d) <= tol;
}

bool is_unitary(const QuatMatrix& a, double tol) {
    QuatMatrix d = star(a) * a - QuatMatrix::identity(a.size());
    return max_abs_entry(d) <= tol;
}

namespace {

QuatMatrix apply_form(const QuatMatrix& a, double form_a) {
    // diag(-a, 1, ..., 1) * A
    QuatMatrix out = a;
    for (std::size_t j = 0; j < a.size(); ++j) out(0, j) = out(0, j) * (-form_a);
    return out;
}

}  // namespace

bool preserves_form(const QuatMatrix& a, double form_a, double tol) {
    QuatMatrix lhs = star(a) * apply_form(a, form_a);
    QuatMatrix rhs = apply_form(QuatMatrix::identity(a.size()), form_a);
    return max_abs_entry(lhs - rhs) <= tol;
}

double right_eigen_residual(const QuatMatrix& a, Complex t) {
    const std::size_t m = a.size();
    ComplexMatrix f = complexify(a);
    std::vector<Complex> z = inverse_iteration_eigenvector(f, t);
    // complex eigenvector (z_top; z_bot) of the image corresponds to the
    // quaternionic vector v = z_top + j z_bot
    std::vector<Quaternion> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = from_complex_pair(z[i], z[i + m]);
    double worst = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Quaternion s;
        for (std::size_t k = 0; k < m; ++k) s = s + a(i, k) * v[k];
        Quaternion expect = v[i] * Quaternion(t);
        worst = std::max(worst, max_abs_coord(s - expect));
    }
    return worst;
}

ExactQuatMatrix ExactQuatMatrix::identity(std::size_t m) {
    ExactQuatMatrix a(m);
    for (std::size_t i = 0; i < m; ++i) a(i, i) = ExactQuaternion::scalar(FieldElement::from_rational(1));
    return a;
}

bool ExactQuatMatrix::is_integral() const {
    for (const auto& q : e_)
        if (!q.is_integral()) return false;
    return true;
}

ExactQuatMatrix ExactQuatMatrix::operator+(const ExactQuatMatrix& o) const {
    if (m_ != o.m_) throw std::invalid_argument("ExactQuatMatrix: size mismatch");
    ExactQuatMatrix out(m_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + o.e_[i];
    return out;
}

ExactQuatMatrix ExactQuatMatrix::operator-(const ExactQuatMatrix& o) const {
    if (m_ != o.m_) throw std::invalid_argument("ExactQuatMatrix: size mismatch");
    ExactQuatMatrix out(m_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
    return out;
}

ExactQuatMatrix star(const ExactQuatMatrix& a) {
    ExactQuatMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out(j, i) = conj(a(i, j));
    return out;
}

FieldElement real_trace(const ExactQuatMatrix& a) {
    FieldElement t;
    for (std::size_t i = 0; i < a.size(); ++i) t = t + a(i, i).x0;
    return t;
}

ExactQuatMatrix mul(const ExactQuatMatrix& a, const ExactQuatMatrix& b, const QuaternionAlgebra& alg) {
    if (a.size() != b.size()) throw std::invalid_argument("ExactQuatMatrix: size mismatch");
    ExactQuatMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            ExactQuaternion s;
            for (std::size_t k = 0; k < a.size(); ++k) s = s + alg.mul(a(i, k), b(k, j));
            out(i, j) = s;
        }
    return out;
}

ExactQuatMatrix pow(const ExactQuatMatrix& a, unsigned long k, const QuaternionAlgebra& alg) {
    ExactQuatMatrix acc = ExactQuatMatrix::identity(a.size());
    ExactQuatMatrix base = a;
    while (k > 0) {
        if (k & 1) acc = mul(acc, base, alg);
        base = mul(base, base, alg);
        k >>= 1;
    }
    return acc;
}

QuatMatrix embed(const ExactQuatMatrix& a, const QuaternionAlgebra& alg, Place place) {
    QuatMatrix out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = alg.embed(a(i, j), place);
    return out;
}

bool is_hermitian(const ExactQuatMatrix& a) {
    return star(a) == a;
}

bool preserves_form(const ExactQuatMatrix& a, const FieldElement& form_a, const QuaternionAlgebra& alg) {
    const std::size_t m = a.size();
    ExactQuatMatrix ja = a;  // diag(-a, 1, ..., 1) * A scales row 0 by -a
    for (std::size_t j = 0; j < m; ++j)
        ja(0, j) = alg.mul(ExactQuaternion::scalar(-form_a), a(0, j));
    ExactQuatMatrix lhs = mul(star(a), ja, alg);
    ExactQuatMatrix rhs(m);
    rhs(0, 0) = ExactQuaternion::scalar(-form_a);
    for (std::size_t i = 1; i < m; ++i) rhs(i, i) = ExactQuaternion::scalar(FieldElement::from_rational(1));
    return lhs == rhs;
}

}  // namespace qsys
