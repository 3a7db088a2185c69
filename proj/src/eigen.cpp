#include "qsys/eigen.hpp"

#include <algorithm>
#include <cmath>

namespace qsys {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
    return a;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ComplexMatrix: size mismatch");
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            Complex aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * o(k, j);
        }
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ComplexMatrix: size mismatch");
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - o.e_[i];
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto& v : e_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

// Diagonal similarity scaling with radix-2 factors (exact in floating
// point), balancing row against column 1-norms.
void balance(ComplexMatrix& a) {
    const std::size_t n = a.size();
    const double radix = 2.0, radix2 = radix * radix;
    bool converged = false;
    int guard = 0;
    while (!converged && guard++ < 100) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0, r = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0 || r == 0) continue;
            double g = r / radix, f = 1, s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c >= g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                double ginv = 1.0 / f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= ginv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
                converged = false;
            }
        }
    }
}

// Unitary (Householder) reduction to upper Hessenberg form.
void hessenberg(ComplexMatrix& a) {
    const std::size_t n = a.size();
    if (n < 3) return;
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = k + 1;
        double sigma2 = 0;
        for (std::size_t i = m; i < n; ++i) sigma2 += std::norm(a(i, k));
        if (sigma2 == 0) continue;
        double sigma = std::sqrt(sigma2);
        Complex alpha = a(m, k);
        Complex phase = (alpha == 0.0) ? Complex(1, 0) : alpha / std::abs(alpha);
        Complex beta = -phase * sigma;
        // v spans the reflector mapping column k below the diagonal to beta*e_m
        double vv = 0;
        for (std::size_t i = m; i < n; ++i) {
            v[i] = a(i, k);
            if (i == m) v[i] -= beta;
            vv += std::norm(v[i]);
        }
        if (vv == 0) continue;
        double scale = 2.0 / vv;
        // rows: A <- (I - 2 v v*/v*v) A
        for (std::size_t j = k; j < n; ++j) {
            Complex dot = 0;
            for (std::size_t i = m; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
            dot *= scale;
            for (std::size_t i = m; i < n; ++i) a(i, j) -= v[i] * dot;
        }
        // columns: A <- A (I - 2 v v*/v*v)
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0;
            for (std::size_t j = m; j < n; ++j) dot += a(i, j) * v[j];
            dot *= scale;
            for (std::size_t j = m; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
        }
        a(m, k) = beta;
        for (std::size_t i = m + 1; i < n; ++i) a(i, k) = 0.0;
    }
}

struct Givens {
    Complex g11, g12, g21, g22;
};

// Rotation with G (a, b)^T = (r, 0)^T, r >= 0.
Givens make_givens(Complex a, Complex b) {
    double r = std::sqrt(std::norm(a) + std::norm(b));
    if (r == 0) return {Complex(1), Complex(0), Complex(0), Complex(1)};
    return {std::conj(a) / r, std::conj(b) / r, -b / r, a / r};
}

// Shifted QR iteration with deflation on an upper Hessenberg matrix.
std::vector<Complex> hessenberg_qr(ComplexMatrix& h, const EigenOptions& opts) {
    const std::size_t n = h.size();
    std::vector<Complex> eig(n);
    if (n == 0) return eig;

    const double hnorm = std::max(h.max_abs(), 1e-300);
    const unsigned cap = opts.iterations_per_dimension * static_cast<unsigned>(n);
    unsigned total_its = 0;

    long en = static_cast<long>(n) - 1;
    unsigned its = 0;
    std::vector<Givens> rots(n);

    while (en >= 0) {
        // look for a negligible subdiagonal entry
        long l = 0;
        for (long k = en; k >= 1; --k) {
            double s = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
            if (s == 0) s = hnorm;
            if (std::abs(h(k, k - 1)) <= opts.deflation_tol * s) {
                h(k, k - 1) = 0;
                l = k;
                break;
            }
        }
        if (l == en) {
            eig[en] = h(en, en);
            --en;
            its = 0;
            continue;
        }
        if (total_its >= cap)
            throw EigenNoConvergence("QR iteration did not converge within " +
                                     std::to_string(cap) + " sweeps");

        // shift: Wilkinson from the trailing 2x2, exceptional every 10 sweeps
        Complex shift;
        if (its > 0 && its % 10 == 0) {
            double s = std::abs(h(en, en - 1));
            if (en - 1 > l) s += std::abs(h(en - 1, en - 2));
            shift = Complex(s, 0);
        } else {
            Complex aa = h(en - 1, en - 1), bb = h(en - 1, en);
            Complex cc = h(en, en - 1), dd = h(en, en);
            Complex half = (aa - dd) * 0.5;
            Complex disc = std::sqrt(half * half + bb * cc);
            Complex mu1 = dd + half + disc, mu2 = dd + half - disc;
            shift = (std::abs(mu1 - dd) < std::abs(mu2 - dd)) ? mu1 : mu2;
        }

        for (long i = l; i <= en; ++i) h(i, i) -= shift;
        // QR factor the active window by Givens rotations
        for (long k = l; k < en; ++k) {
            Givens g = make_givens(h(k, k), h(k + 1, k));
            rots[k] = g;
            for (long j = k; j <= en; ++j) {
                Complex t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.g11 * t1 + g.g12 * t2;
                h(k + 1, j) = g.g21 * t1 + g.g22 * t2;
            }
        }
        // multiply back in reverse order: H <- R Q + shift I
        for (long k = l; k < en; ++k) {
            const Givens& g = rots[k];
            for (long i = l; i <= std::min(k + 2, en); ++i) {
                Complex t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = t1 * std::conj(g.g11) + t2 * std::conj(g.g12);
                h(i, k + 1) = t1 * std::conj(g.g21) + t2 * std::conj(g.g22);
            }
        }
        for (long i = l; i <= en; ++i) h(i, i) += shift;

        ++its;
        ++total_its;
    }
    return eig;
}

}  // namespace

std::vector<Complex> eigenvalues(ComplexMatrix a, const EigenOptions& opts) {
    balance(a);
    hessenberg(a);
    std::vector<Complex> eig = hessenberg_qr(a, opts);
    canonical_spectral_sort(eig);
    return eig;
}

void canonical_spectral_sort(std::vector<Complex>& ts) {
    std::sort(ts.begin(), ts.end(), [](const Complex& a, const Complex& b) {
        double ma = std::abs(a), mb = std::abs(b);
        if (ma != mb) return ma > mb;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

bool multisets_match(std::vector<Complex> a, std::vector<Complex> b, double tol) {
    if (a.size() != b.size()) return false;
    canonical_spectral_sort(a);
    canonical_spectral_sort(b);
    std::vector<bool> used(b.size(), false);
    for (const Complex& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(x - b[j]) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("lu_solve: size mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0) throw std::domain_error("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
    }
    return b;
}

std::vector<Complex> inverse_iteration_eigenvector(const ComplexMatrix& a, Complex t) {
    const std::size_t n = a.size();
    // Perturb the shift slightly so the solve stays nonsingular.
    double scale = std::max(a.max_abs(), 1.0);
    Complex mu = t + Complex(scale * 1e-11, scale * 0.7e-11);
    ComplexMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mu;

    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0 + 0.1 * static_cast<double>(i), 0.25);
    for (int pass = 0; pass < 3; ++pass) {
        v = lu_solve(shifted, v);
        double nrm = 0;
        for (const auto& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm == 0) throw std::domain_error("inverse iteration collapsed");
        for (auto& z : v) z /= nrm;
    }
    return v;
}

}  // namespace qsys
