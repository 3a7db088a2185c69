// Exact arithmetic in real quadratic fields k = Q(sqrt(d)): elements,
// real embeddings, prime splitting, ideals as prime-power factor lists,
// and residue rings O_k / p^e with decidable membership.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsys {

using Integer = mpz_class;
using Rational = mpq_class;

// The two real embeddings of a real quadratic field.  `principal` sends
// sqrt(d) to +sqrt(d), `conjugate` to -sqrt(d).
enum class Place { principal, conjugate };

Integer pow_integer(const Integer& base, unsigned long exp);

// Inverse of a mod m (m > 1, gcd(a, m) = 1).  Throws std::domain_error
// when the inverse does not exist.
Integer mod_inverse(const Integer& a, const Integer& m);

// Reduction of a rational a/b mod m, requires gcd(b, m) = 1.
Integer mod_rational(const Rational& r, const Integer& m);

// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
int legendre_symbol(const Integer& a, const Integer& p);

class RealQuadraticField {
public:
    // Requires d squarefree and d >= 2.  d = 1 mod 4 is rejected so that
    // the ring of integers is Z[sqrt(d)] and integrality is coordinatewise.
    explicit RealQuadraticField(long d);

    long d() const { return d_; }
    double sqrt_d() const { return sqrt_d_; }

    bool operator==(const RealQuadraticField& o) const { return d_ == o.d_; }

private:
    long d_;
    double sqrt_d_;
};

// An element x + y*sqrt(d) with exact rational coordinates.  A
// default-constructed element is the rational 0 and is compatible with
// every field; mixing elements of two different fields throws.
class FieldElement {
public:
    FieldElement() : x_(0), y_(0), d_(0) {}
    FieldElement(Rational x, Rational y, long d);
    FieldElement(const RealQuadraticField& k, Rational x, Rational y)
        : FieldElement(std::move(x), std::move(y), k.d()) {}

    static FieldElement from_rational(Rational x) { return FieldElement(std::move(x), 0, 0); }
    static FieldElement sqrt_d(const RealQuadraticField& k) { return FieldElement(k, 0, 1); }

    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    long d() const { return d_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }
    bool is_integral() const;
    bool is_one() const { return x_ == 1 && y_ == 0; }

    FieldElement operator-() const { return FieldElement(-x_, -y_, d_); }
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Galois conjugate x - y*sqrt(d).
    FieldElement galois_conjugate() const { return FieldElement(x_, -y_, d_); }

    // Field norm x^2 - d*y^2 (exact).
    Rational norm() const;

    FieldElement inverse() const;
    FieldElement pow(unsigned long k) const;

    double embed(Place place) const;

    // Exact sign (-1, 0, +1) of the real number x + y*sqrt(d) under the
    // requested embedding.
    int sign_at(Place place) const;

    std::string str() const;

private:
    friend struct FieldElementHash;
    Rational x_, y_;
    long d_;  // 0 marks a field-agnostic rational

    static long merge_d(long a, long b);
};

inline FieldElement operator*(const Rational& c, const FieldElement& e) {
    return FieldElement::from_rational(c) * e;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

// Compares x + y*sqrt(d) with an exact rational, by sign of the difference.
int compare_with_rational(const FieldElement& e, const Rational& r);

enum class SplitType { split, inert, ramified };

// One prime ideal of O_k lying above the rational prime p.  For split and
// ramified primes `r` is the residue of sqrt(d) mod p; the residue field
// has q = p elements (split/ramified) or q = p^2 (inert).
struct PrimeIdealData {
    long p = 0;
    SplitType kind = SplitType::inert;
    long r = 0;  // meaningful iff kind != inert

    Integer residue_size() const;
    std::string label() const;

    bool operator==(const PrimeIdealData& o) const {
        return p == o.p && kind == o.kind && (kind == SplitType::inert || r == o.r);
    }
};

// All primes of O_k above p: two entries for split p (residues r, p - r),
// one entry otherwise.  Throws std::invalid_argument for non-prime p.
std::vector<PrimeIdealData> classify_prime(long p, const RealQuadraticField& k);

struct IdealFactor {
    PrimeIdealData prime;
    unsigned e = 1;
};

// An ideal of O_k given by its prime-power factorization.  The empty
// factor list is the trivial ideal O_k.
class IdealSpec {
public:
    IdealSpec() = default;
    explicit IdealSpec(std::vector<IdealFactor> factors);

    static IdealSpec single(PrimeIdealData prime, unsigned e = 1);

    const std::vector<IdealFactor>& factors() const { return factors_; }
    bool is_trivial() const { return factors_.empty(); }

    Integer norm() const;

    // Ideal with every exponent multiplied by k (I^k).
    IdealSpec power(unsigned k) const;

private:
    std::vector<IdealFactor> factors_;
};

// Element of a residue ring O_k / p^e.  Interpretation of the two
// coordinates depends on the ring kind; use ResidueRing to operate.
struct ResidueElement {
    Integer u = 0;
    Integer w = 0;

    bool operator==(const ResidueElement& o) const { return u == o.u && w == o.w; }
};

// The quotient ring O_k / p^e for a single prime-power factor.
//
//   split:    Z/p^e with sqrt(d) mapped to a Hensel lift of r (w unused)
//   inert:    (Z/p^e)[sqrt(d)], coordinatewise
//   ramified: coordinates (u, w) of u + w*pi in the adapted basis with
//             uniformizer pi = sqrt(d) - r; u lives mod p^ceil(e/2) and
//             w mod p^floor(e/2)
class ResidueRing {
public:
    ResidueRing(const RealQuadraticField& k, const PrimeIdealData& prime, unsigned e);

    const PrimeIdealData& prime() const { return prime_; }
    unsigned exponent() const { return e_; }
    Integer size() const;

    // Reduction O_k -> O_k/p^e; throws std::domain_error on non-integral input.
    ResidueElement reduce(const FieldElement& el) const;

    ResidueElement zero() const { return ResidueElement{}; }
    ResidueElement one() const;
    ResidueElement from_integer(const Integer& n) const;

    ResidueElement add(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const;
    ResidueElement neg(const ResidueElement& a) const;
    ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;

    bool is_zero(const ResidueElement& a) const { return a.u == 0 && a.w == 0; }

private:
    PrimeIdealData prime_;
    unsigned e_;
    long d_;
    Integer mod_u_, mod_w_;   // coordinate moduli (mod_w_ = 1 when the w slot is unused)
    Integer root_;            // split: Hensel-lifted r; ramified: r itself
    Integer pi_sq_u_, pi_sq_w_;  // ramified: pi^2 = pi_sq_u + pi_sq_w * pi

    ResidueElement make(Integer u, Integer w) const;
};

// True iff el lies in the ideal (all factors reduce to zero).
bool ideal_contains(const IdealSpec& ideal, const FieldElement& el, const RealQuadraticField& k);

}  // namespace qsys
