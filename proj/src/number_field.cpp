#include "qsys/number_field.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace qsys {

Integer pow_integer(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer out;
    if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("mod_inverse: element not invertible mod " + m.get_str());
    return out;
}

Integer mod_rational(const Rational& r, const Integer& m) {
    Integer num = r.get_num();
    Integer den = r.get_den();
    Integer out = num * mod_inverse(den, m);
    mpz_mod(out.get_mpz_t(), out.get_mpz_t(), m.get_mpz_t());
    return out;
}

int legendre_symbol(const Integer& a, const Integer& p) {
    Integer am;
    mpz_mod(am.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (am == 0) return 0;
    Integer exp = (p - 1) / 2;
    Integer res;
    mpz_powm(res.get_mpz_t(), am.get_mpz_t(), exp.get_mpz_t(), p.get_mpz_t());
    return res == 1 ? 1 : -1;
}

namespace {

bool is_squarefree(long d) {
    for (long f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) return false;
    return true;
}

}  // namespace

RealQuadraticField::RealQuadraticField(long d) : d_(d) {
    if (d < 2) throw std::invalid_argument("RealQuadraticField: d must be >= 2");
    if (!is_squarefree(d)) throw std::invalid_argument("RealQuadraticField: d must be squarefree");
    if (d % 4 == 1)
        throw std::invalid_argument(
            "RealQuadraticField: d = 1 mod 4 not supported (ring of integers would be larger than Z[sqrt(d)])");
    sqrt_d_ = std::sqrt(static_cast<double>(d));
}

long FieldElement::merge_d(long a, long b) {
    if (a == b) return a;
    if (a == 0) return b;
    if (b == 0) return a;
    throw std::invalid_argument("FieldElement: mixing elements of different fields");
}

FieldElement::FieldElement(Rational x, Rational y, long d) : x_(std::move(x)), y_(std::move(y)), d_(d) {
    x_.canonicalize();
    y_.canonicalize();
    if (d_ == 0 && y_ != 0) throw std::invalid_argument("FieldElement: sqrt coordinate needs a field");
}

bool FieldElement::is_integral() const {
    return x_.get_den() == 1 && y_.get_den() == 1;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return FieldElement(x_ + o.x_, y_ + o.y_, merge_d(d_, o.d_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return FieldElement(x_ - o.x_, y_ - o.y_, merge_d(d_, o.d_));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    long d = merge_d(d_, o.d_);
    return FieldElement(x_ * o.x_ + Rational(d) * y_ * o.y_, x_ * o.y_ + y_ * o.x_, d);
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

bool FieldElement::operator==(const FieldElement& o) const {
    merge_d(d_, o.d_);  // reject cross-field comparison
    return x_ == o.x_ && y_ == o.y_;
}

Rational FieldElement::norm() const {
    return x_ * x_ - Rational(d_) * y_ * y_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("FieldElement: division by zero");
    Rational n = norm();
    return FieldElement(x_ / n, -y_ / n, d_);
}

FieldElement FieldElement::pow(unsigned long k) const {
    FieldElement acc = FieldElement(1, 0, d_);
    FieldElement base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

double FieldElement::embed(Place place) const {
    double s = std::sqrt(static_cast<double>(d_));
    double yv = y_.get_d();
    return x_.get_d() + (place == Place::principal ? yv * s : -yv * s);
}

int FieldElement::sign_at(Place place) const {
    Rational y = (place == Place::principal) ? y_ : Rational(-y_);
    int sx = sgn(x_);
    int sy = sgn(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    // opposite signs: compare |x| with |y|*sqrt(d) exactly via squares
    Rational lhs = x_ * x_;
    Rational rhs = Rational(d_) * y * y;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // unreachable for d squarefree > 1, kept for safety
    return c > 0 ? sx : sy;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) {
    if (e.y() == 0) return os << e.x();
    if (e.x() != 0) os << e.x() << (sgn(e.y()) >= 0 ? "+" : "");
    if (e.y() == 1)
        os << "s" << e.d();
    else if (e.y() == -1)
        os << "-s" << e.d();
    else
        os << e.y() << "s" << e.d();
    return os;
}

int compare_with_rational(const FieldElement& e, const Rational& r) {
    return (e - FieldElement::from_rational(r)).sign_at(Place::principal);
}

Integer PrimeIdealData::residue_size() const {
    Integer q(p);
    return kind == SplitType::inert ? Integer(q * q) : q;
}

std::string PrimeIdealData::label() const {
    std::ostringstream os;
    os << "(" << p;
    switch (kind) {
        case SplitType::split: os << ", split r=" << r; break;
        case SplitType::inert: os << ", inert"; break;
        case SplitType::ramified: os << ", ramified"; break;
    }
    os << ")";
    return os.str();
}

std::vector<PrimeIdealData> classify_prime(long p, const RealQuadraticField& k) {
    if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 40) == 0)
        throw std::invalid_argument("classify_prime: not a prime: " + std::to_string(p));

    long d = k.d();
    // p = 2 is ramified for every supported d (d = 2, 3 mod 4).
    if (p == 2) return {PrimeIdealData{2, SplitType::ramified, d % 2 == 0 ? 0 : 1}};
    if (d % p == 0) return {PrimeIdealData{p, SplitType::ramified, 0}};

    if (legendre_symbol(Integer(d), Integer(p)) == 1) {
        long dm = d % p;
        for (long r = 1; r < p; ++r) {
            if ((Integer(r) * r - dm) % p == 0)
                return {PrimeIdealData{p, SplitType::split, r},
                        PrimeIdealData{p, SplitType::split, p - r}};
        }
        throw std::logic_error("classify_prime: square root mod p not found");
    }
    return {PrimeIdealData{p, SplitType::inert, 0}};
}

IdealSpec::IdealSpec(std::vector<IdealFactor> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].e < 1) throw std::invalid_argument("IdealSpec: exponents must be >= 1");
        for (std::size_t j = i + 1; j < factors_.size(); ++j)
            if (factors_[i].prime == factors_[j].prime)
                throw std::invalid_argument("IdealSpec: repeated prime factor " + factors_[i].prime.label());
    }
}

IdealSpec IdealSpec::single(PrimeIdealData prime, unsigned e) {
    return IdealSpec({IdealFactor{prime, e}});
}

Integer IdealSpec::norm() const {
    Integer n = 1;
    for (const auto& f : factors_) n *= pow_integer(f.prime.residue_size(), f.e);
    return n;
}

IdealSpec IdealSpec::power(unsigned k) const {
    if (k == 0) return IdealSpec();
    std::vector<IdealFactor> fs = factors_;
    for (auto& f : fs) f.e *= k;
    return IdealSpec(std::move(fs));
}

namespace {

// Lift r with r^2 = d (mod p) to r_e with r_e^2 = d (mod p^e); p odd.
Integer hensel_sqrt(long d, long p, long r, unsigned e) {
    Integer pe(p);
    Integer rk(r);
    for (unsigned j = 1; j < e; ++j) {
        Integer pj = pow_integer(Integer(p), j);
        Integer rem = (rk * rk - d) / pj;  // divisible by construction
        Integer t = (-rem * mod_inverse(2 * rk, Integer(p))) % p;
        if (t < 0) t += p;
        rk += t * pj;
    }
    Integer m = pow_integer(Integer(p), e);
    rk %= m;
    return rk;
}

}  // namespace

ResidueRing::ResidueRing(const RealQuadraticField& k, const PrimeIdealData& prime, unsigned e)
    : prime_(prime), e_(e), d_(k.d()) {
    if (e < 1) throw std::invalid_argument("ResidueRing: exponent must be >= 1");
    Integer p(prime.p);
    switch (prime.kind) {
        case SplitType::split:
            mod_u_ = pow_integer(p, e);
            mod_w_ = 1;
            root_ = hensel_sqrt(d_, prime.p, prime.r, e);
            break;
        case SplitType::inert:
            mod_u_ = pow_integer(p, e);
            mod_w_ = mod_u_;
            root_ = 0;
            break;
        case SplitType::ramified:
            mod_u_ = pow_integer(p, (e + 1) / 2);
            mod_w_ = pow_integer(p, e / 2);
            root_ = prime.r;
            // pi = sqrt(d) - r, pi^2 = (d - r^2) - 2r*pi
            pi_sq_u_ = Integer(d_) - Integer(prime.r) * prime.r;
            pi_sq_w_ = -2 * Integer(prime.r);
            break;
    }
}

Integer ResidueRing::size() const {
    return mod_u_ * mod_w_;
}

ResidueElement ResidueRing::make(Integer u, Integer w) const {
    mpz_mod(u.get_mpz_t(), u.get_mpz_t(), mod_u_.get_mpz_t());
    mpz_mod(w.get_mpz_t(), w.get_mpz_t(), mod_w_.get_mpz_t());
    return ResidueElement{std::move(u), std::move(w)};
}

ResidueElement ResidueRing::reduce(const FieldElement& el) const {
    if (!el.is_integral())
        throw std::domain_error("ResidueRing::reduce: element is not integral: " + el.str());
    if (el.d() != 0 && el.d() != d_)
        throw std::invalid_argument("ResidueRing::reduce: element from a different field");
    Integer x = el.x().get_num();
    Integer y = el.y().get_num();
    switch (prime_.kind) {
        case SplitType::split:
            return make(x + y * root_, 0);
        case SplitType::inert:
            return make(x, y);
        case SplitType::ramified:
            return make(x + root_ * y, y);
    }
    throw std::logic_error("unreachable");
}

ResidueElement ResidueRing::one() const {
    return make(1, 0);
}

ResidueElement ResidueRing::from_integer(const Integer& n) const {
    return make(n, 0);
}

ResidueElement ResidueRing::add(const ResidueElement& a, const ResidueElement& b) const {
    return make(a.u + b.u, a.w + b.w);
}

ResidueElement ResidueRing::sub(const ResidueElement& a, const ResidueElement& b) const {
    return make(a.u - b.u, a.w - b.w);
}

ResidueElement ResidueRing::neg(const ResidueElement& a) const {
    return make(-a.u, -a.w);
}

ResidueElement ResidueRing::mul(const ResidueElement& a, const ResidueElement& b) const {
    switch (prime_.kind) {
        case SplitType::split:
            return make(a.u * b.u, 0);
        case SplitType::inert:
            return make(a.u * b.u + Integer(d_) * a.w * b.w, a.u * b.w + a.w * b.u);
        case SplitType::ramified:
            return make(a.u * b.u + pi_sq_u_ * a.w * b.w,
                        a.u * b.w + a.w * b.u + pi_sq_w_ * a.w * b.w);
    }
    throw std::logic_error("unreachable");
}

bool ideal_contains(const IdealSpec& ideal, const FieldElement& el, const RealQuadraticField& k) {
    for (const auto& f : ideal.factors()) {
        ResidueRing ring(k, f.prime, f.e);
        if (!ring.is_zero(ring.reduce(el))) return false;
    }
    return true;
}

}  // namespace qsys
