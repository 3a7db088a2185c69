#include "qsys/lattice.hpp"

#include <sstream>

namespace qsys {

AdmissibilityReport check_admissible(const GroupSpec& spec) {
    AdmissibilityReport rep;
    auto fail = [&rep](const std::string& why) {
        rep.admissible = false;
        rep.failures.push_back(why);
    };

    if (spec.n < 1) fail("rank n must be >= 1");
    if (!spec.form_a.is_integral()) fail("form coefficient a is not integral");
    if (spec.form_a.d() != 0 && spec.form_a.d() != spec.field.d())
        fail("form coefficient a lies in a different field");
    if (spec.form_a.sign_at(Place::principal) <= 0)
        fail("a must be positive at the principal place");
    if (spec.form_a.sign_at(Place::conjugate) >= 0)
        fail("sigma(a) must be negative (cocompactness needs a sign change)");
    if (!spec.algebra.totally_definite())
        fail("delta and gamma must be totally negative");
    return rep;
}

bool is_plus_minus_identity(const ExactQuatMatrix& c) {
    ExactQuatMatrix id = ExactQuatMatrix::identity(c.size());
    if (c == id) return true;
    ExactQuatMatrix neg(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        neg(i, i) = ExactQuaternion::scalar(FieldElement::from_rational(-1));
    return c == neg;
}

bool is_lattice_element(const ExactQuatMatrix& c, const GroupSpec& spec) {
    if (c.size() != spec.matrix_size()) return false;
    if (!c.is_integral()) return false;
    return preserves_form(c, spec.form_a, spec.algebra);
}

namespace {

bool congruence_factor_check(const ExactQuatMatrix& c, const ResidueRing& ring,
                             const GroupSpec& spec) {
    const std::size_t m = c.size();
    ExactQuaternion one = ExactQuaternion::scalar(FieldElement::from_rational(1));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            ExactQuaternion entry = (i == j) ? c(i, j) - one : c(i, j);
            for (const ResidueElement& comp : spec.algebra.reduce(entry, ring))
                if (!ring.is_zero(comp)) return false;
        }
    return true;
}

}  // namespace

bool is_congruence_element(const ExactQuatMatrix& c, const IdealSpec& ideal, const GroupSpec& spec) {
    if (!is_lattice_element(c, spec)) return false;
    for (const IdealFactor& f : ideal.factors()) {
        ResidueRing ring(spec.field, f.prime, f.e);
        if (!congruence_factor_check(c, ring, spec)) return false;
    }
    return true;
}

bool check_trace_congruence(const ExactQuatMatrix& c, const IdealSpec& ideal, const GroupSpec& spec) {
    if (!is_congruence_element(c, ideal, spec))
        throw std::invalid_argument("check_trace_congruence: input is not a congruence element");
    FieldElement sum_re_y;
    for (std::size_t i = 0; i < c.size(); ++i)
        sum_re_y = sum_re_y + (re(c(i, i)) - FieldElement::from_rational(1));
    FieldElement combination = FieldElement::from_rational(2) * spec.form_a * sum_re_y;
    for (const IdealFactor& f : ideal.factors()) {
        ResidueRing ring(spec.field, f.prime, 2 * f.e);
        if (!ring.is_zero(ring.reduce(combination))) return false;
    }
    return true;
}

Rational trace_lower_bound(const IdealSpec& ideal, const GroupSpec& spec) {
    if (ideal.is_trivial())
        throw std::invalid_argument("trace_lower_bound: ideal must be proper and nontrivial");
    const unsigned d = 2;  // field degree; exact arithmetic backs quadratic fields only
    Integer ni = ideal.norm();
    Rational numerator(ni * ni);
    Rational abs_norm_a = abs(spec.form_a.norm());
    Rational denominator = Rational(pow_integer(2, 2 * d - 1)) *
                           Rational(pow_integer(Integer(spec.n + 1), d - 1)) * abs_norm_a;
    return numerator / denominator - Rational(spec.n + 1);
}

Integer local_index(const Integer& q, unsigned e, unsigned n) {
    if (q < 2) throw std::invalid_argument("local_index: residue size must be >= 2");
    if (e < 1) throw std::invalid_argument("local_index: exponent must be >= 1");
    unsigned long dim = static_cast<unsigned long>(n + 1) * (2 * n + 3);
    unsigned long shift = static_cast<unsigned long>(n + 1) * (n + 2);
    Integer out = pow_integer(q, e * dim - shift);
    for (unsigned j = 1; j <= n + 1; ++j) out *= pow_integer(q, 2 * j) - 1;
    return out;
}

Integer index_upper_bound(const IdealSpec& ideal, unsigned n) {
    return pow_integer(ideal.norm(), static_cast<unsigned long>(n + 1) * (2 * n + 3));
}

const char* bad_place_reason_tag(BadPlaceReason r) {
    switch (r) {
        case BadPlaceReason::ramified_algebra: return "ramified_algebra";
        case BadPlaceReason::divides_a: return "divides_a";
        case BadPlaceReason::above_2: return "above_2";
        case BadPlaceReason::nonmaximal_guard: return "nonmaximal_guard";
    }
    return "?";
}

std::string BadPlace::reason_tags() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < reasons.size(); ++i)
        os << (i ? "," : "") << bad_place_reason_tag(reasons[i]);
    return os.str();
}

const BadPlace* BadPlaceSet::find(const PrimeIdealData& prime) const {
    for (const BadPlace& b : places_)
        if (b.prime == prime) return &b;
    return nullptr;
}

BadPlaceSet bad_places(const GroupSpec& spec, long search_bound) {
    std::vector<BadPlace> out;
    const FieldElement guard = FieldElement::from_rational(2) * spec.algebra.delta() * spec.algebra.gamma();
    for (long p = 2; p <= search_bound; ++p) {
        if (mpz_probab_prime_p(Integer(p).get_mpz_t(), 40) == 0) continue;
        for (const PrimeIdealData& v : classify_prime(p, spec.field)) {
            std::vector<BadPlaceReason> reasons;
            if (p == 2) reasons.push_back(BadPlaceReason::above_2);
            if (p != 2 &&
                hilbert_symbol_odd(spec.algebra.delta(), spec.algebra.gamma(), spec.field, v) == -1)
                reasons.push_back(BadPlaceReason::ramified_algebra);
            ResidueRing ring(spec.field, v, 1);
            if (ring.is_zero(ring.reduce(spec.form_a)))
                reasons.push_back(BadPlaceReason::divides_a);
            if (ring.is_zero(ring.reduce(guard)))
                reasons.push_back(BadPlaceReason::nonmaximal_guard);
            if (!reasons.empty()) out.push_back(BadPlace{v, std::move(reasons)});
        }
    }
    BadPlaceSet s(std::move(out));
    s.search_bound_ = search_bound;
    return s;
}

Integer congruence_index(const IdealSpec& ideal, const GroupSpec& spec, const BadPlaceSet& s) {
    Integer out = 1;
    for (const IdealFactor& f : ideal.factors()) {
        if (const BadPlace* b = s.find(f.prime))
            throw IneligibleIdeal(f.prime, b->reason_tags());
        if (f.prime.p > s.search_bound())
            throw IneligibleIdeal(f.prime, "above_search_bound");
        out *= local_index(f.prime.residue_size(), f.e, spec.n);
    }
    return out;
}

namespace {

// Valuation and unit-part residue of a nonzero integral element at an odd
// place; the residue lives in F_p (split/ramified) or F_p^2 as a pair
// (inert).
struct LocalDecomposition {
    unsigned long val = 0;
    Integer ru, rw;
};

unsigned long rational_prime_valuation(const Integer& x, long p) {
    // valuation of a nonzero integer
    Integer n = x;
    unsigned long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

LocalDecomposition local_decompose(const FieldElement& el, const RealQuadraticField& k,
                                   const PrimeIdealData& v) {
    if (el.is_zero()) throw std::invalid_argument("local_decompose: zero element");
    if (!el.is_integral()) throw std::invalid_argument("local_decompose: element must be integral");
    const long p = v.p;
    LocalDecomposition out;

    switch (v.kind) {
        case SplitType::split: {
            unsigned long val = 0;
            while (true) {
                ResidueRing ring(k, v, static_cast<unsigned>(val + 1));
                if (!ring.is_zero(ring.reduce(el))) break;
                ++val;
            }
            ResidueRing ring(k, v, static_cast<unsigned>(val + 1));
            Integer image = ring.reduce(el).u;  // divisible by p^val, not p^(val+1)
            out.val = val;
            out.ru = (image / pow_integer(Integer(p), val)) % p;
            return out;
        }
        case SplitType::inert: {
            Integer x = el.x().get_num(), y = el.y().get_num();
            unsigned long vx = (x == 0) ? ~0ul : rational_prime_valuation(x, p);
            unsigned long vy = (y == 0) ? ~0ul : rational_prime_valuation(y, p);
            unsigned long val = std::min(vx, vy);
            Integer pe = pow_integer(Integer(p), val);
            out.val = val;
            out.ru = ((x == 0 ? Integer(0) : Integer(x / pe)) % p + p) % p;
            out.rw = ((y == 0 ? Integer(0) : Integer(y / pe)) % p + p) % p;
            return out;
        }
        case SplitType::ramified: {
            // odd ramified means p | d, uniformizer sqrt(d), pi^2 = d
            Integer x = el.x().get_num(), y = el.y().get_num();
            unsigned long vx = (x == 0) ? ~0ul : 2 * rational_prime_valuation(x, p);
            unsigned long vy = (y == 0) ? ~0ul : 2 * rational_prime_valuation(y, p) + 1;
            unsigned long val = std::min(vx, vy);
            unsigned long s = val / 2;
            // unit part of el / d^s reduces to x/d^s (val even) or y/d^s (val odd)
            Rational ds(pow_integer(Integer(k.d()), s));
            Rational coord = (val % 2 == 0) ? Rational(x) / ds : Rational(y) / ds;
            out.val = val;
            out.ru = mod_rational(coord, Integer(p));
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

int quadratic_character(const LocalDecomposition& dec, const PrimeIdealData& v, long d) {
    Integer p(v.p);
    if (v.kind == SplitType::inert) {
        // chi on F_p^2 factors through the norm to F_p
        Integer nrm = (dec.ru * dec.ru - Integer(d) * dec.rw * dec.rw) % p;
        return legendre_symbol(nrm, p);
    }
    return legendre_symbol(dec.ru, p);
}

}  // namespace

int hilbert_symbol_odd(const FieldElement& x, const FieldElement& y,
                       const RealQuadraticField& k, const PrimeIdealData& v) {
    if (v.p == 2)
        throw std::domain_error("hilbert_symbol_odd: residue characteristic 2 refused");
    if (x.is_zero() || y.is_zero())
        throw std::invalid_argument("hilbert_symbol_odd: arguments must be nonzero");

    LocalDecomposition dx = local_decompose(x, k, v);
    LocalDecomposition dy = local_decompose(y, k, v);
    unsigned long al = dx.val % 2, be = dy.val % 2;

    int chi_x = quadratic_character(dx, v, k.d());
    int chi_y = quadratic_character(dy, v, k.d());

    Integer q = v.residue_size();
    bool minus_from_uniformizers = (al & be) && (((q - 1) / 2) % 2 == 1);

    int result = minus_from_uniformizers ? -1 : 1;
    if (be) result *= chi_x;
    if (al) result *= chi_y;
    return result;
}

}  // namespace qsys
