#include "qsys/systole.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace qsys {

double log_integer(const Integer& v) {
    if (v <= 0) throw std::domain_error("log_integer: positive input required");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

BoundReport systole_lower_bound_norm(const IdealSpec& ideal, const GroupSpec& spec) {
    const unsigned d = 2;
    BoundReport rep;
    rep.kind = BoundKind::systole_norm;
    rep.d = d;
    rep.n = spec.n;
    rep.abs_norm_a = abs(spec.form_a.norm());
    rep.input = ideal.norm();
    rep.slope = 4;
    rep.constant_note = "additive constant evaluated";

    Rational threshold = Rational(pow_integer(2, 2 * d)) *
                         Rational(pow_integer(Integer(spec.n + 1), d)) * rep.abs_norm_a;
    rep.valid = Rational(rep.input * rep.input) >= threshold;
    rep.value = 4.0 * log_integer(rep.input) -
                2.0 * std::log(threshold.get_d());
    return rep;
}

BoundReport systole_lower_bound_index(const Integer& index, unsigned n) {
    if (index < 1) throw std::invalid_argument("systole_lower_bound_index: index must be >= 1");
    BoundReport rep;
    rep.kind = BoundKind::systole_index;
    rep.n = n;
    rep.input = index;
    rep.slope = Rational(4, static_cast<long>(n + 1) * (2 * n + 3));
    rep.slope.canonicalize();
    rep.constant_note = "-c (additive constant not evaluated)";
    rep.valid = true;
    rep.value = rep.slope.get_d() * log_integer(index);
    return rep;
}

FieldElement fundamental_unit(const RealQuadraticField& k) {
    // continued fraction of sqrt(d); convergents until p^2 - d q^2 = +-1
    const long d = k.d();
    Integer a0 = sqrt(Integer(d));
    Integer m = 0, den = 1, a = a0;
    Integer p_prev = 1, p = a0, q_prev = 0, q = 1;
    for (int guard = 0; guard < 20000; ++guard) {
        Rational nrm = Rational(p * p) - Rational(d) * Rational(q * q);
        if (nrm == 1 || nrm == -1) return FieldElement(k, Rational(p), Rational(q));
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
    throw std::runtime_error("fundamental_unit: continued fraction did not close");
}

std::optional<FieldElement> sqrt_in_ring(const FieldElement& w, const RealQuadraticField& k) {
    if (!w.is_integral()) return std::nullopt;
    if (w.is_zero()) return FieldElement();
    const Integer w0 = w.x().get_num();
    const Integer w1 = w.y().get_num();
    const long d = k.d();

    auto integer_sqrt = [](const Integer& v) -> std::optional<Integer> {
        if (v < 0) return std::nullopt;
        if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return std::nullopt;
        return sqrt(v);
    };

    std::vector<FieldElement> candidates;
    if (w1 == 0) {
        if (auto s0 = integer_sqrt(w0)) candidates.push_back(FieldElement(k, Rational(*s0), 0));
        if (w0 % d == 0)
            if (auto s1 = integer_sqrt(w0 / d)) candidates.push_back(FieldElement(k, 0, Rational(*s1)));
    } else if (w1 % 2 == 0) {
        // s = s0 + s1 sqrt(d): s0^2 + d s1^2 = w0 and 2 s0 s1 = w1, so
        // s0^2 and d s1^2 are the roots of X^2 - w0 X + d (w1/2)^2
        Integer disc = w0 * w0 - Integer(d) * w1 * w1;  // = N(w)
        if (auto t = integer_sqrt(disc)) {
            if ((w0 + *t) % 2 == 0) {
                for (const Integer& u : {Integer((w0 + *t) / 2), Integer((w0 - *t) / 2)}) {
                    auto s0 = integer_sqrt(u);
                    if (!s0 || *s0 == 0) continue;
                    Integer half = w1 / 2;
                    if (half % *s0 != 0) continue;
                    candidates.push_back(FieldElement(k, Rational(*s0), Rational(half / *s0)));
                }
            }
        }
    }
    for (const FieldElement& s : candidates)
        if (s * s == w) return s;
    return std::nullopt;
}

namespace {

long max_abs_coordinate(const FieldElement& e) {
    Integer mx = abs(e.x().get_num());
    Integer my = abs(e.y().get_num());
    Integer m = mx > my ? mx : my;
    return m.fits_slong_p() ? m.get_si() : std::numeric_limits<long>::max();
}

ExactQuatMatrix witness_matrix_from(const FieldElement& c, const FieldElement& ratio,
                                    const FieldElement& s, unsigned n) {
    ExactQuatMatrix m = ExactQuatMatrix::identity(n + 1);
    m(0, 0) = ExactQuaternion::scalar(c);
    m(0, 1) = ExactQuaternion::scalar(ratio);
    m(1, 0) = ExactQuaternion::scalar(s);
    m(1, 1) = ExactQuaternion::scalar(c);
    return m;
}

}  // namespace

std::optional<WitnessBlock> find_witness(const GroupSpec& spec, long height_bound) {
    const RealQuadraticField& k = spec.field;
    const FieldElement& a = spec.form_a;
    if (!a.is_integral() || a.sign_at(Place::principal) <= 0)
        throw std::invalid_argument("find_witness: a must be integral and positive at the principal place");
    if (spec.n < 1) throw std::invalid_argument("find_witness: n must be >= 1");

    const FieldElement one = FieldElement::from_rational(1);
    std::optional<WitnessBlock> best;

    auto consider = [&](const FieldElement& c_candidate) {
        for (const FieldElement& c : {c_candidate, -c_candidate}) {
            if ((c - one).sign_at(Place::principal) <= 0) continue;  // need c > 1
            if (max_abs_coordinate(c) > height_bound) continue;
            FieldElement w = (c * c - one) / a;
            if (!w.is_integral()) continue;
            auto sigma = sqrt_in_ring(w, k);
            if (!sigma) continue;
            if (sigma->sign_at(Place::principal) < 0) sigma = -*sigma;
            FieldElement s = a * *sigma;
            if (max_abs_coordinate(s) > height_bound || max_abs_coordinate(*sigma) > height_bound)
                continue;
            // consistency and sigma-place boundedness, all exact; the
            // |c| <= 1 bound at the conjugate place is forced by the
            // relation only when sigma(a) < 0
            if (!(a * (c * c - one) == s * s)) continue;
            if (a.sign_at(Place::conjugate) < 0 && (c * c - one).sign_at(Place::conjugate) > 0)
                continue;
            if (!best || (best->c - c).sign_at(Place::principal) > 0)
                best = WitnessBlock{c, s, *sigma, spec.n, witness_matrix_from(c, *sigma, s, spec.n)};
        }
    };

    // box scan over sigma: c^2 = 1 + a sigma^2 must be a perfect square
    for (long s0 = 0; s0 <= height_bound; ++s0)
        for (long s1 = -height_bound; s1 <= height_bound; ++s1) {
            if (s0 == 0 && s1 == 0) continue;
            FieldElement sigma(k, s0, s1);
            FieldElement w = one + a * sigma * sigma;
            if (auto c = sqrt_in_ring(w, k)) consider(*c);
        }

    // powers of the fundamental unit times small integers
    FieldElement u = fundamental_unit(k);
    for (long mult = 1; mult <= 4; ++mult) {
        FieldElement c = FieldElement::from_rational(mult);
        for (int kpow = 1; kpow <= 64; ++kpow) {
            c = c * u;
            if (max_abs_coordinate(c) > height_bound) break;
            consider(c);
        }
    }

    return best;
}

double witness_length(const WitnessBlock& w, const GroupSpec& spec) {
    Isometry iso{embed(w.matrix, spec.algebra, Place::principal),
                 spec.form_a.embed(Place::principal), w.matrix};
    return translation_length(iso);
}

namespace {

// Matrices over the quaternion order reduced modulo one prime power:
// entries are coordinate 4-tuples in the residue ring, multiplied with
// the reduced structure constants.
class ResidueMatrixEngine {
public:
    using RQuat = std::array<ResidueElement, 4>;
    using Mat = std::vector<RQuat>;

    ResidueMatrixEngine(const ResidueRing& ring, const QuaternionAlgebra& alg, std::size_t m)
        : ring_(ring), m_(m) {
        delta_ = ring.reduce(alg.delta());
        gamma_ = ring.reduce(alg.gamma());
        delta_gamma_ = ring.mul(delta_, gamma_);
    }

    Mat reduce(const ExactQuatMatrix& a, const QuaternionAlgebra& alg) const {
        Mat out(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) out[i * m_ + j] = alg.reduce(a(i, j), ring_);
        return out;
    }

    RQuat qmul(const RQuat& a, const RQuat& b) const {
        const ResidueRing& r = ring_;
        auto add3 = [&r](const ResidueElement& x, const ResidueElement& y, const ResidueElement& z,
                         const ResidueElement& w) { return r.add(r.add(x, y), r.add(z, w)); };
        ResidueElement c0 = add3(r.mul(a[0], b[0]), r.mul(delta_, r.mul(a[1], b[1])),
                                 r.mul(gamma_, r.mul(a[2], b[2])),
                                 r.neg(r.mul(delta_gamma_, r.mul(a[3], b[3]))));
        ResidueElement c1 = add3(r.mul(a[0], b[1]), r.mul(a[1], b[0]),
                                 r.neg(r.mul(gamma_, r.mul(a[2], b[3]))),
                                 r.mul(gamma_, r.mul(a[3], b[2])));
        ResidueElement c2 = add3(r.mul(a[0], b[2]), r.mul(a[2], b[0]),
                                 r.mul(delta_, r.mul(a[1], b[3])),
                                 r.neg(r.mul(delta_, r.mul(a[3], b[1]))));
        ResidueElement c3 = add3(r.mul(a[0], b[3]), r.mul(a[3], b[0]), r.mul(a[1], b[2]),
                                 r.neg(r.mul(a[2], b[1])));
        return {c0, c1, c2, c3};
    }

    Mat mul(const Mat& a, const Mat& b) const {
        Mat out(m_ * m_);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) {
                RQuat s = {ring_.zero(), ring_.zero(), ring_.zero(), ring_.zero()};
                for (std::size_t t = 0; t < m_; ++t) {
                    RQuat prod = qmul(a[i * m_ + t], b[t * m_ + j]);
                    for (int component = 0; component < 4; ++component)
                        s[component] = ring_.add(s[component], prod[component]);
                }
                out[i * m_ + j] = s;
            }
        return out;
    }

    bool is_identity(const Mat& a) const {
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) {
                const RQuat& q = a[i * m_ + j];
                if (!ring_.is_zero(q[1]) || !ring_.is_zero(q[2]) || !ring_.is_zero(q[3]))
                    return false;
                ResidueElement expect = (i == j) ? ring_.one() : ring_.zero();
                if (!(q[0] == expect)) return false;
            }
        return true;
    }

private:
    const ResidueRing& ring_;
    std::size_t m_;
    ResidueElement delta_, gamma_, delta_gamma_;
};

constexpr unsigned long kOrderCap = 2000000;

unsigned long residue_order(const ExactQuatMatrix& w, const ResidueRing& ring,
                            const QuaternionAlgebra& alg) {
    ResidueMatrixEngine engine(ring, alg, w.size());
    auto base = engine.reduce(w, alg);
    auto acc = base;
    unsigned long order = 1;
    while (!engine.is_identity(acc)) {
        acc = engine.mul(acc, base);
        if (++order > kOrderCap)
            throw std::runtime_error("residue_order: cap exceeded; the matrix is likely not invertible mod the factor");
    }
    return order;
}

}  // namespace

CongruenceWitness congruence_witness(const WitnessBlock& w, const IdealSpec& ideal,
                                     const GroupSpec& spec) {
    Integer order = 1;
    for (const IdealFactor& f : ideal.factors()) {
        ResidueRing ring(spec.field, f.prime, f.e);
        Integer factor_order(residue_order(w.matrix, ring, spec.algebra));
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), factor_order.get_mpz_t());
        if (order > kOrderCap)
            throw std::runtime_error("congruence_witness: combined order exceeds the cap");
    }
    unsigned long m = order.get_ui();

    CongruenceWitness out;
    out.order = m;
    out.element = pow(w.matrix, m, spec.algebra);
    out.length = static_cast<double>(m) * witness_length(w, spec);
    if (!is_congruence_element(out.element, ideal, spec))
        throw std::logic_error("congruence_witness: power failed the congruence check");
    return out;
}

SweepResult sweep(const GroupSpec& spec, long lo, long hi, const BadPlaceSet& bad,
                  long witness_height_bound) {
    auto witness = find_witness(spec, witness_height_bound);
    if (!witness)
        throw std::domain_error("sweep: no witness found within the height bound");

    SweepResult result;
    result.witness = *witness;
    const Rational norm_a_abs = abs(spec.form_a.norm());

    for (long p = std::max(lo, 2L); p <= hi; ++p) {
        if (mpz_probab_prime_p(Integer(p).get_mpz_t(), 40) == 0) continue;
        auto above = classify_prime(p, spec.field);
        // one row per rational prime: the smaller split residue when two
        PrimeIdealData v = above[0];
        if (above.size() == 2 && above[1].r < above[0].r) v = above[1];

        IdealSpec ideal = IdealSpec::single(v);
        if (const BadPlace* b = bad.find(v)) {
            result.refusals.push_back(SweepRefusal{p, ideal.norm(), b->reason_tags()});
            continue;
        }
        if (p > bad.search_bound()) {
            result.refusals.push_back(SweepRefusal{p, ideal.norm(), "above_search_bound"});
            continue;
        }

        SweepRow row;
        row.prime_p = p;
        row.residue_r = (v.kind == SplitType::inert) ? -1 : v.r;
        row.q = v.residue_size();
        row.e = 1;
        row.norm_ideal = ideal.norm();
        row.index = congruence_index(ideal, spec, bad);

        BoundReport lower = systole_lower_bound_norm(ideal, spec);
        row.lower_bound_norm = lower.value;
        row.lower_bound_valid = lower.valid;

        CongruenceWitness cw = congruence_witness(*witness, ideal, spec);
        row.witness_order = cw.order;
        row.witness_length = cw.length;

        Rational tb = trace_lower_bound(ideal, spec);
        row.trace_bound = tb.get_d();
        FieldElement tr = real_trace(cw.element);
        row.trace_witness = std::fabs(tr.embed(Place::principal));

        // sandwich and exact trace-bound checks; failures are bugs
        if (lower.valid && !(lower.value <= cw.length + 1e-12))
            throw std::logic_error("sweep: lower bound exceeded the witness length");
        FieldElement tr_abs = tr.sign_at(Place::principal) >= 0 ? tr : -tr;
        if (compare_with_rational(tr_abs, tb) < 0)
            throw std::logic_error("sweep: witness trace violates the exact trace bound");

        result.rows.push_back(std::move(row));
    }

    std::sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.norm_ideal != b.norm_ideal) return a.norm_ideal < b.norm_ideal;
        return a.prime_p < b.prime_p;
    });
    return result;
}

namespace {

std::string format_double12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream os;
    os << "prime_p,residue_r,q,e,norm_I,index,lower_bound_norm,lower_bound_valid,"
          "witness_order_m,witness_length,trace_bound,trace_witness\n";
    for (const SweepRow& r : result.rows) {
        os << r.prime_p << ',';
        if (r.residue_r >= 0) os << r.residue_r;
        os << ',' << r.q << ',' << r.e << ',' << r.norm_ideal << ',' << r.index << ','
           << format_double12(r.lower_bound_norm) << ',' << (r.lower_bound_valid ? "true" : "false")
           << ',' << r.witness_order << ',' << format_double12(r.witness_length) << ','
           << format_double12(r.trace_bound) << ',' << format_double12(r.trace_witness) << '\n';
    }
    return os.str();
}

}  // namespace qsys
