#include "qsys/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>

#include "qsys/sampling.hpp"
#include "qsys/systole.hpp"

namespace qsys {

namespace {

struct Suite {
    SuiteResult result;
    explicit Suite(std::string name) { result.name = std::move(name); }
    void check(bool ok, const char* what) {
        ++result.checks;
        if (!ok && ++result.failures == 1) result.first_failure = what;
    }
};

GroupSpec running_example(unsigned n = 1) {
    RealQuadraticField k(2);
    return GroupSpec{k, QuaternionAlgebra::hamilton(k), FieldElement(k, 1, 1), n};
}

FieldElement rand_integral(std::mt19937_64& rng, const RealQuadraticField& k, long bound) {
    std::uniform_int_distribution<long> c(-bound, bound);
    return FieldElement(k, c(rng), c(rng));
}

FieldElement rand_rationalish(std::mt19937_64& rng, const RealQuadraticField& k, long bound) {
    std::uniform_int_distribution<long> num(-bound, bound);
    std::uniform_int_distribution<long> den(1, 12);
    return FieldElement(k, Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

ExactQuaternion rand_quat_exact(std::mt19937_64& rng, const RealQuadraticField& k, long bound) {
    return {rand_integral(rng, k, bound), rand_integral(rng, k, bound),
            rand_integral(rng, k, bound), rand_integral(rng, k, bound)};
}

SuiteResult suite_field_arithmetic() {
    Suite s("field arithmetic: norms, embeddings, ideal norms");
    RealQuadraticField k(2);
    std::mt19937_64 rng(101);
    for (int it = 0; it < 1000; ++it) {
        FieldElement u = rand_rationalish(rng, k, 40);
        FieldElement v = rand_rationalish(rng, k, 40);
        s.check((u * v).norm() == u.norm() * v.norm(), "norm multiplicativity");
    }
    for (int it = 0; it < 500; ++it) {
        FieldElement u = rand_integral(rng, k, 1000000);
        double lhs = u.embed(Place::principal) * u.embed(Place::conjugate);
        double rhs = u.norm().get_d();
        s.check(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(rhs)),
                "product of embeddings equals the norm");
    }
    PrimeIdealData p7 = classify_prime(7, k)[0];
    PrimeIdealData p3 = classify_prime(3, k)[0];
    IdealSpec both({IdealFactor{p7, 2}, IdealFactor{p3, 1}});
    s.check(both.norm() == IdealSpec::single(p7, 2).norm() * IdealSpec::single(p3).norm(),
            "ideal norm multiplicative over disjoint factors");
    return s.result;
}

SuiteResult suite_residue_rings() {
    Suite s("residue rings: homomorphism per splitting kind");
    RealQuadraticField k2(2), k6(6);
    struct Case {
        RealQuadraticField k;
        PrimeIdealData v;
        unsigned e;
    };
    std::vector<Case> cases = {{k2, classify_prime(7, k2)[0], 1}, {k2, classify_prime(7, k2)[0], 2},
                               {k2, classify_prime(3, k2)[0], 1}, {k2, classify_prime(3, k2)[0], 2},
                               {k2, classify_prime(2, k2)[0], 1}, {k2, classify_prime(2, k2)[0], 3},
                               {k6, classify_prime(3, k6)[0], 2}};
    std::mt19937_64 rng(102);
    for (const Case& c : cases) {
        ResidueRing ring(c.k, c.v, c.e);
        for (int it = 0; it < 1000; ++it) {
            FieldElement u = rand_integral(rng, c.k, 400);
            FieldElement v = rand_integral(rng, c.k, 400);
            s.check(ring.reduce(u + v) == ring.add(ring.reduce(u), ring.reduce(v)),
                    "additive homomorphism");
            s.check(ring.reduce(u * v) == ring.mul(ring.reduce(u), ring.reduce(v)),
                    "multiplicative homomorphism");
        }
    }
    return s.result;
}

SuiteResult suite_quaternion_algebra() {
    Suite s("quaternion algebra: norms, conjugation, embeddings");
    RealQuadraticField k(2);
    QuaternionAlgebra alg(k, FieldElement(k, -1, 0), FieldElement(k, -2, -1));
    std::mt19937_64 rng(103);
    for (int it = 0; it < 1000; ++it) {
        ExactQuaternion p = rand_quat_exact(rng, k, 30);
        ExactQuaternion q = rand_quat_exact(rng, k, 30);
        s.check(alg.reduced_norm(alg.mul(p, q)) == alg.reduced_norm(p) * alg.reduced_norm(q),
                "reduced norm multiplicativity");
        s.check(conj(alg.mul(p, q)) == alg.mul(conj(q), conj(p)), "conjugation anti-homomorphism");
    }
    for (int it = 0; it < 300; ++it) {
        ExactQuaternion p = rand_quat_exact(rng, k, 100);
        ExactQuaternion q = rand_quat_exact(rng, k, 100);
        for (Place pl : {Place::principal, Place::conjugate}) {
            Quaternion lhs = alg.embed(alg.mul(p, q), pl);
            Quaternion rhs = alg.embed(p, pl) * alg.embed(q, pl);
            s.check(max_abs_coord(lhs - rhs) <= 1e-10 * std::max(1.0, max_abs_coord(rhs)),
                    "embedding multiplicativity");
            if (!q.is_zero())
                s.check(alg.reduced_norm(q).embed(pl) > 0, "positivity at both places");
        }
    }
    return s.result;
}

SuiteResult suite_similarity() {
    Suite s("quaternion similarity to complex numbers");
    std::mt19937_64 rng(104);
    auto one = [&s](const Quaternion& q) {
        auto [c, r] = similar_to_complex(q);
        s.check(std::fabs(std::abs(c) - abs(q)) <= 1e-14 * std::max(1.0, abs(q)), "norm preserved");
        s.check(c.real() == re(q), "real part preserved");
        Quaternion back = r * Quaternion(c) * inverse(r);
        s.check(max_abs_coord(back - q) <= 1e-12 * std::max(1.0, abs(q)), "conjugation recovers q");
    };
    for (int it = 0; it < 10000; ++it) one(sampling::random_quaternion(rng, 10.0));
    std::uniform_real_distribution<double> c(-10, 10), pos(0, 10);
    for (int it = 0; it < 100; ++it) one(Quaternion(c(rng), -pos(rng), 0, 0));
    return s.result;
}

SuiteResult suite_complexification() {
    Suite s("matrix complexification: ring homomorphism, star, trace");
    std::mt19937_64 rng(105);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    for (int it = 0; it < 1000; ++it) {
        std::size_t m = size(rng);
        QuatMatrix a = sampling::random_matrix(rng, m, 1.0);
        QuatMatrix b = sampling::random_matrix(rng, m, 1.0);
        ComplexMatrix lhs = complexify(a * b);
        ComplexMatrix rhs = complexify(a) * complexify(b);
        double worst = 0;
        for (std::size_t i = 0; i < lhs.size(); ++i)
            for (std::size_t j = 0; j < lhs.size(); ++j)
                worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
        s.check(worst <= 1e-12, "image of a product");

        ComplexMatrix sa = complexify(star(a));
        ComplexMatrix ad = complexify(a).adjoint();
        bool exact = true;
        for (std::size_t i = 0; i < sa.size(); ++i)
            for (std::size_t j = 0; j < sa.size(); ++j)
                if (sa(i, j) != ad(i, j)) exact = false;
        s.check(exact, "image of the conjugate transpose, exactly");

        s.check(std::fabs(real_trace(a) - complexify(a).trace().real() / 2.0) <= 1e-13,
                "real trace is half the image trace");
    }
    return s.result;
}

SuiteResult suite_spectra() {
    Suite s("spectra: conjugation, adjoint, unitary, inversion, similarity");
    std::mt19937_64 rng(106);
    std::uniform_int_distribution<std::size_t> size(1, 4);
    for (int it = 0; it < 500; ++it) {
        QuatMatrix a = sampling::random_matrix(rng, size(rng), 1.0);
        auto ev = right_eigenvalues(a);
        std::vector<Complex> conjed;
        for (const auto& t : ev) conjed.push_back(std::conj(t));
        s.check(multisets_match(ev, conjed, 1e-8), "closure under conjugation");
        s.check(multisets_match(ev, right_eigenvalues(star(a)), 1e-8), "spectrum of the adjoint");
    }
    for (int it = 0; it < 200; ++it) {
        QuatMatrix u = sampling::random_unitary(rng, size(rng));
        bool ok = true;
        for (const auto& t : right_eigenvalues(u))
            if (std::fabs(std::abs(t) - 1.0) > 1e-8) ok = false;
        s.check(ok, "unitary spectra on the unit circle");
    }
    GroupSpec spec = running_example();
    auto wb = find_witness(spec, 30);
    QuatMatrix w = embed(wb->matrix, spec.algebra, Place::principal);
    for (int it = 0; it < 200; ++it) {
        QuatMatrix m = QuatMatrix::identity(2);
        std::uniform_int_distribution<int> kind(0, 1);
        for (int step = 0; step < 3; ++step) {
            if (kind(rng) == 0) {
                m = m * w;
            } else {
                QuatMatrix u(2);
                Quaternion u0 = sampling::random_quaternion(rng, 1.0);
                Quaternion u1 = sampling::random_quaternion(rng, 1.0);
                u(0, 0) = u0 * (1.0 / abs(u0));
                u(1, 1) = u1 * (1.0 / abs(u1));
                m = m * u;
            }
        }
        auto ev = right_eigenvalues(m);
        std::vector<Complex> inverted;
        for (const auto& t : ev) inverted.push_back(1.0 / t);
        s.check(multisets_match(ev, inverted, 1e-6), "form-preserving spectra closed under inversion");
    }
    for (int it = 0; it < 100; ++it) {
        std::size_t m = size(rng);
        QuatMatrix a = sampling::random_matrix(rng, m, 1.0);
        auto pp = sampling::random_invertible(rng, m);
        s.check(multisets_match(right_eigenvalues(a), right_eigenvalues(pp.p * a * pp.p_inv), 1e-6),
                "similarity invariance");
    }
    return s.result;
}

ProjectivePoint random_model_point(std::mt19937_64& rng, std::size_t n, double form_a) {
    std::vector<Quaternion> rep(n + 1);
    rep[0] = Quaternion(1);
    for (std::size_t i = 1; i <= n; ++i) {
        Quaternion q = sampling::random_quaternion(rng, 0.4);
        double cap = 0.7 * form_a / static_cast<double>(n);
        if (squared_norm(q) > cap) q = q * std::sqrt(cap / squared_norm(q));
        rep[i] = q;
    }
    return ProjectivePoint(std::move(rep), form_a);
}

SuiteResult suite_hyperbolic() {
    Suite s("hyperbolic model: representatives, isometries, form change");
    std::mt19937_64 rng(107);
    const double form_a = 1.0 + std::sqrt(2.0);
    GroupSpec spec = running_example();
    QuatMatrix w = embed(find_witness(spec, 30)->matrix, spec.algebra, Place::principal);

    for (int it = 0; it < 300; ++it) {
        ProjectivePoint z = random_model_point(rng, 2, form_a);
        ProjectivePoint t = random_model_point(rng, 2, form_a);
        double dd = distance(z, t);
        Quaternion lam = sampling::random_quaternion(rng, 2.0);
        if (abs(lam) < 0.1) lam = Quaternion(1);
        s.check(std::fabs(distance(z.rescaled(lam), t) - dd) <= 1e-10, "representative independence");
        auto unit = [](const ProjectivePoint& p) {
            std::vector<Quaternion> rep = p.rep();
            rep[0] = rep[0] * std::sqrt(p.form_a());
            return ProjectivePoint(rep, 1.0);
        };
        s.check(std::fabs(distance(unit(z), unit(t)) - dd) <= 1e-10, "reduction to the unit form");
    }
    for (int it = 0; it < 100; ++it) {
        Isometry iso{w, form_a, std::nullopt};
        ProjectivePoint z = random_model_point(rng, 1, form_a);
        ProjectivePoint t = random_model_point(rng, 1, form_a);
        s.check(std::fabs(distance(apply(iso, z), apply(iso, t)) - distance(z, t)) <= 1e-9,
                "isometry invariance");
    }
    return s.result;
}

SuiteResult suite_loxodromic() {
    Suite s("loxodromic elements: structure, lengths, trace bound");
    GroupSpec spec = running_example();
    auto wb = find_witness(spec, 30);
    QuatMatrix w = embed(wb->matrix, spec.algebra, Place::principal);
    const double form_a = spec.form_a.embed(Place::principal);
    std::mt19937_64 rng(108);

    Isometry iso{w, form_a, std::nullopt};
    double ell = translation_length(iso);
    s.check(std::fabs(ell - 2.0 * std::acosh(1.0 + std::sqrt(2.0))) <= 1e-9,
            "witness length equals 2 arccosh(c)");
    ProjectivePoint e0 = ProjectivePoint::basepoint(1, form_a);
    s.check(std::fabs(distance(e0, apply(iso, e0)) - ell) <= 1e-9, "axis through the basepoint");

    QuatMatrix acc = w;
    for (int k = 2; k <= 6; ++k) {
        acc = acc * w;
        Isometry pk{acc, form_a, std::nullopt};
        s.check(std::fabs(translation_length(pk) - k * ell) <= 1e-9, "power additivity");
        s.check(trace_length_bound(pk) <= translation_length(pk) + 1e-9, "trace-length bound");
    }
    for (int it = 0; it < 40; ++it) {
        auto pp = sampling::random_invertible(rng, 2);
        Isometry cm{pp.p * w * pp.p_inv, form_a, std::nullopt};
        SpectralClass c = classify(cm);
        s.check(c.loxodromic && std::fabs(std::abs(c.t) - 4.611581789459) <= 1e-6,
                "conjugates stay loxodromic with the same eigenvalue");
        for (int jt = 0; jt < 5; ++jt) {
            ProjectivePoint z = random_model_point(rng, 1, form_a);
            ProjectivePoint wz = apply(Isometry{pp.p, form_a, std::nullopt}, z);
            // displacement of a conjugate at the moved point dominates the length
            s.check(distance(wz, apply(cm, wz)) >= ell - 1e-6, "conjugate displacement bound");
        }
    }
    return s.result;
}

SuiteResult suite_symplectic_orders() {
    Suite s("finite symplectic orders: closed form against exhaustive count");
    s.check(local_index(2, 1, 1) == sp4_order_bruteforce(2), "q = 2");
    s.check(local_index(3, 1, 1) == sp4_order_bruteforce(3), "q = 3");
    s.check(local_index(2, 1, 1) == 720, "q = 2 frozen value");
    s.check(local_index(3, 1, 1) == 51840, "q = 3 frozen value");
    return s.result;
}

SuiteResult suite_indices() {
    Suite s("congruence indices: upper bound over eligible prime powers");
    for (unsigned n : {1u, 2u}) {
        GroupSpec spec = running_example(n);
        BadPlaceSet bad = bad_places(spec, 200);
        for (long p = 3; p <= 199; ++p) {
            if (mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0) continue;
            for (const PrimeIdealData& v : classify_prime(p, spec.field)) {
                if (bad.contains(v)) continue;
                for (unsigned e = 1;; ++e) {
                    IdealSpec ideal = IdealSpec::single(v, e);
                    if (ideal.norm() > 200) break;
                    s.check(congruence_index(ideal, spec, bad) <= index_upper_bound(ideal, n),
                            "index below its norm-power bound");
                }
            }
        }
    }
    return s.result;
}

SuiteResult suite_congruence_elements() {
    Suite s("congruence elements: membership, trace conditions, exact bounds");
    GroupSpec spec = running_example();
    auto wb = find_witness(spec, 30);
    const QuaternionAlgebra& alg = spec.algebra;

    std::vector<long> primes = {7, 17, 23, 31, 41};
    for (long p : primes) {
        PrimeIdealData v = classify_prime(p, spec.field)[0];
        IdealSpec ideal = IdealSpec::single(v);
        CongruenceWitness cw = congruence_witness(*wb, ideal, spec);
        s.check(is_congruence_element(cw.element, ideal, spec), "membership of the witness power");
        s.check(check_trace_congruence(cw.element, ideal, spec), "trace combination in the square");

        FieldElement tr = real_trace(cw.element);
        FieldElement tr_abs = tr.sign_at(Place::principal) >= 0 ? tr : -tr;
        s.check(compare_with_rational(tr_abs, trace_lower_bound(ideal, spec)) >= 0,
                "exact trace lower bound");
        s.check(!is_plus_minus_identity(cw.element) &&
                    compare_with_rational(tr_abs, Rational(spec.n + 1)) != 0,
                "only +-identity meets |Re tr| = n+1");

        for (std::size_t i = 0; i < cw.element.size(); ++i) {
            double nrm = alg.reduced_norm(cw.element(i, i)).embed(Place::conjugate);
            s.check(std::fabs(nrm) <= 1.0 + 1e-9, "conjugate-place norm bound");
            double rey = (re(cw.element(i, i)) - FieldElement::from_rational(1)).embed(Place::conjugate);
            s.check(std::fabs(rey) <= 2.0 + 1e-9, "conjugate-place real part bound");
        }
    }

    // column relations, exactly, for assorted lattice elements
    for (unsigned k = 1; k <= 6; ++k) {
        ExactQuatMatrix c = pow(wb->matrix, k, alg);
        for (std::size_t j = 0; j < c.size(); ++j) {
            FieldElement sum = -(spec.form_a * alg.reduced_norm(c(0, j)));
            for (std::size_t i = 1; i < c.size(); ++i) sum = sum + alg.reduced_norm(c(i, j));
            FieldElement expect = (j == 0) ? -spec.form_a : FieldElement::from_rational(1);
            s.check(sum == expect, "column relations");
        }
    }
    return s.result;
}

SuiteResult suite_systole_bounds() {
    Suite s("systole bounds: sandwich, additivity, slope");
    GroupSpec spec = running_example();
    BadPlaceSet bad = bad_places(spec, 100);
    SweepResult res = sweep(spec, 3, 41, bad);
    s.check(res.rows.size() == 12, "all odd primes in range surveyed");
    for (const SweepRow& row : res.rows) {
        s.check(row.lower_bound_norm <= row.witness_length, "sandwich");
        s.check(row.trace_bound <= row.trace_witness + 1e-9, "trace bound below the witness trace");
        BoundReport ib = systole_lower_bound_index(row.index, spec.n);
        s.check(ib.slope * Rational(static_cast<long>(spec.n + 1) * (2 * spec.n + 3)) == Rational(4),
                "slope identity");
    }
    double ell = witness_length(res.witness, spec);
    for (unsigned long k = 2; k <= 10; ++k) {
        WitnessBlock powered = res.witness;
        powered.matrix = pow(res.witness.matrix, k, spec.algebra);
        s.check(std::fabs(witness_length(powered, spec) - k * ell) <= 1e-9, "length power additivity");
    }
    // trace-length chain on congruence witnesses
    for (long p : {7L, 17L}) {
        IdealSpec ideal = IdealSpec::single(classify_prime(p, spec.field)[0]);
        CongruenceWitness cw = congruence_witness(res.witness, ideal, spec);
        double tr = std::fabs(real_trace(cw.element).embed(Place::principal));
        double chain = 2.0 * std::log(tr / 2.0);
        s.check(chain <= cw.length + 1e-6, "trace chain below the witness length");
    }
    return s.result;
}

}  // namespace

Integer sp4_order_bruteforce(unsigned q) {
    if (q < 2 || mpz_probab_prime_p(Integer(q).get_mpz_t(), 40) == 0)
        throw std::invalid_argument("sp4_order_bruteforce: q must be prime");
    const long iq = static_cast<long>(q);
    const long nv = iq * iq * iq * iq;
    std::vector<std::array<int, 4>> vecs(nv);
    for (long code = 0; code < nv; ++code) {
        long c = code;
        for (int i = 0; i < 4; ++i) {
            vecs[code][i] = static_cast<int>(c % iq);
            c /= iq;
        }
    }
    // split alternating form: pairs (0,1) and (2,3)
    auto form = [iq](const std::array<int, 4>& u, const std::array<int, 4>& v) {
        long val = static_cast<long>(u[0]) * v[1] - static_cast<long>(u[1]) * v[0] +
                   static_cast<long>(u[2]) * v[3] - static_cast<long>(u[3]) * v[2];
        long m = val % iq;
        return static_cast<int>(m < 0 ? m + iq : m);
    };
    const int target[4][4] = {{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}};

    Integer count = 0;
    std::array<const std::array<int, 4>*, 4> cols{};
    std::function<void(int)> recurse = [&](int level) {
        if (level == 4) {
            ++count;
            return;
        }
        for (long cand = 0; cand < nv; ++cand) {
            const std::array<int, 4>& v = vecs[cand];
            bool ok = true;
            for (int i = 0; i < level && ok; ++i)
                if (form(*cols[i], v) != target[i][level]) ok = false;
            if (!ok) continue;
            cols[level] = &v;
            recurse(level + 1);
        }
    };
    recurse(0);
    return count;
}

std::vector<SuiteResult> run_selftest() {
    return {suite_field_arithmetic(), suite_residue_rings(),   suite_quaternion_algebra(),
            suite_similarity(),       suite_complexification(), suite_spectra(),
            suite_hyperbolic(),       suite_loxodromic(),       suite_symplectic_orders(),
            suite_indices(),          suite_congruence_elements(), suite_systole_bounds()};
}

bool report_selftest(const std::vector<SuiteResult>& results, std::ostream& os) {
    bool all_ok = true;
    for (const SuiteResult& r : results) {
        bool ok = r.failures == 0;
        all_ok = all_ok && ok;
        os << (ok ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.checks << " checks";
        if (!ok) os << ", " << r.failures << " failures, first: " << r.first_failure;
        os << ")\n";
    }
    return all_ok;
}

}  // namespace qsys
