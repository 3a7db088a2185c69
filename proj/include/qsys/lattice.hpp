// Arithmetic of the integral unitary group for the form
// diag(-a, 1, ..., 1) over a quaternion order: admissibility of the
// defining data, membership in the lattice and in principal congruence
// subgroups, the exact congruence-trace test, trace lower bounds,
// local and global congruence index formulas, and the excluded-place
// bookkeeping that guards them.

#pragma once

#include "qsys/quat_matrix.hpp"

namespace qsys {

// Defining data of the group: the field, the quaternion algebra, the
// form coefficient a and the rank parameter n (matrices have size n+1).
struct GroupSpec {
    RealQuadraticField field;
    QuaternionAlgebra algebra;
    FieldElement form_a;
    unsigned n = 1;

    std::size_t matrix_size() const { return n + 1; }
};

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<std::string> failures;
};

// Sign conditions making the real points of the group the isometry group
// of quaternionic hyperbolic n-space (times a compact factor): a integral,
// positive at the principal place, negative at the conjugate place, and
// the algebra totally definite.
AdmissibilityReport check_admissible(const GroupSpec& spec);
inline bool is_admissible(const GroupSpec& spec) { return check_admissible(spec).admissible; }

bool is_plus_minus_identity(const ExactQuatMatrix& c);

// Integral entries and exact preservation of diag(-a, 1, ..., 1).
bool is_lattice_element(const ExactQuatMatrix& c, const GroupSpec& spec);

// Principal congruence condition: c_ii - 1 and c_ij (i != j) lie in
// I O_D for every prime-power factor of I.
bool is_congruence_element(const ExactQuatMatrix& c, const IdealSpec& ideal, const GroupSpec& spec);

// Exact cross-check on a congruence element: with c_ii = 1 + y_i, the
// combination 2a sum Re(y_i) lies in I^2.  Throws std::invalid_argument
// when c is not a congruence element for I.
bool check_trace_congruence(const ExactQuatMatrix& c, const IdealSpec& ideal, const GroupSpec& spec);

// Lower bound for |Re tr| over nontrivial elements of the congruence
// subgroup: N(I)^2 / (2^(2d-1) (n+1)^(d-1) |N(a)|) - (n+1), exact.
// Throws std::invalid_argument for the trivial ideal.
Rational trace_lower_bound(const IdealSpec& ideal, const GroupSpec& spec);

// Index of the level-p^e principal congruence subgroup in the local
// integral group at a good place with residue size q:
//     q^(e (n+1) (2n+3)) * prod_{j=1..n+1} (1 - q^(-2j))
// For e = 1 this is the order of the finite symplectic group of rank
// n+1 over F_q.
Integer local_index(const Integer& q, unsigned e, unsigned n);

// N(I)^((n+1)(2n+3)), an upper bound for the congruence index at
// eligible ideals.
Integer index_upper_bound(const IdealSpec& ideal, unsigned n);

enum class BadPlaceReason { ramified_algebra, divides_a, above_2, nonmaximal_guard };

const char* bad_place_reason_tag(BadPlaceReason r);

struct BadPlace {
    PrimeIdealData prime;
    std::vector<BadPlaceReason> reasons;

    std::string reason_tags() const;
};

class BadPlaceSet {
public:
    BadPlaceSet() = default;
    explicit BadPlaceSet(std::vector<BadPlace> places) : places_(std::move(places)) {}

    const std::vector<BadPlace>& places() const { return places_; }
    const BadPlace* find(const PrimeIdealData& prime) const;
    bool contains(const PrimeIdealData& prime) const { return find(prime) != nullptr; }
    long search_bound() const { return search_bound_; }

    friend BadPlaceSet bad_places(const GroupSpec&, long);

private:
    std::vector<BadPlace> places_;
    long search_bound_ = 0;
};

// Enumerates the excluded places with residue characteristic up to
// search_bound: places where the algebra ramifies (odd tame symbol -1),
// divisors of a, everything above 2, and divisors of 2*delta*gamma
// (conservative guard for the possibly non-maximal standard order).
BadPlaceSet bad_places(const GroupSpec& spec, long search_bound);

struct IneligibleIdeal : std::domain_error {
    IneligibleIdeal(PrimeIdealData p, std::string tags)
        : std::domain_error("ideal factor " + p.label() + " is excluded: " + tags),
          prime(p),
          reason_tags(std::move(tags)) {}
    PrimeIdealData prime;
    std::string reason_tags;
};

// Product of local indices over the factors of I.  Refuses factors lying
// in S (IneligibleIdeal) or with residue characteristic above the bound
// S was computed with.
Integer congruence_index(const IdealSpec& ideal, const GroupSpec& spec, const BadPlaceSet& s);

// Tame Hilbert symbol at an odd place: with valuations al = v(x),
// be = v(y) and unit parts u, w, returns
//     (-1)^(al*be*(q-1)/2) * chi(u)^be * chi(w)^al,
// chi the quadratic character of the residue field.  Residue
// characteristic 2 is refused (std::domain_error).
int hilbert_symbol_odd(const FieldElement& x, const FieldElement& y,
                       const RealQuadraticField& k, const PrimeIdealData& v);

}  // namespace qsys
