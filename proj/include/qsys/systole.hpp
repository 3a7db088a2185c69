// Systole bound machinery: the norm-form lower bound for congruence
// covers, the index-form bound with its explicit slope, explicit
// loxodromic witness blocks (upper bounds via powers landing in the
// congruence subgroup), and the per-prime sweep that sandwiches the
// systole between the two.

#pragma once

#include "qsys/hyperbolic.hpp"
#include "qsys/lattice.hpp"

namespace qsys {

enum class BoundKind { trace, systole_norm, systole_index };

// A bound value together with the constants that produced it.  The
// additive constant of the index-form bound is provably finite but not
// computed by anything here; it stays a symbolic marker in reports.
struct BoundReport {
    BoundKind kind = BoundKind::systole_norm;
    double value = 0;
    bool valid = false;
    long d = 2;
    unsigned n = 1;
    Rational abs_norm_a;
    Integer input;        // N(I) for norm-form, the index for index-form
    Rational slope;       // coefficient of the log term
    std::string constant_note;
};

// 4 ln N(I) - 2 ln(2^(2d) (n+1)^d |N(a)|); valid iff
// N(I)^2 >= 2^(2d) (n+1)^d |N(a)| (exact comparison).
BoundReport systole_lower_bound_norm(const IdealSpec& ideal, const GroupSpec& spec);

// (4 / ((n+1)(2n+3))) ln(index), additive constant left symbolic.
BoundReport systole_lower_bound_index(const Integer& index, unsigned n);

// Natural log of a positive big integer.
double log_integer(const Integer& v);

// Block [[c, s/a],[s, c]] padded by the identity: a real totally geodesic
// isometry with a(c^2 - 1) = s^2, s/a integral, and c > 1 at the
// principal place, hence loxodromic with t + 1/t = 2c there.
struct WitnessBlock {
    FieldElement c, s, ratio;  // ratio = s/a
    unsigned n = 1;
    ExactQuatMatrix matrix;
};

// Searches integral witness data with coordinates bounded by height_bound:
// a box scan over sigma = s/a plus powers of the fundamental unit times
// small integers as candidate c values.  Returns the witness of minimal
// translation length found, or nullopt when the search space is exhausted.
std::optional<WitnessBlock> find_witness(const GroupSpec& spec, long height_bound);

// Fundamental solution of x^2 - d y^2 = +-1 with x, y > 0, by the
// continued fraction expansion of sqrt(d).
FieldElement fundamental_unit(const RealQuadraticField& k);

// Exact square root in the ring of integers, if one exists.
std::optional<FieldElement> sqrt_in_ring(const FieldElement& w, const RealQuadraticField& k);

struct CongruenceWitness {
    ExactQuatMatrix element;  // the witness power lying in the congruence subgroup
    unsigned long order = 1;  // its residue order m modulo the ideal
    double length = 0;        // m * l(witness): an upper bound for the systole
};

// Order of the witness matrix modulo every factor of I by exact residue
// iteration (least common multiple across factors), the corresponding
// exact power, and its length.  Throws std::runtime_error if an order cap
// is exceeded, which signals a residue-arithmetic bug.
CongruenceWitness congruence_witness(const WitnessBlock& w, const IdealSpec& ideal,
                                     const GroupSpec& spec);

double witness_length(const WitnessBlock& w, const GroupSpec& spec);

struct SweepRow {
    long prime_p = 0;
    long residue_r = -1;  // -1 for inert places
    Integer q;
    unsigned e = 1;
    Integer norm_ideal;
    Integer index;
    double lower_bound_norm = 0;
    bool lower_bound_valid = false;
    unsigned long witness_order = 0;
    double witness_length = 0;
    double trace_bound = 0;    // float image of the exact trace lower bound
    double trace_witness = 0;  // |Re tr| of the congruence witness power
};

struct SweepRefusal {
    long prime_p = 0;
    Integer norm_ideal;
    std::string reason;
};

struct SweepResult {
    WitnessBlock witness;
    std::vector<SweepRow> rows;          // ordered by (ideal norm, p)
    std::vector<SweepRefusal> refusals;  // excluded primes with reason tags
};

// One row per rational prime in [lo, hi], using one prime ideal above p
// (the smaller split residue when there are two).  Every row is checked
// against the sandwich lower <= witness length and the exact trace bound;
// violations throw std::logic_error.
SweepResult sweep(const GroupSpec& spec, long lo, long hi, const BadPlaceSet& bad,
                  long witness_height_bound = 40);

// CSV with the fixed column set; floats printed to 12 significant digits.
std::string sweep_to_csv(const SweepResult& result);

}  // namespace qsys
