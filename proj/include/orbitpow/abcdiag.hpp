#ifndef ORBITPOW_ABCDIAG_HPP
#define ORBITPOW_ABCDIAG_HPP

#include <string>
#include <vector>

#include "orbitpow/exactnum.hpp"
#include "orbitpow/heights.hpp"
#include "orbitpow/poly.hpp"
#include "orbitpow/powerrel.hpp"

namespace orbitpow {

// Positive pairwise-coprime a + b = c.
struct AbcTriple {
    Int a, b, c;
    AbcTriple(Int a_, Int b_, Int c_);  // throws InvalidTriple
};

// q = log c / log rad(abc), radical computed exactly.
double abc_quality(const AbcTriple& t);

// Conductor-style readings attached to a V-hit f^(n)(alpha) = a^ell alpha
// with ell >= 2. radical_sum <= rhs_chain <= rhs_bound hold unconditionally
// once the relation holds; the Granville gap granville_lhs - radical_sum is
// reported without judgment (its conjectural bound has no computable form).
struct ConductorReading {
    double radical_sum = 0.0;    // sum log p, p outside S_f, v_p(f^(n)(alpha)) > 0
    double rhs_chain = 0.0;      // (1/2) h(f^(n)(alpha)) + h(alpha)
    double rhs_bound = 0.0;      // (d^n/2 + 1) h(alpha) + (d^n/2) c1
    double granville_lhs = 0.0;  // (d-1-eps) h(f^(n-1)(alpha))
    double eps = 0.0;
    bool chain_ok = false;       // radical_sum <= rhs_chain (+ slack)
    bool bound_ok = false;       // rhs_chain <= rhs_bound (+ slack)
};

ConductorReading conductor_reading(const Poly& f, const PrimeSet& s, const RelationHit& hit,
                                   double eps);  // throws WrongHitKind

struct GranvilleRow {
    Rat alpha;
    double height = 0.0;
    double radical_sum = 0.0;
    double lhs = 0.0;
    double gap = 0.0;  // lhs - radical_sum
};

// For every S_f-integer alpha of height <= log B with f(alpha) != 0, the
// pair (lhs, radical) and the running maximum of their gap: the empirical
// lower envelope of the conjectural constant. degree_shift picks the d-1
// (default) or d-2 homogenization normalization.
struct GranvilleScan {
    std::vector<GranvilleRow> rows;  // enumeration order
    double max_gap = 0.0;
    long scanned = 0;

    std::string csv() const;  // alpha,height,radical_sum,lhs,gap
};

GranvilleScan granville_scan(const Poly& f, const PrimeSet& s, long bound, double eps,
                             int degree_shift = 1, int workers = 1);

}  // namespace orbitpow

#endif
