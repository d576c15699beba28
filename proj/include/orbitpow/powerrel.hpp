#ifndef ORBITPOW_POWERREL_HPP
#define ORBITPOW_POWERREL_HPP

#include <optional>
#include <vector>

#include "orbitpow/dynamics.hpp"
#include "orbitpow/exactnum.hpp"
#include "orbitpow/poly.hpp"

namespace orbitpow {

// a^ell reproduces the tested value exactly; ell is never 0 or 1.
struct PowerWitness {
    long ell = 0;
    Rat base;
};

// Exact a^e for rational a (e may be negative; a = 0 needs e > 0).
Rat pow_rat(const Rat& a, long e);

// All ways to write beta = a^ell with a an S-integer and ell in Z \ {0,1},
// one canonical witness per admissible ell. Over Q, writing beta = u/w in
// lowest terms, ell >= 2 is admissible iff |u| and w are ell-th powers, w is
// supported in S, and beta > 0 when ell is even; ell = -m < 0 mirrors this
// with the roles of u and w swapped. Bases are positive when possible; for
// odd ell and beta < 0 the base is negative.
//
// Reporting order: positive exponents ascending, then exponents <= -2 by
// absolute value, then ell = -1 last (it only says that 1/beta is an
// S-integer, so reports bucket it separately).
//
// Special values: beta = 1 -> (2, 1); beta = -1 -> (3, -1); beta = 0 ->
// (2, 0); callers treat all three as trivial.
std::vector<PowerWitness> power_representations(const Rat& beta, const PrimeSet& s);

namespace detail {
// Same, on a fraction already in lowest terms (u != 0 or u = 0 for beta=0,
// w >= 1). Hot path for the search module.
std::vector<PowerWitness> power_reps_reduced(const Int& u, const Int& w, const PrimeSet& s);
// |n| with every prime in s divided out.
Int strip_s(const Int& n, const PrimeSet& s);
}  // namespace detail

enum class HitKind { U, V, TildeV };
std::string to_string(HitKind k);

// One solved relation: f(a) = base^ell (U), f^(n)(a) = base^ell a (V), or
// f^(n+k)(a) = base^ell f^(k)(a) (TildeV).
struct RelationHit {
    HitKind kind = HitKind::U;
    Rat alpha;
    long n = 1;
    long k = 0;
    PowerWitness witness;            // first witness in reporting order
    std::vector<PowerWitness> all_witnesses;
    bool trivial = false;            // tested value was 0 or +-1
    bool preperiodic = false;        // alpha itself is preperiodic under f
    bool unit_exponent_only = false; // every admissible exponent is -1
};

// Exact replay of the defining equation of a hit.
bool replay_hit(const Poly& f, const RelationHit& hit, long max_bits = kDefaultBitBudget);

std::optional<RelationHit> u_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                        long max_bits = kDefaultBitBudget);

// Scans n = 1..n_max for f^(n)(alpha)/alpha = a^ell; smallest n wins.
// Throws ZeroAlpha when alpha = 0.
std::optional<RelationHit> v_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                        long n_max, long max_bits = kDefaultBitBudget);

// Scans the (n, k) grid in lexicographic (k, n) order; k = 0 is exactly the
// V test. Orbit points f^(k)(alpha) = 0 are skipped (counted into
// zeros_skipped when given).
std::optional<RelationHit> tilde_v_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                              long n_max, long k_max,
                                              long max_bits = kDefaultBitBudget,
                                              long* zeros_skipped = nullptr);

}  // namespace orbitpow

#endif
