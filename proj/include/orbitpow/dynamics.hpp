#ifndef ORBITPOW_DYNAMICS_HPP
#define ORBITPOW_DYNAMICS_HPP

#include <string>
#include <vector>

#include "orbitpow/heights.hpp"
#include "orbitpow/poly.hpp"

namespace orbitpow {

enum class OrbitKind { Periodic, StrictlyPreperiodic, Wandering };

std::string to_string(OrbitKind k);

// Total decision procedure for the orbit of a point: iterate exactly until
// either a value repeats (preperiodic, tail recorded) or the height passes
// the escape threshold T(f) = d c_low / (d-1) + slack, after which the
// one-step lower bound forces strict height growth (wandering certificate).
struct OrbitClassification {
    OrbitKind kind = OrbitKind::Wandering;
    std::vector<Rat> tail;         // distinct orbit values up to the first repeat
    double witness_height = 0.0;   // first orbit height past the threshold (Wandering)
    long steps = 0;
};

OrbitClassification classify_orbit(const Poly& f, const Rat& start, long max_bits = kDefaultBitBudget);

// Same procedure started at 0; realizes the Per / PrePer\Per / Wander split.
using ZeroClassification = OrbitClassification;
ZeroClassification classify_zero(const Poly& f, long max_bits = kDefaultBitBudget);

bool is_preperiodic(const Poly& f, const Rat& x, long max_bits = kDefaultBitBudget);

// X^n (X^m - 1) + zeta, n,m >= 1, n+m >= 3, zeta = 1 or (zeta = -1, m even).
// The orbit of 0 is 0 -> zeta -> zeta, so 0 is strictly preperiodic.
Poly family_a(long n, long m, int zeta);

// X^k (X - b) + b, k >= 2, b != 0, b^k k^k != (k+1)^(k+1). Orbit of 0 is
// 0 -> b -> b.
Poly family_b(long k, const Rat& b);

// All rational roots of f(X) - beta, exactly (rational-root theorem on the
// cleared polynomial).
std::vector<Rat> rational_preimages(const Poly& f, const Rat& beta);

enum class TheoremId {
    UFiniteness,    // deg >= 3, simple roots
    VmFiniteness,   // + f^(k)(0) != 0 for k = 1..m
    V0Finiteness,   // + 0 strictly preperiodic
    AbcConditional  // + 0 not periodic
};

struct PreconditionReport {
    bool degree_ok = false;
    bool simple_roots_ok = false;
    bool zero_condition_ok = false;
    std::string zero_condition_kind;
    std::string details;
    bool all_ok() const { return degree_ok && simple_roots_ok && zero_condition_ok; }
};

PreconditionReport precondition_report(const Poly& f, TheoremId which, long m = 1);

}  // namespace orbitpow

#endif
