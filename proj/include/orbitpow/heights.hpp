#ifndef ORBITPOW_HEIGHTS_HPP
#define ORBITPOW_HEIGHTS_HPP

#include "orbitpow/exactnum.hpp"
#include "orbitpow/poly.hpp"

namespace orbitpow {

// Comparisons against certified real bounds always carry this slack.
inline constexpr double kHeightSlack = 1e-12;

double log_plus(double t);

// h(p/q) = log max(|p|, q) for a reduced fraction; h(0) = 0.
double naive_height(const Rat& x);

// Effective one-step constants for the map beta -> f(beta):
//   d h(beta) - c_low <= h(f(beta)) <= d h(beta) + c_up    for all beta in Q.
// c_up comes from coefficient sizes; c_low from the cofactor identities of
// the homogenized pair (elimination through the Sylvester-type matrix, whose
// determinant also bounds the numerator/denominator cancellation).
// c1 = max(c_up, c_low) / (d - 1) makes the k-step sandwich
//   d^k h(a) - d^k c1 <= h(f^(k)(a)) <= d^k h(a) + d^k c1
// hold for every k >= 1 by telescoping the geometric series.
struct HeightBound {
    long degree = 0;
    double c_up = 0.0;
    double c_low = 0.0;
    double c1 = 0.0;
    double one_step() const { return c_up > c_low ? c_up : c_low; }
};

HeightBound height_bounds(const Poly& f);  // throws DegreeTooSmall if deg < 2

// Estimate with a certified enclosure: the true value lies within
// [value - error, value + error].
struct HeightEstimate {
    double value = 0.0;
    double error = 0.0;
    long steps = 0;  // orbit depth actually used
};

// hhat_f(x) = lim h(f^(n)(x)) / d^n, computed by exact iteration with the
// telescoping tail bound  max(c_up,c_low) / ((d-1) d^n).  The iteration
// stops early (with an honestly larger error) if orbit values would outgrow
// max_bits.
HeightEstimate canonical_height(const Poly& f, const Rat& x, double tol,
                                long max_bits = 1L << 25);
HeightEstimate canonical_height(const Poly& f, const HeightBound& hb, const Rat& x, double tol,
                                long max_bits = 1L << 25);

}  // namespace orbitpow

#endif
