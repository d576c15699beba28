#ifndef ORBITPOW_POLY_HPP
#define ORBITPOW_POLY_HPP

#include <string>
#include <vector>

#include "orbitpow/exactnum.hpp"

namespace orbitpow {

inline constexpr long kDefaultBitBudget = 1000000;

// Dense univariate polynomial over Q, coefficients c_0..c_d with c_d != 0.
// The zero polynomial is represented by an empty coefficient vector and has
// degree -1; dynamics operations that need degree >= 1 check explicitly.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);  // c_0, c_1, ..., trimmed

    static Poly zero() { return Poly(); }
    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, std::size_t power);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const Rat& coeff(std::size_t i) const;  // 0 past the degree
    const Rat& leading() const;             // throws on the zero polynomial
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    Rat operator()(const Rat& x) const;  // exact Horner evaluation

    Poly derivative() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    bool operator==(const Poly& o) const = default;

    std::string str() const;  // "X^3 - X^2 + 1" style, ASCII

private:
    std::vector<Rat> coeffs_;
};

// Accepts either a coefficient list "c0,c1,...,cd" or a symbolic string like
// "X^3-X^2+1", "2x^2*(...)" is not supported: terms only, +/- separated,
// coefficients integer or p/q.
Poly parse_poly(const std::string& text);

Poly compose(const Poly& outer, const Poly& inner);

Rat eval(const Poly& f, const Rat& x);

// Exact f^(n)(x); f^(0) = x. Throws BitsizeExceeded when an intermediate
// numerator or denominator outgrows max_bits.
Rat iterate_eval(const Poly& f, const Rat& x, long n, long max_bits = kDefaultBitBudget);

// Clears denominators: f = (1/denom) * sum a_i X^i with integer a_i whose
// gcd together with denom is 1, denom >= 1, sign carried by the a_i.
struct ClearedPoly {
    std::vector<Int> coeffs;  // a_0..a_d
    Int denom;                // e >= 1
};
ClearedPoly clear_denominators(const Poly& f);

// Res(f, g) over Q, by fraction-free elimination on the Sylvester matrix of
// the cleared integer polynomials, rescaled. Res with a zero argument is 0.
Rat resultant(const Poly& f, const Poly& g);

// disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f), d = deg f >= 1.
Rat discriminant(const Poly& f);

bool has_simple_roots(const Poly& f);  // disc != 0; degree-1 polys qualify

// Primes p with v_p(c_i) < 0 for some i, or v_p(c_d) > 0. Outside this set
// the reduction of f mod p has degree d and p-integral coefficients.
PrimeSet bad_reduction_primes(const Poly& f);

// S_f = S and the bad-reduction primes (the infinite place is implicit).
PrimeSet s_f(const Poly& f, const PrimeSet& s);

}  // namespace orbitpow

#endif
