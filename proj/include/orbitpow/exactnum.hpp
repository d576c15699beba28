#ifndef ORBITPOW_EXACTNUM_HPP
#define ORBITPOW_EXACTNUM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "orbitpow/errors.hpp"

namespace orbitpow {

// All exact arithmetic rides on GMP. mpq_class keeps fractions in lowest
// terms with a positive denominator, which is exactly the Rational contract.
using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);

// "p/q" or "p" (ASCII, optional leading -).
Rat parse_rational(const std::string& text);
std::string to_string(const Rat& x);
std::string to_string(const Int& x);

// log |x| computed from (mantissa, exponent) so million-bit integers do not
// overflow a double. x must be nonzero.
double log_abs(const Int& x);

// v_p(x): finite integer for x != 0, +infinity for x = 0.
class Valuation {
public:
    static Valuation finite(long v) { return Valuation{v, false}; }
    static Valuation infinity() { return Valuation{0, true}; }

    bool is_infinity() const { return inf_; }
    long value() const;  // throws on +infinity

    bool operator==(const Valuation& o) const = default;

private:
    Valuation(long v, bool inf) : v_(v), inf_(inf) {}
    long v_;
    bool inf_;
};

// Finite sorted set of rational primes. Insertion checks primality.
class PrimeSet {
public:
    PrimeSet() = default;
    explicit PrimeSet(std::vector<Int> primes);
    static PrimeSet parse(const std::string& csv);  // "2,3,7"; "" is empty

    void insert(const Int& p);  // throws InvalidInput unless p is prime
    bool contains(const Int& p) const;
    PrimeSet union_with(const PrimeSet& other) const;
    bool subset_of(const PrimeSet& other) const;

    const std::vector<Int>& primes() const { return primes_; }
    bool empty() const { return primes_.empty(); }
    std::size_t size() const { return primes_.size(); }
    std::string str() const;

    bool operator==(const PrimeSet& o) const = default;

private:
    std::vector<Int> primes_;  // sorted, unique
};

// sign * prod p^e, exponents nonzero. Reassembles to the original Rat.
struct FactoredRational {
    int sign = 0;  // -1, 0, +1
    std::map<Int, long> factors;

    Rat value() const;
};

bool is_prime(const Int& n);

// Prime factorization of |n|, n != 0: trial division up to the configured
// bound, then Pollard rho with a BPSW primality check on the cofactors.
std::vector<std::pair<Int, long>> factor_int(const Int& n, unsigned long trial_bound = 1000000);

Valuation valuation(const Rat& x, const Int& p);
long valuation_nonzero(const Int& n, const Int& p);  // n != 0

FactoredRational factor(const Rat& x);  // throws ZeroInput

// v_p(x) >= 0 for every prime p outside S (0 counts as an S-integer).
bool is_s_integer(const Rat& x, const PrimeSet& s);
// x != 0 and v_p(x) = 0 for every prime p outside S.
bool is_s_unit(const Rat& x, const PrimeSet& s);

// Sum of log p over primes p outside S with v_p(x) > 0 (or v_p(x) != 0 when
// positive_only is false). Over Q the uniformizer at p is p itself, so each
// place contributes exactly log p.
double radical_log_outside(const Rat& x, const PrimeSet& s, bool positive_only);

}  // namespace orbitpow

#endif
