#include "orbitpow/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace orbitpow {

Rat make_rat(long num, long den) {
    if (den == 0) throw InvalidInput("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw InvalidInput("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; }), s.end());
    if (!s.empty() && s[0] == '+') s.erase(s.begin());
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        std::string den_text = s.substr(slash + 1);
        if (!den_text.empty() && den_text[0] == '+') den_text.erase(den_text.begin());
        Int n(s.substr(0, slash));
        Int d(den_text);
        if (d == 0) throw ParseError("zero denominator in '" + text + "'");
        return make_rat(n, d);
    } catch (const std::invalid_argument&) {
        throw ParseError("cannot parse rational '" + text + "'");
    }
}

std::string to_string(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Int& x) { return x.get_str(); }

double log_abs(const Int& x) {
    if (x == 0) throw ZeroInput("log_abs(0)");
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

long Valuation::value() const {
    if (inf_) throw InvalidInput("valuation is +infinity");
    return v_;
}

PrimeSet::PrimeSet(std::vector<Int> primes) {
    for (auto& p : primes) insert(p);
}

PrimeSet PrimeSet::parse(const std::string& csv) {
    PrimeSet s;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        if (item.empty()) continue;
        try {
            s.insert(Int(item));
        } catch (const std::invalid_argument&) {
            throw ParseError("cannot parse prime '" + item + "'");
        }
    }
    return s;
}

void PrimeSet::insert(const Int& p) {
    if (!is_prime(p)) throw InvalidInput(p.get_str() + " is not prime");
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it != primes_.end() && *it == p) return;
    primes_.insert(it, p);
}

bool PrimeSet::contains(const Int& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

PrimeSet PrimeSet::union_with(const PrimeSet& other) const {
    PrimeSet out = *this;
    for (const auto& p : other.primes_) {
        auto it = std::lower_bound(out.primes_.begin(), out.primes_.end(), p);
        if (it == out.primes_.end() || *it != p) out.primes_.insert(it, p);
    }
    return out;
}

bool PrimeSet::subset_of(const PrimeSet& other) const {
    return std::includes(other.primes_.begin(), other.primes_.end(), primes_.begin(), primes_.end());
}

std::string PrimeSet::str() const {
    std::string out;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) out += ",";
        out += primes_[i].get_str();
    }
    return out;
}

Rat FactoredRational::value() const {
    if (sign == 0) return Rat(0);
    Int num = 1, den = 1, pe;
    for (const auto& [p, e] : factors) {
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
        if (e > 0)
            num *= pe;
        else
            den *= pe;
    }
    if (sign < 0) num = -num;
    return make_rat(num, den);
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // GMP >= 6.2: BPSW plus extra Miller-Rabin rounds. Deterministic below
    // 2^64, no known pseudoprime above.
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
    // Brent's variant. n must be odd, composite, not a prime power handled
    // upstream being unnecessary: any nontrivial factor will do.
    for (unsigned long c = 1;; ++c) {
        Int y = 2, d = 1, diff;
        unsigned long power = 1, lam = 0;
        Int saved_y = y;
        while (d == 1) {
            if (lam == power) {
                saved_y = y;
                power *= 2;
                lam = 0;
            }
            // y = y^2 + c mod n
            y = y * y + c;
            mpz_mod(y.get_mpz_t(), y.get_mpz_t(), n.get_mpz_t());
            ++lam;
            diff = y - saved_y;
            if (diff == 0) break;  // cycle without factor, retry with new c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n && d != 0) return d;
    }
}

void factor_rec(const Int& n, std::map<Int, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, long>> factor_int(const Int& n, unsigned long trial_bound) {
    if (n == 0) throw ZeroInput("factor_int(0)");
    Int m = abs(n);
    std::map<Int, long> acc;
    for (unsigned long p = 2; p <= trial_bound && m > 1; p = (p == 2 ? 3 : p + 2)) {
        // past sqrt(m) the remainder is prime
        if (Int(p) * p > m) break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e) acc[Int(p)] += static_cast<long>(e);
    }
    if (m > 1) factor_rec(m, acc);
    return {acc.begin(), acc.end()};
}

long valuation_nonzero(const Int& n, const Int& p) {
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Valuation valuation(const Rat& x, const Int& p) {
    if (!is_prime(p)) throw InvalidInput("valuation: " + p.get_str() + " is not prime");
    if (x == 0) return Valuation::infinity();
    long vn = valuation_nonzero(x.get_num(), p);
    if (vn > 0) return Valuation::finite(vn);  // reduced fraction: p cannot also divide the denominator
    long vd = valuation_nonzero(x.get_den(), p);
    return Valuation::finite(-vd);
}

FactoredRational factor(const Rat& x) {
    if (x == 0) throw ZeroInput("factor(0)");
    FactoredRational out;
    out.sign = sgn(x) > 0 ? 1 : -1;
    Int num = abs(x.get_num());
    if (num != 1)
        for (const auto& [p, e] : factor_int(num)) out.factors[p] += e;
    if (x.get_den() != 1)
        for (const auto& [p, e] : factor_int(x.get_den())) out.factors[p] -= e;
    std::erase_if(out.factors, [](const auto& kv) { return kv.second == 0; });
    return out;
}

bool is_s_integer(const Rat& x, const PrimeSet& s) {
    if (x == 0) return true;
    Int den = x.get_den();
    for (const auto& p : s.primes()) {
        while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
            mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
    }
    return den == 1;
}

bool is_s_unit(const Rat& x, const PrimeSet& s) {
    if (x == 0) return false;
    return is_s_integer(x, s) && is_s_integer(Rat(1) / x, s);
}

double radical_log_outside(const Rat& x, const PrimeSet& s, bool positive_only) {
    if (x == 0) throw ZeroInput("radical_log_outside(0)");
    double sum = 0.0;
    Int num = abs(x.get_num());
    if (num != 1)
        for (const auto& [p, e] : factor_int(num)) {
            (void)e;
            if (!s.contains(p)) sum += log_abs(p);
        }
    if (!positive_only && x.get_den() != 1)
        for (const auto& [p, e] : factor_int(x.get_den())) {
            (void)e;
            if (!s.contains(p)) sum += log_abs(p);
        }
    return sum;
}

}  // namespace orbitpow
