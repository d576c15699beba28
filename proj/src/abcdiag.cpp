#include "orbitpow/abcdiag.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "orbitpow/enumerate.hpp"

namespace orbitpow {

AbcTriple::AbcTriple(Int a_, Int b_, Int c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a < 1 || b < 1 || c < 1) throw InvalidTriple("abc triple entries must be >= 1");
    if (a + b != c) throw InvalidTriple("abc triple needs a + b = c");
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (g != 1) throw InvalidTriple("a, b not coprime");
    mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw InvalidTriple("b, c not coprime");
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    if (g != 1) throw InvalidTriple("a, c not coprime");
}

double abc_quality(const AbcTriple& t) {
    double log_rad = 0.0;
    for (const Int* part : {&t.a, &t.b, &t.c}) {
        if (*part == 1) continue;
        for (const auto& [p, e] : factor_int(*part)) {
            (void)e;
            log_rad += log_abs(p);  // pairwise coprime: no prime repeats across parts
        }
    }
    return log_abs(t.c) / log_rad;
}

ConductorReading conductor_reading(const Poly& f, const PrimeSet& s, const RelationHit& hit,
                                   double eps) {
    if (hit.kind != HitKind::V) throw WrongHitKind("conductor_reading needs a V-hit");
    if (hit.witness.ell < 2) throw WrongHitKind("conductor_reading needs exponent >= 2");
    const long d = f.degree();
    if (d < 2) throw DegreeTooSmall("conductor_reading needs degree >= 2");

    Rat prev = iterate_eval(f, hit.alpha, hit.n - 1);
    Rat value = f(prev);
    if (value == 0) throw WrongHitKind("conductor_reading needs nonzero orbit values");

    PrimeSet sf = s_f(f, s);
    HeightBound hb = height_bounds(f);
    const double dn = std::pow(static_cast<double>(d), static_cast<double>(hit.n));

    ConductorReading out;
    out.eps = eps;
    out.radical_sum = radical_log_outside(value, sf, true);
    out.rhs_chain = 0.5 * naive_height(value) + naive_height(hit.alpha);
    out.rhs_bound = (dn / 2.0 + 1.0) * naive_height(hit.alpha) + (dn / 2.0) * hb.c1;
    out.granville_lhs = (static_cast<double>(d) - 1.0 - eps) * naive_height(prev);
    out.chain_ok = out.radical_sum <= out.rhs_chain + 1e-9;
    out.bound_ok = out.rhs_chain <= out.rhs_bound + 1e-9;
    if (!out.chain_ok || !out.bound_ok)
        throw std::logic_error("unconditional conductor inequality violated; arithmetic bug");
    return out;
}

std::string GranvilleScan::csv() const {
    std::string out = "alpha,height,radical_sum,lhs,gap\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.12g,%.12g\n", row.height, row.radical_sum,
                      row.lhs, row.gap);
        out += to_string(row.alpha);
        out += buf;
    }
    return out;
}

GranvilleScan granville_scan(const Poly& f, const PrimeSet& s, long bound, double eps,
                             int degree_shift, int workers) {
    const long d = f.degree();
    if (d < 3) throw DegreeTooSmall("granville_scan needs degree >= 3");
    if (!has_simple_roots(f)) throw InvalidInput("granville_scan needs simple roots");
    if (degree_shift != 1 && degree_shift != 2)
        throw InvalidInput("degree_shift must be 1 (d-1-eps) or 2 (d-2-eps)");
    const double factor = static_cast<double>(d - degree_shift) - eps;

    PrimeSet sf = s_f(f, s);
    // the inequality is claimed for S_f-integer arguments only
    std::vector<std::vector<GranvilleRow>> per_q(static_cast<std::size_t>(bound));
    for_each_q_parallel(bound, workers, [&](long q) {
        auto& rows = per_q[static_cast<std::size_t>(q - 1)];
        if (q > 1 && !is_s_integer(make_rat(1, q), sf)) return;  // no alpha with this denominator
        for (long p = -bound; p <= bound; ++p) {
            if (q > 1 && std::gcd(p < 0 ? -p : p, q) != 1) continue;
            Rat alpha = make_rat(p, q);
            Rat value = f(alpha);
            if (value == 0) continue;
            GranvilleRow row;
            row.alpha = alpha;
            row.height = naive_height(alpha);
            row.radical_sum = radical_log_outside(value, sf, true);
            row.lhs = factor * row.height;
            row.gap = row.lhs - row.radical_sum;
            rows.push_back(std::move(row));
        }
    });

    GranvilleScan out;
    bool first = true;
    for (auto& rows : per_q)
        for (auto& row : rows) {
            if (first || row.gap > out.max_gap) out.max_gap = row.gap;
            first = false;
            out.rows.push_back(std::move(row));
            ++out.scanned;
        }
    return out;
}

}  // namespace orbitpow
