// Acceptance suite: end-to-end checks with hard runtime ceilings, one
// pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "orbitpow/abcdiag.hpp"
#include "orbitpow/dynamics.hpp"
#include "orbitpow/heights.hpp"
#include "orbitpow/powerrel.hpp"
#include "orbitpow/search.hpp"

using namespace orbitpow;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

long rnd(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// --- 1: Pell families ------------------------------------------------------

Outcome pell_families() {
    auto ufam = pell_family(10, PellVariant::UFamily, parse_poly("X"));
    auto vfam = pell_family(10, PellVariant::VFamily);
    if (ufam.size() != 10 || vfam.size() != 10) return {false, "wrong family size"};

    Poly fu = parse_poly("0,0,-2,0,2");  // 2X^2(X^2-1)
    Poly fv = parse_poly("2X^3-2X");     // 2X(X^2-1)
    Int prev_r = 0;
    for (int i = 0; i < 10; ++i) {
        const auto& [up, uh] = ufam[static_cast<std::size_t>(i)];
        const auto& [vp, vh] = vfam[static_cast<std::size_t>(i)];
        if (up.r * up.r - 2 * up.s * up.s != 1) return {false, "U pair misses the conic"};
        if (vp.r * vp.r - 2 * vp.s * vp.s != 1) return {false, "V pair misses the conic"};
        if (up.r <= prev_r) return {false, "pairs must grow"};
        prev_r = up.r;
        // f(r) = (2 r s)^2 exactly
        Rat expected_u = pow_rat(Rat(2) * Rat(up.r) * Rat(up.s), 2);
        if (fu(Rat(up.r)) != expected_u) return {false, "U identity failed at r=" + up.r.get_str()};
        if (pow_rat(uh.witness.base, uh.witness.ell) != expected_u) return {false, "U witness broken"};
        // f(r)/r = (2 s)^2 exactly
        Rat expected_v = pow_rat(Rat(2) * Rat(vp.s), 2);
        if (fv(Rat(vp.r)) / Rat(vp.r) != expected_v)
            return {false, "V identity failed at r=" + vp.r.get_str()};
        if (pow_rat(vh.witness.base, vh.witness.ell) * vh.alpha != fv(Rat(vp.r)))
            return {false, "V witness broken"};
    }
    return {true, "10 pairs from (3,2); both family identities replay exactly (last r=" +
                      prev_r.get_str() + ")"};
}

// --- 2: family preconditions ------------------------------------------------

Outcome family_preconditions() {
    Poly fa = family_a(2, 1, 1);
    if (fa != parse_poly("X^3-X^2+1")) return {false, "family_a(2,1,1) is not X^3-X^2+1"};
    if (discriminant(fa) != -23) return {false, "disc(X^3-X^2+1) != -23"};
    auto rep = precondition_report(fa, TheoremId::V0Finiteness);
    if (!rep.all_ok()) return {false, "family_a(2,1,1) fails the V0 hypotheses: " + rep.details};
    auto cls = classify_zero(fa);
    if (cls.kind != OrbitKind::StrictlyPreperiodic || cls.tail != std::vector<Rat>{Rat(0), Rat(1)})
        return {false, "orbit of 0 under family_a(2,1,1) is not 0 -> 1 -> 1"};

    Poly fb = family_b(2, Rat(2));
    auto repb = precondition_report(fb, TheoremId::V0Finiteness);
    if (!repb.all_ok()) return {false, "family_b(2,2) fails the V0 hypotheses: " + repb.details};
    auto clsb = classify_zero(fb);
    if (clsb.kind != OrbitKind::StrictlyPreperiodic || clsb.tail != std::vector<Rat>{Rat(0), Rat(2)})
        return {false, "orbit of 0 under family_b(2,2) is not 0 -> 2 -> 2"};

    auto repc = precondition_report(parse_poly("0,0,-2,0,2"), TheoremId::UFiniteness);
    if (repc.simple_roots_ok) return {false, "2X^2(X^2-1) must fail the simple-roots check"};
    return {true, "family_a(2,1,1) and family_b(2,2) pass V0 (disc -23, orbits 0->1->1 and "
                  "0->2->2); 2X^2(X^2-1) fails simple roots"};
}

// --- 3: power-representation oracle equivalence ------------------------------

Outcome power_oracle_equivalence() {
    const long box = 200, ell_bound = 8;
    long checked = 0;
    for (const char* s_text : {"", "2", "2,3"}) {
        PrimeSet s = PrimeSet::parse(s_text);

        // oracle: enumerate bases and exponents, collect beta -> exponent set
        std::vector<long> dens;
        for (long y = 1; y <= box; ++y) {
            long stripped = y;
            for (const auto& p : s.primes()) {
                long pl = p.get_si();
                while (stripped % pl == 0) stripped /= pl;
            }
            if (stripped == 1) dens.push_back(y);
        }
        std::map<Rat, std::set<long>> table;
        for (long y : dens)
            for (long x = -box; x <= box; ++x) {
                if (x == 0 || std::gcd(x < 0 ? -x : x, y) != 1) continue;
                Rat a = make_rat(x, y);
                for (long ell = -ell_bound; ell <= ell_bound; ++ell) {
                    if (ell == 0 || ell == 1) continue;
                    Rat beta = pow_rat(a, ell);
                    if (abs(beta.get_num()) <= box && beta.get_den() <= box) table[beta].insert(ell);
                }
            }

        for (long q = 1; q <= box; ++q)
            for (long p = -box; p <= box; ++p) {
                if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
                Rat beta = make_rat(p, q);
                auto reps = power_representations(beta, s);
                if (beta == 0 || beta == 1 || beta == -1) {
                    // canonicalized specials; just replay them
                    if (reps.size() != 1 || pow_rat(reps[0].base, reps[0].ell) != beta)
                        return {false, "special value " + to_string(beta) + " broken"};
                    continue;
                }
                std::set<long> mine;
                for (const auto& w : reps) {
                    if (pow_rat(w.base, w.ell) != beta)
                        return {false, "witness fails to replay at " + to_string(beta)};
                    if (!is_s_integer(w.base, s))
                        return {false, "witness base outside R_S at " + to_string(beta)};
                    if (std::labs(w.ell) <= ell_bound) mine.insert(w.ell);
                }
                auto it = table.find(beta);
                std::set<long> oracle = it == table.end() ? std::set<long>{} : it->second;
                if (mine != oracle) {
                    std::ostringstream msg;
                    msg << "mismatch at beta=" << to_string(beta) << " S={" << s.str() << "}";
                    return {false, msg.str()};
                }
                ++checked;
            }
    }
    return {true, std::to_string(checked) + " values against the brute-force oracle, 0 mismatches"};
}

// --- 4: valuation dynamics ----------------------------------------------------

Outcome valuation_dynamics() {
    std::mt19937_64 rng(20240817);
    const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    long done = 0;
    while (done < 1000) {
        long d = rnd(rng, 2, 4);
        std::vector<Rat> c;
        for (long j = 0; j <= d; ++j) c.push_back(make_rat(rnd(rng, -20, 20), rnd(rng, 1, 6)));
        if (c.back() == 0) c.back() = 1;
        Poly f(c);
        long p = primes[rng() % 9];
        if (bad_reduction_primes(f).contains(p)) continue;
        long j = rnd(rng, 1, 2);
        Int pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
        long x = rnd(rng, 1, 40);
        while (x % p == 0) ++x;
        Rat alpha = make_rat(Int(rng() % 2 ? x : -x), pj);
        if (valuation(f(alpha), p).value() != -d * j)
            return {false, "one-step valuation law failed (d=" + std::to_string(d) + ")"};
        if (valuation(iterate_eval(f, alpha, 3), p).value() != -d * d * d * j)
            return {false, "three-step valuation law failed (d=" + std::to_string(d) + ")"};
        ++done;
    }
    return {true, "1000 random (f, p, alpha) with v_p(alpha) < 0: v_p(f(a)) = d v_p(a) and "
                  "v_p(f^(3)(a)) = d^3 v_p(a) exactly"};
}

// --- 5: height sandwich ---------------------------------------------------------

Outcome height_sandwich() {
    std::mt19937_64 rng(5150);
    const double slack = 1e-9;
    long samples = 0;
    for (const char* spec : {"X^3-X^2+1", "1/6X^3+5"}) {
        Poly f = parse_poly(spec);
        HeightBound hb = height_bounds(f);
        for (int i = 0; i < 5000; ++i) {
            Rat x = make_rat(rnd(rng, -500, 500), rnd(rng, 1, 500));
            long k = rnd(rng, 1, 4);
            Rat v = iterate_eval(f, x, k);
            double dk = std::pow(3.0, static_cast<double>(k));
            double h = naive_height(v), base = dk * naive_height(x);
            if (h > base + dk * hb.c1 + slack || h < base - dk * hb.c1 - slack) {
                std::ostringstream msg;
                msg << "sandwich failed: f=" << spec << " alpha=" << to_string(x) << " k=" << k;
                return {false, msg.str()};
            }
            ++samples;
        }
    }
    return {true, "10000 random (alpha, k <= 4) over both polynomials stay inside "
                  "d^k h(a) +/- d^k c1"};
}

// --- 6: canonical height -------------------------------------------------------

Outcome canonical_height_checks() {
    auto pure = canonical_height(parse_poly("X^3"), Rat(2), 1e-9);
    if (std::fabs(pure.value - std::log(2.0)) > 1e-9)
        return {false, "hhat_{X^3}(2) missed log 2"};

    Poly f = parse_poly("X^3-X^2+1");
    HeightBound hb = height_bounds(f);
    auto fixed = canonical_height(f, hb, Rat(1), 1e-8);
    if (std::fabs(fixed.value) > fixed.error) return {false, "hhat(fixed point) != 0"};
    auto fixed2 = canonical_height(parse_poly("X^3-2X^2+2"), Rat(2), 1e-8);
    if (std::fabs(fixed2.value) > fixed2.error) return {false, "hhat(fixed point 2) != 0"};

    std::mt19937_64 rng(606);
    for (int i = 0; i < 100; ++i) {
        Rat x = make_rat(rnd(rng, -30, 30), rnd(rng, 1, 30));
        auto h1 = canonical_height(f, hb, f(x), 2e-5);
        auto h2 = canonical_height(f, hb, x, 2e-5);
        if (std::fabs(h1.value - 3.0 * h2.value) > h1.error + 3.0 * h2.error + 1e-12) {
            return {false, "hhat(f(a)) != 3 hhat(a) at a = " + to_string(x)};
        }
    }
    return {true, "hhat_{X^3}(2) = log 2 within 1e-9; fixed points vanish; hhat(f(a)) = 3 hhat(a) "
                  "for 100 random points within combined error"};
}

// --- 7: conductor chain ----------------------------------------------------------

Outcome conductor_chain() {
    Poly f = parse_poly("X^3-X^2+1");
    PrimeSet s2 = PrimeSet::parse("2");
    auto rep = search_v(f, s2, 100, 3);
    bool found_four = false;
    long verified = 0;
    for (const auto& rh : rep.hits) {
        if (!rh.nontrivial() || rh.hit.witness.ell < 2) continue;
        if (!rh.diag) return {false, "nontrivial V-hit without a conductor reading"};
        if (!rh.diag->chain_ok || !rh.diag->bound_ok)
            return {false, "conductor inequality failed at alpha = " + to_string(rh.hit.alpha)};
        if (rh.diag->radical_sum > rh.diag->rhs_chain + 1e-9 ||
            rh.diag->rhs_chain > rh.diag->rhs_bound + 1e-9)
            return {false, "reported slacks disagree at alpha = " + to_string(rh.hit.alpha)};
        ++verified;
        if (rh.hit.alpha == 4 && rh.hit.n == 1 && rh.hit.witness.ell == 2 &&
            rh.hit.witness.base == make_rat(7, 2))
            found_four = true;
    }
    if (!found_four) return {false, "expected hit alpha=4, (n,ell,a) = (1,2,7/2) missing"};
    return {true, std::to_string(verified) +
                      " nontrivial V-hits all satisfy both conductor inequalities; "
                      "alpha=4 with (1, 2, 7/2) present"};
}

// --- 8: stabilization evidence -----------------------------------------------------

Outcome stabilization_evidence() {
    Poly f = parse_poly("X^3-X^2+1");
    auto small = search_u(f, PrimeSet{}, 100);
    auto big = search_u(f, PrimeSet{}, 10000);
    long c100 = small.nontrivial_count();
    long c1k = -1, c10k = -1;
    for (const auto& [b, c] : big.stabilization) {
        if (b == 1000) c1k = c;
        if (b == 10000) c10k = c;
    }
    if (c1k < 0 || c10k < 0) return {false, "stabilization steps missing"};
    std::ostringstream msg;
    msg << "nontrivial counts " << c100 << " @1e2, " << c1k << " @1e3, " << c10k
        << " @1e4 (evidence of finiteness, not proof)";
    if (c1k != c10k) return {false, "count moved between 1e3 and 1e4: " + msg.str()};
    return {true, msg.str()};
}

// --- 9: determinism -----------------------------------------------------------------

Outcome determinism() {
    Poly f = parse_poly("X^3-X^2+1");
    SearchOptions w1, w4;
    w1.workers = 1;
    w4.workers = 4;

    auto u1 = search_u(f, PrimeSet{}, 300, w1);
    auto u4 = search_u(f, PrimeSet{}, 300, w4);
    if (u1.json_lines() != u4.json_lines()) return {false, "U-search bytes differ across workers"};
    if (u1.stabilization_csv() != u4.stabilization_csv())
        return {false, "U stabilization differs across workers"};

    auto v1 = search_v(f, PrimeSet::parse("2"), 60, 2, w1);
    auto v4 = search_v(f, PrimeSet::parse("2"), 60, 2, w4);
    if (v1.json_lines() != v4.json_lines()) return {false, "V-search bytes differ across workers"};

    auto t1 = search_tilde_v(parse_poly("2X^3-2X"), PrimeSet{}, 40, 2, 1, w1);
    auto t4 = search_tilde_v(parse_poly("2X^3-2X"), PrimeSet{}, 40, 2, 1, w4);
    if (t1.json_lines() != t4.json_lines()) return {false, "tildeV bytes differ across workers"};
    return {true, "U, V and tildeV searches emit byte-identical JSON lines with 1 and 4 workers"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: no stated limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "pell-families", 1.0, pell_families},
        {2, "family-preconditions", 1.0, family_preconditions},
        {3, "power-oracle-equivalence", 60.0, power_oracle_equivalence},
        {4, "valuation-dynamics", 10.0, valuation_dynamics},
        {5, "height-sandwich", 30.0, height_sandwich},
        {6, "canonical-height", 0.0, canonical_height_checks},
        {7, "conductor-chain", 60.0, conductor_chain},
        {8, "stabilization-evidence", 600.0, stabilization_evidence},
        {9, "determinism", 0.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.pass && c.limit_s > 0 && secs > c.limit_s) {
            out.pass = false;
            out.detail += " [exceeded " + std::to_string(c.limit_s) + " s limit]";
        }
        std::printf("[%s] %d %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
