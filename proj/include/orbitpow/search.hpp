#ifndef ORBITPOW_SEARCH_HPP
#define ORBITPOW_SEARCH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitpow/abcdiag.hpp"
#include "orbitpow/enumerate.hpp"
#include "orbitpow/powerrel.hpp"

namespace orbitpow {

struct SearchOptions {
    int workers = 0;          // 0: env override, then hardware
    long max_bits = kDefaultBitBudget;
    bool fill_diagnostics = true;  // conductor readings on V-hits with ell >= 2
    double eps = 0.5;              // for the granville_lhs diagnostic
    // V / tildeV scans clamp n_max here: iterate heights grow like
    // d^n (log B + c1), so deep iterates cannot match small bases anyway.
    // <= 0 disables the clamp.
    long n_cap = 12;
};

struct ReportedHit {
    long p = 0, q = 1;  // alpha = p/q, the enumeration key
    RelationHit hit;
    std::optional<ConductorReading> diag;

    long level() const { return std::max(p < 0 ? -p : p, q); }
    // excluded from stabilization curves: trivial values, preperiodic alpha,
    // and hits whose only exponent is -1
    bool nontrivial() const {
        return !hit.trivial && !hit.preperiodic && !hit.unit_exponent_only;
    }
};

struct SearchReport {
    std::string kind;  // "U", "V", "tildeV"
    Poly f;
    PrimeSet s;
    long bound = 0;
    long n_max = 0, k_max = 0;
    std::vector<ReportedHit> hits;                    // (q, p) order
    std::vector<std::pair<long, long>> stabilization;  // bound step -> cumulative nontrivial hits
    long skipped = 0;            // candidates aborted by the bit budget
    long zero_orbit_skips = 0;   // tildeV: orbit points equal to 0
    std::string precondition_warning;  // nonempty when theorem hypotheses fail

    long nontrivial_count() const;
    std::string json_lines() const;          // one hit per line
    std::string stabilization_csv() const;   // bound,cumulative_nontrivial_hits
};

SearchReport search_u(const Poly& f, const PrimeSet& s, long bound, const SearchOptions& opts = {});
SearchReport search_v(const Poly& f, const PrimeSet& s, long bound, long m,
                      const SearchOptions& opts = {});
SearchReport search_tilde_v(const Poly& f, const PrimeSet& s, long bound, long n_max, long k_max,
                            const SearchOptions& opts = {});

// r^2 - 2 s^2 = 1
struct PellPair {
    Int r, s;
};

enum class PellVariant { UFamily, VFamily };

// Pell pairs from (3,2) by r' = 3r + 4s, s' = 2r + 3s, each with its verified
// hit: f = 2 g(X)^2 (X^2 - 1) and f(r) = (2 g(r) s)^2 for the U family, or
// f = 2 X (X^2 - 1) and f(r)/r = (2s)^2 for the V family.
std::vector<std::pair<PellPair, RelationHit>> pell_family(long count, PellVariant variant,
                                                          const Poly& g = Poly::constant(Rat(1)));

}  // namespace orbitpow

#endif
