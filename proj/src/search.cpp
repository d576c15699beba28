#include "orbitpow/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "orbitpow/dynamics.hpp"

namespace orbitpow {

namespace {

long iabs(long x) { return x < 0 ? -x : x; }

// f(p/q) = N / (e q^d) before reduction, N = sum a_i p^i q^(d-i).
// Pure-int64 evaluation is used whenever sum|a_i| B^d and e B^d stay below
// 2^62; otherwise everything runs on mpz with reused temporaries.
struct EvalContext {
    ClearedPoly cp;
    long degree = 0;
    bool use64 = false;
    std::vector<long> a64;
    long e64 = 1;
    std::vector<long> sprimes64;  // valid only if s64_ok
    bool s64_ok = false;

    EvalContext(const Poly& f, long bound, const PrimeSet& s) : cp(clear_denominators(f)) {
        degree = f.degree();
        Int bd;
        mpz_ui_pow_ui(bd.get_mpz_t(), static_cast<unsigned long>(bound), static_cast<unsigned long>(degree));
        Int sum_abs = 0;
        for (const auto& ai : cp.coeffs) sum_abs += abs(ai);
        Int lim = sum_abs > cp.denom ? sum_abs : cp.denom;
        lim *= bd;
        if (mpz_sizeinbase(lim.get_mpz_t(), 2) <= 62 && cp.denom.fits_slong_p()) {
            use64 = true;
            e64 = cp.denom.get_si();
            for (const auto& ai : cp.coeffs) a64.push_back(ai.get_si());
        }
        s64_ok = true;
        for (const auto& p : s.primes()) {
            if (!p.fits_slong_p()) {
                s64_ok = false;
                break;
            }
            sprimes64.push_back(p.get_si());
        }
        if (!s64_ok) use64 = false;
    }
};

long strip64(long n, const std::vector<long>& primes) {
    for (long p : primes)
        while (n != 1 && n % p == 0) n /= p;
    return n;
}

// Per-q scratch for the U search.
struct QScratch {
    std::vector<Int> qpow;
    Int den, acc, term, g, u, w;
    std::vector<long> qpow64;
    long den64 = 1;

    void set_q(const EvalContext& ctx, long q) {
        const std::size_t d = static_cast<std::size_t>(ctx.degree);
        if (ctx.use64) {
            qpow64.assign(d + 1, 1);
            for (std::size_t i = 1; i <= d; ++i) qpow64[i] = qpow64[i - 1] * q;
            den64 = ctx.e64 * qpow64[d];
        } else {
            qpow.assign(d + 1, Int(1));
            for (std::size_t i = 1; i <= d; ++i) qpow[i] = qpow[i - 1] * q;
            den = ctx.cp.denom * qpow[d];
        }
    }

    void eval64(const EvalContext& ctx, long p, long& u_out, long& w_out) {
        const std::size_t d = static_cast<std::size_t>(ctx.degree);
        long acc_val = ctx.a64[d];
        for (std::size_t i = d; i-- > 0;) acc_val = acc_val * p + ctx.a64[i] * qpow64[d - i];
        long gg = std::gcd(iabs(acc_val), den64);
        u_out = acc_val / gg;
        w_out = den64 / gg;
    }

    void evalz(const EvalContext& ctx, long p, Int& u_out, Int& w_out) {
        const std::size_t d = static_cast<std::size_t>(ctx.degree);
        acc = ctx.cp.coeffs[d];
        for (std::size_t i = d; i-- > 0;) {
            acc *= p;
            if (ctx.cp.coeffs[i] != 0) {
                term = ctx.cp.coeffs[i] * qpow[d - i];
                acc += term;
            }
        }
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), den.get_mpz_t());
        mpz_divexact(u_out.get_mpz_t(), acc.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(w_out.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
    }
};

std::vector<std::pair<long, long>> stabilization_steps(long bound,
                                                       const std::vector<ReportedHit>& hits) {
    std::vector<long> steps;
    if (bound <= 10) {
        for (long b = 1; b <= bound; ++b) steps.push_back(b);
    } else {
        for (long k = 1; k <= 10; ++k) steps.push_back(bound * k / 10);
        steps.back() = bound;
    }
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    std::vector<std::pair<long, long>> out;
    for (long b : steps) {
        long count = 0;
        for (const auto& rh : hits)
            if (rh.nontrivial() && rh.level() <= b) ++count;
        out.emplace_back(b, count);
    }
    return out;
}

void check_v_hit_invariants(const Poly& f, const PrimeSet& s, const ReportedHit& rh,
                            long max_bits) {
    const RelationHit& hit = rh.hit;
    if (!replay_hit(f, hit, max_bits)) throw std::logic_error("search hit failed exact replay");
    if (hit.kind != HitKind::V || hit.trivial || hit.witness.ell < 2) return;
    PrimeSet sf = s_f(f, s);
    // exponent >= 2 forces alpha into the S_f-integers (valuation law)
    if (!is_s_integer(hit.alpha, sf))
        throw std::logic_error("V-hit with ell >= 2 and alpha not an S_f-integer");
    // positive valuation of alpha outside S_f must show up in f^(n)(0)
    Rat fn0 = iterate_eval(f, Rat(0), hit.n, max_bits);
    Int num = abs(hit.alpha.get_num());
    if (num != 1)
        for (const auto& [p, e] : factor_int(num)) {
            (void)e;
            if (sf.contains(p)) continue;
            if (fn0 == 0) continue;  // v_p(0) = +infinity > 0
            if (valuation_nonzero(fn0.get_num(), p) <= 0)
                throw std::logic_error("constant-term valuation chain violated on V-hit");
        }
}

std::string warn_text(const PreconditionReport& rep) {
    if (rep.all_ok()) return "";
    return "theorem hypotheses not satisfied: " + rep.details;
}

}  // namespace

long SearchReport::nontrivial_count() const {
    long n = 0;
    for (const auto& rh : hits)
        if (rh.nontrivial()) ++n;
    return n;
}

std::string SearchReport::json_lines() const {
    std::string out;
    for (const auto& rh : hits) {
        nlohmann::json j;
        j["kind"] = to_string(rh.hit.kind);
        j["alpha"] = to_string(rh.hit.alpha);
        j["n"] = rh.hit.n;
        j["k"] = rh.hit.k;
        j["ell"] = rh.hit.witness.ell;
        j["a"] = to_string(rh.hit.witness.base);
        j["trivial"] = rh.hit.trivial;
        j["preperiodic"] = rh.hit.preperiodic;
        if (rh.diag) {
            j["diagnostics"] = {{"radical_sum", rh.diag->radical_sum},
                                {"rhs_chain", rh.diag->rhs_chain},
                                {"rhs_bound", rh.diag->rhs_bound},
                                {"granville_lhs", rh.diag->granville_lhs},
                                {"eps", rh.diag->eps}};
        } else {
            j["diagnostics"] = nullptr;
        }
        out += j.dump();
        out += "\n";
    }
    return out;
}

std::string SearchReport::stabilization_csv() const {
    std::string out = "bound,cumulative_nontrivial_hits\n";
    for (const auto& [b, c] : stabilization) {
        out += std::to_string(b);
        out += ",";
        out += std::to_string(c);
        out += "\n";
    }
    return out;
}

SearchReport search_u(const Poly& f, const PrimeSet& s, long bound, const SearchOptions& opts) {
    if (bound < 1) throw InvalidInput("search bound must be >= 1");
    if (f.degree() < 1) throw DegreeTooSmall("search_u needs degree >= 1");

    SearchReport rep;
    rep.kind = "U";
    rep.f = f;
    rep.s = s;
    rep.bound = bound;
    rep.precondition_warning = warn_text(precondition_report(f, TheoremId::UFiniteness));

    const EvalContext ctx(f, bound, s);
    std::vector<std::vector<ReportedHit>> per_q(static_cast<std::size_t>(bound));
    std::vector<long> skipped_per_q(static_cast<std::size_t>(bound), 0);

    for_each_q_parallel(bound, opts.workers, [&](long q) {
        QScratch scratch;
        scratch.set_q(ctx, q);
        auto& slot = per_q[static_cast<std::size_t>(q - 1)];
        Int uz, wz;
        for (long p = -bound; p <= bound; ++p) {
            if (q > 1 && std::gcd(iabs(p), q) != 1) continue;
            bool candidate;
            if (ctx.use64) {
                long u, w;
                scratch.eval64(ctx, p, u, w);
                long au = iabs(u);
                candidate = u == 0 || (au == 1 && w == 1) ||
                            strip64(w, ctx.sprimes64) == 1 || strip64(au, ctx.sprimes64) == 1;
            } else {
                scratch.evalz(ctx, p, uz, wz);
                candidate = uz == 0 || (abs(uz) == 1 && wz == 1) ||
                            detail::strip_s(wz, s) == 1 || detail::strip_s(uz, s) == 1;
            }
            if (!candidate) continue;
            Rat alpha = make_rat(p, q);
            try {
                auto hit = u_membership(f, s, alpha, opts.max_bits);
                if (hit) slot.push_back(ReportedHit{p, q, std::move(*hit), std::nullopt});
            } catch (const BitsizeExceeded&) {
                ++skipped_per_q[static_cast<std::size_t>(q - 1)];
            }
        }
    });

    for (std::size_t i = 0; i < per_q.size(); ++i) {
        rep.skipped += skipped_per_q[i];
        for (auto& rh : per_q[i]) {
            if (!replay_hit(f, rh.hit, opts.max_bits))
                throw std::logic_error("search hit failed exact replay");
            rep.hits.push_back(std::move(rh));
        }
    }
    rep.stabilization = stabilization_steps(bound, rep.hits);
    return rep;
}

namespace {

SearchReport scan_orbit_search(const Poly& f, const PrimeSet& s, long bound, long n_max,
                               long k_max, bool tilde, const SearchOptions& opts) {
    if (bound < 1) throw InvalidInput("search bound must be >= 1");
    if (f.degree() < 1) throw DegreeTooSmall("orbit search needs degree >= 1");
    if (n_max < 1) throw InvalidInput("n_max must be >= 1");
    if (k_max < 0) throw InvalidInput("k_max must be >= 0");
    if (opts.n_cap > 0 && n_max > opts.n_cap) n_max = opts.n_cap;

    SearchReport rep;
    rep.kind = tilde ? "tildeV" : "V";
    rep.f = f;
    rep.s = s;
    rep.bound = bound;
    rep.n_max = n_max;
    rep.k_max = k_max;
    rep.precondition_warning = warn_text(precondition_report(f, TheoremId::VmFiniteness, n_max));

    std::vector<std::vector<ReportedHit>> per_q(static_cast<std::size_t>(bound));
    std::vector<long> skipped_per_q(static_cast<std::size_t>(bound), 0);
    std::vector<long> zeros_per_q(static_cast<std::size_t>(bound), 0);

    for_each_q_parallel(bound, opts.workers, [&](long q) {
        auto& slot = per_q[static_cast<std::size_t>(q - 1)];
        for (long p = -bound; p <= bound; ++p) {
            if (p == 0) continue;  // ratio f^n(alpha)/alpha needs alpha != 0
            if (q > 1 && std::gcd(iabs(p), q) != 1) continue;
            Rat alpha = make_rat(p, q);
            try {
                std::optional<RelationHit> hit;
                if (tilde) {
                    long zeros = 0;
                    hit = tilde_v_membership(f, s, alpha, n_max, k_max, opts.max_bits, &zeros);
                    zeros_per_q[static_cast<std::size_t>(q - 1)] += zeros;
                } else {
                    hit = v_membership(f, s, alpha, n_max, opts.max_bits);
                }
                if (hit) slot.push_back(ReportedHit{p, q, std::move(*hit), std::nullopt});
            } catch (const BitsizeExceeded&) {
                ++skipped_per_q[static_cast<std::size_t>(q - 1)];
            }
        }
    });

    for (std::size_t i = 0; i < per_q.size(); ++i) {
        rep.skipped += skipped_per_q[i];
        rep.zero_orbit_skips += zeros_per_q[i];
        for (auto& rh : per_q[i]) {
            check_v_hit_invariants(f, s, rh, opts.max_bits);
            if (opts.fill_diagnostics && rh.hit.kind == HitKind::V && !rh.hit.trivial &&
                rh.hit.witness.ell >= 2)
                rh.diag = conductor_reading(f, s, rh.hit, opts.eps);
            rep.hits.push_back(std::move(rh));
        }
    }
    rep.stabilization = stabilization_steps(bound, rep.hits);
    return rep;
}

}  // namespace

SearchReport search_v(const Poly& f, const PrimeSet& s, long bound, long m,
                      const SearchOptions& opts) {
    return scan_orbit_search(f, s, bound, m, 0, false, opts);
}

SearchReport search_tilde_v(const Poly& f, const PrimeSet& s, long bound, long n_max, long k_max,
                            const SearchOptions& opts) {
    return scan_orbit_search(f, s, bound, n_max, k_max, true, opts);
}

std::vector<std::pair<PellPair, RelationHit>> pell_family(long count, PellVariant variant,
                                                          const Poly& g) {
    if (count < 1) throw InvalidParameters("pell_family: count >= 1");
    if (g.is_zero()) throw InvalidParameters("pell_family: g must be nonzero");

    Poly f;
    if (variant == PellVariant::UFamily) {
        // 2 g(X)^2 (X^2 - 1)
        Poly x2m1(std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
        f = Poly::constant(Rat(2)) * g * g * x2m1;
    } else {
        f = parse_poly("2X^3-2X");
    }

    std::vector<std::pair<PellPair, RelationHit>> out;
    PrimeSet empty;
    Int r = 3, ss = 2;
    for (long i = 0; i < count; ++i) {
        if (r * r - 2 * ss * ss != 1) throw std::logic_error("Pell recurrence left the conic");
        Rat alpha = Rat(r);
        std::optional<RelationHit> hit;
        if (variant == PellVariant::UFamily) {
            Rat expected = pow_rat(Rat(2) * g(alpha) * Rat(ss), 2);
            if (f(alpha) != expected) throw std::logic_error("Pell U identity failed");
            hit = u_membership(f, empty, alpha);
        } else {
            Rat base = Rat(2 * ss);
            if (f(alpha) != pow_rat(base, 2) * alpha) throw std::logic_error("Pell V identity failed");
            hit = v_membership(f, empty, alpha, 1);
        }
        if (!hit) throw std::logic_error("Pell family point is not a hit");
        out.emplace_back(PellPair{r, ss}, std::move(*hit));
        Int r2 = 3 * r + 4 * ss, s2 = 2 * r + 3 * ss;
        r = r2;
        ss = s2;
    }
    return out;
}

}  // namespace orbitpow
