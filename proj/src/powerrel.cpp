#include "orbitpow/powerrel.hpp"

#include <algorithm>

namespace orbitpow {

Rat pow_rat(const Rat& a, long e) {
    if (e == 0) return Rat(1);
    if (a == 0) {
        if (e < 0) throw ZeroInput("pow_rat: 0 to a negative power");
        return Rat(0);
    }
    Int num, den;
    unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), a.get_num().get_mpz_t(), m);
    mpz_pow_ui(den.get_mpz_t(), a.get_den().get_mpz_t(), m);
    return e > 0 ? make_rat(num, den) : make_rat(den, num);
}

std::string to_string(HitKind k) {
    switch (k) {
        case HitKind::U: return "U";
        case HitKind::V: return "V";
        case HitKind::TildeV: return "tildeV";
    }
    return "?";
}

namespace detail {

Int strip_s(const Int& n, const PrimeSet& s) {
    Int m = abs(n);
    for (const auto& p : s.primes())
        while (m != 1 && mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t()))
            mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    return m;
}

}  // namespace detail

namespace {

bool exact_root(const Int& n, unsigned long k, Int& root) {
    // n >= 1
    return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

// largest exponent worth testing: 2^ell <= n
unsigned long max_exponent(const Int& n) {
    return static_cast<unsigned long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1;
}

}  // namespace

namespace detail {

std::vector<PowerWitness> power_reps_reduced(const Int& u, const Int& w, const PrimeSet& s) {
    std::vector<PowerWitness> out;
    if (u == 0) {
        out.push_back({2, Rat(0)});
        return out;
    }
    if (w == 1 && u == 1) {
        out.push_back({2, Rat(1)});
        return out;
    }
    if (w == 1 && u == -1) {
        out.push_back({3, Rat(-1)});
        return out;
    }

    const bool negative = u < 0;
    Int au = abs(u);
    const bool pos_allowed = detail::strip_s(w, s) == 1;   // beta is an S-integer
    const bool neg_allowed = detail::strip_s(au, s) == 1;  // 1/beta is an S-integer

    unsigned long bound;
    if (au == 1)
        bound = max_exponent(w);
    else if (w == 1)
        bound = max_exponent(au);
    else
        bound = std::min(max_exponent(au), max_exponent(w));

    if (pos_allowed) {
        Int ru, rw;
        for (unsigned long ell = 2; ell <= bound; ++ell) {
            if (negative && ell % 2 == 0) continue;
            if (!exact_root(au, ell, ru)) continue;
            if (!exact_root(w, ell, rw)) continue;
            out.push_back({static_cast<long>(ell), make_rat(negative ? Int(-ru) : ru, rw)});
        }
    }
    if (neg_allowed) {
        Int ru, rw;
        for (unsigned long m = 2; m <= bound; ++m) {
            if (negative && m % 2 == 0) continue;
            if (!exact_root(au, m, ru)) continue;
            if (!exact_root(w, m, rw)) continue;
            // beta = (x/y)^(-m) with x^m = w, y^m = |u|
            out.push_back({-static_cast<long>(m), make_rat(negative ? Int(-rw) : rw, ru)});
        }
        out.push_back({-1, make_rat(negative ? Int(-w) : w, au)});
    }

    std::stable_sort(out.begin(), out.end(), [](const PowerWitness& a, const PowerWitness& b) {
        auto rank = [](long ell) { return ell > 0 ? 0 : (ell == -1 ? 2 : 1); };
        if (rank(a.ell) != rank(b.ell)) return rank(a.ell) < rank(b.ell);
        return std::labs(a.ell) < std::labs(b.ell);
    });
    return out;
}

}  // namespace detail

std::vector<PowerWitness> power_representations(const Rat& beta, const PrimeSet& s) {
    return detail::power_reps_reduced(beta.get_num(), beta.get_den(), s);
}

namespace {

bool is_trivial_value(const Rat& beta) { return beta == 0 || beta == 1 || beta == -1; }

RelationHit build_hit(HitKind kind, const Poly& f, const Rat& alpha, long n, long k, const Rat& beta,
                      std::vector<PowerWitness> witnesses, long max_bits) {
    RelationHit hit;
    hit.kind = kind;
    hit.alpha = alpha;
    hit.n = n;
    hit.k = k;
    hit.witness = witnesses.front();
    hit.all_witnesses = std::move(witnesses);
    hit.trivial = is_trivial_value(beta);
    hit.unit_exponent_only = hit.witness.ell == -1;
    hit.preperiodic = f.degree() >= 2 && is_preperiodic(f, alpha, max_bits);
    return hit;
}

}  // namespace

bool replay_hit(const Poly& f, const RelationHit& hit, long max_bits) {
    const Rat powered = pow_rat(hit.witness.base, hit.witness.ell);
    switch (hit.kind) {
        case HitKind::U:
            return f(hit.alpha) == powered;
        case HitKind::V:
            return iterate_eval(f, hit.alpha, hit.n, max_bits) == powered * hit.alpha;
        case HitKind::TildeV:
            return iterate_eval(f, hit.alpha, hit.n + hit.k, max_bits) ==
                   powered * iterate_eval(f, hit.alpha, hit.k, max_bits);
    }
    return false;
}

std::optional<RelationHit> u_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                        long max_bits) {
    Rat beta = f(alpha);
    auto reps = power_representations(beta, s);
    if (reps.empty()) return std::nullopt;
    return build_hit(HitKind::U, f, alpha, 1, 0, beta, std::move(reps), max_bits);
}

std::optional<RelationHit> v_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                        long n_max, long max_bits) {
    if (alpha == 0) throw ZeroAlpha();
    if (n_max < 1) throw InvalidInput("v_membership: n_max >= 1 required");
    Rat v = alpha;
    for (long n = 1; n <= n_max; ++n) {
        v = iterate_eval(f, v, 1, max_bits);
        Rat beta = v / alpha;
        auto reps = power_representations(beta, s);
        if (!reps.empty()) return build_hit(HitKind::V, f, alpha, n, 0, beta, std::move(reps), max_bits);
    }
    return std::nullopt;
}

std::optional<RelationHit> tilde_v_membership(const Poly& f, const PrimeSet& s, const Rat& alpha,
                                              long n_max, long k_max, long max_bits,
                                              long* zeros_skipped) {
    if (n_max < 1 || k_max < 0) throw InvalidInput("tilde_v_membership: need n_max >= 1, k_max >= 0");
    if (zeros_skipped) *zeros_skipped = 0;
    Rat base = alpha;
    for (long k = 0; k <= k_max; ++k) {
        if (k > 0) base = iterate_eval(f, base, 1, max_bits);
        if (base == 0) {
            if (zeros_skipped) ++*zeros_skipped;
            continue;
        }
        Rat v = base;
        for (long n = 1; n <= n_max; ++n) {
            v = iterate_eval(f, v, 1, max_bits);
            Rat beta = v / base;
            auto reps = power_representations(beta, s);
            if (!reps.empty())
                return build_hit(HitKind::TildeV, f, alpha, n, k, beta, std::move(reps), max_bits);
        }
    }
    return std::nullopt;
}

}  // namespace orbitpow
