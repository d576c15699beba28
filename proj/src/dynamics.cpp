#include "orbitpow/dynamics.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace orbitpow {

std::string to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::Periodic: return "periodic";
        case OrbitKind::StrictlyPreperiodic: return "strictly-preperiodic";
        case OrbitKind::Wandering: return "wandering";
    }
    return "?";
}

OrbitClassification classify_orbit(const Poly& f, const Rat& start, long max_bits) {
    if (f.degree() < 2) throw DegreeTooSmall("classify_orbit needs degree >= 2");
    HeightBound hb = height_bounds(f);
    const double threshold =
        static_cast<double>(hb.degree) * hb.c_low / static_cast<double>(hb.degree - 1) + 1e-9;

    OrbitClassification out;
    std::map<Rat, long> first_seen;
    Rat v = start;
    for (long step = 0;; ++step) {
        if (step > 1000000) throw std::logic_error("orbit neither repeated nor escaped; budget bug");
        double h = naive_height(v);
        if (h > threshold) {
            out.kind = OrbitKind::Wandering;
            out.witness_height = h;
            out.steps = step;
            out.tail.clear();
            return out;
        }
        auto [it, fresh] = first_seen.emplace(v, step);
        if (!fresh) {
            out.kind = it->second == 0 ? OrbitKind::Periodic : OrbitKind::StrictlyPreperiodic;
            out.steps = step;
            return out;
        }
        out.tail.push_back(v);
        v = f(v);
        long bits = static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2));
        bits = std::max(bits, static_cast<long>(mpz_sizeinbase(v.get_den().get_mpz_t(), 2)));
        if (bits > max_bits)
            throw BitsizeExceeded("orbit value exceeds " + std::to_string(max_bits) + " bits");
    }
}

ZeroClassification classify_zero(const Poly& f, long max_bits) {
    return classify_orbit(f, Rat(0), max_bits);
}

bool is_preperiodic(const Poly& f, const Rat& x, long max_bits) {
    return classify_orbit(f, x, max_bits).kind != OrbitKind::Wandering;
}

Poly family_a(long n, long m, int zeta) {
    if (n < 1 || m < 1) throw InvalidParameters("family_a: need n, m >= 1");
    if (n + m < 3) throw InvalidParameters("family_a: need n + m >= 3");
    if (zeta != 1 && zeta != -1) throw InvalidParameters("family_a: zeta must be +1 or -1");
    if (zeta == -1 && m % 2 != 0)
        throw InvalidParameters("family_a: zeta = -1 requires even m (order of zeta must divide m)");
    std::vector<Rat> c(static_cast<std::size_t>(n + m) + 1, Rat(0));
    c[static_cast<std::size_t>(n + m)] = 1;
    c[static_cast<std::size_t>(n)] = -1;
    c[0] = zeta;
    return Poly(std::move(c));
}

Poly family_b(long k, const Rat& b) {
    if (k < 2) throw InvalidParameters("family_b: need k >= 2");
    if (b == 0) throw InvalidParameters("family_b: need b != 0");
    Rat lhs = 1, kk = 1, kp1 = 1;
    for (long i = 0; i < k; ++i) {
        lhs *= b;
        kk *= k;
    }
    for (long i = 0; i < k + 1; ++i) kp1 *= (k + 1);
    if (lhs * kk == kp1)
        throw InvalidParameters("family_b: b^k k^k = (k+1)^(k+1) gives a repeated root");
    std::vector<Rat> c(static_cast<std::size_t>(k) + 2, Rat(0));
    c[static_cast<std::size_t>(k) + 1] = 1;
    c[static_cast<std::size_t>(k)] = -b;
    c[0] = b;
    return Poly(std::move(c));
}

namespace {

std::vector<Int> divisors_of(const Int& n) {
    std::vector<Int> out{Int(1)};
    if (abs(n) == 1) return out;
    for (const auto& [p, e] : factor_int(n)) {
        std::size_t base = out.size();
        Int pe = 1;
        for (long i = 1; i <= e; ++i) {
            pe *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
        }
    }
    return out;
}

}  // namespace

std::vector<Rat> rational_preimages(const Poly& f, const Rat& beta) {
    if (f.degree() < 1) throw DegreeTooSmall("rational_preimages needs degree >= 1");
    Poly g = f - Poly::constant(beta);
    ClearedPoly cg = clear_denominators(g);

    std::vector<Rat> roots;
    std::size_t low = 0;
    while (low < cg.coeffs.size() && cg.coeffs[low] == 0) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low + 1 >= cg.coeffs.size()) return roots;  // g was c X^k

    const Int& lead = cg.coeffs.back();
    const Int& tail = cg.coeffs[low];
    std::vector<Int> ps = divisors_of(tail), qs = divisors_of(lead);
    for (const auto& q : qs)
        for (const auto& p : ps) {
            Int gg;
            mpz_gcd(gg.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            if (gg != 1) continue;
            for (int sign = +1; sign >= -1; sign -= 2) {
                Rat cand = make_rat(sign > 0 ? p : Int(-p), q);
                if (f(cand) == beta) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

PreconditionReport precondition_report(const Poly& f, TheoremId which, long m) {
    PreconditionReport rep;
    std::ostringstream details;
    const long d = f.degree();
    rep.degree_ok = d >= 3;
    details << "deg = " << d << (rep.degree_ok ? " (>= 3)" : " (< 3)");

    if (d >= 1) {
        Rat disc = discriminant(f);
        rep.simple_roots_ok = disc != 0;
        details << "; disc = " << to_string(disc);
    } else {
        rep.simple_roots_ok = false;
    }

    auto classify = [&]() -> OrbitClassification { return classify_zero(f); };
    switch (which) {
        case TheoremId::UFiniteness:
            rep.zero_condition_kind = "none";
            rep.zero_condition_ok = true;
            break;
        case TheoremId::VmFiniteness: {
            rep.zero_condition_kind = "f^(k)(0) != 0 for k = 1.." + std::to_string(m);
            if (m < 1) throw InvalidParameters("precondition_report: m >= 1 required");
            rep.zero_condition_ok = true;
            Rat v(0);
            for (long k = 1; k <= m; ++k) {
                v = f(v);
                if (v == 0) {
                    rep.zero_condition_ok = false;
                    details << "; f^(" << k << ")(0) = 0";
                    break;
                }
            }
            break;
        }
        case TheoremId::V0Finiteness: {
            rep.zero_condition_kind = "0 strictly preperiodic";
            if (d >= 2) {
                auto cls = classify();
                rep.zero_condition_ok = cls.kind == OrbitKind::StrictlyPreperiodic;
                details << "; orbit of 0: " << to_string(cls.kind);
                if (!cls.tail.empty()) {
                    details << " [";
                    for (std::size_t i = 0; i < cls.tail.size(); ++i)
                        details << (i ? " -> " : "") << to_string(cls.tail[i]);
                    details << "]";
                }
            }
            break;
        }
        case TheoremId::AbcConditional: {
            rep.zero_condition_kind = "0 not periodic";
            if (d >= 2) {
                auto cls = classify();
                rep.zero_condition_ok = cls.kind != OrbitKind::Periodic;
                details << "; orbit of 0: " << to_string(cls.kind);
            }
            break;
        }
    }
    rep.details = details.str();
    return rep;
}

}  // namespace orbitpow
