#include "orbitpow/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>

#include "orbitpow/detail/linalg.hpp"

namespace orbitpow {

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, std::size_t power) {
    std::vector<Rat> v(power + 1, Rat(0));
    v[power] = c;
    return Poly(std::move(v));
}

const Rat& Poly::coeff(std::size_t i) const {
    static const Rat zero(0);
    return i < coeffs_.size() ? coeffs_[i] : zero;
}

const Rat& Poly::leading() const {
    if (coeffs_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rat Poly::operator()(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rat> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(coeffs_.size(), o.coeffs_.size()), Rat(0));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rat> v(coeffs_);
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return Poly();
    std::vector<Rat> v(coeffs_.size() + o.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(v));
}

std::string Poly::str() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rat& c = coeffs_[i];
        if (c == 0) continue;
        bool first = out.empty();
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += to_string(a);
        } else {
            if (a != 1) out += to_string(a) + "*";
            out += "X";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

namespace {

// one symbolic term: [sign] [coef] [*] [X [^exp]]
void parse_term(const std::string& term, std::vector<Rat>& acc) {
    std::size_t i = 0;
    auto fail = [&] { throw ParseError("cannot parse polynomial term '" + term + "'"); };
    if (term.empty()) fail();
    std::string coef_text;
    while (i < term.size() && (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '/' || term[i] == '-' || term[i] == '+'))
        coef_text += term[i++];
    if (i < term.size() && term[i] == '*') ++i;
    Rat coef(1);
    if (!coef_text.empty() && coef_text != "+" && coef_text != "-")
        coef = parse_rational(coef_text);
    else if (coef_text == "-")
        coef = -1;
    std::size_t power = 0;
    if (i < term.size()) {
        if (term[i] != 'X' && term[i] != 'x') fail();
        ++i;
        power = 1;
        if (i < term.size()) {
            if (term[i] != '^') fail();
            ++i;
            if (i >= term.size()) fail();
            std::size_t pos = 0;
            power = std::stoul(term.substr(i), &pos);
            if (i + pos != term.size()) fail();
        }
    } else if (coef_text.empty() || coef_text == "+" || coef_text == "-") {
        fail();  // bare sign
    }
    if (acc.size() <= power) acc.resize(power + 1, Rat(0));
    acc[power] += coef;
}

Poly parse_symbolic(const std::string& s) {
    std::vector<Rat> acc;
    std::string term;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if ((ch == '+' || ch == '-') && i > 0 && s[i - 1] != '^' && s[i - 1] != '/' && s[i - 1] != '+' && s[i - 1] != '-' && s[i-1] != '*') {
            parse_term(term, acc);
            term.clear();
        }
        term += ch;
    }
    if (!term.empty()) parse_term(term, acc);
    return Poly(std::move(acc));
}

}  // namespace

Poly parse_poly(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), s.end());
    if (s.empty()) throw ParseError("empty polynomial");
    if (s.find('X') != std::string::npos || s.find('x') != std::string::npos) return parse_symbolic(s);
    std::vector<Rat> coeffs;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        coeffs.push_back(parse_rational(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Poly(std::move(coeffs));
}

Poly compose(const Poly& outer, const Poly& inner) {
    Poly acc;
    for (std::size_t i = outer.coeffs().size(); i-- > 0;)
        acc = acc * inner + Poly::constant(outer.coeff(i));
    return acc;
}

Rat eval(const Poly& f, const Rat& x) { return f(x); }

Rat iterate_eval(const Poly& f, const Rat& x, long n, long max_bits) {
    if (n < 0) throw InvalidInput("iterate_eval: n must be >= 0");
    Rat v = x;
    for (long i = 0; i < n; ++i) {
        v = f(v);
        long bits = static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2));
        bits = std::max(bits, static_cast<long>(mpz_sizeinbase(v.get_den().get_mpz_t(), 2)));
        if (bits > max_bits)
            throw BitsizeExceeded("orbit value exceeds " + std::to_string(max_bits) + " bits at step " +
                                  std::to_string(i + 1));
    }
    return v;
}

ClearedPoly clear_denominators(const Poly& f) {
    ClearedPoly out;
    out.denom = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), c.get_den().get_mpz_t());
    out.coeffs.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) {
        Rat scaled = c * Rat(out.denom);
        out.coeffs.push_back(scaled.get_num());
    }
    return out;
}

Rat resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Rat(0);
    const long m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return Rat(1);
    ClearedPoly F = clear_denominators(f), G = clear_denominators(g);
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<Int>> syl(size, std::vector<Int>(size, Int(0)));
    for (long row = 0; row < n; ++row)
        for (long j = 0; j <= m; ++j) syl[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] = F.coeffs[static_cast<std::size_t>(m - j)];
    for (long row = 0; row < m; ++row)
        for (long j = 0; j <= n; ++j) syl[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + j)] = G.coeffs[static_cast<std::size_t>(n - j)];
    Int det = detail::bareiss_det(syl);
    // Res(F/e_f, G/e_g) = Res(F, G) / (e_f^n e_g^m)
    Int scale, tmp;
    mpz_pow_ui(scale.get_mpz_t(), F.denom.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_pow_ui(tmp.get_mpz_t(), G.denom.get_mpz_t(), static_cast<unsigned long>(m));
    scale *= tmp;
    return make_rat(det, scale);
}

Rat discriminant(const Poly& f) {
    const long d = f.degree();
    if (d < 1) throw DegreeTooSmall("discriminant needs degree >= 1");
    Rat res = resultant(f, f.derivative());
    Rat disc = res / f.leading();
    if ((d * (d - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

bool has_simple_roots(const Poly& f) { return discriminant(f) != 0; }

PrimeSet bad_reduction_primes(const Poly& f) {
    if (f.degree() < 1) throw DegreeTooSmall("bad_reduction_primes needs degree >= 1");
    PrimeSet out;
    for (const auto& c : f.coeffs())
        if (c.get_den() != 1)
            for (const auto& [p, e] : factor_int(c.get_den())) {
                (void)e;
                out.insert(p);
            }
    const Rat& lead = f.leading();
    if (abs(lead.get_num()) != 1)
        for (const auto& [p, e] : factor_int(lead.get_num())) {
            (void)e;
            out.insert(p);
        }
    return out;
}

PrimeSet s_f(const Poly& f, const PrimeSet& s) { return s.union_with(bad_reduction_primes(f)); }

}  // namespace orbitpow
