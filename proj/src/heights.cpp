#include "orbitpow/heights.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "orbitpow/detail/linalg.hpp"

namespace orbitpow {

double log_plus(double t) {
    if (t <= 1.0) return 0.0;
    return std::log(t);
}

double naive_height(const Rat& x) {
    if (x == 0) return 0.0;
    Int n = abs(x.get_num());
    const Int& d = x.get_den();
    return log_abs(n >= d ? n : d);
}

namespace {

// Solves  G1 * F1 + G2 * F2 = det(M) * X^(2d-1)  (column = 0) or
// ... = det(M) * Y^(2d-1) (column = 2d-1) for degree-(d-1) forms G1, G2,
// where F1 = sum a_i X^i Y^(d-i) and F2 = e Y^d. Returns the l1 norm of the
// stacked integer coefficient vector (G1, G2).
Int cofactor_l1(const std::vector<Int>& a, const Int& e, long d, std::size_t column, const Int& det) {
    const std::size_t size = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<Rat>> m(size, std::vector<Rat>(size, Rat(0)));
    for (std::size_t k = 0; k < size; ++k) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
            long i = static_cast<long>(k) - static_cast<long>(j);
            if (i >= 0 && i <= d) m[k][j] = Rat(a[static_cast<std::size_t>(d - i)]);
            if (static_cast<long>(k) - static_cast<long>(j) == d) m[k][static_cast<std::size_t>(d) + j] = Rat(e);
        }
    }
    std::vector<Rat> rhs(size, Rat(0));
    rhs[column] = 1;
    if (!detail::gauss_solve(m, rhs)) throw std::logic_error("cofactor system singular despite nonzero resultant");
    Int l1 = 0;
    for (const auto& y : rhs) {
        Rat g = y * Rat(det);
        if (g.get_den() != 1) throw std::logic_error("cofactor solution not integral");
        l1 += abs(g.get_num());
    }
    return l1;
}

}  // namespace

HeightBound height_bounds(const Poly& f) {
    const long d = f.degree();
    if (d < 2) throw DegreeTooSmall("height_bounds needs degree >= 2");
    ClearedPoly cp = clear_denominators(f);

    // upper constant: |sum a_i p^i q^(d-i)| <= (#nonzero) max|a_i| H^d,
    // denominator e q^d <= e H^d
    Int max_abs = 0;
    long nonzero = 0;
    for (const auto& ai : cp.coeffs) {
        if (ai == 0) continue;
        ++nonzero;
        Int m = abs(ai);
        if (m > max_abs) max_abs = m;
    }
    Int up_int = max_abs * nonzero;
    if (cp.denom > up_int) up_int = cp.denom;
    double c_up = up_int > 1 ? log_abs(up_int) : 0.0;

    // lower constant from the elimination identities on the homogenized pair
    const std::size_t size = static_cast<std::size_t>(2 * d);
    std::vector<std::vector<Int>> mi(size, std::vector<Int>(size, Int(0)));
    for (std::size_t k = 0; k < size; ++k)
        for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
            long i = static_cast<long>(k) - static_cast<long>(j);
            if (i >= 0 && i <= d) mi[k][j] = cp.coeffs[static_cast<std::size_t>(d - i)];
            if (static_cast<long>(k) - static_cast<long>(j) == d) mi[k][static_cast<std::size_t>(d) + j] = cp.denom;
        }
    Int det = detail::bareiss_det(mi);
    if (det == 0) throw std::logic_error("homogenized pair has zero resultant");
    Int l1_x = cofactor_l1(cp.coeffs, cp.denom, d, 0, det);
    Int l1_y = cofactor_l1(cp.coeffs, cp.denom, d, size - 1, det);
    Int l1 = l1_x > l1_y ? l1_x : l1_y;
    double c_low = l1 > 1 ? log_abs(l1) : 0.0;

    HeightBound hb;
    hb.degree = d;
    hb.c_up = c_up;
    hb.c_low = c_low;
    hb.c1 = std::max(c_up, c_low) / static_cast<double>(d - 1);
    return hb;
}

HeightEstimate canonical_height(const Poly& f, const HeightBound& hb, const Rat& x, double tol,
                                long max_bits) {
    if (tol <= 0) throw InvalidInput("canonical_height: tol must be positive");
    const long d = hb.degree;
    const double c = hb.one_step();
    const double dm1 = static_cast<double>(d - 1);

    long n_target = 0;
    if (c > 0.0) {
        double need = c / (dm1 * tol);
        while (need > 1.0) {
            need /= static_cast<double>(d);
            ++n_target;
            if (n_target > 64) break;  // tail bound below 1e-28 by then
        }
    }

    Rat v = x;
    long n_done = 0;
    double scale = 1.0;
    for (; n_done < n_target; ++n_done) {
        Rat next = f(v);
        long bits = static_cast<long>(mpz_sizeinbase(next.get_num().get_mpz_t(), 2));
        bits = std::max(bits, static_cast<long>(mpz_sizeinbase(next.get_den().get_mpz_t(), 2)));
        if (bits > max_bits) break;
        v = next;
        scale *= static_cast<double>(d);
    }

    HeightEstimate est;
    est.steps = n_done;
    est.value = naive_height(v) / scale;
    est.error = (c > 0.0 ? c / (dm1 * scale) : 0.0) + kHeightSlack;
    return est;
}

HeightEstimate canonical_height(const Poly& f, const Rat& x, double tol, long max_bits) {
    return canonical_height(f, height_bounds(f), x, tol, max_bits);
}

}  // namespace orbitpow
