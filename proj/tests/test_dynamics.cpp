#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "orbitpow/dynamics.hpp"
#include "orbitpow/poly.hpp"

using namespace orbitpow;

namespace {

long rnd(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// cubic discriminant oracle: 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2
Rat cubic_disc(const Poly& f) {
    REQUIRE(f.degree() == 3);
    Rat a = f.coeff(3), b = f.coeff(2), c = f.coeff(1), d = f.coeff(0);
    return Rat(18) * a * b * c * d - Rat(4) * b * b * b * d + b * b * c * c - Rat(4) * a * c * c * c -
           Rat(27) * a * a * d * d;
}

}  // namespace

TEST_CASE("poly parsing, both formats") {
    Poly f = parse_poly("X^3-X^2+1");
    CHECK(f.degree() == 3);
    CHECK(f == parse_poly("1,0,-1,1"));
    CHECK(parse_poly("1/6X^3+5") == parse_poly("5,0,0,1/6"));
    CHECK(parse_poly("2*X^2") == parse_poly("0,0,2"));
    CHECK(parse_poly("-X") == parse_poly("0,-1"));
    CHECK(parse_poly("x^2 - x") == parse_poly("0,-1,1"));
    CHECK(parse_poly("7") == Poly::constant(Rat(7)));
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("X^"), ParseError);
    CHECK_THROWS_AS(parse_poly("3y"), ParseError);
    CHECK(parse_poly(f.str()) == f);  // print/parse round-trip
}

TEST_CASE("evaluation examples") {
    Poly f = parse_poly("X^3-X^2+1");
    CHECK(f(Rat(4)) == 49);  // 64 - 16 + 1
    CHECK(f(Rat(0)) == 1);
    Poly pell = parse_poly("0,0,-2,0,2");  // 2X^2(X^2-1)
    CHECK(pell(Rat(3)) == 144);            // (2*3*2)^2 from the (3,2) Pell pair
    CHECK(f(make_rat(1, 2)) == make_rat(7, 8));
}

TEST_CASE("iteration examples and bit budget") {
    Poly f = parse_poly("X^3-X^2+1");
    CHECK(iterate_eval(f, make_rat(5, 7), 0) == make_rat(5, 7));
    CHECK(iterate_eval(f, Rat(0), 2) == 1);
    CHECK(iterate_eval(f, Rat(2), 2) == 101);  // 2 -> 5 -> 101
    CHECK_THROWS_AS(iterate_eval(f, Rat(10), 30, 256), BitsizeExceeded);
}

TEST_CASE("bad reduction primes") {
    CHECK(bad_reduction_primes(parse_poly("X^3-X^2+1")).empty());
    CHECK(bad_reduction_primes(parse_poly("1/6X^3+5")).str() == "2,3");
    CHECK(bad_reduction_primes(parse_poly("6X^3+1")).str() == "2,3");
    CHECK(bad_reduction_primes(parse_poly("6/5X^3+1")).str() == "2,3,5");
}

TEST_CASE("S_f") {
    CHECK(s_f(parse_poly("X^3-X^2+1"), PrimeSet::parse("5")).str() == "5");
    CHECK(s_f(parse_poly("1/6X^3+5"), PrimeSet::parse("5")).str() == "2,3,5");
    CHECK(s_f(parse_poly("6X^3+1"), PrimeSet{}).str() == "2,3");
}

TEST_CASE("simple roots via resultant, cubic formula as oracle") {
    Poly f = parse_poly("X^3-X^2+1");
    CHECK(has_simple_roots(f));
    CHECK(discriminant(f) == -23);
    CHECK(cubic_disc(f) == -23);

    CHECK(!has_simple_roots(parse_poly("0,0,-2,0,2")));  // 2X^2(X^2-1)
    CHECK(!has_simple_roots(parse_poly("X^3")));
    CHECK(has_simple_roots(parse_poly("X")));

    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        std::vector<Rat> c;
        for (int j = 0; j < 4; ++j) c.push_back(make_rat(rnd(rng, -9, 9), rnd(rng, 1, 4)));
        if (c[3] == 0) c[3] = 1;
        Poly g(c);
        CHECK(discriminant(g) == cubic_disc(g));
    }
}

TEST_CASE("resultant basics") {
    CHECK(resultant(parse_poly("1,0,1"), parse_poly("2,1")) == 5);    // res(x^2+1, x+2)
    CHECK(resultant(parse_poly("3,1"), parse_poly("-7,1")) == -10);   // res(x+3, x-7)
    Poly common = parse_poly("1,1");
    CHECK(resultant(common * parse_poly("2,1"), common * parse_poly("-1,1")) == 0);
    CHECK(resultant(parse_poly("1,0,1"), Poly::constant(Rat(5))) == 25);
}

TEST_CASE("classify zero") {
    auto cls = classify_zero(parse_poly("X^3-X"));
    CHECK(cls.kind == OrbitKind::Periodic);  // f(0) = 0

    cls = classify_zero(parse_poly("X^3-X^2+1"));
    CHECK(cls.kind == OrbitKind::StrictlyPreperiodic);
    REQUIRE(cls.tail.size() == 2);
    CHECK(cls.tail[0] == 0);
    CHECK(cls.tail[1] == 1);

    cls = classify_zero(parse_poly("X^3+X-1"));  // 0 -> -1 -> -3 -> -31 -> ...
    CHECK(cls.kind == OrbitKind::Wandering);
    CHECK(cls.witness_height > 0.0);

    // 0 -> 1 -> -1 -> 1: falls into a 2-cycle without returning to 0
    cls = classify_zero(parse_poly("1,-2,-1,1"));  // X^3 - X^2 - 2X + 1
    CHECK(cls.kind == OrbitKind::StrictlyPreperiodic);
    CHECK(cls.tail == std::vector<Rat>{Rat(0), Rat(1), Rat(-1)});
}

TEST_CASE("classification agrees with canonical height at 0") {
    for (const char* spec : {"X^3-X", "X^3-X^2+1", "X^3+X-1", "X^3-2X^2+2", "2X^3-2X"}) {
        Poly f = parse_poly(spec);
        auto cls = classify_zero(f);
        auto est = canonical_height(f, Rat(0), 1e-6);
        if (cls.kind == OrbitKind::Wandering)
            CHECK(est.value - est.error > 0.0);
        else
            CHECK(est.value <= est.error);
    }
}

TEST_CASE("family a") {
    CHECK(family_a(2, 1, 1) == parse_poly("X^3-X^2+1"));
    Poly f = family_a(1, 2, -1);
    CHECK(f == parse_poly("X^3-X-1"));
    CHECK(f(Rat(-1)) == -1);  // 0 -> -1 -> -1 fixed
    CHECK(classify_zero(f).kind == OrbitKind::StrictlyPreperiodic);
    CHECK_THROWS_AS(family_a(1, 1, 1), InvalidParameters);   // n + m < 3
    CHECK_THROWS_AS(family_a(2, 1, -1), InvalidParameters);  // -1 needs even m
    CHECK_THROWS_AS(family_a(0, 3, 1), InvalidParameters);

    for (long n = 1; n <= 4; ++n)
        for (long m = 1; m <= 4; ++m) {
            if (n + m < 3) continue;
            for (int zeta : {1, -1}) {
                if (zeta == -1 && m % 2) continue;
                Poly g = family_a(n, m, zeta);
                CHECK(classify_zero(g).kind == OrbitKind::StrictlyPreperiodic);
                CHECK(has_simple_roots(g));
            }
        }
}

TEST_CASE("family b") {
    CHECK(family_b(2, Rat(1)) == parse_poly("X^3-X^2+1"));
    Poly g = family_b(2, Rat(2));
    CHECK(g == parse_poly("X^3-2X^2+2"));
    CHECK(g(Rat(2)) == 2);  // 0 -> 2 -> 2 fixed
    CHECK(classify_zero(g).kind == OrbitKind::StrictlyPreperiodic);
    CHECK(has_simple_roots(g));
    CHECK_THROWS_AS(family_b(1, Rat(2)), InvalidParameters);
    CHECK_THROWS_AS(family_b(2, Rat(0)), InvalidParameters);
    // b^k k^k = (k+1)^(k+1) has no rational solution for k >= 2, so every
    // valid (k, b) must pass the guard and give simple roots
    std::mt19937_64 rng(6);
    for (int i = 0; i < 50; ++i) {
        long k = rnd(rng, 2, 5);
        Rat b = make_rat(rnd(rng, -12, 12), rnd(rng, 1, 5));
        if (b == 0) b = 1;
        Poly h = family_b(k, b);
        CHECK(has_simple_roots(h));
        CHECK(classify_zero(h).kind == OrbitKind::StrictlyPreperiodic);
    }
}

TEST_CASE("rational preimages") {
    Poly f = parse_poly("X^3-X^2+1");
    CHECK(rational_preimages(f, Rat(1)) == std::vector<Rat>{Rat(0), Rat(1)});
    CHECK(rational_preimages(parse_poly("X^3"), Rat(8)) == std::vector<Rat>{Rat(2)});
    CHECK(rational_preimages(f, Rat(5)) == std::vector<Rat>{Rat(2)});
    CHECK(rational_preimages(f, Rat(3)).empty());
    CHECK(rational_preimages(parse_poly("1/6X^3+5"), make_rat(31, 6)) == std::vector<Rat>{Rat(1)});
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        Rat x = make_rat(rnd(rng, -30, 30), rnd(rng, 1, 9));
        auto pre = rational_preimages(f, f(x));
        CHECK(std::find(pre.begin(), pre.end(), x) != pre.end());
    }
}

TEST_CASE("precondition reports") {
    auto rep = precondition_report(parse_poly("X^3-X^2+1"), TheoremId::V0Finiteness);
    CHECK(rep.all_ok());

    rep = precondition_report(parse_poly("0,0,-2,0,2"), TheoremId::UFiniteness);
    CHECK(rep.degree_ok);
    CHECK(!rep.simple_roots_ok);
    CHECK(!rep.all_ok());

    rep = precondition_report(parse_poly("X^3-X"), TheoremId::AbcConditional);
    CHECK(!rep.zero_condition_ok);  // 0 is periodic

    rep = precondition_report(parse_poly("X^3-X"), TheoremId::VmFiniteness, 3);
    CHECK(!rep.zero_condition_ok);  // f(0) = 0

    rep = precondition_report(parse_poly("X^3-X^2+1"), TheoremId::VmFiniteness, 5);
    CHECK(rep.zero_condition_ok);

    rep = precondition_report(parse_poly("X^3+X-1"), TheoremId::V0Finiteness);
    CHECK(!rep.zero_condition_ok);  // wandering
}

TEST_CASE("good-reduction valuation law") {
    std::mt19937_64 rng(1234);
    const long small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    long done = 0;
    while (done < 1000) {
        long d = rnd(rng, 2, 5);
        std::vector<Rat> c;
        for (long j = 0; j <= d; ++j) c.push_back(make_rat(rnd(rng, -20, 20), rnd(rng, 1, 6)));
        if (c.back() == 0) c.back() = 1;
        Poly f(c);
        long p = small_primes[rng() % 9];
        if (bad_reduction_primes(f).contains(p)) continue;
        long j = rnd(rng, 1, 3);
        Int pj;
        mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
        long x = rnd(rng, 1, 50);
        while (x % p == 0) ++x;
        Rat alpha = make_rat(Int(rng() % 2 ? x : -x), pj);  // v_p(alpha) = -j < 0
        CHECK(valuation(f(alpha), p).value() == -d * j);
        ++done;
    }
}

TEST_CASE("iterated valuation law |f^(n)(a)|_v = |a|_v^(d^n)") {
    Poly f = parse_poly("X^3-X^2+1");
    Rat alpha = make_rat(3, 5);  // v_5 = -1, 5 is a good prime for f
    CHECK(valuation(iterate_eval(f, alpha, 3), 5).value() == -27);
    Poly g = parse_poly("1/6X^3+5");  // S_g = {2,3}
    CHECK(valuation(iterate_eval(g, make_rat(2, 5), 2), 5).value() == -9);
}

TEST_CASE("reduction set of expanded iterates stays inside S_f") {
    for (const char* spec : {"X^3-X^2+1", "1/6X^3+5", "6X^3+1", "0,0,-2,0,2", "2X^3-2X"}) {
        Poly f = parse_poly(spec);
        Poly fn = f;
        for (int m = 2; m <= 3; ++m) {
            fn = compose(f, fn);
            CHECK(bad_reduction_primes(fn).subset_of(bad_reduction_primes(f)));
        }
    }
}
