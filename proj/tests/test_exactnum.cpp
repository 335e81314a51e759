#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wm/poly.hpp>

#include <random>

using namespace wm;

static Polynomial qpoly(std::vector<long long> cs) {
    std::vector<CycloNumber> v;
    for (auto c : cs) v.emplace_back(CycloNumber(c));
    return Polynomial(std::move(v));
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == qpoly({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == qpoly({1, 1}));
    CHECK(cyclotomic_polynomial(4) == qpoly({1, 0, 1}));
    CHECK(cyclotomic_polynomial(6) == qpoly({1, -1, 1}));
    CHECK(cyclotomic_polynomial(12) == qpoly({1, 0, -1, 0, 1}));
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(1) == 1);
}

TEST_CASE("cyclo basic arithmetic") {
    auto z4 = CycloNumber::zeta(4);
    CHECK(z4 * z4 == CycloNumber(-1));
    auto z3 = CycloNumber::zeta(3);
    CHECK(z3.conj() == CycloNumber(-1) - z3);
    auto x = CycloNumber(1) + CycloNumber::zeta(5);
    CHECK(x * x.inverse() == CycloNumber(1));
    CHECK(z3 * z3 * z3 == CycloNumber(1));
    // mixed conductors
    auto z6 = CycloNumber::zeta(6);
    CHECK(z6 * z6 * z6 == CycloNumber(-1));
    CHECK(z6 == CycloNumber(1) + z3);
}

TEST_CASE("zeta6 vs zeta3 relation") {
    // zeta_6 = -zeta_3^2
    auto z6 = CycloNumber::zeta(6);
    auto z3 = CycloNumber::zeta(3);
    CHECK(z6 == -(z3 * z3));
}

TEST_CASE("cyclo field axioms on random elements") {
    std::mt19937 rng(7);
    auto rnd = [&](long N) {
        CycloNumber r(0);
        long d = euler_phi(N);
        for (long i = 0; i < d; ++i) {
            long long a = static_cast<long long>(rng() % 7) - 3;
            r += CycloNumber(Rational(a, 1 + static_cast<long long>(rng() % 3))) *
                 CycloNumber::zeta(N).pow(i);
        }
        return r;
    };
    for (long N : {3L, 4L, 5L, 8L}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto a = rnd(N), b = rnd(N), c = rnd(N);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a.conj().conj() == a);
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == CycloNumber(1));
            }
            auto f = (a * a.conj()).to_float();
            auto af = a.to_float();
            CHECK(std::abs(f.real() - std::norm(af)) < 1e-9);
            CHECK(std::abs(f.imag()) < 1e-9);
        }
    }
}

TEST_CASE("to_float") {
    CHECK(std::abs(CycloNumber(1).to_float() - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(CycloNumber::zeta(4).to_float() - std::complex<double>(0, 1)) < 1e-12);
    auto v = (CycloNumber(1) + CycloNumber::zeta(3)).to_float();
    CHECK(std::abs(v - std::complex<double>(0.5, 0.8660254037844386)) < 1e-12);
}

TEST_CASE("falling factorial") {
    CHECK(falling_factorial(0) == qpoly({1}));
    CHECK(falling_factorial(1) == qpoly({0, 1}));
    CHECK(falling_factorial(3) == qpoly({0, 2, -3, 1}));
    CHECK(falling_factorial(3).evaluate(CycloNumber(5)) == CycloNumber(60));
    CHECK(falling_factorial(4).evaluate(CycloNumber(4)) == CycloNumber(24));
    CHECK(falling_factorial(4).evaluate(CycloNumber(3)) == CycloNumber(0));
}

TEST_CASE("rational function normalization and evaluation") {
    Polynomial n = Polynomial::variable();
    // (n^2 - n) / n^2 reduces to (n - 1)/n
    RationalFunction f(falling_factorial(2), n * n);
    CHECK(f.num() == qpoly({-1, 1}));
    CHECK(f.den() == qpoly({0, 1}));
    CHECK(f.evaluate_at(CycloNumber(4)) == CycloNumber(Rational(3, 4)));

    RationalFunction g(falling_factorial(4), falling_factorial(2) * falling_factorial(2));
    CHECK(g.evaluate_at(CycloNumber(4)) == CycloNumber(Rational(1, 6)));

    RationalFunction one(Polynomial(CycloNumber(1)), Polynomial(CycloNumber(1)));
    CHECK(one.evaluate_at(CycloNumber(17)) == CycloNumber(1));

    RationalFunction h(Polynomial(CycloNumber(1)), n - Polynomial(CycloNumber(1)));
    CHECK(h.evaluate_at(CycloNumber(3)) == CycloNumber(Rational(1, 2)));
    CHECK_THROWS(h.evaluate_at(CycloNumber(1)));

    // arithmetic: 1/(n-1) + 1 = n/(n-1)
    RationalFunction s = h + one;
    CHECK(s.num() == qpoly({0, 1}));
    CHECK(s.den() == qpoly({-1, 1}));
}

TEST_CASE("laurent expansion") {
    Polynomial n = Polynomial::variable();
    RationalFunction f(Polynomial(CycloNumber(1)), n - Polynomial(CycloNumber(1)));
    auto s = laurent_expand(f, 2);
    CHECK(s.leadOrder == -1);
    CHECK(s.coeffs[0] == CycloNumber(1));
    CHECK(s.coeffs[1] == CycloNumber(1));
    CHECK(s.coeffs[2] == CycloNumber(1));

    RationalFunction g(falling_factorial(2), n * n);
    auto t = laurent_expand(g, 1);
    CHECK(t.leadOrder == 0);
    CHECK(t.coeffs[0] == CycloNumber(1));
    CHECK(t.coeffs[1] == CycloNumber(-1));

    RationalFunction c(Polynomial(CycloNumber(5)), Polynomial(CycloNumber(1)));
    auto u = laurent_expand(c, 3);
    CHECK(u.leadOrder == 0);
    CHECK(u.coeffs == std::vector<CycloNumber>{CycloNumber(5), CycloNumber(0), CycloNumber(0),
                                               CycloNumber(0)});

    // multiplying the truncated series back by den matches num through the window
    RationalFunction w(n + Polynomial(CycloNumber(2)), (n - Polynomial(CycloNumber(1))) * n);
    auto sw = laurent_expand(w, 4);
    CHECK(sw.leadOrder == -1);
    // (n+2)/(n^2-n) = n^-1 + 3n^-2 + 3n^-3 + ...
    CHECK(sw.coeffs[0] == CycloNumber(1));
    CHECK(sw.coeffs[1] == CycloNumber(3));
    CHECK(sw.coeffs[2] == CycloNumber(3));
}

TEST_CASE("laurent at_order accessor") {
    Polynomial n = Polynomial::variable();
    RationalFunction f(Polynomial(CycloNumber(1)), n - Polynomial(CycloNumber(1)));
    auto s = laurent_expand(f, 3);
    CHECK(s.at_order(0) == CycloNumber(0));
    CHECK(s.at_order(-1) == CycloNumber(1));
    CHECK(s.at_order(-3) == CycloNumber(1));
    CHECK(s.at_order(5) == CycloNumber(0));
}

TEST_CASE("polynomial gcd") {
    Polynomial n = Polynomial::variable();
    Polynomial a = (n - Polynomial(CycloNumber(1))) * (n - Polynomial(CycloNumber(2)));
    Polynomial b = (n - Polynomial(CycloNumber(1))) * (n + Polynomial(CycloNumber(3)));
    Polynomial g = poly_gcd(a, b);
    CHECK(g == n - Polynomial(CycloNumber(1)));
}
