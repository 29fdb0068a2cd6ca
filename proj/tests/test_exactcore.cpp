#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cremona/linalg.hpp"
#include "cremona/mpoly.hpp"
#include "cremona/resultant.hpp"
#include "cremona/rng.hpp"
#include "cremona/textio.hpp"

using namespace cremona;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};

MPoly parse(const std::string& s, const std::vector<std::string>& vars = XYZ) {
    return poly_from_text(s, vars);
}

MPoly var(const std::string& n, const std::vector<std::string>& vars = XYZ) {
    return MPoly::variable(vars, n);
}

MPoly random_poly(Rng& rng, const std::vector<std::string>& vars, int maxdeg, int nterms) {
    MPoly p(vars);
    for (int i = 0; i < nterms; ++i) {
        Exponents e(vars.size());
        for (auto& x : e) x = static_cast<int>(rng.next_in(0, maxdeg));
        p.add_term(e, rng.next_small_rational(6));
    }
    return p;
}

} // namespace

TEST_CASE("rational canonical form") {
    Rational r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK(rational_from_string("-14/21") == make_rational(-2, 3));
}

TEST_CASE("mpoly arithmetic and canonical order") {
    MPoly q = var("x") * var("z") - var("y") * var("y");
    CHECK(q.degree() == 2);
    CHECK(q.is_homogeneous());
    // Leading term in graded lex (x > y > z) is x z.
    CHECK(q.leading_exponents() == Exponents{1, 0, 1});
    CHECK(poly_to_text(q) == "1 x^1 y^0 z^1 - 1 x^0 y^2 z^0");
    CHECK(poly_from_text(poly_to_text(q), XYZ) == q);
}

TEST_CASE("poly text round trip on random polynomials") {
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        MPoly p = random_poly(rng, XYZ, 5, 6);
        CHECK(poly_from_text(poly_to_text(p), XYZ) == p);
    }
}

TEST_CASE("poly_substitute oracle examples") {
    // substitute x -> x y^4 + y^2, y -> y, z -> 1 into xz - y^2 gives x y^4.
    MPoly target = var("x") * var("z") - var("y") * var("y");
    std::map<std::string, MPoly> sub = {
        {"x", parse("1 x^1 y^4 z^0 + 1 x^0 y^2 z^0")},
        {"y", var("y")},
        {"z", MPoly::constant(XYZ, Rational(1))}};
    CHECK(poly_substitute(target, sub) == parse("1 x^1 y^4 z^0"));

    // Identity substitution.
    Rng rng(11);
    MPoly p = random_poly(rng, XYZ, 4, 5);
    std::map<std::string, MPoly> id = {{"x", var("x")}, {"y", var("y")}, {"z", var("z")}};
    CHECK(poly_substitute(p, id) == p);

    // x -> x, y -> x^n y with n = 2 sends y to x^2 y.
    std::map<std::string, MPoly> tower = {{"x", var("x")}, {"y", var("x") * var("x") * var("y")}};
    CHECK(poly_substitute(var("y"), tower) == parse("1 x^2 y^1 z^0"));
}

TEST_CASE("poly_substitute rejects missing assignment for used variable") {
    MPoly target = var("x") * var("y");
    std::map<std::string, MPoly> sub = {{"x", var("x")}};
    CHECK_THROWS_AS(poly_substitute(target, sub), Error);
    // Unused variables need no assignment.
    std::map<std::string, MPoly> ok = {{"x", var("x")}, {"y", var("y")}};
    CHECK(poly_substitute(target, ok) == target);
}

TEST_CASE("poly_substitute is a ring homomorphism on random instances") {
    Rng rng(23);
    for (int i = 0; i < 12; ++i) {
        MPoly p = random_poly(rng, XYZ, 3, 4);
        MPoly q = random_poly(rng, XYZ, 3, 4);
        std::map<std::string, MPoly> sub = {
            {"x", random_poly(rng, XYZ, 2, 3)},
            {"y", random_poly(rng, XYZ, 2, 3)},
            {"z", random_poly(rng, XYZ, 2, 3)}};
        CHECK(poly_substitute(p + q, sub) == poly_substitute(p, sub) + poly_substitute(q, sub));
        CHECK(poly_substitute(p * q, sub) == poly_substitute(p, sub) * poly_substitute(q, sub));
    }
}

TEST_CASE("divrem and exact division") {
    MPoly q = var("x") * var("z") - var("y") * var("y");
    MPoly f = q * q * (var("x") + var("z"));
    auto quot = f.divide_exact(q);
    REQUIRE(quot.has_value());
    CHECK(*quot == q * (var("x") + var("z")));
    CHECK_FALSE((f + var("x").pow(5)).divide_exact(q).has_value());
}

TEST_CASE("solve_exact oracle examples") {
    // 1x1 system 2x = 1 -> x = 1/2.
    auto s1 = solve_exact({{Rational(2)}}, QVector{Rational(1)});
    REQUIRE(s1.consistent);
    CHECK((*s1.particular)[0] == make_rational(1, 2));
    CHECK(s1.rank == 1);
    CHECK(s1.free_dim == 0);

    // Kernel of [[1,-1,0],[0,1,-1]] is span{(1,1,1)}.
    auto s2 = solve_exact({{Rational(1), Rational(-1), Rational(0)},
                           {Rational(0), Rational(1), Rational(-1)}});
    REQUIRE(s2.basis.size() == 1);
    CHECK(s2.basis[0] == QVector{Rational(1), Rational(1), Rational(1)});

    // Inconsistent inhomogeneous system is reported, not thrown.
    auto s3 = solve_exact({{Rational(1)}, {Rational(1)}},
                          QVector{Rational(1), Rational(2)});
    CHECK_FALSE(s3.consistent);
}

TEST_CASE("solve_exact kernel vectors annihilate the matrix") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix m(4, QVector(7));
        for (auto& row : m)
            for (auto& v : row) v = rng.next_small_rational(9);
        auto sol = solve_exact(m);
        CHECK(sol.rank + sol.free_dim == 7);
        for (const auto& k : sol.basis)
            for (const auto& row : m) {
                Rational acc(0);
                for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * k[j];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("resultant oracle examples") {
    // Res_t(t - a, t - b) = a - b (up to the fixed sign convention).
    std::vector<std::string> TAB = {"t", "a", "b"};
    MPoly p = var("t", TAB) - var("a", TAB);
    MPoly q = var("t", TAB) - var("b", TAB);
    MPoly r = resultant_univar(p, q, "t");
    MPoly diff = var("a", TAB) - var("b", TAB);
    CHECK((r == diff || r == -diff));

    // Res_t(x - t^2, y - t^3) = +-(y^2 - x^3).
    std::vector<std::string> TXY = {"t", "x", "y"};
    MPoly p2 = var("x", TXY) - var("t", TXY).pow(2);
    MPoly q2 = var("y", TXY) - var("t", TXY).pow(3);
    MPoly r2 = resultant_univar(p2, q2, "t");
    MPoly expect = var("y", TXY).pow(2) - var("x", TXY).pow(3);
    CHECK((r2 == expect || r2 == -expect));

    // Res_k(k^3 - 4, k - 2) = evaluation of k^3 - 4 at k = 2.
    std::vector<std::string> K = {"k"};
    MPoly p3 = var("k", K).pow(3) - MPoly::constant(K, Rational(4));
    MPoly q3 = var("k", K) - MPoly::constant(K, Rational(2));
    MPoly r3 = resultant_univar(p3, q3, "k");
    CHECK(r3.is_constant());
    Rational v = r3.constant_value();
    CHECK((v == 4 || v == -4));
}

TEST_CASE("resultant vanishes exactly on shared factors") {
    std::vector<std::string> TXY = {"t", "x", "y"};
    MPoly common = var("t", TXY) - var("x", TXY);
    MPoly p = common * (var("t", TXY) + var("y", TXY));
    MPoly q = common * (var("t", TXY) - var("y", TXY) + MPoly::constant(TXY, Rational(2)));
    CHECK(resultant_univar(p, q, "t").is_zero());

    MPoly pc = var("t", TXY) - var("x", TXY);
    MPoly qc = var("t", TXY) - var("y", TXY);
    CHECK_FALSE(resultant_univar(pc, qc, "t").is_zero());

    MPoly cx = MPoly::constant(TXY, Rational(3));
    CHECK_THROWS_AS(resultant_univar(cx, cx, "t"), Error);
}

TEST_CASE("gcd_poly oracle examples") {
    MPoly q = var("x") * var("z") - var("y") * var("y");
    MPoly z = var("z");

    // gcd(z^2 (xz - y^2), z^3) = z^2.
    CHECK(gcd_poly(z.pow(2) * q, z.pow(3)) == z.pow(2));

    // gcd(P, P) = normalized P.
    MPoly p = q.scaled(make_rational(-3, 7));
    CHECK(gcd_poly(p, p) == q);

    CHECK(gcd_poly(MPoly::zero(XYZ), MPoly::zero(XYZ)).is_zero());
    CHECK(gcd_poly(MPoly::zero(XYZ), p) == q);
}

TEST_CASE("gcd divides both arguments exactly") {
    Rng rng(99);
    for (int i = 0; i < 8; ++i) {
        MPoly a = random_poly(rng, XYZ, 2, 3);
        MPoly b = random_poly(rng, XYZ, 2, 3);
        MPoly c = random_poly(rng, XYZ, 1, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        MPoly g = gcd_poly(a * c, b * c);
        CHECK((a * c).divide_exact(g).has_value());
        CHECK((b * c).divide_exact(g).has_value());
        auto qc = g.divide_exact(c.primitive_normalized());
        CHECK(qc.has_value());  // c divides the gcd
    }
}

TEST_CASE("certified_coprime proves coprime triples") {
    MPoly x = var("x"), y = var("y"), z = var("z");
    CHECK(certified_coprime({x, y, z}));
    MPoly q = x * z - y * y;
    CHECK(certified_coprime({q, z * z, y * z + x * x}));
    // Shared factor defeats the certificate.
    CHECK_FALSE(certified_coprime({z * q, z * z * x, z * y * y}));
}

TEST_CASE("matrix csv export") {
    QMatrix m = {{make_rational(1, 2), Rational(3)}, {Rational(-1), Rational(0)}};
    CHECK(matrix_to_csv(m) == "1/2,3\n-1,0\n");
}

TEST_CASE("inhomogeneous solve with free variables") {
    // x + y = 3 over two unknowns: one pivot, one free.
    auto s = solve_exact({{Rational(1), Rational(1)}}, QVector{Rational(3)});
    REQUIRE(s.consistent);
    CHECK(s.rank == 1);
    CHECK(s.free_dim == 1);
    REQUIRE(s.particular.has_value());
    CHECK((*s.particular)[0] + (*s.particular)[1] == 3);
    REQUIRE(s.basis.size() == 1);
    CHECK(s.basis[0][0] + s.basis[0][1] == 0);
}

TEST_CASE("polynomial text parser rejects malformed input") {
    const std::vector<std::string> XYZv = {"x", "y", "z"};
    CHECK_THROWS_AS(poly_from_text("", XYZv), Error);
    CHECK_THROWS_AS(poly_from_text("1 x^1 y^0", XYZv), Error);          // truncated
    CHECK_THROWS_AS(poly_from_text("1 a^1 y^0 z^0", XYZv), Error);      // wrong variable
    CHECK_THROWS_AS(poly_from_text("1 x^1 y^0 z^0 +", XYZv), Error);    // dangling sign
    CHECK_THROWS_AS(poly_from_text("0 junk", XYZv), Error);
}
