#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ahgeo/expr.hpp"
#include "ahgeo/rng.hpp"
#include "oracles.hpp"

using ahgeo::Expr;
using ahgeo::Jet;
using ahgeo::ParseError;
using ahgeo::EvalError;
using ahgeo::Rng;

TEST_CASE("single variable") {
    Expr e = Expr::parse("x1", 2);
    CHECK(e.eval({3.5, -1.0}) == 3.5);
}

TEST_CASE("arithmetic and precedence") {
    CHECK(Expr::parse("1 + 2*3", 1).eval({0.0}) == 7.0);
    CHECK(Expr::parse("(1 + 2)*3", 1).eval({0.0}) == 9.0);
    CHECK(Expr::parse("2^3^2", 1).eval({0.0}) == 64.0);   // left-assoc chain
    CHECK(Expr::parse("-2^2", 1).eval({0.0}) == -4.0);    // ^ binds tighter than unary -
    CHECK(Expr::parse("2^-2", 1).eval({0.0}) == 0.25);
    CHECK(Expr::parse("2^(-2)", 1).eval({0.0}) == 0.25);
    CHECK(Expr::parse("10 - 4 - 3", 1).eval({0.0}) == 3.0);
    CHECK(Expr::parse("12 / 4 / 3", 1).eval({0.0}) == 1.0);
    CHECK(Expr::parse("6 / 2 * 3", 1).eval({0.0}) == 9.0);
}

TEST_CASE("functions and named constants") {
    CHECK(Expr::parse("sin(pi)", 1).eval({0.0}) == Catch::Approx(0.0).margin(1e-15));
    CHECK(Expr::parse("cos(0)", 1).eval({0.0}) == 1.0);
    CHECK(Expr::parse("log(e)", 1).eval({0.0}) == Catch::Approx(1.0).margin(1e-15));
    CHECK(Expr::parse("sqrt(2)", 1).eval({0.0}) == std::sqrt(2.0));
    CHECK(Expr::parse("exp(1)", 1).eval({0.0}) == std::exp(1.0));
    CHECK(Expr::parse("tan(0.3)", 1).eval({0.0}) == std::tan(0.3));
    CHECK(Expr::parse("atan(1)", 1).eval({0.0}) == Catch::Approx(std::numbers::pi / 4).margin(1e-15));
    CHECK(Expr::parse("sinh(0.5)", 1).eval({0.0}) == std::sinh(0.5));
    CHECK(Expr::parse("cosh(0.5)", 1).eval({0.0}) == std::cosh(0.5));
}

TEST_CASE("mixed expression evaluates") {
    Expr e = Expr::parse("sin(x2)^2 + x1*x1", 2);
    double s = std::sin(0.7);
    CHECK(e.eval({1.5, 0.7}) == Catch::Approx(s * s + 2.25).margin(1e-15));
}

TEST_CASE("scientific notation numbers") {
    CHECK(Expr::parse("1e3", 1).eval({0.0}) == 1000.0);
    CHECK(Expr::parse("2.5e-2", 1).eval({0.0}) == 0.025);
    CHECK(Expr::parse("1.5E+1", 1).eval({0.0}) == 15.0);
    // a bare 'e' after a number is the constant, not an exponent marker
    CHECK(Expr::parse("2*e", 1).eval({0.0}) == 2.0 * std::numbers::e);
}

TEST_CASE("unknown symbol reports position") {
    try {
        Expr::parse("x1 + x3", 2);
        FAIL("expected ParseError");
    } catch (const ParseError& err) {
        std::string msg = err.what();
        CHECK(msg.find("x3") != std::string::npos);
        CHECK(msg.find("byte 5") != std::string::npos);
    }
    CHECK_THROWS_AS(Expr::parse("x0", 2), ParseError);
    CHECK_THROWS_AS(Expr::parse("y", 2), ParseError);
    CHECK_THROWS_AS(Expr::parse("foo(x1)", 2), ParseError);
}

TEST_CASE("malformed input throws") {
    CHECK_THROWS_AS(Expr::parse("", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("1 +", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("(1 + 2", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("1 2", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("sin x1", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("x1 x2", 2), ParseError);
    CHECK_THROWS_AS(Expr::parse("*3", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("1..2", 1), ParseError);
}

TEST_CASE("exponent must be an integer literal") {
    CHECK_THROWS_AS(Expr::parse("x1^x1", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("x1^1.5", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("x1^(1+1)", 1), ParseError);
    CHECK(Expr::parse("x1^2", 1).eval({3.0}) == 9.0);
    CHECK(Expr::parse("x1^(2)", 1).eval({3.0}) == 9.0);
    CHECK(Expr::parse("x1^(-2)", 1).eval({2.0}) == 0.25);
    CHECK(Expr::parse("x1^0", 1).eval({5.0}) == 1.0);
}

TEST_CASE("no implicit multiplication") {
    CHECK_THROWS_AS(Expr::parse("2x1", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("2(3)", 1), ParseError);
    CHECK_THROWS_AS(Expr::parse("(1)(2)", 1), ParseError);
}

TEST_CASE("division by zero is an evaluation error with context") {
    Expr e = Expr::parse("1/x1", 1);
    try {
        e.eval({0.0});
        FAIL("expected EvalError");
    } catch (const EvalError& err) {
        std::string msg = err.what();
        CHECK(msg.find("division by zero") != std::string::npos);
        CHECK(msg.find("1/x1") != std::string::npos);
    }
    CHECK_THROWS_AS(Expr::parse("x1^(-1)", 1).eval({0.0}), EvalError);
}

TEST_CASE("log and sqrt domain violations surface at evaluation") {
    CHECK_THROWS_AS(Expr::parse("log(x1)", 1).eval({-1.0}), EvalError);
    CHECK_THROWS_AS(Expr::parse("log(x1)", 1).eval({0.0}), EvalError);
    CHECK_THROWS_AS(Expr::parse("sqrt(x1)", 1).eval({-0.5}), EvalError);
    CHECK(Expr::parse("sqrt(x1)", 1).eval({4.0}) == 2.0);
}

TEST_CASE("jet evaluation matches double evaluation bitwise on the value lane") {
    std::vector<std::string> sources = {
        "sin(x1)*cos(x2) + x1^3",
        "exp(0.2*x1) / (1 + x2^2)",
        "sqrt(1 + x1^2 + x2^2)",
        "log(2 + x1) - atan(x2)",
        "sinh(x1)*cosh(x2) + tan(0.4*x1)",
        "(x1 - x2)^4 / (x1^2 + 1)",
        "pi*x1 + e*x2",
    };
    Rng rng(11);
    for (const std::string& src : sources) {
        Expr e = Expr::parse(src, 2);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> pt = {rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
            double dv = e.eval(pt);
            Jet jv = e.eval_jet(pt, 3);
            CHECK(dv == jv.value()); // bitwise identical
        }
    }
}

TEST_CASE("jet evaluation derivatives match finite differences") {
    std::vector<std::string> sources = {
        "sin(x1 + x2)*x3",
        "exp(x1*x2) + sqrt(2 + x3)",
        "x1^2*x2 - x3^3 + cos(x2*x3)",
        "1 / (1 + x1^2 + x2^2 + x3^2)",
    };
    Rng rng(31);
    for (const std::string& src : sources) {
        Expr e = Expr::parse(src, 3);
        oracle::ScalarFn f = [&e](const std::vector<double>& q) { return e.eval(q); };
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> pt = {rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8),
                                      rng.uniform(-0.8, 0.8)};
            Jet j = e.eval_jet(pt, 3);
            for (int i = 0; i < 3; ++i) {
                CHECK(j.d(i) == Catch::Approx(oracle::fd1(f, pt, i)).epsilon(1e-5).margin(1e-6));
                for (int k = i; k < 3; ++k)
                    CHECK(j.d(i, k) ==
                          Catch::Approx(oracle::fd2(f, pt, i, k)).epsilon(1e-4).margin(1e-5));
            }
        }
    }
}

TEST_CASE("jet evaluation in a wider variable space") {
    // evaluate a 2-variable expression with jets carrying 5 slots, as the
    // submanifold pipeline does when chaining through an embedding
    Expr e = Expr::parse("x1*x2 + sin(x2)", 2);
    std::vector<double> pt = {0.3, 0.9};
    Jet j = e.eval_jet(pt, 2, 5);
    CHECK(j.dim() == 5);
    CHECK(j.value() == Catch::Approx(0.27 + std::sin(0.9)).margin(1e-15));
    CHECK(j.d(0) == Catch::Approx(0.9).margin(1e-15));
    CHECK(j.d(1) == Catch::Approx(0.3 + std::cos(0.9)).margin(1e-15));
    CHECK(j.d(2) == 0.0);
    CHECK(j.d(4) == 0.0);
}

TEST_CASE("whitespace is insignificant") {
    CHECK(Expr::parse("  1+ 2 \t* 3 ", 1).eval({0.0}) == 7.0);
    CHECK(Expr::parse("sin( x1 )", 1).eval({0.25}) == std::sin(0.25));
}

TEST_CASE("source text is preserved") {
    Expr e = Expr::parse("x1 + 1", 1);
    CHECK(e.source() == "x1 + 1");
}
