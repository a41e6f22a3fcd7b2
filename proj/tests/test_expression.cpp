#include <doctest.h>

#include <cmath>

#include "ipb/document.hpp"
#include "ipb/expression.hpp"
#include "test_support.hpp"

using namespace ipb;
using ipb::testing::code_of;

namespace {

AssessmentDocument doc43() {
    return parse_document(
        R"({"atoms":["w1","w2","w3"],"gambles":{"X":[-1,1,2]},"lower":{"X":0.75}})");
}

std::vector<double> eval(const std::string& expr) {
    const AssessmentDocument doc = doc43();
    const Gamble g = evaluate_expression(expr, doc);
    return {g.values().begin(), g.values().end()};
}

} // namespace

TEST_SUITE_BEGIN("expression");

TEST_CASE("powers and arithmetic") {
    CHECK(eval("X^2") == std::vector<double>{1, 1, 4});
    CHECK(eval("(X - 0.75)^2") == std::vector<double>{3.0625, 0.0625, 1.5625});
    CHECK(eval("2*X + 1") == std::vector<double>{-1, 3, 5});
    CHECK(eval("X - X") == std::vector<double>{0, 0, 0});
    CHECK(eval("X/2") == std::vector<double>{-0.5, 0.5, 1});
    CHECK(eval("3") == std::vector<double>{3, 3, 3});
}

TEST_CASE("indicators") {
    CHECK(eval("ind(X >= 1.5)") == std::vector<double>{0, 0, 1});
    CHECK(eval("ind(X <= 0)") == std::vector<double>{1, 0, 0});
    CHECK(eval("ind(X >= X)") == std::vector<double>{1, 1, 1});
    CHECK(eval("ind(X^2 <= 1)") == std::vector<double>{1, 1, 0});
}

TEST_CASE("absolute value and composed deviations") {
    CHECK(eval("abs(X)") == std::vector<double>{1, 1, 2});
    CHECK(eval("abs(X - 1)") == std::vector<double>{2, 0, 1});
    CHECK(eval("ind(abs(X - 0.75) >= 1)") == std::vector<double>{1, 0, 1});
}

TEST_CASE("precedence") {
    // ^ binds tighter than unary minus, which binds tighter than *
    CHECK(eval("-X^2") == std::vector<double>{-1, -1, -4});
    CHECK(eval("-X*X") == std::vector<double>{-1, -1, -4});
    CHECK(eval("2^3^2") == std::vector<double>{64, 64, 64}); // left-associative
    CHECK(eval("2*X^2") == std::vector<double>{2, 2, 8});
    CHECK(eval("X^-1") == std::vector<double>{-1, 1, 0.5});
}

TEST_CASE("fractional powers require nonnegative bases") {
    CHECK(eval("abs(X)^1.5") ==
          std::vector<double>{1, 1, std::pow(2.0, 1.5)});
    CHECK(code_of([] { eval("X^1.5"); }) == Errc::evaluation_error);
    CHECK(code_of([] { eval("X^X"); }) == Errc::evaluation_error); // non-constant exponent
}

TEST_CASE("division by a vanishing gamble fails at evaluation") {
    CHECK(code_of([] { eval("1/(X - 1)"); }) == Errc::evaluation_error);
    CHECK(eval("1/(X - 3)") ==
          std::vector<double>{1.0 / -4.0, 1.0 / -2.0, 1.0 / -1.0});
}

TEST_CASE("parse errors carry positions") {
    CHECK(code_of([] { eval("X +"); }) == Errc::parse_error);
    CHECK(code_of([] { eval("(X"); }) == Errc::parse_error);
    CHECK(code_of([] { eval("X $ 2"); }) == Errc::parse_error);
    CHECK(code_of([] { eval("ind(X < 2)"); }) == Errc::parse_error);
    CHECK(code_of([] { eval("Y + 1"); }) == Errc::unknown_identifier);
}

TEST_CASE("parse produces a reusable expression") {
    const AssessmentDocument doc = doc43();
    const GambleExpression e = parse_expression("X^2 + 1", doc);
    CHECK(e.text() == "X^2 + 1");
    const Gamble g1 = e.evaluate(doc);
    const Gamble g2 = e.evaluate(doc);
    CHECK(g1.values()[2] == 5.0);
    CHECK(g2.values()[0] == 2.0);
}

TEST_SUITE_END();
