#include <catch2/catch_amalgamated.hpp>

#include "calkin/validation.hpp"
#include "support/oracles.hpp"

using namespace calkin;

namespace {
exact_complex q(int n, int d = 1) { return exact_complex(rational(n, d)); }
exact_map lft(int a, int b, int c, int d) {
    return exact_map::linear_fractional(q(a), q(b), q(c), q(d));
}
const exact_map half_cayley = lft(1, 0, -1, 2); // z/(2-z)
} // namespace

TEST_CASE("evaluation and derivatives of z/(2-z)") {
    CHECK(half_cayley.eval(q(1)) == q(1));
    CHECK(half_cayley.eval(q(0)) == q(0));
    // phi' = 2/(2-z)^2, phi'' = 4/(2-z)^3
    CHECK(half_cayley.derivative(q(1), 1) == q(2));
    CHECK(half_cayley.derivative(q(1), 2) == q(4));
    CHECK(half_cayley.derivative(q(0), 1) == q(1, 2));
}

TEST_CASE("derivatives agree with the quotient-rule oracle") {
    exact_map m = exact_map::rational({q(0), q(0), q(1)}, {q(2), q(0), q(-1)});
    for (int k = 1; k <= 4; ++k) {
        exact_complex via_jet = m.derivative(q(1), k);
        exact_complex via_oracle = oracle::quotient_rule_derivative(
            {q(0), q(0), q(1)}, {q(2), q(0), q(-1)}, k, q(1));
        CHECK(via_jet == via_oracle);
    }
    // float path agrees with the exact values
    float_map fm = to_float(m);
    for (int k = 1; k <= 3; ++k) {
        cnum fv = fm.derivative(cnum(0.25, 0.3), k);
        cnum ev = to_complex(m.derivative(exact_complex(rational(1, 4), rational(3, 10)), k));
        CHECK(std::abs(fv - ev) < 1e-12 * std::max(1.0, std::abs(ev)));
    }
}

TEST_CASE("canonical form and equality") {
    CHECK(lft(2, 0, -2, 4) == half_cayley);
    CHECK_FALSE(lft(1, 0, -2, 3) == half_cayley);
    // compositions of linear fractional maps collapse exactly
    exact_map composed = exact_map::composed(half_cayley, half_cayley);
    CHECK(composed.is_linear_fractional());
    // z/(2-z) ∘ z/(2-z) = z/(4-3z)
    CHECK(composed == lft(1, 0, -3, 4));
}

TEST_CASE("flattening a composite of rational maps") {
    exact_map squared = exact_map::rational({q(0), q(0), q(1)}, {q(1)}); // z^2
    exact_map scaled = exact_map::rational({q(0), q(1, 2)}, {q(1)});    // z/2
    exact_map comp = exact_map::composed(scaled, squared);              // z^2/2
    exact_map flat = flattened(comp);
    CHECK(flat.variant() == exact_map::kind::rational_quotient);
    CHECK(flat.eval(q(3)) == q(9, 2));
    CHECK(flat.derivative(q(3), 1) == q(3));
}

TEST_CASE("poles raise") {
    CHECK_THROWS_AS(half_cayley.eval(q(2)), error);
    exact_map m = exact_map::rational({q(1)}, {q(1), q(-1)}); // 1/(1-z)
    CHECK_THROWS_AS(m.eval(q(1)), error);
}

TEST_CASE("composite depth cap") {
    exact_map squared = exact_map::rational({q(0), q(0), q(1)}, {q(1)});
    exact_map deep = squared;
    for (int i = 0; i < 7; ++i) deep = exact_map::composed(deep, squared);
    CHECK_THROWS_AS(exact_map::composed(deep, squared), error);
}

TEST_CASE("validation: exact image-disk certificates") {
    validation_report pass = validate_self_map(half_cayley);
    CHECK(pass.passed());
    CHECK(pass.certificate == "exact-image-disk");
    CHECK(pass.boundary_contact);
    CHECK_FALSE(pass.is_automorphism);

    validation_report ident = validate_self_map(lft(1, 0, 0, 1));
    CHECK(ident.passed());
    CHECK(ident.is_automorphism);

    validation_report fail = validate_self_map(lft(2, 0, 0, 1)); // 2z
    CHECK_FALSE(fail.passed());
    CHECK(fail.failure == errc::not_self_map);
    REQUIRE(fail.witness.has_value());
    CHECK(std::abs(to_float(lft(2, 0, 0, 1)).eval(*fail.witness)) >= 1.0);

    validation_report pole = validate_self_map(lft(1, 0, -2, 1)); // z/(1-2z)
    CHECK_FALSE(pole.passed());
    CHECK(pole.failure == errc::pole_in_closed_disk);

    validation_report strict = validate_self_map(lft(1, 0, 0, 2)); // z/2
    CHECK(strict.passed());
    CHECK_FALSE(strict.boundary_contact);
}

TEST_CASE("validation: numeric certificates") {
    exact_map squared = exact_map::rational({q(0), q(0), q(1)}, {q(2), q(0), q(-1)});
    validation_report rep = validate_self_map(squared);
    CHECK(rep.passed());
    CHECK(rep.certificate == "numeric-sampling");
    CHECK(rep.boundary_contact);

    // z^2 is inner: |phi| = 1 on the whole circle
    float_map inner = float_map::rational({cnum(0), cnum(0), cnum(1)}, {cnum(1)});
    validation_report arc = validate_self_map(inner);
    CHECK_FALSE(arc.passed());
    CHECK(arc.failure == errc::boundary_arc_contact);

    float_map big = float_map::rational({cnum(0), cnum(0), cnum(1.5)}, {cnum(1)});
    validation_report no = validate_self_map(big);
    CHECK_FALSE(no.passed());
    CHECK(no.failure == errc::not_self_map);
}

TEST_CASE("validated linear fractional maps stay inside on a fine boundary grid") {
    oracle::exact_lft_family_source src(17);
    for (int trial = 0; trial < 10; ++trial) {
        exact_map m = src.draw();
        REQUIRE(validate_self_map(m).passed());
        float_map fm = to_float(m);
        double sup = 0.0;
        for (int k = 0; k < 10000; ++k)
            sup = std::max(sup,
                           std::abs(fm.eval(std::polar(1.0, 2 * std::numbers::pi * k / 10000.0))));
        CHECK(sup <= 1.0 + 1e-12);
    }
}

TEST_CASE("exact evaluation is order independent") {
    // Horner vs naive power sum on a rational map with awkward denominators
    std::vector<exact_complex> num{q(1, 3), q(-2, 7), q(0), q(5, 11)};
    std::vector<exact_complex> den{q(9), q(1, 13)};
    exact_map m = exact_map::rational(num, den);
    exact_complex z(rational(3, 5), rational(-1, 5));
    exact_complex direct(0);
    exact_complex zp(1);
    for (const auto& c : num) {
        direct += c * zp;
        zp *= z;
    }
    direct = direct / (den[0] + den[1] * z);
    CHECK(m.eval(z) == direct);
}
