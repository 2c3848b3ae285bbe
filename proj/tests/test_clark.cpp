#include <catch2/catch_amalgamated.hpp>

#include "calkin/clark.hpp"

using namespace calkin;

namespace {
exact_complex q(int n, int d = 1) { return exact_complex(rational(n, d)); }
exact_map lft(int a, int b, int c, int d) {
    return exact_map::linear_fractional(q(a), q(b), q(c), q(d));
}
const exact_map tangent = lft(1, 0, -1, 2);
const exact_map two_contacts =
    exact_map::rational({q(0), q(0), q(1)}, {q(2), q(0), q(-1)});
const exact_map shrunk = lft(1, 0, 0, 2); // z/2
} // namespace

TEST_CASE("singular Clark measures are the expected atom lists") {
    auto mu = singular_clark(tangent, q(1));
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].first == q(1));
    CHECK(mu.atoms[0].second == rational(1, 2));

    auto empty = singular_clark(tangent, exact_complex(rational(0), rational(1)));
    CHECK(empty.atoms.empty());

    auto both = singular_clark(two_contacts, q(1));
    REQUIRE(both.atoms.size() == 2);
    CHECK(both.atoms[0].second == rational(1, 4));
    CHECK(both.atoms[1].second == rational(1, 4));
    CHECK(both.total_mass() == rational(1, 2));

    CHECK_THROWS_AS(singular_clark(lft(1, 0, 0, 1), q(1)), error); // automorphism not in S
}

TEST_CASE("Herglotz identity probe") {
    // z = 0: both sides equal the total mass Re((1+phi(0))/(1-phi(0))) = 1
    auto r0 = clark_radial_probe(tangent, q(1), cnum(0, 0));
    CHECK(r0.herglotz_lhs == Catch::Approx(1.0));
    CHECK(r0.atomic_part == Catch::Approx(0.5));
    CHECK(r0.ac_part == Catch::Approx(0.5).margin(1e-7));
    CHECK(r0.residual < 1e-6);
    CHECK(std::abs(r0.poisson_check - 1.0) < 1e-8);

    // strictly contractive map: no atoms, residual tiny
    auto r1 = clark_radial_probe(shrunk, exact_complex(rational(3, 5), rational(4, 5)),
                                 cnum(0, 0));
    CHECK(r1.atomic_part == 0.0);
    CHECK(r1.residual < 1e-8);

    auto r2 = clark_radial_probe(two_contacts, q(1), cnum(0, 0.3));
    CHECK(r2.residual < 1e-6);
}

TEST_CASE("probe residuals stay small through the disk") {
    contact_set<exact_complex> cs = find_contact_points(two_contacts);
    for (double radius : {0.3, 0.6, 0.9}) {
        for (int k = 0; k < 6; ++k) {
            cnum z = std::polar(radius, 2 * std::numbers::pi * k / 6.0 + 0.1);
            auto r = clark_radial_probe(two_contacts, cs, q(1), z);
            CHECK(r.residual < 1e-6);
        }
    }
}

TEST_CASE("essential norm of a composition operator") {
    auto en = essential_norm_composition(tangent, space_spec(1.0));
    REQUIRE(en.exact_rational.has_value());
    CHECK(*en.exact_rational == rational(1, 2));
    CHECK(en.lower_bound == Catch::Approx(0.5));

    auto en2 = essential_norm_composition(two_contacts, space_spec(1.0));
    CHECK(*en2.exact_rational == rational(1, 2)); // 1/4 + 1/4 over the fiber at alpha = 1
    CHECK(en2.lower_bound == Catch::Approx(0.25));

    auto compact_case = essential_norm_composition(shrunk, space_spec(1.0));
    CHECK(*compact_case.exact_rational == rational(0));

    // beta > 1: only the lower bound, exactness dropped
    auto bergman = essential_norm_composition(tangent, space_spec(2.0));
    CHECK_FALSE(bergman.exact.has_value());
    CHECK(bergman.lower_bound == Catch::Approx(0.25)); // (1/2)^2
}

TEST_CASE("exact essential norm dominates the single-atom lower bound") {
    // the fiber sum over any alpha dominates each of its terms
    for (const exact_map& m : {tangent, two_contacts}) {
        auto en = essential_norm_composition(m, space_spec(1.0));
        CHECK(*en.exact >= en.lower_bound - 1e-15);
    }
}

TEST_CASE("largest fiber mass is attained on the contact image") {
    // off phi(F), every alpha on a fine grid carries zero singular mass
    contact_set<exact_complex> cs = find_contact_points(two_contacts);
    auto best = essential_norm_composition(cs, space_spec(1.0));
    for (int k = 1; k < 64; ++k) {
        cnum alpha = std::polar(1.0, 2 * std::numbers::pi * k / 64.0);
        contact_set<cnum> fcs = find_contact_points(to_float(two_contacts));
        auto mu = singular_clark(fcs, alpha);
        double mass = mu.total_mass();
        CHECK(mass <= to_double(*best.exact_rational) + 1e-12);
    }
}

TEST_CASE("weighted essential norm bounds") {
    contact_set<exact_complex> cs1 = find_contact_points(tangent);
    auto w1 = weighted_essential_bounds(cs1, {q(1)});
    CHECK(*w1.lower_rational == rational(1, 2));
    CHECK(w1.upper == Catch::Approx(2.0));
    CHECK_FALSE(w1.compact);

    auto w0 = weighted_essential_bounds(cs1, {q(0)});
    CHECK(*w0.lower_rational == rational(0));
    CHECK(w0.upper == 0.0);
    CHECK(w0.compact);

    contact_set<exact_complex> cs2 = find_contact_points(two_contacts);
    auto wz = weighted_essential_bounds(cs2, {q(1), q(0)}); // w(1)=1, w(-1)=0
    CHECK(*wz.lower_rational == rational(1, 4));
    CHECK(wz.upper == Catch::Approx(1.0));

    // w = 1 reproduces the unweighted essential norm and 4x it
    auto wb = weighted_essential_bounds(cs2, {q(1), q(1)});
    auto en = essential_norm_composition(cs2, space_spec(1.0));
    CHECK(*wb.lower_rational == *en.exact_rational);
    CHECK(wb.upper == Catch::Approx(4.0 * *en.exact));
}

TEST_CASE("weighted decomposition into osculating terms") {
    auto single = weighted_decomposition(tangent, {q(3)});
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == q(3));
    CHECK(single[0].second == tangent); // an LFT is its own osculating map

    auto both = weighted_decomposition(two_contacts, {q(1), q(1)});
    REQUIRE(both.size() == 2);
    for (const auto& [w, m] : both) CHECK(m.is_linear_fractional());

    auto none = weighted_decomposition(two_contacts, {q(0), q(0)});
    CHECK(none.empty());
}
