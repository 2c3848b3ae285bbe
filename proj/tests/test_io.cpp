#include <catch2/catch_amalgamated.hpp>

#include "calkin/io.hpp"

using namespace calkin;

TEST_CASE("map parsing picks the arithmetic") {
    json lft = json::parse(R"({"type":"lft","a":"1/1","b":"0/1","c":"-1/1","d":"2/1"})");
    parsed_map pm = parse_map(lft, arithmetic_mode::automatic);
    CHECK(pm.exact);
    CHECK(pm.em->eval(exact_complex(1)) == exact_complex(1));

    json ratl = json::parse(R"({"type":"rational","num":[0,0,1],"den":[2,0,-1]})");
    parsed_map pr = parse_map(ratl, arithmetic_mode::automatic);
    CHECK(pr.exact); // integers stay exact

    json fl = json::parse(R"({"type":"rational","num":[0,0.5],"den":[1.0]})");
    parsed_map pf = parse_map(fl, arithmetic_mode::automatic);
    CHECK_FALSE(pf.exact);
    CHECK_THROWS_AS(parse_map(fl, arithmetic_mode::exact), error);

    json pairform = json::parse(R"({"type":"lft","a":[0.5,0.1],"b":0,"c":0,"d":1})");
    parsed_map pp = parse_map(pairform, arithmetic_mode::automatic);
    CHECK_FALSE(pp.exact);
    CHECK(std::abs(pp.fm->a() - cnum(0.5, 0.1)) < 1e-15);

    json comp = json::parse(
        R"({"type":"compose","outer":{"type":"lft","a":"1","b":"0","c":"0","d":"2"},
            "inner":{"type":"lft","a":"1","b":"0","c":"0","d":"2"}})");
    parsed_map pc = parse_map(comp, arithmetic_mode::automatic);
    CHECK(pc.exact);
    CHECK(pc.em->eval(exact_complex(1)) == exact_complex(rational(1, 4)));

    CHECK_THROWS_AS(parse_map(json::parse(R"({"a":1})"), arithmetic_mode::automatic), error);
}

TEST_CASE("combination parsing accepts U+2212 coefficients") {
    json comb = json::parse(
        R"({"maps":[{"type":"lft","a":"1","b":"0","c":"-1","d":"2"},
                    {"type":"lft","a":"1","b":"0","c":"-1","d":"2"}],
            "coeffs":["1","−1"],"beta":1.5})");
    parsed_combination pc = parse_combination(comb, arithmetic_mode::automatic);
    REQUIRE(pc.exact);
    CHECK(pc.ec->coefficients[1] == exact_complex(-1));
    CHECK(pc.space.beta == 1.5);
}

TEST_CASE("reports serialize exact values as rational strings") {
    exact_map tangent =
        exact_map::linear_fractional(exact_complex(1), exact_complex(0), exact_complex(-1),
                                     exact_complex(2));
    contact_set<exact_complex> cs = find_contact_points(tangent);
    json j = contact_set_json(cs);
    CHECK(j["schema"] == "calkin/boundary/1");
    CHECK(j["mode"] == "exact");
    CHECK(j["points"][0]["zeta"] == "1/1");
    CHECK(j["points"][0]["abs_derivative"] == "2/1");
    CHECK(j["points"][0]["data"][2] == "4/1");
    CHECK(j["class"]["in_s0"] == "yes");

    // byte-identical re-serialization
    CHECK(j.dump(2) == contact_set_json(find_contact_points(tangent)).dump(2));
}

TEST_CASE("verdict report carries groups and violations") {
    exact_map tangent =
        exact_map::linear_fractional(exact_complex(1), exact_complex(0), exact_complex(-1),
                                     exact_complex(2));
    relation_engine<exact_complex> eng({tangent, tangent});
    auto v = eng.decide({exact_complex(1), exact_complex(2)});
    json j = verdict_json(eng, v, 1.0);
    CHECK(j["compact"] == false);
    CHECK(j["mode"] == "exact");
    CHECK(j["groups"].size() == 1);
    CHECK(j["violated"][0]["sum"] == "3/1");
    CHECK(j["beta_free"] == true);
}

TEST_CASE("map round trip through JSON") {
    exact_map osc = exact_map::linear_fractional(
        exact_complex(rational(3, 7)), exact_complex(rational(-1, 7)),
        exact_complex(rational(-5, 7)), exact_complex(1));
    json j = map_json(osc);
    parsed_map pm = parse_map(j, arithmetic_mode::exact);
    CHECK(*pm.em == osc);
}
