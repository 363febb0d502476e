#include "relprec/serialize.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace relprec;

TEST_CASE("rationals serialize as exact fraction strings") {
    CHECK(to_json(Rational(1, 3)) == "1/3");
    CHECK(to_json(Rational(-7)) == "-7/1");
    CHECK(rational_from_json(ordered_json("22/7")) == Rational(22, 7));
    CHECK_THROWS_AS(rational_from_json(ordered_json(3.14)), std::invalid_argument);
}

TEST_CASE("judgments round-trip bit-exactly") {
    RpJudgment j = *rp_check(Rational(11, 10), Rational(1), Rational(1, 3)).judgment;
    ordered_json encoded = to_json(j);
    CHECK(encoded.at("kind") == "rp");
    CHECK(encoded.at("exact") == "11/10");
    CHECK(encoded.at("approx") == "1/1");
    CHECK(encoded.at("alpha") == "1/3");
    CHECK(encoded.at("certified_by") == "rp_check");

    RpJudgment back = rp_judgment_from_json(encoded);
    CHECK(back.exact() == j.exact());
    CHECK(back.approx() == j.approx());
    CHECK(back.alpha() == j.alpha());
    CHECK(back.certified_by() == j.certified_by());
    CHECK(to_json(back) == encoded);

    ApJudgment aj = *ap_check(Rational(0), Rational(1, 2), Rational(1, 2)).judgment;
    ordered_json ap_encoded = to_json(aj);
    ApJudgment ap_back = ap_judgment_from_json(ap_encoded);
    CHECK(to_json(ap_back) == ap_encoded);
}

TEST_CASE("corrupt judgment records are refused") {
    ordered_json bad{{"exact", "1/1"},
                     {"approx", "2/1"},
                     {"alpha", "1/2"},  // ln 2 > 1/2
                     {"kind", "rp"},
                     {"certified_by", "rp_check"}};
    CHECK_THROWS_AS(rp_judgment_from_json(bad), std::invalid_argument);

    ordered_json wrong_kind{{"exact", "1/1"},
                            {"approx", "1/1"},
                            {"alpha", "0/1"},
                            {"kind", "ap"},
                            {"certified_by", "x"}};
    CHECK_THROWS_AS(rp_judgment_from_json(wrong_kind), std::invalid_argument);

    ordered_json bad_ap{{"exact", "0/1"},
                        {"approx", "1/1"},
                        {"alpha", "1/2"},
                        {"kind", "ap"},
                        {"certified_by", "ap_check"}};
    CHECK_THROWS_AS(ap_judgment_from_json(bad_ap), std::invalid_argument);
}

TEST_CASE("model reports carry a schema tag and exact numbers") {
    ModelReport rep = verify_model_exhaustive({Format(3), 0, 0, 2}, RoundingMode::RN);
    ordered_json j = to_json(rep);
    CHECK(j.at("schema") == "relprec.model-report/1");
    CHECK(j.at("points_checked").get<std::uint64_t>() == rep.points_checked);
    CHECK(rational_from_json(j.at("unit_roundoff")) == Rational(1, 8));
    CHECK(rational_from_json(j.at("max_std_delta")) == rep.max_std_delta);
    CHECK(j.at("violations").is_array());
}

TEST_CASE("inner-product reports serialize") {
    InnerProductGen g;
    g.kind = InnerProductGen::Kind::Exhaustive;
    g.n = 1;
    InnerProductReport rep = verify_inner_product(g, Format(2), RoundingMode::RN);
    ordered_json j = to_json(rep);
    CHECK(j.at("schema") == "relprec.innerprod-report/1");
    CHECK(j.at("instances").get<std::uint64_t>() == rep.instances);
    CHECK(j.at("violations").empty());
}

TEST_CASE("sign environments parse and round-trip") {
    ordered_json j = ordered_json::parse(R"({
        "x": {"sign": "pos", "range": ["1/1", "2/1"]},
        "y": {"sign": "neg", "range": ["-3/1", "-1/2"], "input_alpha": "1/100"},
        "z": {"sign": "unknown"}
    })");
    SignEnv env = sign_env_from_json(j);
    CHECK(env.at("x").sign == Sign::Positive);
    CHECK(env.at("x").range->hi() == Rational(2));
    CHECK(env.at("y").input_alpha == Rational(1, 100));
    CHECK_FALSE(env.at("z").range.has_value());

    SignEnv back = sign_env_from_json(to_json(env));
    CHECK(back.at("y").range->lo() == Rational(-3));

    CHECK_THROWS_AS(sign_env_from_json(ordered_json::parse(R"({"x": {"sign": "bogus"}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sign_env_from_json(ordered_json::parse(R"({"x": {"sign": "pos", "range": ["-2/1", "-1/1"]}})")),
        std::invalid_argument);
    CHECK_THROWS_AS(
        sign_env_from_json(ordered_json::parse(R"({"x": {"range": ["2/1", "1/1"]}})")),
        std::invalid_argument);
}
