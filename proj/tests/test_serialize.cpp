#include <doctest.h>

#include "dabim/checks.hpp"
#include "dabim/serialize.hpp"

using namespace dabim;

namespace {

std::string schema_error(const Json& j) {
    try {
        bimodule_from_json(j);
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("bimodules survive a round trip") {
    for (int m = 2; m <= 4; ++m)
        for (int i = 1; i < m; ++i)
            for (Sign s : {Sign::Positive, Sign::Negative})
                for (auto k : {ObjectKind::Twist, ObjectKind::Crossing, ObjectKind::RestrictedTwist,
                               ObjectKind::ReducedTwist, ObjectKind::InducedCrossing}) {
                    CAPTURE(to_string(k));
                    auto M = build_object(k, m, i, s);
                    const Json j = bimodule_to_json(*M);
                    auto back = bimodule_from_json(j);
                    CHECK(bimodule_to_json(*back) == j);
                    CHECK(back->generator_count() == M->generator_count());
                    CHECK(back->families().size() == M->families().size());
                    if (!M->has_families()) CHECK(same_by_names(*back, *M));
                }
}

TEST_CASE("algebras survive a round trip") {
    for (const char* name : {"KS", "B", "Cl", "Clbot"}) {
        auto A = build_algebra(name, 3);
        const Json j = algebra_to_json(*A);
        auto back = algebra_from_json(j);
        CHECK(algebra_to_json(*back) == j);
        CHECK(back->basis(6).size() == A->basis(6).size());
    }
}

TEST_CASE("text round trip through dump") {
    auto M = twist_bimodule(3, 1, Sign::Positive);
    const std::string text = bimodule_to_json(*M).dump(2);
    auto back = bimodule_from_json(Json::parse(text));
    CHECK(bimodule_to_json(*back).dump(2) == text);
}

TEST_CASE("crossing dump carries parametric arrows") {
    const Json j = bimodule_to_json(*crossing_bimodule(3, 1, Sign::Positive));
    int families = 0;
    for (const auto& a : j["arrows"])
        if (a.contains("k_slot")) {
            ++families;
            CHECK(a.contains("k_min"));
        }
    CHECK(families == 13);
}

TEST_CASE("a mismatched idempotent names the arrow") {
    Json j = bimodule_to_json(*twist_bimodule(3, 1, Sign::Positive));
    REQUIRE(j["arrows"][0]["from"] == "<0>");
    j["arrows"][0]["to"] = "<2>";
    const auto msg = schema_error(j);
    CHECK(msg.find("arrows[0]") != std::string::npos);
    CHECK(msg.find("does not run") != std::string::npos);
}

TEST_CASE("malformed files are rejected") {
    const Json good = bimodule_to_json(*crossing_bimodule(3, 1, Sign::Positive));
    CHECK(schema_error(good).empty());

    Json j = good;
    j["schema"] = "other/0";
    CHECK(schema_error(j).find("schema") != std::string::npos);

    j = good;
    j.erase("nodes");
    CHECK(schema_error(j).find("missing field \"nodes\"") != std::string::npos);

    j = good;
    j["nodes"][0]["grading"] = Json::array({1});
    CHECK(schema_error(j).find("grading") != std::string::npos);

    j = good;
    j["arrows"][0]["from"] = "Q";
    CHECK(schema_error(j).find("unknown generator Q") != std::string::npos);

    j = good;
    j["arrows"][0]["out"] = "R1 R1";
    CHECK_FALSE(schema_error(j).empty());

    j = good;
    for (auto& a : j["arrows"])
        if (a.contains("k_slot")) {
            a["k_slot"] = 5;
            break;
        }
    CHECK(schema_error(j).find("k_slot") != std::string::npos);

    j = good;
    j["nodes"][1]["name"] = j["nodes"][0]["name"];
    CHECK(schema_error(j).find("duplicate") != std::string::npos);

    j = good;
    j["algebras"][0]["rules"].push_back("L1 R1");
    CHECK(schema_error(j).find("lhs -> rhs") != std::string::npos);
}

TEST_CASE("gradings that do not match the arrows are rejected") {
    Json j = bimodule_to_json(*twist_bimodule(3, 1, Sign::Positive));
    for (auto& n : j["nodes"])
        if (n["name"] == "<1*(1|0)>") n["hom_degree"] = 0;
    CHECK_FALSE(schema_error(j).empty());
}

TEST_CASE("missing files") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), SchemaError);
}
