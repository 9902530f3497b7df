#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"
#include "swmix/io.hpp"

using namespace swmix;
using swmix::test::iv;
using swmix::test::q;

namespace {

Json reparse(const Json& j) { return parse_json_text(j.dump(), "test"); }

SwitchedSystem<Rational> mixed_system()
{
    std::vector<AffinePiece<Rational>> pieces{{q(0), q(1, 2), q(2), q(0)}, {q(1, 2), q(1), q(-2), q(2)}};
    PiecewiseAffineMap<Rational> tent(pieces, std::nullopt, true);
    PiecewiseAffineMap<Rational> shifted({{q(0), q(1, 3), q(3), q(0)}}, AffineFormula<Rational>{q(1, 2), q(1, 4)});
    DfaSpec dfa{2, 2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}};
    return SwitchedSystem<Rational>({tent, shifted}, dfa, q(0), q(1));
}

SearchBudget horizon(std::size_t h)
{
    SearchBudget b;
    b.horizon = h;
    return b;
}

} // namespace

TEST_CASE("scalars")
{
    CHECK(scalar_json(q(3, 4)) == "3/4");
    CHECK(scalar_json(q(-2)) == "-2");
    CHECK(scalar_json(0.25) == 0.25);
    CHECK(scalar_from<Rational>(Json("6/8"), "x") == q(3, 4));
    CHECK(scalar_from<Rational>(Json(0.1), "x") == q(1, 10));
    CHECK(scalar_from<Rational>(Json(7), "x") == q(7));
    CHECK(scalar_from<double>(Json("1/4"), "x") == 0.25);
    CHECK_THROWS_AS(scalar_from<Rational>(Json("1/0"), "x"), InvalidDocument);
    CHECK_THROWS_AS(scalar_from<Rational>(Json("abc"), "x"), InvalidDocument);
    CHECK_THROWS_AS(scalar_from<Rational>(Json(true), "x"), InvalidDocument);
}

TEST_CASE("languages")
{
    std::vector<LanguageSpec> specs{FullShift{3}, ForbiddenWords{2, {Word{1, 1}}},
                                    DfaSpec{2, 2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}}};
    for (const auto& spec : specs) {
        Json j = language_json(spec);
        CHECK(language_json(language_from(reparse(j), "language")) == j);
    }
    CHECK(language_json(ForbiddenWords{2, {Word{1, 1}}}).dump() == R"({"kind":"sft","m":2,"forbidden":[[1,1]]})");
    CHECK_THROWS_AS(language_from(Json::parse(R"({"kind":"regex","m":2})"), "language"), InvalidDocument);
    CHECK_THROWS_AS(language_from(Json::parse(R"({"kind":"sft","m":2,"forbidden":[[1,99]]})"), "language"),
                    InvalidDocument);
}

TEST_CASE("systems round-trip")
{
    auto sys = mixed_system();
    Json j = system_json(sys);
    auto back = system_from<Rational>(reparse(j), "system");
    CHECK(system_json(back).dump() == j.dump());
    CHECK(back.map(0).declared_continuous());
    CHECK(back.map(1).fallback().has_value());
    CHECK(eval_point(back, Word{0, 1, 0}, q(1, 5)) == eval_point(sys, Word{0, 1, 0}, q(1, 5)));

    auto tent = system_from<Rational>(Json("tent"), "system");
    CHECK(system_json(tent) == system_json(tent_system<Rational>()));

    auto fl = system_from<double>(reparse(system_json(tent_system<double>())), "system");
    CHECK(eval_point(fl, Word{0, 1}, 0.3) == eval_point(tent_system<double>(), Word{0, 1}, 0.3));
}

TEST_CASE("malformed systems name the failing field")
{
    auto expect = [](const char* text, const char* where) {
        try {
            system_from<Rational>(Json::parse(text), "system");
            FAIL("accepted " << text);
        } catch (const InvalidDocument& e) {
            CHECK(std::string(e.what()).find(where) != std::string::npos);
        }
    };
    expect(R"({"bounds":["0","1"]})", "maps");
    expect(R"({"maps":[[{"a":"2"}]],"bounds":["0","1"]})", "system.maps[0][0]");
    expect(R"({"maps":[[{"a":"2","b":"0"}]],"bounds":["1","0"]})", "system.bounds");
    expect(R"({"maps":[[{"domain":["0","1/2"],"a":"2","b":"0"}]],"bounds":["0","1"]})", "system");
    expect(R"({"maps":[[{"a":"2","b":"0"}]],"bounds":["0","1"],"language":{"kind":"full","m":3}})", "system");
}

TEST_CASE("weak-mixing certificates round-trip bit for bit")
{
    auto sys = tent_system<Rational>();
    std::vector<OpenPair<Rational>> pairs{{iv("0", "0.1"), iv("0.9", "1")}, {iv("0.5", "0.6"), iv("0.2", "0.25")}};
    // A common word rescales gaps by 2^n, so type 2 needs nearby sources.
    std::vector<OpenPair<Rational>> near{{iv("0.1", "0.2"), iv("0.6", "0.7")}, {iv("0.15", "0.3"), iv("0.5", "0.9")}};
    for (auto kind : {MixingKind::type1, MixingKind::type2}) {
        SearchBudget b = horizon(16);
        b.required = 2;
        auto cert = wm_certificate(sys, iv("0", "1"), iv("0", "1"), kind == MixingKind::type1 ? pairs : near, kind, b);
        REQUIRE(cert.exhausted);
        std::string text = wm_json(sys, cert).dump(2);
        auto [sys2, cert2] = wm_from<Rational>(parse_json_text(text, "cert"));
        CHECK(wm_json(sys2, cert2).dump(2) == text);
        CHECK(verify_certificate(sys2, cert2));
        CHECK(verify_document(parse_json_text(text, "cert")).valid);
    }
    // Float mode keeps every double exactly.
    auto fsys = tent_system<double>();
    std::vector<OpenPair<double>> fpairs{{IntervalSet<double>(0.0, 0.1), IntervalSet<double>(0.9, 1.0)}};
    auto fcert = wm_certificate(fsys, IntervalSet<double>(0.0, 1.0), IntervalSet<double>(0.0, 1.0), fpairs,
                                MixingKind::type1, horizon(6));
    REQUIRE(fcert.exhausted);
    std::string ftext = wm_json(fsys, fcert).dump();
    auto [fsys2, fcert2] = wm_from<double>(parse_json_text(ftext, "cert"));
    CHECK(wm_json(fsys2, fcert2).dump() == ftext);
    CHECK(verify_certificate(fsys2, fcert2));
    CHECK_THROWS_AS(wm_from<Rational>(parse_json_text(ftext, "cert")), InvalidDocument);
}

TEST_CASE("tampered weak-mixing certificates fail verification")
{
    auto sys = tent_system<Rational>();
    auto cert = wm_certificate(sys, iv("0", "1"), iv("0", "1"), {{iv("0", "0.1"), iv("0.9", "1")}}, MixingKind::type1,
                               horizon(6));
    Json j = wm_json(sys, cert);
    Json bad_word = j;
    bad_word["witnesses"][0]["word"] = Json::array({0});
    CHECK(!verify_document(bad_word).valid);
    Json bad_source = j;
    bad_source["witnesses"][0]["source"] = Json::array({"0", "1/10"});
    CHECK(!verify_document(bad_source).valid);
    Json bad_order = j;
    bad_order["order"] = 3;
    CHECK_THROWS_AS(verify_document(bad_order), InvalidDocument);
}

TEST_CASE("spread certificates and chains round-trip")
{
    auto sys = tent_system<Rational>();
    SearchBudget b = horizon(600);
    auto unit = CompactRep<Rational>::intervals({{q(0), q(1)}});
    auto cert = certify_spread(sys, {iv("0.1", "0.3"), iv("0.6", "0.9")}, iv("0", "1"), q("0.2"),
                               build_qnet(unit, q("0.15")), MixingKind::type1, b);
    std::string text = spread_json(sys, cert).dump();
    auto [sys2, cert2] = spread_from<Rational>(parse_json_text(text, "cert"));
    CHECK(cert2 == cert);
    CHECK(spread_json(sys2, cert2).dump() == text);
    CHECK(verify_document(parse_json_text(text, "cert")).valid);

    auto one = certify_spread(sys, {iv("0.1", "0.2")}, iv("0", "1"), q(1, 2), QNet<Rational>{q(1), {q(1, 2)}},
                              MixingKind::type2, b);
    auto [sys3, one2] = spread_from<Rational>(reparse(spread_json(sys, one)));
    CHECK(one2 == one);
    CHECK(spread_json(sys, one).contains("rows"));
    CHECK(spread_json(sys, one)["rows"][0].contains("word"));

    auto chain = build_chain(sys, {iv("0.1", "0.3"), iv("0.6", "0.9")}, iv("0", "1"), unit, {q(1, 2), q(1, 3)},
                             MixingKind::type1, b);
    Json cj = chain_json(sys, chain);
    auto [sys4, chain2] = chain_from<Rational>(reparse(cj));
    CHECK(chain_json(sys4, chain2) == cj);
    CHECK(verify_document(cj).valid);
    // Swapping the stages breaks the increasing-length rule.
    Json swapped = cj;
    std::swap(swapped["stages"][0], swapped["stages"][1]);
    CHECK(!verify_document(swapped).valid);
}

TEST_CASE("xiong witnesses round-trip")
{
    auto sys = tent_system<Rational>();
    auto wit = xiong_witness(sys, {q(313, 1009), q(716, 1009)}, {q(1, 2), q(1, 5)}, MixingKind::type1,
                             {q(1, 4), q(1, 8)}, horizon(30), iv("0", "1"));
    REQUIRE(wit.complete);
    Json j = xiong_json(sys, wit);
    auto [sys2, wit2] = xiong_from<Rational>(reparse(j));
    CHECK(xiong_json(sys2, wit2) == j);
    CHECK(verify_document(j).valid);
    Json off = j;
    off["targets"][0] = "9/10";
    CHECK(!verify_document(off).valid);
}

TEST_CASE("budgets and documents")
{
    auto b = budget_from(Json::parse(R"({"horizon":5,"max_nodes":10,"seconds":1.5,"required":2})"), "budget");
    CHECK(b.horizon == 5);
    CHECK(b.max_nodes == 10);
    CHECK(b.seconds == 1.5);
    CHECK(b.required == 2);
    CHECK_THROWS_AS(budget_from(Json::parse(R"({"depth":5})"), "budget"), InvalidDocument);
    CHECK_THROWS_AS(budget_from(Json::parse(R"({"horizon":-1})"), "budget"), InvalidDocument);
    CHECK_THROWS_AS(parse_json_text("{\"a\":", "doc"), InvalidDocument);
    CHECK_THROWS_AS(verify_document(Json::parse(R"({"certificate":"poem"})")), InvalidDocument);
    CHECK_THROWS_AS(document_is_float(Json::parse(R"({"mode":"decimal"})")), InvalidDocument);
}
