#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "pompeiu/io.hpp"
#include "pompeiu/selftest.hpp"

using namespace pompeiu;

namespace {

std::string fixture(const std::string& name) {
    return read_text_file(std::string(POMPEIU_FIXTURE_DIR) + "/" + name);
}

template <typename F>
ParseError capture(F&& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a ParseError");
    return ParseError("unreachable");
}

} // namespace

TEST_CASE("canonical fixtures parse and round trip") {
    for (const char* name : {"z1.grp", "z2.grp", "z6.grp", "q8.grp"}) {
        std::string text = fixture(name);
        auto G = parse_group_file(text);
        CHECK(serialize_group(G) == text);
    }

    auto z2 = parse_group_file(fixture("z2.grp"));
    CHECK(z2.order == 2);
    CHECK(z2.label == "Z2");
    CHECK(z2.abelian_factors == std::vector<int>{2});
    CHECK(z2.op(1, 1) == 0);

    auto z6 = parse_group_file(fixture("z6.grp"));
    CHECK(z6.abelian_factors == std::vector<int>{6});
    CHECK(dft_oracle(Subset(z6, {0, 3})).zero_count == 3);

    auto q8 = parse_group_file(fixture("q8.grp"));
    CHECK(q8.order == 8);
    CHECK_FALSE(q8.is_abelian());
    CHECK(center_dimension(q8) == 5);
}

TEST_CASE("generator files close to the declared group") {
    auto s3 = parse_group_file(fixture("s3.grp"));
    CHECK(s3.order == 6);
    CHECK(s3.label == "S3");
    CHECK_FALSE(s3.is_abelian());
    validate_group(s3);

    // same invariants as the built-in copy of the same group, element
    // numbering aside
    auto builtin = symmetric_group(3);
    auto ra = build_report(s3);
    auto rb = build_report(builtin);
    CHECK(ra.classification.subsets_covered == rb.classification.subsets_covered);
    CHECK(ra.classification.pompeiu_count == rb.classification.pompeiu_count);
    CHECK(ra.classification.non_pompeiu_count == rb.classification.non_pompeiu_count);
    CHECK(ra.normal_subgroup_list.size() == rb.normal_subgroup_list.size());

    // serialize and reparse keeps the multiplication table
    auto again = parse_group_file(serialize_group(s3));
    CHECK(again.mul == s3.mul);
}

TEST_CASE("parse diagnostics carry line and column") {
    auto e = capture([] { parse_group_file("nonsense\n"); });
    CHECK(e.line == 1);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("pompeiu-group/1"));

    e = capture([] { parse_group_file("pompeiu-group/1\norder: 2\n"); });
    CHECK(e.line == 2);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("label"));

    e = capture([] { parse_group_file("pompeiu-group/1\nlabel: x\norder: 0\ntable:\n"); });
    CHECK(e.line == 3);

    std::string head = "pompeiu-group/1\nlabel: x\norder: 2\ntable:\n";
    e = capture([&] { parse_group_file(head + "0 0\n1 0\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("row 0 not a permutation"));
    CHECK(e.line == 5);
    CHECK(e.col == 3);

    e = capture([&] { parse_group_file(head + "0 1\n0 1\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("column 0 not a permutation"));
    CHECK(e.line == 6);
    CHECK(e.col == 1);

    e = capture([&] { parse_group_file(head + "1 0\n0 1\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("element 0 must be the identity"));
    CHECK(e.line == 5);

    e = capture([&] { parse_group_file(head + "0 2\n1 0\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("out of range"));
    CHECK(e.line == 5);
    CHECK(e.col == 3);

    e = capture([&] { parse_group_file(head + "0 1 1\n1 0\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("3 entries"));

    e = capture([&] { parse_group_file(head + "0 x\n1 0\n"); });
    CHECK(e.line == 5);
    CHECK(e.col == 3);

    e = capture([&] { parse_group_file(head + "0 1\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unexpected end"));

    // a Latin square with identity that is not associative: element 1 would
    // have order 2 in a group of order 5
    std::string loop =
        "pompeiu-group/1\nlabel: loop5\norder: 5\ntable:\n"
        "0 1 2 3 4\n"
        "1 0 3 4 2\n"
        "2 3 4 0 1\n"
        "3 4 1 2 0\n"
        "4 2 0 1 3\n";
    e = capture([&] { parse_group_file(loop); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("associativity"));

    e = capture([] {
        parse_group_file("pompeiu-group/1\nlabel: x\norder: 1000000\ntable:\n0\n");
    });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("bound"));

    e = capture([] { parse_group_file(""); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unexpected end"));

    CHECK_THROWS_AS(load_group_file("/nonexistent/nowhere.grp"), ParseError);
}

TEST_CASE("generator parse diagnostics") {
    std::string head = "pompeiu-group/1\nlabel: g\norder: 2\ngenerators:\n";

    auto e = capture([&] { parse_group_file(head + "(0 1 0)\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("cycle repeats point 0"));
    CHECK(e.line == 5);

    e = capture([&] { parse_group_file(head + "(0 1)(1 2)\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("repeats point 1"));

    e = capture([&] { parse_group_file(head + "(0 1\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unclosed"));

    e = capture([&] { parse_group_file(head + "0 1)\n"); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("outside a cycle"));
    CHECK(e.col == 1);

    e = capture([&] { parse_group_file(head + "(0 a)\n"); });
    CHECK(e.col == 4);

    e = capture([&] { parse_group_file(head); });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("at least one permutation"));

    e = capture([&] {
        parse_group_file("pompeiu-group/1\nlabel: g\norder: 5\ngenerators:\n(0 1)\n(0 1 2)\n");
    });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("generators close to 6"));
    CHECK(e.line == 3);
}

TEST_CASE("factor lists are validated against the table") {
    std::string z4 = "pompeiu-group/1\nlabel: z4\norder: 4\nfactors: 4\ntable:\n"
                     "0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n";
    auto G = parse_group_file(z4);
    CHECK(G.abelian_factors == std::vector<int>{4});

    auto e = capture([&] {
        parse_group_file("pompeiu-group/1\nlabel: z4\norder: 4\nfactors: 2 2\ntable:\n"
                         "0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("do not describe"));
    CHECK(e.line == 4);

    e = capture([&] {
        parse_group_file("pompeiu-group/1\nlabel: z4\norder: 4\nfactors: 3\ntable:\n"
                         "0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
    });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("multiply"));

    e = capture([] {
        parse_group_file("pompeiu-group/1\nlabel: s3\norder: 6\nfactors: 6\ngenerators:\n"
                         "(0 1)\n(0 1 2)\n");
    });
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("nonabelian"));

    // the true Z2xZ2 passes with its factor list
    std::string v4 = "pompeiu-group/1\nlabel: v4\norder: 4\nfactors: 2 2\ntable:\n"
                     "0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
    CHECK(parse_group_file(v4).abelian_factors == (std::vector<int>{2, 2}));
}

TEST_CASE("comments and blank lines are ignored") {
    std::string text = "# a comment\npompeiu-group/1\n\nlabel: Z2\norder: 2\n\n"
                       "# interlude\ntable:\n0 1\n1 0\n";
    auto G = parse_group_file(text);
    CHECK(G.order == 2);
    CHECK(G.mul == parse_group_file(fixture("z2.grp")).mul);
}

TEST_CASE("integer lists") {
    CHECK(parse_integer_list("0,1,3") == (std::vector<long long>{0, 1, 3}));
    CHECK(parse_integer_list(" 5 , -2 ") == (std::vector<long long>{5, -2}));
    CHECK(parse_subset_indices("2,0") == (std::vector<int>{2, 0}));

    CHECK_THROWS_AS(parse_integer_list(""), ParseError);
    auto e = capture([] { parse_integer_list("1,,2"); });
    CHECK(e.col == 3);
    e = capture([] { parse_integer_list("a"); });
    CHECK(e.col == 1);
    e = capture([] { parse_integer_list("1 2"); });
    CHECK(e.col == 3);
    CHECK_THROWS_AS(parse_integer_list("1,"), ParseError);
    CHECK_THROWS_AS(parse_integer_list("99999999999"), ParseError);

    auto z2 = cyclic_group(2);
    CHECK_THROWS_AS(Subset(z2, parse_subset_indices("0,9")), PreconditionError);
}

TEST_CASE("exact scalar and function rendering") {
    CHECK(serialize_scalar(Scalar(5)) == "5");
    CHECK(serialize_scalar(Scalar(-1)) == "-1");
    CHECK(serialize_scalar(Scalar(make_rational(-1, 2))) == "-1/2");
    CHECK(serialize_scalar(Scalar(make_rational(1, 2), make_rational(1, 3))) ==
          "1/2+1/3·i");
    CHECK(serialize_scalar(Scalar::i()) == "0+1·i");
    CHECK(serialize_scalar(Scalar::i().conj()) == "0-1·i");

    auto z2 = cyclic_group(2);
    auto f = GroupRingElement::zero(z2);
    f.add_coeff(0, Scalar(-1));
    f.add_coeff(1, Scalar(1));
    CHECK(render_function(f) == "-1·e0 + 1·e1");
    CHECK(render_function(GroupRingElement::zero(z2)) == "0");

    CHECK(format_float(0.0) == "0");
    CHECK(format_float(1.0 / 3.0) == "0.333333333333");
    CHECK(format_float(1.25e-10) == "1.25e-10");
}

TEST_CASE("reports in all three formats") {
    auto r2 = build_report(cyclic_group(2));
    CHECK(render_csv(r2) ==
          "subset,size,is_pompeiu,ideal_rank,witness_dim\n"
          "\"0\",1,true,2,0\n"
          "\"1\",1,true,2,0\n"
          "\"0,1\",2,false,1,1\n");

    std::string md = render_markdown(r2);
    CHECK_THAT(md, Catch::Matchers::ContainsSubstring("Pompeiu group: no"));
    CHECK_THAT(md, Catch::Matchers::ContainsSubstring("square-summable-class Pompeiu group: no"));
    CHECK_THAT(md, Catch::Matchers::ContainsSubstring("| {0,1} | 2 | no | 1 | 1 | 1 | agrees |"));

    auto j = json::parse(render_report(r2, "json"));
    CHECK(j["format"] == "pompeiu-report/1");
    CHECK(j["group"]["order"] == 2);
    CHECK(j["group"]["abelian_factors"] == json::array({2}));
    CHECK(j["complete"] == true);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][2]["subset"] == json::array({0, 1}));
    CHECK(j["rows"][2]["is_pompeiu"] == false);
    CHECK(j["rows"][2]["ideal_rank"] == 1);
    CHECK(j["rows"][2]["witness_dim"] == 1);
    CHECK(j["summary"]["is_pompeiu_group"] == false);
    CHECK(j["summary"]["l2"]["is_pompeiu_group"] == false);
    CHECK(j["summary"]["l2"]["witness"] == json::array({"-1", "1"}));
    CHECK(j["summary"]["normal_subgroups"] ==
          json::array({json::array({0}), json::array({0, 1})}));

    std::string md1 = render_markdown(build_report(cyclic_group(1)));
    CHECK_THAT(md1, Catch::Matchers::ContainsSubstring("Pompeiu group: yes"));

    CHECK_THROWS_AS(render_report(r2, "xml"), PreconditionError);
}

TEST_CASE("partial reports mark the group verdict unknown") {
    auto r = build_report(symmetric_group(4), ClassifyOptions{2, 4});
    CHECK_FALSE(r.classification.complete);
    CHECK_THAT(render_markdown(r), Catch::Matchers::ContainsSubstring("unknown (partial run)"));
    auto j = json::parse(render_report(r, "json"));
    CHECK(j["summary"]["is_pompeiu_group"].is_null());
    CHECK(j["complete"] == false);
    CHECK(j["subsets_covered"] == 300);
}

TEST_CASE("reports are byte identical across thread counts") {
    auto s3 = symmetric_group(3);
    auto a = build_report(s3, ClassifyOptions{0, 1});
    auto b = build_report(s3, ClassifyOptions{0, 8});
    for (const char* fmt : {"csv", "md", "json"})
        CHECK(render_report(a, fmt) == render_report(b, fmt));

    auto q8 = quaternion8();
    auto qa = build_report(q8, ClassifyOptions{0, 1});
    auto qb = build_report(q8, ClassifyOptions{0, 8});
    for (const char* fmt : {"csv", "md", "json"})
        CHECK(render_report(qa, fmt) == render_report(qb, fmt));
}

TEST_CASE("verdict json") {
    auto z2 = cyclic_group(2);
    auto v = is_pompeiu_set(Subset(z2, {0, 1}));
    auto j = render_verdict_json(v);
    CHECK(j["format"] == "pompeiu-verdict/1");
    CHECK(j["is_pompeiu"] == false);
    CHECK(j["ideal_rank"] == 1);
    CHECK(j["witness_dim"] == 1);
    CHECK(j["witness_basis"] == json::array({json::array({"-1", "1"})}));
    CHECK(j["oracle"]["modulus"] == 2);
    CHECK(j["oracle"]["zero_count"] == 1);
    CHECK(j["oracle"]["values"] == json::array({"2", "0"}));

    auto s3 = symmetric_group(3);
    auto vp = is_pompeiu_set(Subset(s3, {2}));
    auto jp = render_verdict_json(vp);
    CHECK(jp["is_pompeiu"] == true);
    CHECK(jp["witness_basis"] == json::array());
    CHECK(jp["oracle"].is_null());
}

TEST_CASE("selftest runs clean over the fleet") {
    auto fleet = selftest_fleet();
    REQUIRE(fleet.size() == 21);
    CHECK(fleet.front().label == "Z1");
    CHECK(fleet.back().label == "Z2xZ4");

    auto report = run_selftest();
    CHECK(report.groups.size() == 21);
    CHECK(report.lattice_checks > 0);
    int sum = report.lattice_checks;
    for (const auto& g : report.groups) {
        CHECK(g.checks > 0);
        sum += g.checks;
    }
    CHECK(report.total_checks == sum);
}
