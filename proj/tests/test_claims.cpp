#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imds/matrix_io.hpp"
#include "imds/report.hpp"

#include <json.hpp>

#include <regex>

using namespace imds;

namespace {

const ClaimReport& find_claim(const std::vector<ClaimReport>& claims,
                              const std::string& id) {
    for (const auto& c : claims)
        if (c.claim_id == id)
            return c;
    REQUIRE_MESSAGE(false, "claim ", id, " missing");
    static ClaimReport dummy;
    return dummy;
}

// suite restricted to the small fields so the whole file stays quick
ClaimSuiteOptions small_options() {
    ClaimSuiteOptions o;
    o.fields = {make_field(2), make_field(3)};
    return o;
}

} // namespace

TEST_CASE("suite over the small fields: outcomes per claim") {
    auto claims = verify_claims(small_options());
    REQUIRE(claims.size() == 7);

    const auto& c1 = find_claim(claims, "C1");
    CHECK(c1.outcome == Outcome::holds);
    CHECK(c1.runs.size() == 2);

    // the order-2 uniqueness claim is genuinely false: the census finds
    // 3*(2^m - 2) matrices, not 2^m - 2
    const auto& c2 = find_claim(claims, "C2");
    CHECK(c2.outcome == Outcome::refuted);
    CHECK(*c2.expected == Outcome::holds);
    REQUIRE(!c2.witnesses.empty());
    for (const auto& w : c2.witnesses) {
        CHECK(is_mds(w));
        CHECK(is_involutory(w));
        CHECK(distinct_values(w) == 2);
    }
    REQUIRE(c2.runs.size() == 2);
    CHECK(*c2.runs[0].count == 6);
    CHECK(*c2.runs[0].expected_count == 2);
    CHECK(*c2.runs[1].count == 18);
    CHECK(*c2.runs[1].expected_count == 6);

    const auto& c3a = find_claim(claims, "C3a");
    CHECK(c3a.outcome == Outcome::holds);

    const auto& c3b = find_claim(claims, "C3b");
    CHECK(c3b.outcome == Outcome::witness_found);
    REQUIRE(!c3b.witnesses.empty());
    CHECK(distinct_values(c3b.witnesses[0]) == 3);
    CHECK(is_involutory(c3b.witnesses[0]));

    const auto& c4 = find_claim(claims, "C4");
    CHECK(c4.outcome == Outcome::holds);

    // the order-4 witness claims need GF(2^8), not selected here
    CHECK(find_claim(claims, "W1").outcome == Outcome::skipped);
    CHECK(find_claim(claims, "W2").outcome == Outcome::skipped);

    CHECK_FALSE(suite_passes(claims)); // C2 is refuted
    CHECK_FALSE(suite_has_inconclusive(claims));
}

TEST_CASE("witness claims run when a degree-8 field is selected") {
    ClaimSuiteOptions o;
    o.fields = {make_field(8)};
    auto claims = verify_claims(o);
    const auto& w1 = find_claim(claims, "W1");
    CHECK(w1.outcome == Outcome::witness_found);
    REQUIRE(!w1.witnesses.empty());
    CHECK(w1.witnesses[0].field().poly() == 0x11B);
    CHECK(distinct_values(w1.witnesses[0]) == 3);
    CHECK(is_mds(w1.witnesses[0]));

    const auto& w2 = find_claim(claims, "W2");
    CHECK(w2.outcome == Outcome::witness_found);
    REQUIRE(!w2.witnesses.empty());
    CHECK(w2.witnesses[0].field().poly() == 0x11D);
    CHECK(distinct_values(w2.witnesses[0]) == 4);
    CHECK(is_involutory(w2.witnesses[0]));
    CHECK(is_mds(w2.witnesses[0]));

    // C3b and C4 need a degree-3 field
    CHECK(find_claim(claims, "C3b").outcome == Outcome::skipped);
    CHECK(find_claim(claims, "C4").outcome == Outcome::skipped);
    // C2 skips the census above degree 6
    CHECK(find_claim(claims, "C2").outcome == Outcome::skipped);
    // C1 still runs over GF(2^8)
    CHECK(find_claim(claims, "C1").outcome == Outcome::holds);
}

TEST_CASE("tiny budgets leave claims inconclusive, never wrong") {
    ClaimSuiteOptions o = small_options();
    o.budget.max_nodes = 1;
    auto claims = verify_claims(o);
    for (const auto& c : claims) {
        if (c.outcome == Outcome::skipped)
            continue;
        CHECK(c.outcome == Outcome::inconclusive);
    }
    CHECK(suite_has_inconclusive(claims));
    CHECK(suite_passes(claims)); // nothing conclusive contradicts expectations
}

TEST_CASE("exploratory probes appear only with explore") {
    ClaimSuiteOptions o;
    o.fields = {make_field(4)};
    o.explore = true;
    auto claims = verify_claims(o);
    REQUIRE(claims.size() == 9);
    const auto& x1b = find_claim(claims, "X1b");
    CHECK_FALSE(x1b.expected.has_value());
    // hadamard probe over GF(2^4) is tiny and must come back conclusive
    CHECK((x1b.outcome == Outcome::witness_found ||
           x1b.outcome == Outcome::none_found));
    const auto& x1a = find_claim(claims, "X1a");
    CHECK(x1a.outcome == Outcome::skipped); // needs degree 3
    // exploratory outcomes never fail the suite (C2 still does here)
    auto ids = {"X1a", "X1b"};
    for (const auto& id : ids)
        CHECK_FALSE(find_claim(claims, id).expected.has_value());
}

TEST_CASE("claims JSON: structure, witnesses, stability") {
    ClaimSuiteOptions o = small_options();
    auto claims = verify_claims(o);
    std::string payload = claims_report_json(claims, o);
    auto j = nlohmann::json::parse(payload);
    CHECK(j["schema_version"] == 1);
    CHECK(j["tool"] == "imds");
    CHECK(j["command"] == "claims");
    CHECK(j["verdict"] == "fail"); // C2
    CHECK(j["inconclusive"] == false);
    REQUIRE(j["claims"].size() == 7);
    for (const auto& cj : j["claims"]) {
        CHECK(cj.contains("claim_id"));
        CHECK(cj.contains("statement"));
        CHECK(cj.contains("outcome"));
        CHECK(cj.contains("witnesses"));
        CHECK(cj.contains("nodes_explored"));
        CHECK(cj.contains("elapsed_ms"));
        for (const auto& w : cj["witnesses"]) {
            // every embedded witness re-parses to a matrix with the
            // advertised properties
            Matrix m = parse_matrix_text(w["text"].get<std::string>());
            CHECK(is_mds(m) == w["is_mds"].get<bool>());
            CHECK(is_involutory(m) == w["is_involutory"].get<bool>());
            CHECK(distinct_values(m) == w["distinct_values"].get<int>());
        }
    }
    // reruns differ only in timing fields
    auto scrub = [](std::string s) {
        s = std::regex_replace(s, std::regex("\"elapsed_ms\": [0-9]+"),
                               "\"elapsed_ms\": 0");
        return s;
    };
    std::string payload2 = claims_report_json(verify_claims(o), o);
    CHECK(scrub(payload) == scrub(payload2));
}

TEST_CASE("search and check JSON renderers") {
    FieldPtr f = make_field(3);
    SearchTask t;
    t.field = f;
    t.order = 2;
    t.max_distinct = 2;
    t.mode = SearchMode::involutory_mds;
    t.count_solutions = true;
    SearchResult r = run_search(t);
    auto j = nlohmann::json::parse(search_report_json(t, r));
    CHECK(j["command"] == "search");
    CHECK(j["task"]["field"]["m"] == 3);
    CHECK(j["task"]["max_distinct"] == 2);
    CHECK(j["count"] == 18);
    CHECK(j["outcome"] == "witness-found");
    CHECK(j["verdict"] == "ok");

    Matrix a(f, 2, std::vector<Elem>{2, 3, 3, 2});
    auto cj = nlohmann::json::parse(check_report_json(a));
    CHECK(cj["command"] == "check");
    CHECK(cj["is_mds"] == true);
    CHECK(cj["is_involutory"] == true);
    CHECK(cj["distinct_values"] == 2);
    CHECK(cj["field"]["poly"] == "0xB");
    Matrix back = parse_matrix_text(cj["matrix"].get<std::string>());
    CHECK(back == a);
}

TEST_CASE("identity order 3 check payload") {
    FieldPtr f = make_field(3);
    auto j = nlohmann::json::parse(check_report_json(Matrix::identity(f, 3)));
    CHECK(j["is_mds"] == false);
    CHECK(j["is_involutory"] == true);
    CHECK(j["distinct_values"] == 2);
}
