#include "imds/report.hpp"

#include "imds/matrix_io.hpp"

#include <cstdio>
#include <json.hpp>

namespace imds {

using json = nlohmann::ordered_json;

namespace {

json field_json(const Field& f) {
    char poly[16];
    std::snprintf(poly, sizeof poly, "0x%X", f.poly());
    return json{{"m", f.degree()}, {"poly", poly}, {"name", field_name(f)}};
}

json matrix_json(const Matrix& a) {
    json rows = json::array();
    for (int r = 0; r < a.order(); ++r) {
        json row = json::array();
        for (int c = 0; c < a.order(); ++c)
            row.push_back(a.at(r, c));
        rows.push_back(std::move(row));
    }
    return json{
        {"field", field_json(a.field())},
        {"order", a.order()},
        {"rows", std::move(rows)},
        {"text", render_matrix(a)},
        {"is_mds", is_mds(a)},
        {"is_involutory", is_involutory(a)},
        {"distinct_values", distinct_values(a)},
    };
}

const char* mode_name(SearchMode m) {
    return m == SearchMode::involutory_mds ? "involutory-mds" : "plain-mds";
}

const char* engine_name(EngineKind e) {
    return e == EngineKind::direct ? "direct" : "pattern";
}

const char* shape_name(Shape s) {
    switch (s) {
    case Shape::full: return "full";
    case Shape::hadamard: return "hadamard";
    case Shape::circulant: return "circulant";
    }
    return "?";
}

json task_json(const SearchTask& t, bool with_field) {
    json j;
    if (with_field && t.field)
        j["field"] = field_json(*t.field);
    j["order"] = t.order;
    j["max_distinct"] = t.max_distinct;
    j["require_exact_k"] = t.require_exact_k;
    j["mode"] = mode_name(t.mode);
    j["engine"] = engine_name(t.engine);
    j["shape"] = shape_name(t.shape);
    j["count_solutions"] = t.count_solutions;
    j["symmetry_reduction"] = t.symmetry_reduction;
    j["claim_filter_pruning"] = t.claim_filter_pruning;
    j["max_witnesses"] = t.max_witnesses;
    j["threads"] = t.threads;
    j["budget"] = {{"max_nodes", t.budget.max_nodes},
                   {"max_seconds", t.budget.max_seconds}};
    return j;
}

std::uint64_t ms(double seconds) {
    return std::uint64_t(seconds * 1000.0 + 0.5);
}

json witness_array(const std::vector<Matrix>& ws) {
    json arr = json::array();
    for (const auto& w : ws)
        arr.push_back(matrix_json(w));
    return arr;
}

json doc_head(const char* command) {
    return json{{"schema_version", report_schema_version},
                {"tool", "imds"},
                {"tool_version", tool_version},
                {"command", command}};
}

json claim_json(const ClaimReport& c) {
    json j;
    j["claim_id"] = c.claim_id;
    j["statement"] = c.statement;
    j["method"] = c.method;
    j["task"] = c.task ? task_json(*c.task, false) : json(nullptr);
    json runs = json::array();
    for (const auto& r : c.runs) {
        json rj;
        rj["field"] = r.field ? field_json(*r.field) : json(nullptr);
        rj["outcome"] = outcome_name(r.outcome);
        rj["count"] = r.count ? json(*r.count) : json(nullptr);
        rj["expected_count"] =
            r.expected_count ? json(*r.expected_count) : json(nullptr);
        rj["nodes"] = r.nodes;
        rj["elapsed_ms"] = ms(r.elapsed_seconds);
        rj["note"] = r.note;
        runs.push_back(std::move(rj));
    }
    j["runs"] = std::move(runs);
    j["outcome"] = outcome_name(c.outcome);
    j["expected"] = c.expected ? json(outcome_name(*c.expected)) : json(nullptr);
    j["matches_expected"] =
        !c.expected || c.outcome == Outcome::skipped ||
        c.outcome == Outcome::inconclusive || c.outcome == *c.expected;
    j["witnesses"] = witness_array(c.witnesses);
    j["nodes_explored"] = c.nodes;
    j["elapsed_ms"] = ms(c.elapsed_seconds);
    j["note"] = c.note;
    return j;
}

std::string dump(const json& j, bool pretty) {
    return pretty ? j.dump(2) + "\n" : j.dump() + "\n";
}

} // namespace

std::string check_report_json(const Matrix& a, bool pretty) {
    json j = doc_head("check");
    json m = matrix_json(a);
    j["field"] = m["field"];
    j["order"] = m["order"];
    j["is_mds"] = m["is_mds"];
    j["is_involutory"] = m["is_involutory"];
    j["distinct_values"] = m["distinct_values"];
    ClaimFilterEval cf = claim_filters(a);
    if (cf.applicable) {
        j["claim_filters"] = {
            {"applicable", true},
            {"rows_cols_max_two", cf.rows_cols_max_two},
            {"rows_cols_all_three", cf.rows_cols_all_three},
            {"diag_matches_repeat", cf.diag_matches_repeat},
        };
    }
    j["matrix"] = m["text"];
    return dump(j, pretty);
}

std::string search_report_json(const SearchTask& task, const SearchResult& result,
                               bool pretty) {
    json j = doc_head("search");
    j["task"] = task_json(task, true);
    j["outcome"] = outcome_name(result.outcome);
    j["count"] = result.count ? json(*result.count) : json(nullptr);
    j["witnesses"] = witness_array(result.witnesses);
    j["nodes_explored"] = result.nodes;
    j["elapsed_ms"] = ms(result.elapsed_seconds);
    j["note"] = result.note;
    j["verdict"] = result.outcome == Outcome::inconclusive ? "inconclusive" : "ok";
    return dump(j, pretty);
}

std::string claims_report_json(const std::vector<ClaimReport>& claims,
                               const ClaimSuiteOptions& opts,
                               bool allow_inconclusive, bool pretty) {
    json j = doc_head("claims");
    json fields = json::array();
    for (const auto& f :
         opts.fields.empty() ? default_claim_fields() : opts.fields)
        fields.push_back(field_json(*f));
    j["options"] = {
        {"fields", std::move(fields)},
        {"budget", {{"max_nodes", opts.budget.max_nodes},
                    {"max_seconds", opts.budget.max_seconds}}},
        {"threads", opts.threads},
        {"max_witnesses", opts.max_witnesses},
        {"claim_filter_pruning", opts.claim_filter_pruning},
        {"explore", opts.explore},
    };
    json arr = json::array();
    for (const auto& c : claims)
        arr.push_back(claim_json(c));
    j["claims"] = std::move(arr);
    bool incon = suite_has_inconclusive(claims);
    bool pass = suite_passes(claims);
    j["inconclusive"] = incon;
    j["verdict"] = pass ? "pass" : "fail";
    j["exit_hint"] = (pass && (!incon || allow_inconclusive)) ? 0 : 1;
    return dump(j, pretty);
}

} // namespace imds
