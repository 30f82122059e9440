#include "imds/claims.hpp"
#include "imds/matrix_io.hpp"
#include "imds/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace imds;

// exit codes: 0 success / verdict pass, 1 mismatch or inconclusive,
// 2 usage or parse errors
constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;

void write_output(const std::string& payload, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << payload;
}

struct CheckOptions {
    std::string file;
    std::vector<std::string> expect;
    std::string json_path;
    bool quiet = false;
};

int run_check(const CheckOptions& o) {
    std::string text;
    if (o.file == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(o.file, std::ios::binary);
        if (!in) {
            std::cerr << "imds check: cannot open '" << o.file << "'\n";
            return exit_usage;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    Matrix a = parse_matrix_text(text);
    bool mds = is_mds(a);
    bool invol = is_involutory(a);
    if (!o.quiet) {
        std::cout << field_name(a.field()) << " order " << a.order()
                  << ": is_mds=" << (mds ? "true" : "false")
                  << " is_involutory=" << (invol ? "true" : "false")
                  << " distinct_values=" << distinct_values(a) << "\n";
    }
    if (!o.json_path.empty())
        write_output(check_report_json(a), o.json_path);
    for (const auto& e : o.expect) {
        bool ok = (e == "mds")              ? mds
                  : (e == "involutory")     ? invol
                  : (e == "not-mds")        ? !mds
                  : (e == "not-involutory") ? !invol
                                            : false;
        if (e != "mds" && e != "involutory" && e != "not-mds" &&
            e != "not-involutory") {
            std::cerr << "imds check: unknown expectation '" << e << "'\n";
            return exit_usage;
        }
        if (!ok) {
            std::cerr << "imds check: expectation '" << e << "' not met\n";
            return exit_mismatch;
        }
    }
    return exit_ok;
}

struct SearchOptions {
    int m = 0;
    std::string poly;
    SearchTask task;
    std::string mode = "involutory";
    std::string engine = "direct";
    std::string shape = "full";
    bool no_symmetry = false;
    std::string json_path;
    bool quiet = false;
};

int run_searchcmd(SearchOptions& o) {
    std::uint32_t poly =
        o.poly.empty() ? default_poly(o.m) : parse_poly_literal(o.poly, 0);
    o.task.field = make_field(o.m, poly);
    o.task.mode = o.mode == "plain" ? SearchMode::plain_mds
                                    : SearchMode::involutory_mds;
    o.task.engine = o.engine == "pattern" ? EngineKind::pattern
                                          : EngineKind::direct;
    o.task.shape = o.shape == "hadamard"    ? Shape::hadamard
                   : o.shape == "circulant" ? Shape::circulant
                                            : Shape::full;
    o.task.symmetry_reduction = !o.no_symmetry;
    o.task.validate(); // invalid combinations exit 2 before any work
    SearchResult r = run_search(o.task);
    if (!o.quiet) {
        std::cout << field_name(*o.task.field) << " order " << o.task.order
                  << " k" << (o.task.require_exact_k ? "=" : "<=")
                  << o.task.max_distinct << " [" << o.mode << "/" << o.engine
                  << "/" << o.shape << "]: " << outcome_name(r.outcome);
        if (r.count)
            std::cout << " count=" << *r.count;
        std::cout << " nodes=" << r.nodes << " witnesses="
                  << r.witnesses.size() << "\n";
        for (const auto& w : r.witnesses)
            std::cout << render_matrix(w) << "\n";
        if (!r.note.empty())
            std::cout << "note: " << r.note << "\n";
    }
    if (!o.json_path.empty())
        write_output(search_report_json(o.task, r), o.json_path);
    return r.outcome == Outcome::inconclusive ? exit_mismatch : exit_ok;
}

struct ClaimsOptions {
    std::vector<std::string> fields;
    ClaimSuiteOptions suite;
    bool allow_inconclusive = false;
    std::string json_path;
    bool quiet = false;
};

// "m=3" or "m=8:0x11D"
FieldPtr parse_field_spec(const std::string& spec) {
    std::string body = spec;
    if (body.rfind("m=", 0) == 0)
        body = body.substr(2);
    auto colon = body.find(':');
    int m = 0;
    try {
        size_t used = 0;
        m = std::stoi(body.substr(0, colon), &used);
        if (used != (colon == std::string::npos ? body.size() : colon))
            throw std::invalid_argument(spec);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field spec '" + spec +
                                    "' (want m=<degree>[:<poly>])");
    }
    if (colon == std::string::npos)
        return make_field(m);
    return make_field(m, parse_poly_literal(body.substr(colon + 1), 0));
}

int run_claimscmd(ClaimsOptions& o) {
    for (const auto& spec : o.fields)
        o.suite.fields.push_back(parse_field_spec(spec));
    auto claims = verify_claims(o.suite);
    bool pass = suite_passes(claims);
    bool incon = suite_has_inconclusive(claims);
    if (!o.quiet) {
        for (const auto& c : claims) {
            std::string expect =
                c.expected ? outcome_name(*c.expected) : "(exploratory)";
            std::printf("%-4s %-14s expected %-14s %s\n", c.claim_id.c_str(),
                        outcome_name(c.outcome), expect.c_str(),
                        c.note.empty() ? "" : ("- " + c.note).c_str());
        }
        std::printf("verdict: %s%s\n", pass ? "pass" : "fail",
                    incon ? " (with inconclusive claims)" : "");
    }
    if (!o.json_path.empty())
        write_output(
            claims_report_json(claims, o.suite, o.allow_inconclusive),
            o.json_path);
    bool ok = pass && (!incon || o.allow_inconclusive);
    return ok ? exit_ok : exit_mismatch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GF(2^m) involutory MDS matrix toolkit"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* c = app.add_subcommand(
        "check", "analyze a matrix file (MDS, involutory, distinct entries)");
    c->add_option("file", check.file, "matrix file, or - for stdin")->required();
    c->add_option("--expect", check.expect,
                  "fail unless the property holds: mds, involutory, not-mds, "
                  "not-involutory")
        ->delimiter(',');
    c->add_option("--json", check.json_path, "write a JSON report (- for stdout)");
    c->add_flag("--quiet", check.quiet, "suppress the human-readable line");

    SearchOptions search;
    auto* s = app.add_subcommand(
        "search", "search for (involutory) MDS matrices with few distinct entries");
    s->add_option("--m", search.m, "field degree (GF(2^m))")
        ->required()
        ->check(CLI::Range(1, 16));
    s->add_option("--poly", search.poly, "reduction polynomial (0x.. or 0b..)");
    s->add_option("--order", search.task.order, "matrix order n")
        ->required()
        ->check(CLI::Range(1, 8));
    s->add_option("--max-distinct", search.task.max_distinct,
                  "distinct-entry limit k")
        ->required();
    s->add_flag("--exact", search.task.require_exact_k,
                "require exactly k distinct entries");
    s->add_option("--mode", search.mode, "involutory (default) or plain")
        ->check(CLI::IsMember({"involutory", "plain"}));
    s->add_option("--engine", search.engine, "direct (default) or pattern")
        ->check(CLI::IsMember({"direct", "pattern"}));
    s->add_option("--shape", search.shape,
                  "full (default), hadamard or circulant (order 4 only)")
        ->check(CLI::IsMember({"full", "hadamard", "circulant"}));
    s->add_flag("--count", search.task.count_solutions,
                "count all solutions (disables symmetry reduction)");
    s->add_flag("--no-symmetry", search.no_symmetry,
                "disable canonical-pattern reduction (pattern engine)");
    s->add_flag("--claim-filters", search.task.claim_filter_pruning,
                "prune with the order-4 three-entry structure filters");
    s->add_option("--max-witnesses", search.task.max_witnesses,
                  "witness cap (default 16)");
    s->add_option("--threads", search.task.threads, "worker threads");
    s->add_option("--max-nodes", search.task.budget.max_nodes,
                  "node budget (default 1e9)");
    s->add_option("--max-seconds", search.task.budget.max_seconds,
                  "time budget (default 600)");
    s->add_option("--json", search.json_path, "write a JSON report (- for stdout)");
    s->add_flag("--quiet", search.quiet, "suppress human-readable output");

    ClaimsOptions claims;
    auto* k = app.add_subcommand(
        "claims", "run the distinct-entry claim suite for orders 1..4");
    k->add_option("--fields", claims.fields,
                  "fields to use, e.g. m=3 or m=8:0x11D (default: m=2,3,4,8)")
        ->delimiter(',');
    k->add_option("--max-nodes", claims.suite.budget.max_nodes,
                  "per-run node budget (default 1e9)");
    k->add_option("--max-seconds", claims.suite.budget.max_seconds,
                  "per-run time budget (default 600)");
    k->add_option("--threads", claims.suite.threads, "worker threads");
    k->add_option("--max-witnesses", claims.suite.max_witnesses,
                  "witness cap per claim (default 16)");
    k->add_flag("--claim-filters", claims.suite.claim_filter_pruning,
                "prune the order-4 run with the structure filters");
    k->add_flag("--explore", claims.suite.explore,
                "add the exploratory order-4 probes over small fields");
    k->add_flag("--allow-inconclusive", claims.allow_inconclusive,
                "exit 0 even if budget-limited claims stay inconclusive");
    k->add_option("--json", claims.json_path, "write a JSON report (- for stdout)");
    k->add_flag("--quiet", claims.quiet, "suppress the human-readable table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (c->parsed())
            return run_check(check);
        if (s->parsed())
            return run_searchcmd(search);
        return run_claimscmd(claims);
    } catch (const ParseError& e) {
        std::cerr << "imds: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "imds: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "imds: " << e.what() << "\n";
        return exit_usage;
    }
}
