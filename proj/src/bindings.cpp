#include "imds/claims.hpp"
#include "imds/matrix_io.hpp"
#include "imds/pattern.hpp"
#include "imds/report.hpp"

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace imds;

namespace {

std::vector<std::vector<int>> matrix_rows(const Matrix& a) {
    std::vector<std::vector<int>> out(a.order());
    for (int r = 0; r < a.order(); ++r)
        for (int c = 0; c < a.order(); ++c)
            out[r].push_back(a.at(r, c));
    return out;
}

Matrix matrix_from_rows(const FieldPtr& f,
                        const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<Elem>> cast(rows.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (int v : rows[r])
            cast[r].push_back(Elem(v));
    return Matrix::from_rows(f, cast);
}

std::vector<int> pattern_cells(const SymbolPattern& p) {
    return std::vector<int>(p.cells.begin(), p.cells.begin() + p.n * p.n);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GF(2^m) involutory MDS matrix toolkit";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    // ---- fields -----------------------------------------------------------
    py::class_<Field, std::shared_ptr<Field>>(m, "Field")
        .def(py::init<int, std::uint32_t>(), py::arg("degree"), py::arg("poly"))
        .def_property_readonly("degree", &Field::degree)
        .def_property_readonly("poly", &Field::poly)
        .def_property_readonly("order", &Field::order)
        .def_static("add", &Field::add, py::arg("a"), py::arg("b"))
        .def("mul", &Field::mul, py::arg("a"), py::arg("b"))
        .def("mul_notable", &Field::mul_notable, py::arg("a"), py::arg("b"))
        .def("inv", &Field::inv, py::arg("a"))
        .def("inv_by_euclid", &Field::inv_by_euclid, py::arg("a"))
        .def("inv_by_pow", &Field::inv_by_pow, py::arg("a"))
        .def("pow", &Field::pow, py::arg("a"), py::arg("e"))
        .def(py::self == py::self)
        .def("__repr__", [](const Field& f) { return field_name(f); });

    m.def("make_field",
          py::overload_cast<int, std::uint32_t>(&make_field),
          py::arg("degree"), py::arg("poly"));
    m.def("make_field", py::overload_cast<int>(&make_field), py::arg("degree"));
    m.def("is_irreducible", &is_irreducible, py::arg("poly"), py::arg("degree"));
    m.def("default_poly", &default_poly, py::arg("degree"));
    m.def("field_name", &field_name, py::arg("field"));

    // ---- matrices ---------------------------------------------------------
    py::class_<Matrix>(m, "Matrix")
        .def(py::init(&matrix_from_rows), py::arg("field"), py::arg("rows"))
        .def_static("identity", &Matrix::identity, py::arg("field"),
                    py::arg("order"))
        .def_property_readonly("order", &Matrix::order)
        .def_property_readonly("field", &Matrix::field_ptr)
        .def("at", &Matrix::at, py::arg("row"), py::arg("col"))
        .def("rows", &matrix_rows)
        .def(py::self == py::self)
        .def("__repr__", [](const Matrix& a) { return render_matrix(a); });

    py::class_<Permutation>(m, "Permutation")
        .def(py::init(&Permutation::of), py::arg("map"))
        .def_static("identity", &Permutation::identity, py::arg("n"))
        .def("inverse", &Permutation::inverse)
        .def_readonly("map", &Permutation::map);

    m.def("det", &det, py::arg("a"));
    m.def("det_cofactor", &det_cofactor, py::arg("a"));
    m.def("mat_mul", &mat_mul, py::arg("a"), py::arg("b"));
    m.def("is_involutory", &is_involutory, py::arg("a"));
    m.def(
        "submatrix",
        [](const Matrix& a, const std::vector<int>& rows,
           const std::vector<int>& cols) { return submatrix(a, rows, cols); },
        py::arg("a"), py::arg("rows"), py::arg("cols"));
    m.def("is_mds", &is_mds, py::arg("a"));
    m.def(
        "count_minors_checked",
        [](const Matrix& a) {
            bool ok = false;
            std::uint64_t n = count_minors_checked(a, &ok);
            return py::make_tuple(n, ok);
        },
        py::arg("a"), "Returns (minors_evaluated, is_mds) with no early exit.");
    m.def("distinct_values", &distinct_values, py::arg("a"));
    m.def("permute", &permute, py::arg("a"), py::arg("row_perm"),
          py::arg("col_perm"));
    m.def("conjugate", &conjugate, py::arg("a"), py::arg("perm"));
    m.def("transpose", &transpose, py::arg("a"));

    // ---- patterns ----------------------------------------------------------
    py::class_<SymbolPattern>(m, "SymbolPattern")
        .def_readonly("n", &SymbolPattern::n)
        .def_readonly("symbols", &SymbolPattern::symbols)
        .def_property_readonly("cells", &pattern_cells)
        .def(py::self == py::self);

    m.def(
        "make_pattern",
        [](int n, const std::vector<int>& cells) {
            std::vector<std::uint8_t> b(cells.begin(), cells.end());
            return make_pattern(n, b);
        },
        py::arg("n"), py::arg("cells"));
    m.def("enumerate_patterns", &enumerate_patterns, py::arg("n"), py::arg("k"),
          py::arg("callback"),
          "Calls callback for each n*n pattern with exactly k symbols; stop "
          "by returning False. Returns the number of patterns visited.");
    m.def("stirling2", &stirling2, py::arg("cells"), py::arg("k"));
    m.def("transform_pattern", &transform_pattern, py::arg("pattern"),
          py::arg("perm"), py::arg("transposed"));
    m.def("canonical_pattern", &canonical_pattern, py::arg("pattern"));
    m.def("is_pattern_canonical", &is_pattern_canonical, py::arg("pattern"));

    // ---- search ------------------------------------------------------------
    py::enum_<SearchMode>(m, "SearchMode")
        .value("plain_mds", SearchMode::plain_mds)
        .value("involutory_mds", SearchMode::involutory_mds);
    py::enum_<EngineKind>(m, "EngineKind")
        .value("direct", EngineKind::direct)
        .value("pattern", EngineKind::pattern);
    py::enum_<Shape>(m, "Shape")
        .value("full", Shape::full)
        .value("hadamard", Shape::hadamard)
        .value("circulant", Shape::circulant);
    py::enum_<Outcome>(m, "Outcome")
        .value("holds", Outcome::holds)
        .value("refuted", Outcome::refuted)
        .value("witness_found", Outcome::witness_found)
        .value("none_found", Outcome::none_found)
        .value("inconclusive", Outcome::inconclusive)
        .value("skipped", Outcome::skipped);
    m.def("outcome_name", &outcome_name, py::arg("outcome"));

    py::class_<Budget>(m, "Budget")
        .def(py::init<>())
        .def_readwrite("max_nodes", &Budget::max_nodes)
        .def_readwrite("max_seconds", &Budget::max_seconds);

    py::class_<SearchTask>(m, "SearchTask")
        .def(py::init<>())
        .def_readwrite("field", &SearchTask::field)
        .def_readwrite("order", &SearchTask::order)
        .def_readwrite("max_distinct", &SearchTask::max_distinct)
        .def_readwrite("require_exact_k", &SearchTask::require_exact_k)
        .def_readwrite("mode", &SearchTask::mode)
        .def_readwrite("engine", &SearchTask::engine)
        .def_readwrite("shape", &SearchTask::shape)
        .def_readwrite("count_solutions", &SearchTask::count_solutions)
        .def_readwrite("symmetry_reduction", &SearchTask::symmetry_reduction)
        .def_readwrite("claim_filter_pruning", &SearchTask::claim_filter_pruning)
        .def_readwrite("max_witnesses", &SearchTask::max_witnesses)
        .def_readwrite("threads", &SearchTask::threads)
        .def_readwrite("budget", &SearchTask::budget)
        .def("validate", &SearchTask::validate);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("outcome", &SearchResult::outcome)
        .def_readonly("witnesses", &SearchResult::witnesses)
        .def_readonly("count", &SearchResult::count)
        .def_readonly("nodes", &SearchResult::nodes)
        .def_readonly("elapsed_seconds", &SearchResult::elapsed_seconds)
        .def_readonly("note", &SearchResult::note);

    m.def("run_search", &run_search, py::arg("task"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<Order2Census>(m, "Order2Census")
        .def_readonly("total", &Order2Census::total)
        .def_readonly("form_matching", &Order2Census::form_matching)
        .def_readonly("off_form", &Order2Census::off_form)
        .def_readonly("nodes", &Order2Census::nodes)
        .def_readonly("complete", &Order2Census::complete);
    m.def("count_order2_family", &count_order2_family, py::arg("field"),
          py::arg("max_off_form") = 16, py::arg("budget") = Budget{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<Order1Result>(m, "Order1Result")
        .def_readonly("holds", &Order1Result::holds)
        .def_readonly("solutions", &Order1Result::solutions)
        .def_readonly("nodes", &Order1Result::nodes)
        .def_readonly("complete", &Order1Result::complete);
    m.def("verify_order1", &verify_order1, py::arg("field"),
          py::arg("budget") = Budget{});

    py::class_<ClaimFilterEval>(m, "ClaimFilterEval")
        .def_readonly("applicable", &ClaimFilterEval::applicable)
        .def_readonly("rows_cols_max_two", &ClaimFilterEval::rows_cols_max_two)
        .def_readonly("rows_cols_all_three",
                      &ClaimFilterEval::rows_cols_all_three)
        .def_readonly("diag_matches_repeat",
                      &ClaimFilterEval::diag_matches_repeat);
    m.def("claim_filters", &claim_filters, py::arg("a"));

    // ---- claim suite -------------------------------------------------------
    py::class_<ClaimRun>(m, "ClaimRun")
        .def_readonly("field", &ClaimRun::field)
        .def_readonly("outcome", &ClaimRun::outcome)
        .def_readonly("count", &ClaimRun::count)
        .def_readonly("expected_count", &ClaimRun::expected_count)
        .def_readonly("nodes", &ClaimRun::nodes)
        .def_readonly("elapsed_seconds", &ClaimRun::elapsed_seconds)
        .def_readonly("note", &ClaimRun::note);

    py::class_<ClaimReport>(m, "ClaimReport")
        .def_readonly("claim_id", &ClaimReport::claim_id)
        .def_readonly("statement", &ClaimReport::statement)
        .def_readonly("method", &ClaimReport::method)
        .def_readonly("task", &ClaimReport::task)
        .def_readonly("runs", &ClaimReport::runs)
        .def_readonly("outcome", &ClaimReport::outcome)
        .def_readonly("expected", &ClaimReport::expected)
        .def_readonly("witnesses", &ClaimReport::witnesses)
        .def_readonly("nodes", &ClaimReport::nodes)
        .def_readonly("elapsed_seconds", &ClaimReport::elapsed_seconds)
        .def_readonly("note", &ClaimReport::note);

    py::class_<ClaimSuiteOptions>(m, "ClaimSuiteOptions")
        .def(py::init<>())
        .def_readwrite("fields", &ClaimSuiteOptions::fields)
        .def_readwrite("budget", &ClaimSuiteOptions::budget)
        .def_readwrite("threads", &ClaimSuiteOptions::threads)
        .def_readwrite("max_witnesses", &ClaimSuiteOptions::max_witnesses)
        .def_readwrite("claim_filter_pruning",
                       &ClaimSuiteOptions::claim_filter_pruning)
        .def_readwrite("explore", &ClaimSuiteOptions::explore);

    m.def("default_claim_fields", &default_claim_fields);
    m.def("verify_claims", &verify_claims, py::arg("options"),
          py::call_guard<py::gil_scoped_release>());
    m.def("suite_passes", &suite_passes, py::arg("claims"));
    m.def("suite_has_inconclusive", &suite_has_inconclusive, py::arg("claims"));

    // ---- io and reports ----------------------------------------------------
    m.def("parse_matrix_text", &parse_matrix_text, py::arg("text"));
    m.def("parse_matrix_file", &parse_matrix_file, py::arg("path"));
    m.def("render_matrix", &render_matrix, py::arg("a"));
    m.def("parse_poly_literal", &parse_poly_literal, py::arg("token"),
          py::arg("line") = 0);
    m.def("check_report_json", &check_report_json, py::arg("a"),
          py::arg("pretty") = true);
    m.def("search_report_json", &search_report_json, py::arg("task"),
          py::arg("result"), py::arg("pretty") = true);
    m.def("claims_report_json", &claims_report_json, py::arg("claims"),
          py::arg("options"), py::arg("allow_inconclusive") = false,
          py::arg("pretty") = true);

    m.attr("report_schema_version") = report_schema_version;
    m.attr("tool_version") = tool_version;
}
