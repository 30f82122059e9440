#pragma once

#include "imds/matrix.hpp"
#include "imds/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace imds {

enum class SearchMode { plain_mds, involutory_mds };
enum class EngineKind { direct, pattern };
enum class Shape { full, hadamard, circulant };

enum class Outcome {
    holds,         // bound claim: exhaustive search found nothing
    refuted,       // claim contradicted; witnesses carry counterexamples
    witness_found, // existence search succeeded
    none_found,    // existence search exhausted the space with no hit
    inconclusive,  // budget exhausted before the space was covered
    skipped,       // not run (field outside the feasible range, etc.)
};

const char* outcome_name(Outcome o);

struct Budget {
    std::uint64_t max_nodes = 1'000'000'000;
    double max_seconds = 600.0;
};

struct SearchTask {
    FieldPtr field;
    int order = 0;
    int max_distinct = 0;             // k
    bool require_exact_k = false;     // exactly k instead of <= k
    SearchMode mode = SearchMode::involutory_mds;
    EngineKind engine = EngineKind::direct;
    Shape shape = Shape::full;        // hadamard/circulant need order 4
    bool count_solutions = false;     // exact count; disables symmetry reduction
    bool symmetry_reduction = true;   // pattern engine only
    bool claim_filter_pruning = false;// order-4 exactly-3-distinct heuristics
    int max_witnesses = 16;
    int threads = 1;
    Budget budget;

    void validate() const; // throws std::invalid_argument
};

struct SearchResult {
    Outcome outcome = Outcome::inconclusive; // witness_found / none_found / inconclusive
    std::vector<Matrix> witnesses;           // capped at max_witnesses
    std::optional<std::uint64_t> count;      // present iff count_solutions
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    std::string note;
};

// Runs the task to completion (or budget). Deterministic for a fixed task:
// node counts, counts and witness lists are reproducible across runs and
// thread counts. In counting mode the witness list holds the max_witnesses
// smallest solutions in row-major value order; otherwise the first hits in
// the engine's enumeration order.
SearchResult run_search(const SearchTask& task);

// Exhaustive census of order-2 involutory MDS matrices with exactly two
// distinct entries: all (2^m)^4 grids, no reduction. `form_matching` counts
// those of shape (a, a+1; a+1, a); off_form holds the others (capped).
struct Order2Census {
    std::uint64_t total = 0;
    std::uint64_t form_matching = 0;
    std::vector<Matrix> off_form;
    std::uint64_t nodes = 0;
    bool complete = true; // false if the budget cut the sweep short
};
Order2Census count_order2_family(const FieldPtr& field, int max_off_form = 16,
                                 const Budget& budget = {});

// Exhaustive order-1 check: the only involutory MDS matrix is (1).
struct Order1Result {
    bool holds = false;
    std::vector<Matrix> solutions; // every order-1 involutory MDS matrix
    std::uint64_t nodes = 0;
    bool complete = true;
};
Order1Result verify_order1(const FieldPtr& field, const Budget& budget = {});

// Structural predicates for order-4 matrices with exactly three distinct
// entries (used both as report fields and optional search pruning):
//   rows_cols_max_two:   no value occurs 3+ times in any row or column
//   rows_cols_all_three: every row and column carries all three values
//   diag_matches_repeat: in each row/column the duplicated value equals the
//                        diagonal entry of that row/column
struct ClaimFilterEval {
    bool applicable = false; // order 4 with exactly 3 distinct entries
    bool rows_cols_max_two = true;
    bool rows_cols_all_three = true;
    bool diag_matches_repeat = true;
};
ClaimFilterEval claim_filters(const Matrix& a);

} // namespace imds
