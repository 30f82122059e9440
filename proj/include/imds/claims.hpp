#pragma once

#include "imds/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace imds {

// One field-specific run inside a claim (a search, census or exhaustion).
struct ClaimRun {
    FieldPtr field;
    Outcome outcome = Outcome::skipped;
    std::optional<std::uint64_t> count;          // measured, when counting
    std::optional<std::uint64_t> expected_count; // asserted by the claim
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    std::string note;
};

struct ClaimReport {
    std::string claim_id;
    std::string statement;
    std::string method; // "exhaustion", "census" or "search"
    // Search parameters common to the runs (field varies per run); empty
    // for claims that are plain exhaustions.
    std::optional<SearchTask> task;
    std::vector<ClaimRun> runs;
    Outcome outcome = Outcome::skipped;
    std::optional<Outcome> expected; // empty = exploratory, any outcome is fine
    std::vector<Matrix> witnesses;   // counterexamples or existence witnesses
    std::uint64_t nodes = 0;
    double elapsed_seconds = 0.0;
    std::string note;
};

struct ClaimSuiteOptions {
    // Fields the suite may use; empty selects GF(2^2), GF(2^3), GF(2^4)
    // and GF(2^8)/0x11B. Claims pinned to a specific field (the order-4
    // witness claims need GF(2^8)) run iff a field of that degree is
    // selected, and are reported as skipped otherwise.
    std::vector<FieldPtr> fields;
    Budget budget;
    int threads = 1;
    int max_witnesses = 16;
    bool claim_filter_pruning = false; // prune order-4 runs with the filters
    bool explore = false;              // add the X1 exploratory probes
};

std::vector<FieldPtr> default_claim_fields();

// Verifies the claim catalogue:
//   C1  order 1: (1) is the only involutory MDS matrix
//   C2  order 2, exactly two entries: all are (a,a+1;a+1,a), 2^m-2 in total
//   C3a order 3: no involutory MDS matrix with fewer than three entries
//   C3b order 3: three entries attained over GF(2^3)
//   C4  order 4 over GF(2^3): no involutory MDS matrix with fewer than four
//   W1  order 4: plain MDS circulant with three entries over GF(2^8)/0x11B
//   W2  order 4: involutory MDS Hadamard-form with four entries over
//       GF(2^8)/0x11D
// plus, when explore is set:
//   X1a order 4, exactly four entries over GF(2^3) (full search, no
//       expected outcome)
//   X1b order 4, exactly four entries over GF(2^4), Hadamard form only
//       (a witness settles existence; absence in the family decides nothing)
std::vector<ClaimReport> verify_claims(const ClaimSuiteOptions& opts);

// True iff every conclusive claim (not skipped, not inconclusive) matches
// its expected outcome; exploratory claims match by definition.
bool suite_passes(const std::vector<ClaimReport>& claims);

bool suite_has_inconclusive(const std::vector<ClaimReport>& claims);

} // namespace imds
