#pragma once

#include "imds/matrix.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>

namespace imds {

// Equality pattern of an n x n grid: cells holding the same symbol index
// must receive the same value, different symbols different values. Labels
// follow first appearance in row-major order: cell 0 is symbol 0, and a
// cell may introduce at most one new symbol (restricted growth condition).
struct SymbolPattern {
    int n = 0;
    int symbols = 0; // number of distinct symbols
    std::array<std::uint8_t, Matrix::max_order * Matrix::max_order> cells{};

    bool operator==(const SymbolPattern& o) const {
        return n == o.n && symbols == o.symbols &&
               std::equal(cells.begin(), cells.begin() + n * n, o.cells.begin());
    }
};

// Validates the restricted-growth labeling; throws std::invalid_argument.
SymbolPattern make_pattern(int n, std::span<const std::uint8_t> cells);

// Relabels an arbitrary symbol grid by first appearance.
void relabel_first_appearance(std::uint8_t* cells, int count);

// Enumerates every pattern of an n x n grid with exactly k symbols, in
// lexicographic cell order. The callback may return false to stop early.
// Returns the number of patterns visited. The number of patterns with
// exactly k symbols is the Stirling set number S(n^2, k).
std::uint64_t enumerate_patterns(int n, int k,
                                 const std::function<bool(const SymbolPattern&)>& cb);

// S(cells, k) by the standard recurrence; oracle for enumerate_patterns.
std::uint64_t stirling2(int cells, int k);

// Image of a pattern under simultaneous row/column permutation (and an
// optional transpose), relabeled to first-appearance form.
SymbolPattern transform_pattern(const SymbolPattern& p, const Permutation& perm,
                                bool transposed);

// Lexicographically least image over all n! simultaneous row/column
// permutations, with and without transpose (2 * n! images).
SymbolPattern canonical_pattern(const SymbolPattern& p);

// True iff p == canonical_pattern(p); computed with early exit.
bool is_pattern_canonical(const SymbolPattern& p);

} // namespace imds
