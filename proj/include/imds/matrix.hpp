#pragma once

#include "imds/gf2m.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace imds {

// Square matrix over a GF(2^m) field, orders 1..8, row-major storage.
class Matrix {
public:
    static constexpr int max_order = 8;

    Matrix(FieldPtr field, int order); // zero matrix
    Matrix(FieldPtr field, int order, std::span<const Elem> row_major);

    static Matrix identity(FieldPtr field, int order);
    static Matrix from_rows(FieldPtr field,
                            const std::vector<std::vector<Elem>>& rows);

    int order() const { return n_; }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }

    Elem at(int r, int c) const;
    void set(int r, int c, Elem v);
    const Elem* data() const { return cells_.data(); }
    std::span<const Elem> cells() const { return {cells_.data(), size_t(n_ * n_)}; }

    // Same field (degree and polynomial), order and entries.
    bool operator==(const Matrix& o) const;

    // Row-major lexicographic order; used for deterministic witness lists.
    static bool cell_less(const Matrix& a, const Matrix& b);

private:
    FieldPtr field_;
    int n_;
    std::array<Elem, max_order * max_order> cells_{};
};

// Bijection of {0..n-1}; map[i] is the image of i.
struct Permutation {
    std::vector<int> map;

    static Permutation identity(int n);
    static Permutation of(std::vector<int> map); // validates
    Permutation inverse() const;
    int size() const { return int(map.size()); }
};

// Determinant by Gaussian elimination over the field. No sign bookkeeping:
// char 2 makes row swaps free.
Elem det(const Matrix& a);

// Determinant by cofactor expansion along the first row. Exponential;
// intended as an independent cross-check for small orders.
Elem det_cofactor(const Matrix& a);

Matrix mat_mul(const Matrix& a, const Matrix& b); // throws on mismatch

bool is_involutory(const Matrix& a); // a * a == identity

// Rows/cols are strictly increasing index lists into a.
Matrix submatrix(const Matrix& a, std::span<const int> rows,
                 std::span<const int> cols);

// True iff every square submatrix (all sizes 1..n) is nonsingular.
// Fails fast on the first singular minor.
bool is_mds(const Matrix& a);

// Evaluates every minor with no early exit; returns the number evaluated
// (C(2n, n) - 1 in total) and stores the predicate in *mds_out.
std::uint64_t count_minors_checked(const Matrix& a, bool* mds_out);

int distinct_values(const Matrix& a);

// result[i][j] = a[rowp(i)][colp(j)]
Matrix permute(const Matrix& a, const Permutation& rowp, const Permutation& colp);

// P A P^{-1} expressed through index relabeling: result[i][j] = a[p(i)][p(j)].
Matrix conjugate(const Matrix& a, const Permutation& p);

Matrix transpose(const Matrix& a);

// Low-level helpers shared with the search engines; `cells` is an n*n
// row-major grid over `f`.
namespace detail {

// Determinant of the s x s minor selected by rows[0..s)/cols[0..s).
Elem minor_det(const Field& f, const Elem* cells, int n, const int* rows,
               const int* cols, int s);

// Checks every minor whose highest row index is `row`, using only rows
// 0..row. Includes the 1x1 minors of that row. Scanning rows 0..n-1 in
// order covers each minor of the matrix exactly once.
bool row_minors_ok(const Field& f, const Elem* cells, int n, int row);

bool grid_is_mds(const Field& f, const Elem* cells, int n);
bool grid_is_involutory(const Field& f, const Elem* cells, int n);

} // namespace detail

} // namespace imds
