#include "imds/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace imds {

static void check_field(const FieldPtr& f) {
    if (!f)
        throw std::invalid_argument("Matrix: null field");
}

static void check_order(int n) {
    if (n < 1 || n > Matrix::max_order)
        throw std::invalid_argument("Matrix: order out of range 1..8");
}

Matrix::Matrix(FieldPtr field, int order) : field_(std::move(field)), n_(order) {
    check_field(field_);
    check_order(n_);
}

Matrix::Matrix(FieldPtr field, int order, std::span<const Elem> row_major)
    : field_(std::move(field)), n_(order) {
    check_field(field_);
    check_order(n_);
    if (row_major.size() != size_t(n_ * n_))
        throw std::invalid_argument("Matrix: cell count != order^2");
    for (size_t i = 0; i < row_major.size(); ++i) {
        if (!field_->valid(row_major[i]))
            throw std::invalid_argument("Matrix: entry not a field element");
        cells_[i] = row_major[i];
    }
}

Matrix Matrix::identity(FieldPtr field, int order) {
    Matrix m(std::move(field), order);
    for (int i = 0; i < order; ++i)
        m.cells_[i * order + i] = 1;
    return m;
}

Matrix Matrix::from_rows(FieldPtr field,
                         const std::vector<std::vector<Elem>>& rows) {
    std::vector<Elem> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.size())
            throw std::invalid_argument("Matrix: ragged row list");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(std::move(field), int(rows.size()), flat);
}

Elem Matrix::at(int r, int c) const {
    if (r < 0 || r >= n_ || c < 0 || c >= n_)
        throw std::out_of_range("Matrix::at: index out of range");
    return cells_[r * n_ + c];
}

void Matrix::set(int r, int c, Elem v) {
    if (r < 0 || r >= n_ || c < 0 || c >= n_)
        throw std::out_of_range("Matrix::set: index out of range");
    if (!field_->valid(v))
        throw std::invalid_argument("Matrix::set: value not a field element");
    cells_[r * n_ + c] = v;
}

bool Matrix::operator==(const Matrix& o) const {
    if (n_ != o.n_ || !(*field_ == *o.field_))
        return false;
    return std::equal(cells_.begin(), cells_.begin() + n_ * n_, o.cells_.begin());
}

bool Matrix::cell_less(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_)
        return a.n_ < b.n_;
    return std::lexicographical_compare(a.cells_.begin(), a.cells_.begin() + a.n_ * a.n_,
                                        b.cells_.begin(), b.cells_.begin() + b.n_ * b.n_);
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.map.resize(n);
    for (int i = 0; i < n; ++i)
        p.map[i] = i;
    return p;
}

Permutation Permutation::of(std::vector<int> map) {
    std::vector<bool> seen(map.size(), false);
    for (int v : map) {
        if (v < 0 || v >= int(map.size()) || seen[v])
            throw std::invalid_argument("Permutation: not a bijection");
        seen[v] = true;
    }
    return Permutation{std::move(map)};
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.map.resize(map.size());
    for (int i = 0; i < int(map.size()); ++i)
        p.map[map[i]] = i;
    return p;
}

namespace detail {

// Advances idx (an s-subset of {0..limit-1} in increasing order) to the
// next subset in lexicographic order; false when exhausted.
static bool next_combination(int* idx, int s, int limit) {
    int i = s - 1;
    while (i >= 0 && idx[i] == limit - s + i)
        --i;
    if (i < 0)
        return false;
    ++idx[i];
    for (int j = i + 1; j < s; ++j)
        idx[j] = idx[j - 1] + 1;
    return true;
}

// In-place elimination determinant; clobbers `a` (s x s, row-major).
static Elem eliminate_det(const Field& f, Elem* a, int s) {
    Elem d = 1;
    for (int col = 0; col < s; ++col) {
        int piv = -1;
        for (int r = col; r < s; ++r) {
            if (a[r * s + col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0)
            return 0;
        if (piv != col) {
            for (int j = col; j < s; ++j)
                std::swap(a[col * s + j], a[piv * s + j]);
        }
        Elem p = a[col * s + col];
        d = f.mul(d, p);
        Elem pinv = f.inv(p);
        for (int r = col + 1; r < s; ++r) {
            Elem lead = a[r * s + col];
            if (lead == 0)
                continue;
            Elem factor = f.mul(lead, pinv);
            a[r * s + col] = 0;
            for (int j = col + 1; j < s; ++j)
                a[r * s + j] = Field::add(a[r * s + j], f.mul(factor, a[col * s + j]));
        }
    }
    return d;
}

Elem minor_det(const Field& f, const Elem* cells, int n, const int* rows,
               const int* cols, int s) {
    const Elem* r0 = cells + rows[0] * n;
    if (s == 1)
        return r0[cols[0]];
    if (s == 2) {
        const Elem* r1 = cells + rows[1] * n;
        return Field::add(f.mul(r0[cols[0]], r1[cols[1]]),
                          f.mul(r0[cols[1]], r1[cols[0]]));
    }
    if (s == 3) {
        // All six products added; signs vanish in characteristic 2.
        const Elem* r1 = cells + rows[1] * n;
        const Elem* r2 = cells + rows[2] * n;
        Elem a = r0[cols[0]], b = r0[cols[1]], c = r0[cols[2]];
        Elem d = r1[cols[0]], e = r1[cols[1]], g = r1[cols[2]];
        Elem h = r2[cols[0]], i = r2[cols[1]], j = r2[cols[2]];
        Elem t = f.mul(a, Field::add(f.mul(e, j), f.mul(g, i)));
        t = Field::add(t, f.mul(b, Field::add(f.mul(d, j), f.mul(g, h))));
        t = Field::add(t, f.mul(c, Field::add(f.mul(d, i), f.mul(e, h))));
        return t;
    }
    Elem buf[Matrix::max_order * Matrix::max_order];
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            buf[i * s + j] = cells[rows[i] * n + cols[j]];
    return eliminate_det(f, buf, s);
}

bool row_minors_ok(const Field& f, const Elem* cells, int n, int row) {
    const Elem* r = cells + row * n;
    for (int c = 0; c < n; ++c) {
        if (r[c] == 0)
            return false;
    }
    int rows[Matrix::max_order];
    int cols[Matrix::max_order];
    for (int s = 2; s <= row + 1; ++s) {
        int k = s - 1; // rows below `row` participating in the minor
        for (int i = 0; i < k; ++i)
            rows[i] = i;
        rows[k] = row;
        while (true) {
            for (int i = 0; i < s; ++i)
                cols[i] = i;
            while (true) {
                if (minor_det(f, cells, n, rows, cols, s) == 0)
                    return false;
                if (!next_combination(cols, s, n))
                    break;
            }
            if (!next_combination(rows, k, row))
                break;
        }
    }
    return true;
}

bool grid_is_mds(const Field& f, const Elem* cells, int n) {
    for (int r = 0; r < n; ++r) {
        if (!row_minors_ok(f, cells, n, r))
            return false;
    }
    return true;
}

bool grid_is_involutory(const Field& f, const Elem* cells, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Elem s = 0;
            for (int k = 0; k < n; ++k)
                s = Field::add(s, f.mul(cells[i * n + k], cells[k * n + j]));
            if (s != (i == j ? 1 : 0))
                return false;
        }
    }
    return true;
}

} // namespace detail

Elem det(const Matrix& a) {
    Elem buf[Matrix::max_order * Matrix::max_order];
    std::copy(a.cells().begin(), a.cells().end(), buf);
    return detail::eliminate_det(a.field(), buf, a.order());
}

static Elem cofactor_rec(const Field& f, const Elem* cells, int n, int row,
                         unsigned colmask) {
    if (row == n)
        return 1;
    Elem acc = 0;
    for (int c = 0; c < n; ++c) {
        if (!(colmask & (1u << c)))
            continue;
        Elem v = cells[row * n + c];
        if (v == 0)
            continue;
        acc = Field::add(acc, f.mul(v, cofactor_rec(f, cells, n, row + 1,
                                                    colmask & ~(1u << c))));
    }
    return acc;
}

Elem det_cofactor(const Matrix& a) {
    return cofactor_rec(a.field(), a.data(), a.order(), 0,
                        (1u << a.order()) - 1);
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("mat_mul: order mismatch");
    if (!(a.field() == b.field()))
        throw std::invalid_argument("mat_mul: field mismatch");
    const Field& f = a.field();
    int n = a.order();
    Matrix r(a.field_ptr(), n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Elem s = 0;
            for (int k = 0; k < n; ++k)
                s = Field::add(s, f.mul(a.at(i, k), b.at(k, j)));
            r.set(i, j, s);
        }
    }
    return r;
}

bool is_involutory(const Matrix& a) {
    return detail::grid_is_involutory(a.field(), a.data(), a.order());
}

Matrix submatrix(const Matrix& a, std::span<const int> rows,
                 std::span<const int> cols) {
    int s = int(rows.size());
    if (s < 1 || s > a.order() || cols.size() != rows.size())
        throw std::invalid_argument("submatrix: bad selection size");
    auto check = [&](std::span<const int> idx) {
        for (size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= a.order())
                throw std::invalid_argument("submatrix: index out of range");
            if (i > 0 && idx[i] <= idx[i - 1])
                throw std::invalid_argument("submatrix: indices not increasing");
        }
    };
    check(rows);
    check(cols);
    Matrix r(a.field_ptr(), s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            r.set(i, j, a.at(rows[i], cols[j]));
    return r;
}

bool is_mds(const Matrix& a) {
    return detail::grid_is_mds(a.field(), a.data(), a.order());
}

std::uint64_t count_minors_checked(const Matrix& a, bool* mds_out) {
    const Field& f = a.field();
    int n = a.order();
    const Elem* cells = a.data();
    std::uint64_t counted = 0;
    bool ok = true;
    int rows[Matrix::max_order];
    int cols[Matrix::max_order];
    for (int s = 1; s <= n; ++s) {
        for (int i = 0; i < s; ++i)
            rows[i] = i;
        while (true) {
            for (int i = 0; i < s; ++i)
                cols[i] = i;
            while (true) {
                ++counted;
                if (detail::minor_det(f, cells, n, rows, cols, s) == 0)
                    ok = false;
                if (!detail::next_combination(cols, s, n))
                    break;
            }
            if (!detail::next_combination(rows, s, n))
                break;
        }
    }
    if (mds_out)
        *mds_out = ok;
    return counted;
}

int distinct_values(const Matrix& a) {
    std::array<Elem, Matrix::max_order * Matrix::max_order> v;
    int count = a.order() * a.order();
    std::copy(a.cells().begin(), a.cells().end(), v.begin());
    std::sort(v.begin(), v.begin() + count);
    return int(std::unique(v.begin(), v.begin() + count) - v.begin());
}

Matrix permute(const Matrix& a, const Permutation& rowp, const Permutation& colp) {
    if (rowp.size() != a.order() || colp.size() != a.order())
        throw std::invalid_argument("permute: permutation size mismatch");
    Matrix r(a.field_ptr(), a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j)
            r.set(i, j, a.at(rowp.map[i], colp.map[j]));
    return r;
}

Matrix conjugate(const Matrix& a, const Permutation& p) {
    return permute(a, p, p);
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.field_ptr(), a.order());
    for (int i = 0; i < a.order(); ++i)
        for (int j = 0; j < a.order(); ++j)
            r.set(i, j, a.at(j, i));
    return r;
}

} // namespace imds
