#include "imds/search.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace imds {

using detail::grid_is_involutory;
using detail::grid_is_mds;
using detail::row_minors_ok;

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::refuted: return "refuted";
    case Outcome::witness_found: return "witness-found";
    case Outcome::none_found: return "none-found";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::skipped: return "skipped";
    }
    return "?";
}

void SearchTask::validate() const {
    if (!field)
        throw std::invalid_argument("SearchTask: null field");
    if (order < 1 || order > Matrix::max_order)
        throw std::invalid_argument("SearchTask: order out of range 1..8");
    if (max_distinct < 1 || max_distinct > order * order)
        throw std::invalid_argument("SearchTask: max_distinct out of range 1..order^2");
    if (max_witnesses < 0)
        throw std::invalid_argument("SearchTask: max_witnesses < 0");
    if (threads < 1 || threads > 64)
        throw std::invalid_argument("SearchTask: threads out of range 1..64");
    if (shape != Shape::full) {
        if (order != 4)
            throw std::invalid_argument("SearchTask: shaped search requires order 4");
        if (engine == EngineKind::pattern)
            throw std::invalid_argument(
                "SearchTask: shaped search is incompatible with the pattern engine");
    }
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetGuard {
    std::uint64_t max_nodes;
    Clock::time_point deadline;
    bool timed;
    std::uint64_t nodes = 0;
    bool exceeded = false;
    bool out_of_time = false;

    BudgetGuard(const Budget& b, Clock::time_point start)
        : max_nodes(b.max_nodes == 0 ? UINT64_MAX : b.max_nodes),
          deadline(start + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(
                                   b.max_seconds > 0 ? b.max_seconds : 0))),
          timed(b.max_seconds > 0) {}

    bool tick() {
        if (++nodes > max_nodes) {
            exceeded = true;
            return false;
        }
        if (timed && (nodes & 0x1FFF) == 0 && Clock::now() > deadline) {
            exceeded = true;
            out_of_time = true;
            return false;
        }
        return true;
    }
};

using GridCells = std::array<Elem, Matrix::max_order * Matrix::max_order>;

// Bounded witness keeper. Counting mode keeps the cap smallest grids in
// row-major value order (insertion-order independent, so thread-count
// independent); otherwise the first `cap` grids offered.
struct Collector {
    bool keep_smallest = false;
    size_t cap = 16;
    int n = 0;
    std::vector<GridCells> items;

    static bool less(const GridCells& a, const GridCells& b, int cells) {
        return std::lexicographical_compare(a.begin(), a.begin() + cells,
                                            b.begin(), b.begin() + cells);
    }

    void offer(const Elem* g) {
        if (cap == 0)
            return;
        GridCells e{};
        std::copy(g, g + n * n, e.begin());
        if (!keep_smallest) {
            if (items.size() < cap)
                items.push_back(e);
            return;
        }
        auto pos = std::lower_bound(items.begin(), items.end(), e,
                                    [&](const GridCells& a, const GridCells& b) {
                                        return less(a, b, n * n);
                                    });
        if (items.size() >= cap && pos == items.end())
            return;
        items.insert(pos, e);
        if (items.size() > cap)
            items.pop_back();
    }

    bool full() const { return !keep_smallest && items.size() >= cap; }

    void merge_from(const Collector& o) { // counting-mode merge
        std::vector<GridCells> merged;
        merged.reserve(items.size() + o.items.size());
        std::merge(items.begin(), items.end(), o.items.begin(), o.items.end(),
                   std::back_inserter(merged),
                   [&](const GridCells& a, const GridCells& b) {
                       return less(a, b, n * n);
                   });
        if (merged.size() > cap)
            merged.resize(cap);
        items = std::move(merged);
    }
};

// ---- direct engine -------------------------------------------------------
//
// Backtracks over the cells in row-major order, drawing values from a fixed
// subset S of nonzero elements. The outer loop runs one branch per (|S|, S);
// requiring every value of S to appear makes the branches disjoint, so exact
// counts are sums over branches. Minors are checked as each row completes:
// the minors whose highest row is r only involve rows 0..r, and checking
// them at that moment covers every minor exactly once.
struct DirectSearch {
    const Field& f;
    int n;
    SearchMode mode;
    bool claim_filter; // only honored for order 4, |S| == 3, involutory mode
    BudgetGuard& bg;
    Collector& col;
    std::uint64_t count = 0;
    bool done = false; // existence cap reached

    Elem grid[Matrix::max_order * Matrix::max_order] = {};
    Elem vals[Matrix::max_order * Matrix::max_order] = {};
    int use[Matrix::max_order * Matrix::max_order] = {};
    int j = 0;         // subset size
    int unused = 0;    // values of S not yet placed
    bool filter_on = false;
    bool counting = false;

    DirectSearch(const Field& f_, int n_, SearchMode mode_, bool claim_filter_,
                 bool counting_, BudgetGuard& bg_, Collector& col_)
        : f(f_), n(n_), mode(mode_), claim_filter(claim_filter_), bg(bg_),
          col(col_), counting(counting_) {}

    // Row r of a claim-conforming candidate holds three distinct values,
    // one of them twice, and the repeated value sits on the diagonal.
    bool claim_row_ok(int r) const {
        const Elem* row = grid + r * n;
        int cnt[3] = {0, 0, 0};
        for (int c = 0; c < n; ++c) {
            for (int v = 0; v < 3; ++v) {
                if (row[c] == vals[v]) {
                    ++cnt[v];
                    break;
                }
            }
        }
        Elem dup = 0;
        for (int v = 0; v < 3; ++v) {
            if (cnt[v] > 2 || cnt[v] == 0)
                return false; // a value three times, or one missing
            if (cnt[v] == 2)
                dup = vals[v];
        }
        return dup == grid[r * n + r];
    }

    bool claim_cols_ok() const {
        for (int c = 0; c < n; ++c) {
            int cnt[3] = {0, 0, 0};
            for (int r = 0; r < n; ++r) {
                for (int v = 0; v < 3; ++v) {
                    if (grid[r * n + c] == vals[v]) {
                        ++cnt[v];
                        break;
                    }
                }
            }
            Elem dup = 0;
            for (int v = 0; v < 3; ++v) {
                if (cnt[v] > 2 || cnt[v] == 0)
                    return false;
                if (cnt[v] == 2)
                    dup = vals[v];
            }
            if (dup != grid[c * n + c])
                return false;
        }
        return true;
    }

    void accept() {
        if (unused > 0)
            return; // count each matrix under exactly one value subset
        if (filter_on && !claim_cols_ok())
            return;
        if (mode == SearchMode::involutory_mds && !grid_is_involutory(f, grid, n))
            return;
        if (!grid_is_mds(f, grid, n)) // independent full re-check
            throw std::logic_error("direct engine: incremental minor checks disagree");
        ++count;
        col.offer(grid);
        if (!counting && col.full())
            done = true;
    }

    void fill(int idx) {
        if (idx == n * n) {
            accept();
            return;
        }
        if (unused > n * n - idx)
            return; // not enough cells left to place every unused value
        int r = idx / n;
        bool row_end = (idx % n == n - 1);
        for (int vi = 0; vi < j; ++vi) {
            if (!bg.tick())
                return;
            grid[idx] = vals[vi];
            if (use[vi]++ == 0)
                --unused;
            bool ok = !row_end || row_minors_ok(f, grid, n, r);
            if (ok && row_end && filter_on)
                ok = claim_row_ok(r);
            if (ok)
                fill(idx + 1);
            if (--use[vi] == 0)
                ++unused;
            if (bg.exceeded || done)
                return;
        }
    }

    // Runs every branch whose zero-based index is ≡ offset (mod stride).
    void run(int jlow, int jhigh, std::uint64_t offset, std::uint64_t stride) {
        const int q1 = int(f.order()) - 1; // nonzero values available
        std::uint64_t branch = 0;
        int pick[Matrix::max_order * Matrix::max_order];
        for (j = jlow; j <= jhigh; ++j) {
            if (j > q1)
                continue;
            filter_on = claim_filter && n == 4 && j == 3 &&
                        mode == SearchMode::involutory_mds;
            for (int i = 0; i < j; ++i)
                pick[i] = i;
            while (true) {
                if (branch++ % stride == offset) {
                    for (int i = 0; i < j; ++i)
                        vals[i] = Elem(pick[i] + 1);
                    std::fill(use, use + j, 0);
                    unused = j;
                    fill(0);
                    if (bg.exceeded || done)
                        return;
                }
                // next j-subset of {0..q1-1}
                int i = j - 1;
                while (i >= 0 && pick[i] == q1 - j + i)
                    --i;
                if (i < 0)
                    break;
                ++pick[i];
                for (int t = i + 1; t < j; ++t)
                    pick[t] = pick[t - 1] + 1;
            }
        }
    }
};

// ---- pattern engine ------------------------------------------------------
//
// Enumerates equality patterns with exactly j symbols, discards patterns
// with a 2x2 minor that is singular for every injective assignment (both
// products use the same pair of symbols), optionally keeps only canonical
// representatives, then instantiates the survivors with ordered injections
// of distinct nonzero values.
static bool has_dead_rectangle(const SymbolPattern& p) {
    const int n = p.n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                std::uint8_t a = p.cells[i * n + k];
                std::uint8_t c = p.cells[j * n + k];
                for (int l = k + 1; l < n; ++l) {
                    std::uint8_t b = p.cells[i * n + l];
                    std::uint8_t d = p.cells[j * n + l];
                    if ((a == b && c == d) || (a == c && b == d))
                        return true;
                }
            }
        }
    }
    return false;
}

struct PatternSearch {
    const Field& f;
    int n;
    SearchMode mode;
    bool reduce; // canonical-representative filter
    BudgetGuard& bg;
    Collector& col;
    std::uint64_t count = 0;
    bool done = false;
    bool counting = false;

    Elem grid[Matrix::max_order * Matrix::max_order] = {};
    Elem chosen[Matrix::max_order * Matrix::max_order] = {};

    PatternSearch(const Field& f_, int n_, SearchMode mode_, bool reduce_,
                  bool counting_, BudgetGuard& bg_, Collector& col_)
        : f(f_), n(n_), mode(mode_), reduce(reduce_), bg(bg_), col(col_),
          counting(counting_) {}

    void instantiate(const SymbolPattern& p) {
        for (int i = 0; i < n * n; ++i)
            grid[i] = chosen[p.cells[i]];
        if (mode == SearchMode::involutory_mds && !grid_is_involutory(f, grid, n))
            return;
        if (!grid_is_mds(f, grid, n))
            return;
        ++count;
        col.offer(grid);
        if (!counting && col.full())
            done = true;
    }

    void inject(const SymbolPattern& p, int depth) {
        const int q = int(f.order());
        for (int v = 1; v < q; ++v) {
            bool dup = false;
            for (int i = 0; i < depth; ++i) {
                if (chosen[i] == Elem(v)) {
                    dup = true;
                    break;
                }
            }
            if (dup)
                continue;
            if (!bg.tick())
                return;
            chosen[depth] = Elem(v);
            if (depth + 1 == p.symbols)
                instantiate(p);
            else
                inject(p, depth + 1);
            if (bg.exceeded || done)
                return;
        }
    }

    void run(int jlow, int jhigh) {
        const int q1 = int(f.order()) - 1;
        for (int j = jlow; j <= jhigh && !bg.exceeded && !done; ++j) {
            if (j > q1)
                continue;
            enumerate_patterns(n, j, [&](const SymbolPattern& p) {
                if (!bg.tick())
                    return false;
                if (has_dead_rectangle(p))
                    return true;
                if (reduce && !is_pattern_canonical(p))
                    return true;
                inject(p, 0);
                return !bg.exceeded && !done;
            });
        }
    }
};

// ---- shaped order-4 searches ---------------------------------------------
//
// hadamard: A[i][j] = h[i xor j]; circulant: A[i][j] = v[(j - i) mod 4].
// Either way the defining 4-tuple is the first row, so tuples and matrices
// are in bijection and the backtracking runs over the tuple slots.
struct ShapedSearch {
    const Field& f;
    Shape shape;
    SearchMode mode;
    int k;
    bool exact;
    BudgetGuard& bg;
    Collector& col;
    std::uint64_t count = 0;
    bool done = false;
    bool counting = false;

    Elem slots[4] = {};
    Elem grid[16] = {};

    ShapedSearch(const Field& f_, Shape shape_, SearchMode mode_, int k_,
                 bool exact_, bool counting_, BudgetGuard& bg_, Collector& col_)
        : f(f_), shape(shape_), mode(mode_), k(k_), exact(exact_), bg(bg_),
          col(col_), counting(counting_) {}

    int tuple_distinct(int upto) const {
        int d = 0;
        for (int i = 0; i < upto; ++i) {
            bool seen = false;
            for (int t = 0; t < i; ++t)
                if (slots[t] == slots[i])
                    seen = true;
            if (!seen)
                ++d;
        }
        return d;
    }

    void complete() {
        int d = tuple_distinct(4);
        if (d > k || (exact && d != k))
            return;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                grid[i * 4 + j] = shape == Shape::hadamard ? slots[i ^ j]
                                                           : slots[(j - i) & 3];
            }
        }
        if (mode == SearchMode::involutory_mds && !grid_is_involutory(f, grid, 4))
            return;
        if (!grid_is_mds(f, grid, 4))
            return;
        ++count;
        col.offer(grid);
        if (!counting && col.full())
            done = true;
    }

    void fill(int s) {
        const int q = int(f.order());
        for (int v = 1; v < q; ++v) {
            if (!bg.tick())
                return;
            slots[s] = Elem(v);
            int d = tuple_distinct(s + 1);
            bool viable = d <= k && (!exact || d + (3 - s) >= k);
            if (viable) {
                if (s == 3)
                    complete();
                else
                    fill(s + 1);
            }
            if (bg.exceeded || done)
                return;
        }
    }
};

static std::string join_notes(std::vector<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty())
            continue;
        if (!out.empty())
            out += "; ";
        out += p;
    }
    return out;
}

} // namespace

SearchResult run_search(const SearchTask& task) {
    task.validate();
    const auto start = Clock::now();
    const Field& f = *task.field;
    const int n = task.order;
    const int k = task.max_distinct;
    const int jlow = task.require_exact_k ? k : 1;
    const bool counting = task.count_solutions;
    const bool reduce = task.symmetry_reduction && !counting;

    std::vector<std::string> notes;
    SearchResult res;

    std::uint64_t total_count = 0;
    Collector final_col{counting, size_t(task.max_witnesses), n, {}};
    std::uint64_t total_nodes = 0;
    bool exceeded = false, out_of_time = false, done = false;
    bool filters_requested = task.claim_filter_pruning && task.shape == Shape::full &&
                             task.engine == EngineKind::direct && n == 4 &&
                             k >= 3 && task.mode == SearchMode::involutory_mds;

    if (task.shape != Shape::full) {
        BudgetGuard bg(task.budget, start);
        Collector col{counting, size_t(task.max_witnesses), n, {}};
        ShapedSearch s(f, task.shape, task.mode, k, task.require_exact_k,
                       counting, bg, col);
        s.fill(0);
        total_count = s.count;
        total_nodes = bg.nodes;
        exceeded = bg.exceeded;
        out_of_time = bg.out_of_time;
        done = s.done;
        final_col = std::move(col);
        notes.push_back(task.shape == Shape::hadamard
                            ? "hadamard shape: entries depend on i xor j"
                            : "circulant shape: rows are rotations of the first");
    } else if (task.engine == EngineKind::pattern) {
        BudgetGuard bg(task.budget, start);
        Collector col{counting, size_t(task.max_witnesses), n, {}};
        PatternSearch s(f, n, task.mode, reduce, counting, bg, col);
        s.run(jlow, k);
        total_count = s.count;
        total_nodes = bg.nodes;
        exceeded = bg.exceeded;
        out_of_time = bg.out_of_time;
        done = s.done;
        final_col = std::move(col);
        if (reduce)
            notes.push_back("symmetry reduction: canonical patterns only");
        else if (task.symmetry_reduction && counting)
            notes.push_back("counting mode: symmetry reduction disabled");
    } else {
        // Direct engine. Counting runs can split the subset branches over
        // threads; the merge below is order-independent, so the result does
        // not depend on the thread count.
        int threads = (counting && task.threads > 1) ? task.threads : 1;
        if (task.threads > 1 && threads == 1)
            notes.push_back("existence search runs single-threaded");
        std::vector<std::unique_ptr<BudgetGuard>> guards;
        std::vector<std::unique_ptr<DirectSearch>> workers;
        std::vector<Collector> cols;
        for (int t = 0; t < threads; ++t) {
            guards.push_back(std::make_unique<BudgetGuard>(task.budget, start));
            if (threads > 1)
                guards.back()->max_nodes =
                    std::max<std::uint64_t>(1, guards.back()->max_nodes / threads);
            cols.push_back(Collector{counting, size_t(task.max_witnesses), n, {}});
        }
        for (int t = 0; t < threads; ++t)
            workers.push_back(std::make_unique<DirectSearch>(
                f, n, task.mode, filters_requested, counting, *guards[t], cols[t]));
        if (threads == 1) {
            workers[0]->run(jlow, k, 0, 1);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    workers[t]->run(jlow, k, std::uint64_t(t), std::uint64_t(threads));
                });
            for (auto& th : pool)
                th.join();
        }
        final_col = Collector{counting, size_t(task.max_witnesses), n, {}};
        for (int t = 0; t < threads; ++t) {
            total_count += workers[t]->count;
            total_nodes += guards[t]->nodes;
            exceeded = exceeded || guards[t]->exceeded;
            out_of_time = out_of_time || guards[t]->out_of_time;
            done = done || workers[t]->done;
            if (counting)
                final_col.merge_from(cols[t]);
            else
                for (const auto& g : cols[t].items)
                    final_col.offer(g.data());
        }
        if (filters_requested)
            notes.push_back("claim-filter pruning active on three-entry "
                            "involutory branches");
    }

    res.nodes = total_nodes;
    res.elapsed_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    for (const auto& g : final_col.items)
        res.witnesses.emplace_back(task.field, n,
                                   std::span<const Elem>(g.data(), size_t(n * n)));

    if (exceeded) {
        res.outcome = Outcome::inconclusive;
        notes.push_back(out_of_time ? "time budget exhausted"
                                    : "node budget exhausted");
    } else if (counting) {
        res.count = total_count;
        res.outcome = total_count > 0 ? Outcome::witness_found : Outcome::none_found;
    } else {
        res.outcome = res.witnesses.empty() ? Outcome::none_found
                                            : Outcome::witness_found;
        if (done)
            notes.push_back("stopped at the witness cap");
    }
    res.note = join_notes(std::move(notes));
    return res;
}

Order2Census count_order2_family(const FieldPtr& field, int max_off_form,
                                 const Budget& budget) {
    if (!field)
        throw std::invalid_argument("count_order2_family: null field");
    Order2Census census;
    const Field& f = *field;
    const std::uint32_t q = f.order();
    BudgetGuard bg(budget, Clock::now());
    Elem g[4];
    for (std::uint32_t a = 0; a < q && !bg.exceeded; ++a) {
        for (std::uint32_t b = 0; b < q && !bg.exceeded; ++b) {
            for (std::uint32_t c = 0; c < q && !bg.exceeded; ++c) {
                for (std::uint32_t d = 0; d < q; ++d) {
                    if (!bg.tick())
                        break;
                    // exactly two distinct entries
                    std::uint32_t lo = a, hi = 0;
                    bool two = false, more = false;
                    for (std::uint32_t v : {b, c, d}) {
                        if (v == lo)
                            continue;
                        if (!two) {
                            hi = v;
                            two = true;
                        } else if (v != hi) {
                            more = true;
                            break;
                        }
                    }
                    if (!two || more)
                        continue;
                    g[0] = Elem(a);
                    g[1] = Elem(b);
                    g[2] = Elem(c);
                    g[3] = Elem(d);
                    if (!grid_is_involutory(f, g, 2))
                        continue;
                    if (!grid_is_mds(f, g, 2))
                        continue;
                    ++census.total;
                    if (d == a && b == c && b == (a ^ 1u)) {
                        ++census.form_matching;
                    } else if (int(census.off_form.size()) < max_off_form) {
                        census.off_form.emplace_back(
                            field, 2, std::span<const Elem>(g, 4));
                    }
                }
            }
        }
    }
    census.nodes = bg.nodes;
    census.complete = !bg.exceeded;
    return census;
}

Order1Result verify_order1(const FieldPtr& field, const Budget& budget) {
    if (!field)
        throw std::invalid_argument("verify_order1: null field");
    Order1Result r;
    const Field& f = *field;
    BudgetGuard bg(budget, Clock::now());
    for (std::uint32_t v = 0; v < f.order(); ++v) {
        if (!bg.tick())
            break;
        if (v == 0)
            continue; // 1x1 MDS needs a nonzero entry
        if (f.mul(Elem(v), Elem(v)) != 1)
            continue; // involutory: v^2 == 1
        Elem cell = Elem(v);
        r.solutions.emplace_back(field, 1, std::span<const Elem>(&cell, 1));
    }
    r.nodes = bg.nodes;
    r.complete = !bg.exceeded;
    r.holds = r.complete && r.solutions.size() == 1 &&
              r.solutions[0].at(0, 0) == 1;
    return r;
}

ClaimFilterEval claim_filters(const Matrix& a) {
    ClaimFilterEval e;
    if (a.order() != 4 || distinct_values(a) != 3)
        return e;
    e.applicable = true;
    // collect the three values
    Elem vals[3];
    int nv = 0;
    for (int i = 0; i < 16 && nv < 3; ++i) {
        Elem v = a.data()[i];
        bool seen = false;
        for (int t = 0; t < nv; ++t)
            if (vals[t] == v)
                seen = true;
        if (!seen)
            vals[nv++] = v;
    }
    auto line = [&](bool row, int idx) {
        int cnt[3] = {0, 0, 0};
        for (int t = 0; t < 4; ++t) {
            Elem v = row ? a.at(idx, t) : a.at(t, idx);
            for (int w = 0; w < 3; ++w)
                if (v == vals[w])
                    ++cnt[w];
        }
        int distinct = 0, dup = -1;
        for (int w = 0; w < 3; ++w) {
            if (cnt[w] > 2)
                e.rows_cols_max_two = false;
            if (cnt[w] > 0)
                ++distinct;
            if (cnt[w] == 2)
                dup = w;
        }
        if (distinct != 3)
            e.rows_cols_all_three = false;
        // The diagonal comparison is meaningful when exactly one value
        // repeats (count profile 2,1,1).
        if (distinct == 3 && dup >= 0 && vals[dup] != a.at(idx, idx))
            e.diag_matches_repeat = false;
    };
    for (int i = 0; i < 4; ++i) {
        line(true, i);
        line(false, i);
    }
    return e;
}

} // namespace imds
