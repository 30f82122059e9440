#include "imds/pattern.hpp"

#include <algorithm>
#include <stdexcept>

namespace imds {

SymbolPattern make_pattern(int n, std::span<const std::uint8_t> cells) {
    if (n < 1 || n > Matrix::max_order)
        throw std::invalid_argument("make_pattern: order out of range 1..8");
    if (cells.size() != size_t(n * n))
        throw std::invalid_argument("make_pattern: cell count != order^2");
    SymbolPattern p;
    p.n = n;
    int used = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] > used)
            throw std::invalid_argument(
                "make_pattern: labels must follow first appearance order");
        if (cells[i] == used)
            ++used;
        p.cells[i] = cells[i];
    }
    p.symbols = used;
    return p;
}

void relabel_first_appearance(std::uint8_t* cells, int count) {
    int map[256];
    std::fill(map, map + 256, -1);
    int next = 0;
    for (int i = 0; i < count; ++i) {
        int s = cells[i];
        if (map[s] < 0)
            map[s] = next++;
        cells[i] = std::uint8_t(map[s]);
    }
}

std::uint64_t enumerate_patterns(int n, int k,
                                 const std::function<bool(const SymbolPattern&)>& cb) {
    if (n < 1 || n > Matrix::max_order)
        throw std::invalid_argument("enumerate_patterns: order out of range 1..8");
    if (k < 1)
        throw std::invalid_argument("enumerate_patterns: need k >= 1");
    const int cells = n * n;
    if (k > cells)
        return 0;
    SymbolPattern p;
    p.n = n;
    p.symbols = k;
    std::uint64_t visited = 0;
    bool stop = false;
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (stop)
            return;
        if (i == cells) {
            if (used == k) { // the feasibility prune alone lets used < k through
                ++visited;
                if (!cb(p))
                    stop = true;
            }
            return;
        }
        if (used + (cells - i) < k)
            return; // cannot introduce enough new symbols anymore
        int limit = std::min(used + 1, k);
        for (int s = 0; s < limit && !stop; ++s) {
            p.cells[i] = std::uint8_t(s);
            self(self, i + 1, std::max(used, s + 1));
        }
    };
    rec(rec, 0, 0);
    return visited;
}

std::uint64_t stirling2(int cells, int k) {
    if (cells < 0 || k < 0)
        throw std::invalid_argument("stirling2: negative argument");
    if (cells > 25)
        throw std::domain_error("stirling2: argument too large for uint64");
    if (k > cells)
        return 0;
    if (cells == 0)
        return k == 0 ? 1 : 0;
    // S(c, k) = k * S(c-1, k) + S(c-1, k-1)
    std::vector<std::uint64_t> row(size_t(k) + 1, 0);
    row[0] = 1; // S(0, 0)
    for (int c = 1; c <= cells; ++c) {
        for (int j = std::min(k, c); j >= 1; --j)
            row[j] = std::uint64_t(j) * row[j] + row[j - 1];
        row[0] = 0; // S(c, 0) = 0 for c >= 1
    }
    return row[k];
}

// Lexicographic comparison of the (perm, transposed) image of p against
// `best`, relabeling the image on the fly; -1/0/1 as image </==/> best.
static int compare_image(const SymbolPattern& p, const int* perm, bool transposed,
                         const std::uint8_t* best) {
    const int n = p.n;
    int map[Matrix::max_order * Matrix::max_order];
    std::fill(map, map + p.symbols, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::uint8_t s = transposed ? p.cells[perm[j] * n + perm[i]]
                                        : p.cells[perm[i] * n + perm[j]];
            int lab = map[s];
            if (lab < 0) {
                lab = next++;
                map[s] = lab;
            }
            std::uint8_t b = best[i * n + j];
            if (lab != b)
                return lab < b ? -1 : 1;
        }
    }
    return 0;
}

static void write_image(const SymbolPattern& p, const int* perm, bool transposed,
                        std::uint8_t* out) {
    const int n = p.n;
    int map[Matrix::max_order * Matrix::max_order];
    std::fill(map, map + p.symbols, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::uint8_t s = transposed ? p.cells[perm[j] * n + perm[i]]
                                        : p.cells[perm[i] * n + perm[j]];
            if (map[s] < 0)
                map[s] = next++;
            out[i * n + j] = std::uint8_t(map[s]);
        }
    }
}

SymbolPattern transform_pattern(const SymbolPattern& p, const Permutation& perm,
                                bool transposed) {
    if (perm.size() != p.n)
        throw std::invalid_argument("transform_pattern: permutation size mismatch");
    SymbolPattern q;
    q.n = p.n;
    q.symbols = p.symbols;
    write_image(p, perm.map.data(), transposed, q.cells.data());
    return q;
}

SymbolPattern canonical_pattern(const SymbolPattern& p) {
    SymbolPattern best = p; // identity image equals p (already RGS labeled)
    int perm[Matrix::max_order];
    for (int i = 0; i < p.n; ++i)
        perm[i] = i;
    do {
        for (int t = 0; t < 2; ++t) {
            if (compare_image(p, perm, t != 0, best.cells.data()) < 0)
                write_image(p, perm, t != 0, best.cells.data());
        }
    } while (std::next_permutation(perm, perm + p.n));
    return best;
}

bool is_pattern_canonical(const SymbolPattern& p) {
    int perm[Matrix::max_order];
    for (int i = 0; i < p.n; ++i)
        perm[i] = i;
    do {
        for (int t = 0; t < 2; ++t) {
            if (compare_image(p, perm, t != 0, p.cells.data()) < 0)
                return false;
        }
    } while (std::next_permutation(perm, perm + p.n));
    return true;
}

} // namespace imds
