#include "hcvr/homology.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hcvr/errors.hpp"
#include "hcvr/faces.hpp"
#include "hcvr/kernels.hpp"
#include "hcvr/parallel.hpp"

namespace hcvr {

namespace {

// Row index of every codimension-1 face of the k-face `key`, ascending.
// `signs` (optional) receives the orientation sign of each entry.
void facet_rows(const FaceIndex& index, std::uint64_t key, int k,
                const std::vector<std::uint64_t>& row_keys, std::uint32_t* vertices,
                std::uint32_t* out, int* signs) {
    index.decode(key, k, vertices);
    const Binomials& binom = index.binomials();
    for (int drop = 0; drop <= k; ++drop) {
        std::uint64_t sub = 0;
        for (int j = 0, pos = 0; j <= k; ++j) {
            if (j == drop) continue;
            sub += binom(vertices[j], pos + 1);
            ++pos;
        }
        const auto it = std::lower_bound(row_keys.begin(), row_keys.end(), sub);
        out[drop] = static_cast<std::uint32_t>(it - row_keys.begin());
        if (signs) signs[drop] = (drop % 2 == 0) ? 1 : -1;
    }
    if (signs) {
        // sort rows and signs together
        for (int a = 1; a <= k; ++a)
            for (int b = a; b > 0 && out[b - 1] > out[b]; --b) {
                std::swap(out[b - 1], out[b]);
                std::swap(signs[b - 1], signs[b]);
            }
    } else {
        std::sort(out, out + k + 1);
    }
}

struct Reduction {
    std::uint64_t rank = 0;
    std::uint64_t cleared = 0;
    std::vector<char> pivot_rows;
};

// Left-to-right column reduction over GF(2), pivoting on the lowest (largest)
// row index.  Columns flagged in `skip` are known to reduce to zero.
Reduction reduce_gf2(const BoundaryMatrix& m, const std::vector<char>* skip) {
    Reduction out;
    out.pivot_rows.assign(m.rows, 0);
    std::vector<std::int64_t> pivot_slot(m.rows, -1);
    std::vector<std::uint32_t> pool;
    std::vector<std::uint64_t> start;
    std::vector<std::uint32_t> work, tmp;

    for (std::uint64_t j = 0; j < m.cols; ++j) {
        if (skip && (*skip)[j]) {
            ++out.cleared;
            continue;
        }
        const auto col = m.column(j);
        work.assign(col.begin(), col.end());
        while (!work.empty()) {
            const std::int64_t slot = pivot_slot[work.back()];
            if (slot < 0) break;
            const std::uint32_t* b = pool.data() + start[static_cast<std::size_t>(slot)];
            const std::uint32_t* e = pool.data() + start[static_cast<std::size_t>(slot) + 1];
            tmp.clear();
            std::set_symmetric_difference(work.begin(), work.end(), b, e, std::back_inserter(tmp));
            work.swap(tmp);
        }
        if (work.empty()) continue;
        if (start.empty()) start.push_back(0);
        pivot_slot[work.back()] = static_cast<std::int64_t>(start.size()) - 1;
        out.pivot_rows[work.back()] = 1;
        pool.insert(pool.end(), work.begin(), work.end());
        start.push_back(pool.size());
        ++out.rank;
    }
    return out;
}

}  // namespace

BoundaryMatrix boundary(const Complex& k, int dim, bool reduced) {
    if (dim < 0) throw std::invalid_argument("boundary dimension must be nonnegative");
    const FaceIndex& index = k.index();
    BoundaryMatrix m;
    m.dim = dim;
    if (dim == 0) {
        m.cols = index.vertex_count();
        m.rows = (reduced && m.cols > 0) ? 1 : 0;
        if (m.rows) m.entries.assign(m.cols, 0);
        return m;
    }
    const auto cols = index.faces(dim);
    const auto rows = index.faces(dim - 1);
    m.cols = cols->size();
    m.rows = rows->size();
    if (m.rows > std::uint64_t{0xffffffffu})
        throw ResourceError("boundary matrix has more rows than 32-bit indices allow");
    m.entries.resize(m.cols * m.column_size());
    parallel::for_chunks(m.cols, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<std::uint32_t> verts(static_cast<std::size_t>(dim) + 1);
        for (std::size_t j = begin; j < end; ++j)
            facet_rows(index, (*cols)[j], dim, *rows, verts.data(),
                       m.entries.data() + j * m.column_size(), nullptr);
    });
    return m;
}

void write_triplets(std::ostream& out, const BoundaryMatrix& m) {
    if (m.entries.empty()) return;
    for (std::uint64_t j = 0; j < m.cols; ++j)
        for (std::uint32_t r : m.column(j)) out << j << ' ' << r << '\n';
}

std::uint64_t gf2_rank_sparse(const BoundaryMatrix& m) {
    if (m.entries.empty()) return 0;
    return reduce_gf2(m, nullptr).rank;
}

std::uint64_t gf2_rank_dense(const BoundaryMatrix& m) {
    if (m.entries.empty() || m.rows == 0) return 0;
    const std::size_t words = (m.rows + 63) / 64;
    std::vector<std::uint64_t> basis;           // rank * words
    std::vector<std::int64_t> slot_of_lead(m.rows, -1);
    std::vector<std::uint64_t> vec(words);
    std::uint64_t rank = 0;
    for (std::uint64_t j = 0; j < m.cols; ++j) {
        std::fill(vec.begin(), vec.end(), 0);
        for (std::uint32_t r : m.column(j)) vec[r / 64] ^= std::uint64_t{1} << (r % 64);
        std::size_t top = words;
        while (true) {
            while (top > 0 && vec[top - 1] == 0) --top;
            if (top == 0) break;
            const std::size_t lead = (top - 1) * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(vec[top - 1]));
            const std::int64_t slot = slot_of_lead[lead];
            if (slot < 0) {
                slot_of_lead[lead] = static_cast<std::int64_t>(rank);
                basis.insert(basis.end(), vec.begin(), vec.end());
                ++rank;
                break;
            }
            kernels::xor_into(vec, std::span<const std::uint64_t>(
                                       basis.data() + static_cast<std::size_t>(slot) * words, words));
        }
    }
    return rank;
}

std::int64_t BettiVector::alternating_sum() const noexcept {
    std::int64_t total = 0;
    for (const auto& [dim, value] : values_)
        total += (dim % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(value);
    return total;
}

BettiVector betti_window(const Complex& k, int lo, int hi, HomologyStats* stats,
                         HomologyOptions options) {
    if (lo < 0 || lo > hi) throw std::invalid_argument("betti window must satisfy 0 <= lo <= hi");
    const auto started = std::chrono::steady_clock::now();
    const FaceIndex& index = k.index();
    const int dim = k.dimension();

    std::map<int, std::uint64_t> faces;
    std::map<int, std::uint64_t> ranks;
    auto face_count = [&](int d) -> std::uint64_t {
        if (d < 0 || d > dim) return 0;
        auto it = faces.find(d);
        if (it == faces.end()) it = faces.emplace(d, index.face_count(d)).first;
        return it->second;
    };

    const int top = std::min(hi + 1, dim);
    std::vector<char> clear;
    bool have_clear = false;
    for (int d = top; d >= std::max(lo, 1); --d) {
        BoundaryMatrix m = boundary(k, d, options.reduced);
        faces[d] = m.cols;
        faces[d - 1] = m.rows;
        const Reduction red = reduce_gf2(m, (options.clearing && have_clear) ? &clear : nullptr);
        ranks[d] = red.rank;
        if (stats) stats->cleared_columns[d] = red.cleared;
        clear = red.pivot_rows;
        have_clear = true;
        index.release(d);
    }
    if (lo == 0) {
        ranks[0] = (options.reduced && index.vertex_count() > 0) ? 1 : 0;
        faces[0] = index.vertex_count();
    }
    for (int d = lo; d <= hi; ++d) face_count(d);

    BettiVector betti;
    for (int d = lo; d <= hi; ++d) {
        const std::uint64_t f = face_count(d);
        const std::uint64_t r_here = ranks.contains(d) ? ranks[d] : 0;
        const std::uint64_t r_above = ranks.contains(d + 1) ? ranks[d + 1] : 0;
        if (r_here + r_above > f)
            throw std::logic_error("rank exceeds face count in dimension " + std::to_string(d));
        betti.set(d, f - r_here - r_above);
    }
    for (int d = std::max(lo - 1, 0); d <= std::min(hi + 1, dim); ++d) index.release(d);

    if (stats) {
        for (const auto& [d, f] : faces)
            if (d >= 0 && d <= dim) stats->face_counts[d] = f;
        for (const auto& [d, r] : ranks) stats->boundary_ranks[d] = r;
        stats->seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return betti;
}

BettiVector betti_all(const Complex& k, HomologyStats* stats) {
    return betti_window(k, 0, std::max(k.dimension(), 0), stats);
}

// ---------------------------------------------------------------------------
// Integral homology

namespace {

struct CoefficientOverflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw CoefficientOverflow{};
    return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a, b, &r)) throw CoefficientOverflow{};
    return r;
}
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

constexpr std::size_t kDenseRemainderLimit = 1500;

// Dense Smith form on the rows/cols that survive unit elimination.
std::vector<BigInt> dense_divisors(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // smallest nonzero magnitude in the trailing block
        auto find_pivot = [&](std::size_t& pr, std::size_t& pc) {
            bool found = false;
            BigInt best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        pr = i;
                        pc = j;
                        found = true;
                    }
            return found;
        };
        std::size_t pr = 0, pc = 0;
        if (!find_pivot(pr, pc)) break;
        while (true) {
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (clean) {
                // the pivot must divide the whole trailing block
                bool divides = true;
                for (std::size_t i = t + 1; i < rows && divides; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                            divides = false;
                            break;
                        }
                if (divides) break;
            }
            pr = t;
            pc = t;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && abs(a[i][j]) < abs(a[pr][pc])) {
                        pr = i;
                        pc = j;
                    }
        }
        out.push_back(abs(a[t][t]));
    }
    return out;
}

template <typename Int>
std::vector<BigInt> divisors_with(std::uint32_t rows, std::uint32_t cols,
                                  std::span<const IntegerEntry> entries) {
    struct Column {
        std::vector<std::uint32_t> rows;
        std::vector<Int> vals;
    };
    std::vector<Column> columns(cols);
    {
        std::vector<IntegerEntry> sorted(entries.begin(), entries.end());
        std::sort(sorted.begin(), sorted.end(), [](const IntegerEntry& a, const IntegerEntry& b) {
            return a.col != b.col ? a.col < b.col : a.row < b.row;
        });
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            Int sum = 0;
            while (j < sorted.size() && sorted[j].col == sorted[i].col && sorted[j].row == sorted[i].row)
                sum += Int(sorted[j++].value);
            if (sum != 0) {
                columns[sorted[i].col].rows.push_back(sorted[i].row);
                columns[sorted[i].col].vals.push_back(sum);
            }
            i = j;
        }
    }
    std::vector<std::vector<std::uint32_t>> row_cols(rows);
    for (std::uint32_t c = 0; c < cols; ++c)
        for (std::uint32_t r : columns[c].rows) row_cols[r].push_back(c);

    std::vector<char> col_done(cols, 0), row_done(rows, 0);
    std::uint64_t unit_pivots = 0;
    std::vector<std::uint32_t> order(cols);
    for (std::uint32_t c = 0; c < cols; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return columns[a].rows.size() < columns[b].rows.size();
    });

    Column merged;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::uint32_t c : order) {
            if (col_done[c]) continue;
            Column& pc = columns[c];
            if (pc.rows.empty()) {
                col_done[c] = 1;
                continue;
            }
            std::size_t best = pc.rows.size();
            for (std::size_t i = 0; i < pc.rows.size(); ++i)
                if (is_unit(pc.vals[i]) &&
                    (best == pc.rows.size() || row_cols[pc.rows[i]].size() < row_cols[pc.rows[best]].size()))
                    best = i;
            if (best == pc.rows.size()) continue;

            const std::uint32_t r = pc.rows[best];
            const Int u = pc.vals[best];
            const std::vector<std::uint32_t> touching = row_cols[r];
            for (std::uint32_t c2 : touching) {
                if (c2 == c || col_done[c2]) continue;
                Column& other = columns[c2];
                const auto it = std::lower_bound(other.rows.begin(), other.rows.end(), r);
                if (it == other.rows.end() || *it != r) continue;
                const Int factor = checked_mul(other.vals[static_cast<std::size_t>(it - other.rows.begin())], u);
                // other -= factor * pc
                merged.rows.clear();
                merged.vals.clear();
                std::size_t i = 0, j = 0;
                while (i < other.rows.size() || j < pc.rows.size()) {
                    if (j == pc.rows.size() || (i < other.rows.size() && other.rows[i] < pc.rows[j])) {
                        merged.rows.push_back(other.rows[i]);
                        merged.vals.push_back(other.vals[i]);
                        ++i;
                    } else if (i == other.rows.size() || pc.rows[j] < other.rows[i]) {
                        merged.rows.push_back(pc.rows[j]);
                        merged.vals.push_back(checked_sub(Int(0), checked_mul(factor, pc.vals[j])));
                        row_cols[pc.rows[j]].push_back(c2);
                        ++j;
                    } else {
                        const Int v = checked_sub(other.vals[i], checked_mul(factor, pc.vals[j]));
                        if (v != 0) {
                            merged.rows.push_back(other.rows[i]);
                            merged.vals.push_back(v);
                        }
                        ++i;
                        ++j;
                    }
                }
                std::swap(other.rows, merged.rows);
                std::swap(other.vals, merged.vals);
            }
            col_done[c] = 1;
            row_done[r] = 1;
            ++unit_pivots;
            progress = true;
            // compact the row lists occasionally so stale entries do not pile up
            for (std::uint32_t rr : pc.rows) {
                auto& lst = row_cols[rr];
                if (lst.size() > 64) {
                    std::erase_if(lst, [&](std::uint32_t cc) { return col_done[cc] != 0; });
                    std::sort(lst.begin(), lst.end());
                    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
                }
            }
        }
    }

    // Whatever is left has no unit entries.
    std::vector<std::uint32_t> live_cols;
    std::vector<std::uint32_t> live_rows;
    for (std::uint32_t c = 0; c < cols; ++c)
        if (!col_done[c] && !columns[c].rows.empty()) live_cols.push_back(c);
    {
        std::vector<char> seen(rows, 0);
        for (std::uint32_t c : live_cols)
            for (std::uint32_t r : columns[c].rows) seen[r] = 1;
        for (std::uint32_t r = 0; r < rows; ++r)
            if (seen[r]) live_rows.push_back(r);
    }
    std::vector<BigInt> out(unit_pivots, BigInt(1));
    if (!live_cols.empty()) {
        if (live_cols.size() > kDenseRemainderLimit || live_rows.size() > kDenseRemainderLimit)
            throw ResourceError("Smith form remainder " + std::to_string(live_rows.size()) + "x" +
                                std::to_string(live_cols.size()) + " exceeds the dense limit");
        std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
        for (std::size_t j = 0; j < live_cols.size(); ++j) {
            const Column& col = columns[live_cols[j]];
            for (std::size_t i = 0; i < col.rows.size(); ++i) {
                const auto pos = std::lower_bound(live_rows.begin(), live_rows.end(), col.rows[i]) -
                                 live_rows.begin();
                dense[static_cast<std::size_t>(pos)][j] = BigInt(col.vals[i]);
            }
        }
        for (BigInt& d : dense_divisors(std::move(dense))) out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntegerEntry> signed_boundary(const Complex& k, int dim, std::uint32_t& rows,
                                          std::uint32_t& cols) {
    const FaceIndex& index = k.index();
    std::vector<IntegerEntry> entries;
    if (dim == 0) {
        cols = index.vertex_count();
        rows = cols > 0 ? 1 : 0;
        for (std::uint32_t j = 0; j < cols; ++j) entries.push_back({0, j, 1});
        return entries;
    }
    const auto col_keys = index.faces(dim);
    const auto row_keys = index.faces(dim - 1);
    cols = static_cast<std::uint32_t>(col_keys->size());
    rows = static_cast<std::uint32_t>(row_keys->size());
    std::vector<std::uint32_t> verts(static_cast<std::size_t>(dim) + 1);
    std::vector<std::uint32_t> out(static_cast<std::size_t>(dim) + 1);
    std::vector<int> signs(static_cast<std::size_t>(dim) + 1);
    entries.reserve(static_cast<std::size_t>(cols) * (static_cast<std::size_t>(dim) + 1));
    for (std::uint32_t j = 0; j < cols; ++j) {
        facet_rows(index, (*col_keys)[j], dim, *row_keys, verts.data(), out.data(), signs.data());
        for (int i = 0; i <= dim; ++i) entries.push_back({out[i], j, signs[i]});
    }
    return entries;
}

}  // namespace

std::vector<BigInt> elementary_divisors(std::uint32_t rows, std::uint32_t cols,
                                        std::span<const IntegerEntry> entries) {
    try {
        return divisors_with<std::int64_t>(rows, cols, entries);
    } catch (const CoefficientOverflow&) {
        return divisors_with<BigInt>(rows, cols, entries);
    }
}

IntegerHomology betti_integer(const Complex& k, int dim, std::uint64_t max_faces) {
    if (dim < 0) throw std::invalid_argument("homology dimension must be nonnegative");
    const int top = k.dimension();
    auto count = [&](int d) -> std::uint64_t {
        return (d < 0 || d > top) ? 0 : k.face_count(d);
    };
    const std::uint64_t total = count(dim - 1) + count(dim) + count(dim + 1);
    if (total > max_faces)
        throw ResourceError("integral homology refused: " + std::to_string(total) +
                            " faces in dimensions " + std::to_string(dim - 1) + ".." +
                            std::to_string(dim + 1) + " exceed the limit of " +
                            std::to_string(max_faces));

    IntegerHomology out;
    const std::uint64_t f = count(dim);
    if (f == 0) return out;

    std::uint32_t rows = 0, cols = 0;
    const auto lower = signed_boundary(k, dim, rows, cols);
    const std::uint64_t rank_here = elementary_divisors(rows, cols, lower).size();

    std::uint64_t rank_above = 0;
    if (dim + 1 <= top) {
        const auto upper = signed_boundary(k, dim + 1, rows, cols);
        const auto divisors = elementary_divisors(rows, cols, upper);
        rank_above = divisors.size();
        for (const BigInt& d : divisors)
            if (d > 1) out.torsion.push_back(d);
    }
    out.rank = f - rank_here - rank_above;
    return out;
}

}  // namespace hcvr
