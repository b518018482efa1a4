#include "hcvr/faces.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hcvr/complex.hpp"
#include "hcvr/errors.hpp"
#include "hcvr/parallel.hpp"

namespace hcvr {

Binomials::Binomials(std::uint32_t max_n, int max_k)
    : max_n_(max_n), stride_(static_cast<std::size_t>(std::max(max_k, 0)) + 1) {
    table_.assign((static_cast<std::size_t>(max_n) + 1) * stride_, 0);
    for (std::uint32_t n = 0; n <= max_n; ++n) {
        std::uint64_t* row = &table_[static_cast<std::size_t>(n) * stride_];
        row[0] = 1;
        if (n == 0) continue;
        const std::uint64_t* prev = &table_[static_cast<std::size_t>(n - 1) * stride_];
        for (std::size_t k = 1; k < stride_ && k <= n; ++k) {
            const std::uint64_t a = prev[k - 1];
            const std::uint64_t b = k <= n - 1 ? prev[k] : 0;
            std::uint64_t sum = 0;
            row[k] = (a == kSaturated || b == kSaturated || __builtin_add_overflow(a, b, &sum))
                         ? kSaturated
                         : sum;
        }
    }
}

namespace {

int facet_dimension(const std::vector<std::vector<std::uint32_t>>& facets) {
    int dim = -1;
    for (const auto& f : facets) dim = std::max(dim, static_cast<int>(f.size()) - 1);
    return dim;
}

std::uint32_t count_vertices(std::span<const Simplex> facets) {
    std::vector<VertexSet> all;
    for (const Simplex& f : facets) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::uint32_t>(std::unique(all.begin(), all.end()) - all.begin());
}

int max_facet_size(std::span<const Simplex> facets) {
    std::size_t s = 0;
    for (const Simplex& f : facets) s = std::max(s, f.size());
    return static_cast<int>(s);
}

// Appends the keys of every (depth-remaining)-subset extension.
void emit_combinations(const std::vector<std::uint32_t>& facet, const Binomials& binom,
                       std::size_t start, int position, int last_position, std::uint64_t partial,
                       std::vector<std::uint64_t>& out) {
    const std::size_t needed = static_cast<std::size_t>(last_position - position + 1);
    for (std::size_t p = start; p + needed <= facet.size(); ++p) {
        const std::uint64_t key = partial + binom(facet[p], position + 1);
        if (position == last_position)
            out.push_back(key);
        else
            emit_combinations(facet, binom, p + 1, position + 1, last_position, key, out);
    }
}

}  // namespace

FaceIndex::FaceIndex(std::span<const Simplex> facets)
    : binomials_(count_vertices(facets) + 1, max_facet_size(facets) + 1) {
    for (const Simplex& f : facets) vertices_.insert(vertices_.end(), f.begin(), f.end());
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
    vertex_lookup_.reserve(vertices_.size());
    for (std::uint32_t i = 0; i < vertices_.size(); ++i) vertex_lookup_.emplace(vertices_[i].bits(), i);

    facets_.reserve(facets.size());
    for (const Simplex& f : facets) {
        std::vector<std::uint32_t> local;
        local.reserve(f.size());
        for (VertexSet v : f) local.push_back(vertex_lookup_.at(v.bits()));
        // vertices_ is ≺-sorted and so is every Simplex, so `local` is ascending
        facets_.push_back(std::move(local));
    }
    dimension_ = facet_dimension(facets_);
}

std::uint32_t FaceIndex::index_of(VertexSet v) const {
    const auto it = vertex_lookup_.find(v.bits());
    if (it == vertex_lookup_.end())
        throw std::invalid_argument("vertex " + to_string(v) + " is not in the complex");
    return it->second;
}

std::vector<std::uint64_t> FaceIndex::enumerate(int k) const {
    if (k < 0 || k > dimension_) return {};
    if (binomials_.saturated(vertex_count(), k + 1))
        throw ResourceError("face keys for dimension " + std::to_string(k) + " over " +
                            std::to_string(vertex_count()) + " vertices exceed 64 bits");

    std::vector<std::vector<std::uint64_t>> partial(parallel::thread_count());
    parallel::for_chunks(facets_.size(), [&](std::size_t begin, std::size_t end, unsigned worker) {
        auto& out = partial[worker];
        for (std::size_t i = begin; i < end; ++i) {
            if (facets_[i].size() < static_cast<std::size_t>(k) + 1) continue;
            emit_combinations(facets_[i], binomials_, 0, 0, k, 0, out);
            // keep per-worker buffers from growing with duplicates
            if (out.size() > (std::size_t{1} << 22)) {
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    });

    std::vector<std::uint64_t> keys;
    for (auto& part : partial) {
        if (keys.empty()) {
            keys = std::move(part);
            continue;
        }
        std::vector<std::uint64_t> merged;
        merged.reserve(keys.size() + part.size());
        std::set_union(keys.begin(), keys.end(), part.begin(), part.end(),
                       std::back_inserter(merged));
        keys = std::move(merged);
        part = {};
    }
    return keys;
}

std::shared_ptr<const std::vector<std::uint64_t>> FaceIndex::faces(int k) const {
    {
        std::lock_guard lock(cache_mutex_);
        const auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
    }
    auto table = std::make_shared<const std::vector<std::uint64_t>>(enumerate(k));
    std::lock_guard lock(cache_mutex_);
    return cache_.try_emplace(k, std::move(table)).first->second;
}

std::uint64_t FaceIndex::face_count(int k) const {
    {
        std::lock_guard lock(cache_mutex_);
        const auto it = cache_.find(k);
        if (it != cache_.end()) return it->second->size();
    }
    return enumerate(k).size();
}

void FaceIndex::release(int k) const {
    std::lock_guard lock(cache_mutex_);
    cache_.erase(k);
}

std::uint64_t FaceIndex::key_of(std::span<const std::uint32_t> ascending) const noexcept {
    std::uint64_t key = 0;
    for (std::size_t j = 0; j < ascending.size(); ++j)
        key += binomials_(ascending[j], static_cast<int>(j) + 1);
    return key;
}

void FaceIndex::decode(std::uint64_t key, int k, std::uint32_t* out) const noexcept {
    std::uint32_t upper = vertex_count();  // exclusive bound for the current position
    for (int j = k; j >= 0; --j) {
        // largest v in [j, upper) with C(v, j+1) <= key
        std::uint32_t lo = static_cast<std::uint32_t>(j);
        std::uint32_t hi = upper - 1;
        while (lo < hi) {
            const std::uint32_t mid = lo + (hi - lo + 1) / 2;
            if (binomials_(mid, j + 1) <= key)
                lo = mid;
            else
                hi = mid - 1;
        }
        out[j] = lo;
        key -= binomials_(lo, j + 1);
        upper = lo;
    }
}

}  // namespace hcvr
