#include "hcvr/complex.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "hcvr/faces.hpp"
#include "hcvr/kernels.hpp"

namespace hcvr {

Simplex::Simplex(std::vector<VertexSet> vertices) : vertices_(std::move(vertices)) {
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

bool Simplex::contains(VertexSet v) const noexcept {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::subset_of(const Simplex& other) const noexcept {
    return vertices_.size() <= other.vertices_.size() &&
           std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                         vertices_.end());
}

int Simplex::diameter() const noexcept {
    int best = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, distance(vertices_[i], vertices_[j]));
    return best;
}

Simplex Simplex::without(const Simplex& removed) const {
    Simplex out;
    std::set_difference(vertices_.begin(), vertices_.end(), removed.vertices_.begin(),
                        removed.vertices_.end(), std::back_inserter(out.vertices_));
    return out;
}

Simplex Simplex::intersect(std::span<const VertexSet> sorted_vertices) const {
    Simplex out;
    std::set_intersection(vertices_.begin(), vertices_.end(), sorted_vertices.begin(),
                          sorted_vertices.end(), std::back_inserter(out.vertices_));
    return out;
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return std::lexicographical_compare_three_way(a.vertices_.begin(), a.vertices_.end(),
                                                  b.vertices_.begin(), b.vertices_.end());
}

namespace {

// Keeps the inclusion-maximal members.  Containment is tested on local
// vertex bitsets; each candidate is only compared against kept facets sharing
// its rarest vertex.
std::vector<Simplex> maximalize(std::vector<Simplex> candidates) {
    std::erase_if(candidates, [](const Simplex& s) { return s.empty(); });
    std::sort(candidates.begin(), candidates.end(),
              [](const Simplex& a, const Simplex& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a < b;
              });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() <= 1) return candidates;

    std::vector<VertexSet> verts;
    for (const Simplex& s : candidates) verts.insert(verts.end(), s.begin(), s.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::unordered_map<std::uint64_t, std::uint32_t> local;
    local.reserve(verts.size());
    for (std::uint32_t i = 0; i < verts.size(); ++i) local.emplace(verts[i].bits(), i);

    const std::size_t words = (verts.size() + 63) / 64;
    std::vector<std::uint64_t> kept_bits;
    std::vector<std::size_t> kept_sizes;
    std::vector<std::vector<std::uint32_t>> postings(verts.size());
    std::vector<Simplex> kept;
    std::vector<std::uint64_t> bits(words);
    std::vector<std::uint32_t> ids;

    for (Simplex& cand : candidates) {
        std::fill(bits.begin(), bits.end(), 0);
        ids.clear();
        for (VertexSet v : cand) {
            const std::uint32_t id = local.at(v.bits());
            ids.push_back(id);
            bits[id / 64] |= std::uint64_t{1} << (id % 64);
        }
        const std::uint32_t rarest = *std::min_element(
            ids.begin(), ids.end(),
            [&](std::uint32_t a, std::uint32_t b) { return postings[a].size() < postings[b].size(); });
        bool contained = false;
        for (std::uint32_t k : postings[rarest]) {
            if (kept_sizes[k] <= cand.size()) continue;
            const std::span<const std::uint64_t> other(&kept_bits[k * words], words);
            if (kernels::and_count(bits, other) == cand.size()) {
                contained = true;
                break;
            }
        }
        if (contained) continue;
        const auto k = static_cast<std::uint32_t>(kept.size());
        kept_bits.insert(kept_bits.end(), bits.begin(), bits.end());
        kept_sizes.push_back(cand.size());
        for (std::uint32_t id : ids) postings[id].push_back(k);
        kept.push_back(std::move(cand));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

Complex::Complex() : index_(std::make_shared<FaceIndex>(std::span<const Simplex>{})) {}

Complex Complex::from_facets(std::vector<Simplex> candidates) {
    Complex k;
    k.facets_ = maximalize(std::move(candidates));
    k.index_ = std::make_shared<FaceIndex>(k.facets_);
    return k;
}

int Complex::dimension() const noexcept { return index_->dimension(); }

std::span<const VertexSet> Complex::vertices() const { return index_->vertices(); }

bool Complex::has_vertex(VertexSet v) const {
    const auto verts = vertices();
    return std::binary_search(verts.begin(), verts.end(), v);
}

bool Complex::contains(const Simplex& s) const {
    if (s.empty()) return true;
    return std::any_of(facets_.begin(), facets_.end(),
                       [&](const Simplex& f) { return s.subset_of(f); });
}

std::vector<Simplex> Complex::faces_of_dim(int k) const {
    const auto keys = index_->faces(k);
    std::vector<Simplex> out;
    out.reserve(keys->size());
    std::vector<std::uint32_t> local(static_cast<std::size_t>(std::max(k, 0)) + 1);
    const auto verts = vertices();
    for (std::uint64_t key : *keys) {
        index_->decode(key, k, local.data());
        std::vector<VertexSet> vs;
        vs.reserve(local.size());
        for (std::uint32_t i : local) vs.push_back(verts[i]);
        out.emplace_back(std::move(vs));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t Complex::face_count(int k) const { return index_->face_count(k); }

const FaceIndex& Complex::index() const { return *index_; }

Complex link(const Complex& k, const Simplex& s) {
    if (!k.contains(s)) throw std::invalid_argument("link: simplex is not a face of the complex");
    std::vector<Simplex> pieces;
    for (const Simplex& f : k.facets())
        if (s.subset_of(f)) pieces.push_back(f.without(s));
    return Complex::from_facets(std::move(pieces));
}

Complex star(const Complex& k, const Simplex& s) {
    if (!k.contains(s)) throw std::invalid_argument("star: simplex is not a face of the complex");
    std::vector<Simplex> pieces;
    for (const Simplex& f : k.facets())
        if (s.subset_of(f)) pieces.push_back(f);
    return Complex::from_facets(std::move(pieces));
}

Complex star_cluster(const Complex& k, std::span<const VertexSet> vertices) {
    std::vector<VertexSet> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    for (VertexSet v : sorted)
        if (!k.has_vertex(v))
            throw std::invalid_argument("star_cluster: " + to_string(v) + " is not a vertex");
    std::vector<Simplex> pieces;
    for (const Simplex& f : k.facets()) {
        const bool touches = std::any_of(sorted.begin(), sorted.end(),
                                         [&](VertexSet v) { return f.contains(v); });
        if (touches) pieces.push_back(f);
    }
    return Complex::from_facets(std::move(pieces));
}

Complex induced(const Complex& k, std::span<const VertexSet> vertices) {
    std::vector<VertexSet> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Simplex> pieces;
    pieces.reserve(k.facet_count());
    for (const Simplex& f : k.facets()) pieces.push_back(f.intersect(sorted));
    return Complex::from_facets(std::move(pieces));
}

Complex join(const Complex& a, const Complex& b) {
    const auto va = a.vertices();
    const auto vb = b.vertices();
    std::vector<VertexSet> common;
    std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
    if (!common.empty())
        throw std::invalid_argument("join: complexes share vertex " + to_string(common.front()));
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<Simplex> pieces;
    pieces.reserve(a.facet_count() * b.facet_count());
    for (const Simplex& fa : a.facets())
        for (const Simplex& fb : b.facets()) {
            std::vector<VertexSet> merged(fa.begin(), fa.end());
            merged.insert(merged.end(), fb.begin(), fb.end());
            pieces.emplace_back(std::move(merged));
        }
    return Complex::from_facets(std::move(pieces));
}

std::optional<VertexSet> cone_apex(const Complex& k) {
    if (k.empty()) return std::nullopt;
    std::vector<VertexSet> common(k.facets().front().begin(), k.facets().front().end());
    for (const Simplex& f : k.facets().subspan(1)) {
        std::vector<VertexSet> next;
        std::set_intersection(common.begin(), common.end(), f.begin(), f.end(),
                              std::back_inserter(next));
        common = std::move(next);
        if (common.empty()) return std::nullopt;
    }
    return common.front();
}

EulerCharacteristic euler(const Complex& k) {
    EulerCharacteristic out;
    for (int d = 0; d <= k.dimension(); ++d) {
        const std::uint64_t f = k.face_count(d);
        out.f.counts.push_back(f);
        out.chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(f);
    }
    return out;
}

void write_facets(std::ostream& out, const Complex& k) {
    out << "# facets: " << k.facet_count() << '\n';
    for (const Simplex& f : k.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i) out << ';';
            out << to_string(f[i]);
        }
        out << '\n';
    }
}

Complex read_facets(std::istream& in) {
    std::vector<Simplex> facets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<VertexSet> verts;
        std::string_view rest = line;
        while (true) {
            const auto semi = rest.find(';');
            try {
                verts.push_back(parse_vertex_set(rest.substr(0, semi)));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument("facet list line " + std::to_string(line_no) + ": " +
                                            e.what());
            }
            if (semi == std::string_view::npos) break;
            rest.remove_prefix(semi + 1);
        }
        facets.emplace_back(std::move(verts));
    }
    return Complex::from_facets(std::move(facets));
}

}  // namespace hcvr
