#include "hcvr/hypercube.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hcvr {

namespace {

constexpr std::size_t kMaxFamilySize = std::size_t{1} << 28;

std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > kMaxFamilySize) return kMaxFamilySize + 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// All n-subsets of the low m bits, in increasing integer order (Gosper).
void append_level(int m, int n, std::vector<VertexSet>& out) {
    if (binomial_u64(m, n) > kMaxFamilySize)
        throw std::invalid_argument("level family too large to enumerate");
    if (n == 0) {
        out.emplace_back(0);
        return;
    }
    const std::uint64_t limit = std::uint64_t{1} << m;
    std::uint64_t x = (std::uint64_t{1} << n) - 1;
    while (x < limit) {
        out.emplace_back(x);
        const std::uint64_t low = x & (~x + 1);
        const std::uint64_t ripple = x + low;
        x = (((ripple ^ x) >> 2) / low) | ripple;
    }
}

}  // namespace

VertexSet VertexSet::of(std::initializer_list<int> elements) {
    return of(std::span<const int>(elements.begin(), elements.size()));
}

VertexSet VertexSet::of(std::span<const int> elements) {
    std::uint64_t bits = 0;
    for (int e : elements) {
        if (e < 1 || e > kMaxGround)
            throw std::invalid_argument("vertex set element out of range: " + std::to_string(e));
        bits |= std::uint64_t{1} << (e - 1);
    }
    return VertexSet{bits};
}

std::vector<int> VertexSet::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
}

GroundSet::GroundSet(int m) : m_(m) {
    if (m < 1 || m > kMaxGround)
        throw std::invalid_argument("ground set size must be in 1.." + std::to_string(kMaxGround) +
                                    ", got " + std::to_string(m));
}

Family::Family(GroundSet ground, std::vector<VertexSet> members)
    : ground_(ground), members_(std::move(members)) {
    for (VertexSet a : members_) {
        if (!ground_.contains(a))
            throw std::invalid_argument("family member " + to_string(a) + " is not a subset of [" +
                                        std::to_string(ground_.m()) + "]");
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Family::contains(VertexSet a) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), a);
}

Family Family::filter(const std::function<bool(VertexSet)>& keep) const {
    Family out(ground_);
    for (VertexSet a : members_)
        if (keep(a)) out.members_.push_back(a);
    return out;
}

Family operator|(const Family& a, const Family& b) {
    if (!(a.ground_ == b.ground_)) throw std::invalid_argument("family union across ground sets");
    Family out(a.ground_);
    std::set_union(a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end(),
                   std::back_inserter(out.members_));
    return out;
}

Family level_family(GroundSet g, int n) {
    if (n < 0 || n > g.m())
        throw std::invalid_argument("level " + std::to_string(n) + " outside 0.." +
                                    std::to_string(g.m()));
    std::vector<VertexSet> members;
    append_level(g.m(), n, members);
    return Family(g, std::move(members));
}

Family levels_family(GroundSet g, std::span<const int> levels) {
    std::vector<VertexSet> members;
    for (int n : levels) {
        if (n < 0 || n > g.m())
            throw std::invalid_argument("level " + std::to_string(n) + " outside 0.." +
                                        std::to_string(g.m()));
        append_level(g.m(), n, members);
    }
    return Family(g, std::move(members));
}

Family power_set(GroundSet g) {
    if (g.m() > 28) throw std::invalid_argument("power set too large to enumerate");
    std::vector<VertexSet> members;
    members.reserve(std::size_t{1} << g.m());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << g.m()); ++x) members.emplace_back(x);
    return Family(g, std::move(members));
}

Family prefix_family(GroundSet g, VertexSet a, bool inclusive) {
    if (!g.contains(a)) throw std::invalid_argument("prefix vertex is not a subset of [m]");
    std::vector<VertexSet> members;
    for (int n = 0; n < a.size(); ++n) append_level(g.m(), n, members);
    std::vector<VertexSet> same;
    append_level(g.m(), a.size(), same);
    for (VertexSet b : same)
        if (b < a || (inclusive && b == a)) members.push_back(b);
    return Family(g, std::move(members));
}

Family neighborhood(const Family& f, VertexSet a, bool closed) {
    return f.filter([&](VertexSet b) {
        const int d = distance(a, b);
        return d == 1 || (closed && d == 0);
    });
}

Family h_set(GroundSet g, VertexSet a, int i1, int i2, int i3) {
    for (int i : {i1, i2, i3})
        if (i < 1 || i > g.m())
            throw std::invalid_argument("h_set index " + std::to_string(i) + " outside [m]");
    if (i1 == i2 || i1 == i3 || i2 == i3)
        throw std::invalid_argument("h_set indices must be pairwise distinct");
    if (!g.contains(a)) throw std::invalid_argument("h_set base is not a subset of [m]");
    return Family(g, {a, a ^ VertexSet::of({i1, i2}), a ^ VertexSet::of({i1, i3}),
                      a ^ VertexSet::of({i2, i3})});
}

Family complement_family(const Family& f) {
    std::vector<VertexSet> members;
    members.reserve(f.size());
    for (VertexSet b : f) members.push_back(complement(f.ground(), b));
    return Family(f.ground(), std::move(members));
}

std::string to_string(VertexSet a) {
    if (a.empty()) return "{}";
    const auto elems = a.elements();
    std::string out;
    if (elems.back() <= 9) {
        for (int e : elems) out.push_back(static_cast<char>('0' + e));
        return out;
    }
    out.push_back('{');
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(elems[i]);
    }
    out.push_back('}');
    return out;
}

VertexSet parse_vertex_set(std::string_view text) {
    auto fail = [&]() -> VertexSet {
        throw std::invalid_argument("malformed vertex set literal '" + std::string(text) + "'");
    };
    std::string_view body = text;
    while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    while (!body.empty() && body.back() == ' ') body.remove_suffix(1);
    if (body.empty()) return fail();

    const bool braced = body.front() == '{';
    if (braced) {
        if (body.back() != '}') return fail();
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> elems;
    if (braced || body.find(',') != std::string_view::npos) {
        while (!body.empty()) {
            const auto comma = body.find(',');
            std::string_view tok = body.substr(0, comma);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            int value = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) return fail();
            elems.push_back(value);
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
            if (body.empty()) return fail();
        }
    } else {
        // compact digit form, one element per digit
        for (char c : body) {
            if (c < '1' || c > '9') return fail();
            elems.push_back(c - '0');
        }
        for (std::size_t i = 1; i < elems.size(); ++i)
            if (elems[i] <= elems[i - 1]) return fail();
    }
    std::sort(elems.begin(), elems.end());
    if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) return fail();
    try {
        return VertexSet::of(elems);
    } catch (const std::invalid_argument&) {
        return fail();
    }
}

}  // namespace hcvr
