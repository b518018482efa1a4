#include "hcvr/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "hcvr/errors.hpp"

namespace hcvr::harness {

using nlohmann::ordered_json;

namespace {

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr std::size_t kLargeFamily = 128;

int parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw UsageError("not an integer: '" + std::string(s) + "'");
    return v;
}

bool is_levels(const FamilySpec& spec, std::vector<int> want) {
    std::vector<int> have = spec.levels;
    std::sort(have.begin(), have.end());
    have.erase(std::unique(have.begin(), have.end()), have.end());
    return have == want;
}

// Sum of per-vertex increments over the prefix; the ordered-sweep theorem
// predicts VR(F_{⪯A}; 3) from it.
oracle::Prediction prefix_prediction(GroundSet g, VertexSet a, bool inclusive) {
    BigInt top = 0, middle = 0;
    for (VertexSet b : prefix_family(g, a, inclusive)) {
        const auto inc = oracle::predicted_increment(b);
        top += inc.top;
        middle += inc.middle;
    }
    oracle::Prediction p;
    p.source = "VR(F_{<=A};3) by ordered vertex addition";
    p.betti.set(7, static_cast<std::uint64_t>(top));
    p.betti.set(4, static_cast<std::uint64_t>(middle));
    return p;
}

std::optional<oracle::Prediction> prediction_for(const FamilySpec& spec, int r) {
    const GroundSet g(spec.m);
    switch (spec.kind) {
        case FamilyKind::full_cube:
            if (r >= spec.m) {
                oracle::Prediction p;
                p.source = "full simplex";
                return p;
            }
            if (r == spec.m - 1 && spec.m <= 7) return oracle::predicted_cross_polytope(g);
            if (r == 0 || r == 1) return oracle::predicted_small_scale(g, r);
            if (r == 2) return oracle::predicted_scale2(g);
            if (r == 3 && spec.m >= 5) return oracle::predicted_q3(g);
            return std::nullopt;
        case FamilyKind::f123:
            if (r == 3) return oracle::predicted_f123(spec.m);
            return std::nullopt;
        case FamilyKind::levels:
            if (r == 3 && is_levels(spec, {1, 2, 3}) && spec.m >= 3) return oracle::predicted_f123(spec.m);
            if (r == 3 && is_levels(spec, {0, 1, 2, 3})) {
                oracle::Prediction p;
                p.source = "VR(F_{<=3};3) cone";
                return p;
            }
            return std::nullopt;
        case FamilyKind::prefix:
            if (r == 3) return prefix_prediction(g, *spec.vertex, spec.inclusive);
            return std::nullopt;
        case FamilyKind::link_target:
            if (r != 3) return std::nullopt;
            if (spec.levels.empty() && spec.vertex->size() >= 4) return oracle::predicted_link(*spec.vertex);
            if (is_levels(spec, {1, 2, 3}) && spec.vertex->size() == 3 && spec.vertex->min_element() >= 2)
                return oracle::predicted_link_f123(*spec.vertex);
            return std::nullopt;
    }
    return std::nullopt;
}

std::vector<Window> default_windows(const FamilySpec& spec, int r, int dim) {
    const bool scale3_big = r == 3 && spec.m >= 6 &&
                            (spec.kind == FamilyKind::full_cube || spec.kind == FamilyKind::prefix);
    if (scale3_big) return {{3, 5}, {6, 8}};
    return {{0, std::max(dim, 0)}};
}

void compute_windows(const Complex& k, Report& report) {
    for (const Window& w : report.windows) {
        const BettiVector part = betti_window(k, w.lo, w.hi, &report.stats);
        for (const auto& [d, v] : part.values()) report.computed.set(d, v);
    }
    // Euler consistency when every dimension was computed.
    const int dim = k.dimension();
    if (dim < 0) return;
    bool full = true;
    for (int d = 0; d <= dim; ++d) full = full && report.computed.computed(d);
    if (!full) return;
    std::int64_t chi = -1;
    for (int d = 0; d <= dim; ++d) {
        auto it = report.stats.face_counts.find(d);
        const std::uint64_t f = it != report.stats.face_counts.end() ? it->second : k.face_count(d);
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(f);
    }
    report.euler_consistent = chi == report.computed.alternating_sum();
}

void finish(Report& report) {
    report.match = true;
    if (report.predicted) report.match = report.predicted->matches(report.computed);
    if (report.euler_consistent && !*report.euler_consistent) report.match = false;
}

void export_to(const std::string& path, const Complex& k) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    write_facets(out, k);
}

ordered_json spec_json(const FamilySpec& spec) {
    ordered_json j;
    j["kind"] = to_string(spec.kind);
    j["m"] = spec.m;
    if (!spec.levels.empty()) j["levels"] = spec.levels;
    if (spec.vertex) j["vertex"] = hcvr::to_string(*spec.vertex);
    if (spec.kind == FamilyKind::prefix) j["inclusive"] = spec.inclusive;
    return j;
}

std::string big(const BigInt& v) { return v.str(); }

}  // namespace

FamilyKind parse_kind(const std::string& text) {
    if (text == "full-cube") return FamilyKind::full_cube;
    if (text == "levels") return FamilyKind::levels;
    if (text == "prefix") return FamilyKind::prefix;
    if (text == "f123") return FamilyKind::f123;
    if (text == "link-target") return FamilyKind::link_target;
    throw UsageError("unknown family kind '" + text + "'");
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::full_cube: return "full-cube";
        case FamilyKind::levels: return "levels";
        case FamilyKind::prefix: return "prefix";
        case FamilyKind::f123: return "f123";
        case FamilyKind::link_target: return "link-target";
    }
    return "?";
}

void validate(const FamilySpec& spec) {
    if (spec.m < 1 || spec.m > kMaxGround) throw UsageError("m must be in 1..63");
    const bool needs_vertex = spec.kind == FamilyKind::prefix || spec.kind == FamilyKind::link_target;
    if (needs_vertex && !spec.vertex) throw UsageError(to_string(spec.kind) + " needs --vertex");
    if (spec.vertex && !GroundSet(spec.m).contains(*spec.vertex))
        throw UsageError("vertex " + hcvr::to_string(*spec.vertex) + " is not a subset of [m]");
    if (spec.kind == FamilyKind::levels && spec.levels.empty()) throw UsageError("levels needs --levels");
    for (int n : spec.levels)
        if (n < 0 || n > spec.m) throw UsageError("level " + std::to_string(n) + " outside 0..m");
    if (spec.kind == FamilyKind::f123 && spec.m < 3) throw UsageError("f123 needs m >= 3");
    if (spec.kind == FamilyKind::link_target && !spec.levels.empty()) {
        if (std::find(spec.levels.begin(), spec.levels.end(), spec.vertex->size()) == spec.levels.end())
            throw UsageError("link vertex is not in the chosen levels");
    }
    if ((spec.kind == FamilyKind::full_cube || spec.kind == FamilyKind::prefix) && spec.m > 28)
        throw UsageError("power-set families need m <= 28");
}

Family build_family(const FamilySpec& spec) {
    validate(spec);
    const GroundSet g(spec.m);
    switch (spec.kind) {
        case FamilyKind::full_cube: return power_set(g);
        case FamilyKind::levels: return levels_family(g, spec.levels);
        case FamilyKind::prefix: return prefix_family(g, *spec.vertex, spec.inclusive);
        case FamilyKind::f123: {
            const std::vector<int> lv{1, 2, 3};
            return levels_family(g, lv);
        }
        case FamilyKind::link_target: {
            const Family prefix = prefix_family(g, *spec.vertex, true);
            if (spec.levels.empty()) return prefix;
            const Family lv = levels_family(g, spec.levels);
            return prefix.filter([&](VertexSet b) { return lv.contains(b); });
        }
    }
    throw UsageError("unhandled family kind");
}

Window parse_window(const std::string& text) {
    const auto dots = text.find("..");
    Window w;
    if (dots == std::string::npos) {
        w.lo = w.hi = parse_int(text);
    } else {
        w.lo = parse_int(std::string_view(text).substr(0, dots));
        w.hi = parse_int(std::string_view(text).substr(dots + 2));
    }
    if (w.lo < 0 || w.lo > w.hi) throw UsageError("window must satisfy 0 <= LO <= HI: " + text);
    return w;
}

Report cmd_betti(const BettiRequest& request) {
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    report.command = "betti";
    report.spec = request.spec;
    report.r = request.r;
    if (request.r < 0) throw UsageError("r must be nonnegative");
    const Family family = build_family(request.spec);
    if (family.size() >= kLargeFamily && request.r >= 3 && !request.allow_large)
        throw UsageError("family of " + std::to_string(family.size()) +
                         " vertices at r >= 3 is a long run; pass --allow-large");

    Complex k = vr(family, request.r);
    if (request.spec.kind == FamilyKind::link_target) {
        report.command = "link";
        k = link(k, Simplex{*request.spec.vertex});
    }
    export_to(request.export_facets, k);
    report.vertex_count = k.vertices().size();
    report.facet_count = k.facet_count();
    report.dimension = k.dimension();
    report.windows = request.windows.empty() ? default_windows(request.spec, request.r, k.dimension())
                                             : request.windows;
    report.predicted = prediction_for(request.spec, request.r);
    compute_windows(k, report);
    finish(report);
    report.seconds = since(t0);
    return report;
}

Report betti_of(const Complex& k, std::vector<Window> windows) {
    const auto t0 = std::chrono::steady_clock::now();
    Report report;
    report.command = "betti";
    report.r = -1;
    report.vertex_count = k.vertices().size();
    report.facet_count = k.facet_count();
    report.dimension = k.dimension();
    report.windows = windows.empty() ? std::vector<Window>{{0, std::max(k.dimension(), 0)}} : windows;
    compute_windows(k, report);
    finish(report);
    report.seconds = since(t0);
    return report;
}

Report cmd_link(int m, VertexSet a, std::vector<Window> windows) {
    BettiRequest req;
    req.spec.kind = FamilyKind::link_target;
    req.spec.m = m;
    req.spec.vertex = a;
    req.r = 3;
    req.windows = std::move(windows);
    if (a.size() < 4) throw UsageError("link needs |A| >= 4");
    req.allow_large = true;  // the link itself is small
    return cmd_betti(req);
}

SweepResult cmd_sweep(int m, int max_card) {
    if (m < 5 || m > 28) throw UsageError("sweep needs 5 <= m <= 28");
    if (max_card < 4 || max_card > m) throw UsageError("max-card must be in 4..m");
    const GroundSet g(m);
    SweepResult out;
    out.m = m;
    out.max_card = max_card;

    // VR(F_{<=3}; 3): everything before the first 4-set.
    {
        BettiRequest base;
        base.spec.kind = FamilyKind::levels;
        base.spec.m = m;
        base.spec.levels = {0, 1, 2, 3};
        base.allow_large = true;
        out.base = cmd_betti(base);
    }
    if (!out.base.match) return out;

    const std::vector<Window> window{{3, 8}};
    BettiVector previous;
    for (int d = 3; d <= 8; ++d) previous.set(d, 0);

    std::vector<VertexSet> order;
    for (int n = 4; n <= max_card; ++n)
        for (VertexSet a : level_family(g, n)) order.push_back(a);

    for (VertexSet a : order) {
        const auto t0 = std::chrono::steady_clock::now();
        const Complex k = vr(prefix_family(g, a, true), 3);
        SweepStep step;
        step.vertex = a;
        for (const Window& w : window) {
            const BettiVector part = betti_window(k, w.lo, w.hi);
            for (const auto& [d, v] : part.values()) step.betti.set(d, v);
        }
        step.expected = oracle::predicted_increment(a);
        step.delta_top = step.betti[7] - previous[7];
        step.delta_middle = step.betti[4] - previous[4];
        bool others_zero = true;
        for (int d : step.betti.computed_dims())
            if (d != 4 && d != 7 && step.betti[d] != 0) others_zero = false;
        step.match = step.betti[7] >= previous[7] && step.betti[4] >= previous[4] && others_zero &&
                     BigInt(step.delta_top) == step.expected.top &&
                     BigInt(step.delta_middle) == step.expected.middle;
        step.seconds = since(t0);
        out.steps.push_back(step);
        if (!step.match) {
            out.first_failure = a;
            return out;
        }
        previous = step.betti;
    }
    if (max_card == m) {
        out.final_prediction = oracle::predicted_q3(g);
        out.final_match = out.final_prediction->matches(previous);
    }
    return out;
}

FacetReport cmd_facets(const FacetRequest& request) {
    std::vector<Simplex> closed;
    Family family(GroundSet(1));
    switch (request.kind) {
        case FacetKind::q3: {
            if (request.m < 4 || request.m > 7) throw UsageError("facets needs 4 <= m <= 7");
            const GroundSet g(request.m);
            closed = q3_facets_closed_form(g);
            family = power_set(g);
            break;
        }
        case FacetKind::f12: {
            if (request.n < 3 || request.n > 20) throw UsageError("f12 facets need 3 <= n <= 20");
            closed = f12_facets(request.n);
            const std::vector<int> lv{1, 2};
            family = levels_family(GroundSet(request.n), lv);
            break;
        }
        case FacetKind::fn_fn1: {
            if (request.m < 2 || request.m > 12 || request.n < 1 || request.n + 1 > request.m)
                throw UsageError("fn-fn1 facets need 1 <= n, n+1 <= m <= 12");
            const GroundSet g(request.m);
            closed = fn_fn1_facets(request.n, g);
            const std::vector<int> lv{request.n, request.n + 1};
            family = levels_family(g, lv);
            break;
        }
    }
    if (!request.export_facets.empty()) export_to(request.export_facets, Complex::from_facets(closed));
    return crosscheck(closed, family, 3);
}

bool IdentityReport::ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) { return r.holds(); });
}

IdentityReport cmd_identities(int max_m) {
    if (max_m < 6 || max_m > 200) throw UsageError("identities need 6 <= max-m <= 200");
    IdentityReport out;
    out.max_m = max_m;
    auto add = [&](const char* name, int arg, const oracle::Sides& s) {
        out.rows.push_back({name, arg, s.first, s.second});
    };
    for (int m = 5; m <= max_m; ++m) add("A1", m, oracle::identity_A1(m));
    for (int m = 6; m <= max_m; ++m) add("A2", m, oracle::identity_A2(m));
    for (int n = 4; n <= max_m; ++n) add("f123_sum", n, oracle::identity_f123(n));
    for (int m = 5; m <= std::min(max_m, 20); ++m) {
        const auto t = oracle::telescoping(m);
        add("telescoping_top", m, t.top);
        add("telescoping_middle", m, t.middle);
    }
    // beta_4(m) - beta_4(m-1) = 2^{m-5} C(m-1,4)
    for (int m = 6; m <= std::min(max_m, 20); ++m)
        add("middle_step", m,
            {oracle::q3_middle(m) - oracle::q3_middle(m - 1), oracle::pow2(m - 5) * oracle::binomial(m - 1, 4)});
    return out;
}

ordered_json to_json(const BettiVector& betti) {
    ordered_json j = ordered_json::object();
    for (const auto& [d, v] : betti.values()) j[std::to_string(d)] = v;
    return j;
}

ordered_json to_json(const oracle::Prediction& prediction) {
    ordered_json j;
    j["source"] = prediction.source;
    j["betti"] = to_json(prediction.betti);
    return j;
}

ordered_json to_json(const Report& report) {
    ordered_json j;
    j["command"] = report.command;
    if (report.spec.m > 0) j["family"] = spec_json(report.spec);
    if (report.r >= 0) j["r"] = report.r;
    ordered_json windows = ordered_json::array();
    for (const Window& w : report.windows) windows.push_back({w.lo, w.hi});
    j["windows"] = windows;
    j["vertices"] = report.vertex_count;
    j["facets"] = report.facet_count;
    j["dimension"] = report.dimension;
    j["betti"] = to_json(report.computed);
    j["computed_dims"] = report.computed.computed_dims();
    j["prediction"] = report.predicted ? to_json(*report.predicted) : ordered_json(nullptr);
    j["euler_consistent"] = report.euler_consistent ? ordered_json(*report.euler_consistent) : ordered_json(nullptr);
    j["match"] = report.match;
    ordered_json stats;
    ordered_json faces = ordered_json::object();
    for (const auto& [d, f] : report.stats.face_counts) faces[std::to_string(d)] = f;
    ordered_json ranks = ordered_json::object();
    for (const auto& [d, r] : report.stats.boundary_ranks) ranks[std::to_string(d)] = r;
    stats["face_counts"] = faces;
    stats["boundary_ranks"] = ranks;
    stats["homology_seconds"] = report.stats.seconds;
    stats["total_seconds"] = report.seconds;
    j["stats"] = stats;
    return j;
}

ordered_json to_json(const SweepResult& sweep) {
    ordered_json j;
    j["command"] = "sweep";
    j["m"] = sweep.m;
    j["max_card"] = sweep.max_card;
    j["base"] = to_json(sweep.base);
    ordered_json steps = ordered_json::array();
    for (const SweepStep& s : sweep.steps) {
        ordered_json row;
        row["vertex"] = hcvr::to_string(s.vertex);
        row["betti"] = to_json(s.betti);
        row["delta"] = {{"7", s.delta_top}, {"4", s.delta_middle}};
        row["expected"] = {{"7", big(s.expected.top)}, {"4", big(s.expected.middle)}};
        row["match"] = s.match;
        row["seconds"] = s.seconds;
        steps.push_back(row);
    }
    j["steps"] = steps;
    j["first_failure"] = sweep.first_failure ? ordered_json(hcvr::to_string(*sweep.first_failure))
                                             : ordered_json(nullptr);
    j["final_prediction"] = sweep.final_prediction ? to_json(*sweep.final_prediction) : ordered_json(nullptr);
    j["match"] = sweep.ok();
    return j;
}

ordered_json to_json(const FacetReport& report) {
    auto render = [](const std::vector<Simplex>& list) {
        ordered_json arr = ordered_json::array();
        for (const Simplex& s : list) {
            ordered_json f = ordered_json::array();
            for (VertexSet v : s) f.push_back(hcvr::to_string(v));
            arr.push_back(f);
        }
        return arr;
    };
    ordered_json j;
    j["command"] = "facets";
    j["closed_form_count"] = report.closed_form_count;
    j["clique_count"] = report.clique_count;
    j["only_closed_form"] = render(report.only_closed_form);
    j["only_clique"] = render(report.only_clique);
    j["match"] = report.ok();
    return j;
}

ordered_json to_json(const IdentityReport& report) {
    ordered_json j;
    j["command"] = "identities";
    j["max_m"] = report.max_m;
    ordered_json rows = ordered_json::array();
    for (const IdentityRow& r : report.rows)
        rows.push_back({{"name", r.name}, {"argument", r.argument}, {"lhs", big(r.lhs)},
                        {"rhs", big(r.rhs)}, {"holds", r.holds()}});
    j["rows"] = rows;
    j["match"] = report.ok();
    return j;
}

std::string csv_header() { return "command,kind,m,r,vertex,windows,betti,predicted,match,seconds"; }

std::string csv_row(const Report& report) {
    auto betti_field = [](const BettiVector& b) {
        std::string s;
        for (const auto& [d, v] : b.values()) {
            if (!s.empty()) s += ' ';
            s += std::to_string(d) + ':' + std::to_string(v);
        }
        return s;
    };
    std::ostringstream out;
    out << report.command << ',' << (report.spec.m > 0 ? to_string(report.spec.kind) : "") << ','
        << report.spec.m << ',' << report.r << ','
        << (report.spec.vertex ? hcvr::to_string(*report.spec.vertex) : "") << ',';
    for (std::size_t i = 0; i < report.windows.size(); ++i)
        out << (i ? " " : "") << report.windows[i].lo << ".." << report.windows[i].hi;
    out << ',' << betti_field(report.computed) << ','
        << (report.predicted ? betti_field(report.predicted->betti) : "") << ','
        << (report.match ? "true" : "false") << ',' << report.seconds;
    return out.str();
}

}  // namespace hcvr::harness
