// hcvr: Vietoris–Rips complexes of hypercubes, their facets and homology.
//
// Exit codes: 0 ok, 1 a computed value disagrees with its prediction,
// 2 usage error, 3 resource limit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcvr/errors.hpp"
#include "hcvr/harness.hpp"
#include "hcvr/kernels.hpp"
#include "hcvr/parallel.hpp"

namespace {

using namespace hcvr;
using hcvr::harness::UsageError;

struct Output {
    std::string format = "json";
    std::string path;

    void emit(const nlohmann::ordered_json& j, const std::string& csv) const {
        std::ofstream file;
        if (!path.empty()) {
            file.open(path);
            if (!file) throw UsageError("cannot write " + path);
        }
        std::ostream& out = path.empty() ? std::cout : file;
        if (format == "csv")
            out << csv;
        else
            out << j.dump(2) << '\n';
    }
};

std::vector<harness::Window> windows_from(const std::vector<std::string>& texts) {
    std::vector<harness::Window> out;
    for (const auto& t : texts) out.push_back(harness::parse_window(t));
    return out;
}

std::vector<int> levels_from(const std::string& text) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
        const auto comma = text.find(',', start);
        const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw UsageError("bad level list '" + text + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

VertexSet vertex_from(const std::string& text) {
    try {
        return parse_vertex_set(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Vietoris-Rips complexes of hypercube graphs: facets, homology and closed-form checks"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 0;
    std::string isa;
    Output output;
    app.add_option("--threads", threads, "Worker threads (default: HCVR_THREADS or all cores)");
    app.add_option("--isa", isa, "Kernel variant: scalar or avx2 (default: HCVR_ISA or best available)")
        ->check(CLI::IsMember({"scalar", "avx2"}));
    app.add_option("--format", output.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", output.path, "Write the report here instead of stdout");

    // betti
    auto* betti = app.add_subcommand("betti", "Reduced Betti numbers of VR(F; r)");
    std::string kind = "full-cube", levels, vertex, facets_in, facets_out;
    int m = 0, r = 3;
    bool exclusive = false, allow_large = false;
    std::vector<std::string> window_texts;
    betti->add_option("--family", kind, "full-cube | levels | prefix | f123 | link-target");
    betti->add_option("--m", m, "Ground set size (n for f123)");
    betti->add_option("--r", r, "Scale");
    betti->add_option("--window", window_texts, "LO..HI, repeatable");
    betti->add_option("--levels", levels, "Comma list n1,n2,...");
    betti->add_option("--vertex", vertex, "Vertex set literal, e.g. 1235 or {1,10}");
    betti->add_flag("--exclusive", exclusive, "prefix: leave out the vertex itself");
    betti->add_flag("--allow-large", allow_large, "Permit families of 128+ vertices at r >= 3");
    betti->add_option("--import", facets_in, "Read the complex from a facet file instead");
    betti->add_option("--export", facets_out, "Write the facets of the built complex");

    // link
    auto* link_cmd = app.add_subcommand("link", "Link of A in VR(F_{<=A}; 3)");
    link_cmd->add_option("--m", m)->required();
    link_cmd->add_option("--vertex", vertex)->required();
    link_cmd->add_option("--window", window_texts);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Ordered vertex-addition sweep at scale 3");
    int max_card = 0;
    sweep->add_option("--m", m)->required();
    sweep->add_option("--max-card", max_card, "Largest |A| visited (default m)");

    // facets
    auto* facets = app.add_subcommand("facets", "Closed-form facets against clique enumeration");
    std::string facet_kind = "q3";
    int n = 0;
    facets->add_option("--kind", facet_kind, "q3 | f12 | fn-fn1")->check(CLI::IsMember({"q3", "f12", "fn-fn1"}));
    facets->add_option("--m", m);
    facets->add_option("--n", n);
    facets->add_option("--export", facets_out);

    // identities
    auto* identities = app.add_subcommand("identities", "Exact binomial identities");
    int max_m = 40;
    identities->add_option("--max-m", max_m);

    // bench
    auto* bench = app.add_subcommand("bench", "Time the scale-3 cube windows");
    bench->add_option("--m", m)->required();
    bench->add_option("--window", window_texts);
    bench->add_flag("--allow-large", allow_large);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads) parallel::set_thread_count(threads);
    if (!isa.empty()) {
        const auto want = isa == "avx2" ? kernels::Isa::avx2 : kernels::Isa::scalar;
        if (!kernels::force_isa(want)) throw UsageError("AVX2 kernels are not available on this machine");
    }

    if (*betti || *bench) {
        if (!facets_in.empty()) {
            std::ifstream in(facets_in);
            if (!in) throw UsageError("cannot read " + facets_in);
            const Complex k = read_facets(in);
            const auto report = harness::betti_of(k, windows_from(window_texts));
            output.emit(harness::to_json(report), harness::csv_header() + "\n" + harness::csv_row(report) + "\n");
            return report.match ? 0 : 1;
        }
        harness::BettiRequest req;
        req.spec.kind = *bench ? harness::FamilyKind::full_cube : harness::parse_kind(kind);
        req.spec.m = m;
        if (!levels.empty()) req.spec.levels = levels_from(levels);
        if (!vertex.empty()) req.spec.vertex = vertex_from(vertex);
        req.spec.inclusive = !exclusive;
        req.r = *bench ? 3 : r;
        req.windows = windows_from(window_texts);
        req.allow_large = allow_large;
        req.export_facets = facets_out;
        const auto report = harness::cmd_betti(req);
        auto j = harness::to_json(report);
        if (*bench) j["command"] = "bench";
        output.emit(j, harness::csv_header() + "\n" + harness::csv_row(report) + "\n");
        return report.match ? 0 : 1;
    }
    if (*link_cmd) {
        const auto report = harness::cmd_link(m, vertex_from(vertex), windows_from(window_texts));
        output.emit(harness::to_json(report), harness::csv_header() + "\n" + harness::csv_row(report) + "\n");
        return report.match ? 0 : 1;
    }
    if (*sweep) {
        const auto result = harness::cmd_sweep(m, max_card ? max_card : m);
        std::string csv = "vertex,beta4,beta7,delta4,delta7,expected4,expected7,match\n";
        for (const auto& s : result.steps)
            csv += to_string(s.vertex) + ',' + std::to_string(s.betti[4]) + ',' + std::to_string(s.betti[7]) +
                   ',' + std::to_string(s.delta_middle) + ',' + std::to_string(s.delta_top) + ',' +
                   s.expected.middle.str() + ',' + s.expected.top.str() + ',' + (s.match ? "true" : "false") +
                   '\n';
        output.emit(harness::to_json(result), csv);
        return result.ok() ? 0 : 1;
    }
    if (*facets) {
        harness::FacetRequest req;
        req.kind = facet_kind == "q3" ? harness::FacetKind::q3
                   : facet_kind == "f12" ? harness::FacetKind::f12
                                         : harness::FacetKind::fn_fn1;
        req.m = m;
        req.n = n;
        req.export_facets = facets_out;
        const auto report = harness::cmd_facets(req);
        std::ostringstream csv;
        write_report(csv, report);
        output.emit(harness::to_json(report), csv.str());
        return report.ok() ? 0 : 1;
    }
    if (*identities) {
        const auto report = harness::cmd_identities(max_m);
        std::string csv = "name,argument,lhs,rhs,holds\n";
        for (const auto& row : report.rows)
            csv += row.name + ',' + std::to_string(row.argument) + ',' + row.lhs.str() + ',' + row.rhs.str() +
                   ',' + (row.holds() ? "true" : "false") + '\n';
        output.emit(harness::to_json(report), csv);
        return report.ok() ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hcvr::ResourceError& e) {
        std::cerr << "hcvr: resource limit: " << e.what() << '\n';
        return 3;
    } catch (const std::bad_alloc&) {
        std::cerr << "hcvr: out of memory\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hcvr: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hcvr: error: " << e.what() << '\n';
        return 3;
    }
}
