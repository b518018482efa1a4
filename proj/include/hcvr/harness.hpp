#pragma once

// Report-producing commands behind the hcvr CLI.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcvr/homology.hpp"
#include "hcvr/hypercube.hpp"
#include "hcvr/oracle.hpp"
#include "hcvr/vietoris_rips.hpp"

namespace hcvr::harness {

/// Bad command-line parameters (exit code 2).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class FamilyKind { full_cube, levels, prefix, f123, link_target };

FamilyKind parse_kind(const std::string& text);
std::string to_string(FamilyKind kind);

/// What to build.  `levels` is used by `levels` (and optionally by
/// `link-target`, restricting the family before the prefix cut); `vertex`
/// by `prefix` and `link-target`.
struct FamilySpec {
    FamilyKind kind = FamilyKind::full_cube;
    int m = 0;
    std::vector<int> levels;
    std::optional<VertexSet> vertex;
    bool inclusive = true;  // prefix only
};

/// Throws UsageError when the parameters do not fit the kind.
void validate(const FamilySpec& spec);

/// The vertex family of the spec.  For link-target this is the family the
/// link is taken in.
Family build_family(const FamilySpec& spec);

struct Window {
    int lo = 0;
    int hi = 0;
};

/// "LO..HI" or "K".
Window parse_window(const std::string& text);

struct Report {
    std::string command;
    FamilySpec spec;
    int r = 3;
    std::vector<Window> windows;
    std::size_t vertex_count = 0;
    std::size_t facet_count = 0;
    int dimension = -1;
    BettiVector computed;
    std::optional<oracle::Prediction> predicted;
    std::optional<bool> euler_consistent;  // only when the window covers every dimension
    bool match = true;
    HomologyStats stats;
    double seconds = 0;
};

struct BettiRequest {
    FamilySpec spec;
    int r = 3;
    std::vector<Window> windows;  // empty: default windows
    bool allow_large = false;
    std::string export_facets;    // optional path
};

/// Builds the family and VR complex (or the link, for link-target), computes
/// Betti numbers over the windows and compares against the oracle when it
/// has a prediction.  Full-cube runs with 2^m >= 128 vertices at r >= 3
/// need allow_large.
Report cmd_betti(const BettiRequest& request);

/// Same as cmd_betti on an imported complex; no prediction.
Report betti_of(const Complex& k, std::vector<Window> windows);

/// Link of A in VR(F_{⪯A}; 3).
Report cmd_link(int m, VertexSet a, std::vector<Window> windows = {});

struct SweepStep {
    VertexSet vertex;
    BettiVector betti;      // VR(F_{⪯A}; 3) on the step window
    std::uint64_t delta_top = 0;
    std::uint64_t delta_middle = 0;
    oracle::Increment expected;
    bool match = true;
    double seconds = 0;
};

struct SweepResult {
    int m = 0;
    int max_card = 0;
    Report base;  // VR(F_{<=3}; 3)
    std::vector<SweepStep> steps;
    std::optional<VertexSet> first_failure;
    std::optional<oracle::Prediction> final_prediction;  // when the sweep reaches [m]
    bool final_match = true;
    bool ok() const { return base.match && !first_failure && final_match; }
};

/// Walks A in ≺ order over 4 <= |A| <= max_card and checks each Betti step
/// against (C(|A|,4), r_A).  Halts at the first mismatch.
SweepResult cmd_sweep(int m, int max_card);

enum class FacetKind { q3, f12, fn_fn1 };

struct FacetRequest {
    FacetKind kind = FacetKind::q3;
    int m = 0;
    int n = 0;
    std::string export_facets;
};

/// Closed form against clique enumeration.
FacetReport cmd_facets(const FacetRequest& request);

struct IdentityRow {
    std::string name;
    int argument = 0;
    BigInt lhs;
    BigInt rhs;
    bool holds() const { return lhs == rhs; }
};

struct IdentityReport {
    int max_m = 0;
    std::vector<IdentityRow> rows;
    bool ok() const;
};

/// A.1 on 5..max_m, A.2 on 6..max_m, the C(n,4) sum on 4..max_m and the
/// telescoping check on 5..min(max_m, 20).
IdentityReport cmd_identities(int max_m);

nlohmann::ordered_json to_json(const Report& report);
nlohmann::ordered_json to_json(const SweepResult& sweep);
nlohmann::ordered_json to_json(const FacetReport& report);
nlohmann::ordered_json to_json(const IdentityReport& report);
nlohmann::ordered_json to_json(const oracle::Prediction& prediction);
nlohmann::ordered_json to_json(const BettiVector& betti);

std::string csv_header();
std::string csv_row(const Report& report);

}  // namespace hcvr::harness
