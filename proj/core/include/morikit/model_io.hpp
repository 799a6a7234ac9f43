#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "morikit/chambers.hpp"

namespace morikit {

using Json = nlohmann::json;

// Parsed job configuration. Exactly one of k3 / raw must be present; the
// top-level ample override, if given, replaces the model's polarization.
struct K3Config {
    MatI gram;
    VecI polarization;
    Int n;
};

struct RawConfig {
    MatI gram;
    VecI v;
    VecI ample;
};

struct BudgetConfig {
    std::optional<Rat> height_bound;
    std::optional<int> word_bound;
    std::optional<Int> coeff_bound;
};

struct OutputConfig {
    std::string format = "json"; // "json" or "tsv"
    std::optional<std::string> path;
};

struct JobConfig {
    std::optional<K3Config> k3;
    std::optional<RawConfig> raw;
    std::optional<VecI> ample;
    BudgetConfig budget;
    OutputConfig output;
};

JobConfig parse_job_config(const std::string& text);
JobConfig load_job_config(const std::string& path);

struct BuiltModel {
    ExtendedAlgebraicLattice model;
    std::optional<VecI> delta; // half-diagonal class, Hilbert models only
};

// Constructs the model from a config, mapping constructor errors onto the
// config field paths they came from.
BuiltModel build_model(const JobConfig& cfg);

EnumerationBudget effective_budget(const ExtendedAlgebraicLattice& e, const BudgetConfig& b);

// Result documents. Every document carries schema "morikit/1", a raw model
// echo that parses back as a config (round-trip), derived constants, and
// the budget actually used. `deterministic` drops the timestamp so repeated
// runs are byte-identical.
Json build_document(const BuiltModel& bm, bool deterministic);
Json mori_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic);
Json nef_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic);
// catches the unsupported-rank error internally and reports the walls
// individually in that case; callers detect it via the "error" key
Json movable_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic);
Json k3cone_document(const JobConfig& cfg, const BudgetConfig& budget, bool deterministic);
Json check_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic);
// 1D / 2D slice of a computed cone ("mori", "nef" or "movable") at the
// affine plane {q_pair(p, x) = 1}; p defaults to the polarization. The
// polyhedral vertices are exact; the positive-cone boundary is sampled by
// rational points lying weakly inside, found by bisection.
Json slice_document(const BuiltModel& bm, const EnumerationBudget& budget,
                    const std::string& which, const std::optional<VecI>& plane_class,
                    int samples, bool deterministic);

Json error_document(const std::exception& err);

// "json": pretty-printed, sorted keys. "tsv": flat rows, one record per
// line, documented in the README.
std::string render(const Json& doc, const std::string& format);

} // namespace morikit
