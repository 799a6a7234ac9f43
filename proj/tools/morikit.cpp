#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "morikit/errors.hpp"
#include "morikit/model_io.hpp"

namespace {

using morikit::Int;
using morikit::Json;
using morikit::VecI;

// exit codes: 0 success, 1 computation failure (oracle mismatch, internal
// error), 2 invalid input, 3 incomplete result under --require-complete,
// 64 usage
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
    std::string config;
    std::string height_bound;
    int word_bound = 0;
    std::string coeff_bound;
    std::string format;
    bool deterministic = false;
    bool require_complete = false;
};

struct SliceOpts {
    std::string cone = "nef";
    std::string plane;
    int samples = 16;
};

void add_common(CLI::App* sub, CommonOpts& o) {
    sub->add_option("-c,--config", o.config, "job config JSON file")->required();
    sub->add_option("--height-bound", o.height_bound,
                    "enumeration height bound, rational P/Q");
    sub->add_option("--word-bound", o.word_bound, "chamber walk depth bound");
    sub->add_option("--coeff-bound", o.coeff_bound, "box oracle coefficient bound");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_flag("--deterministic", o.deterministic,
                  "omit the timestamp so repeated runs are byte-identical");
    sub->add_flag("--require-complete", o.require_complete,
                  "exit 3 unless the result is certified complete");
}

VecI parse_class_list(const std::string& text, const std::string& flag) {
    VecI out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(Int(tok));
        } catch (const std::exception&) {
            throw morikit::input_error("bad_value", "expected comma-separated integers",
                                       {flag});
        }
    }
    if (out.empty()) {
        throw morikit::input_error("bad_value", "expected comma-separated integers", {flag});
    }
    return out;
}

int emit(const Json& doc, const morikit::JobConfig& cfg, const CommonOpts& o) {
    const std::string text = morikit::render(doc, cfg.output.format);
    if (cfg.output.path) {
        std::ofstream out(*cfg.output.path);
        if (!out) {
            std::cerr << "cannot write " << *cfg.output.path << "\n";
            return kExitFailure;
        }
        out << text;
    } else {
        std::cout << text;
    }
    if (doc.contains("error")) return kExitInvalid;
    if (o.require_complete) {
        bool ok = !doc.contains("complete") || doc.at("complete").get<bool>();
        if (doc.contains("saturated")) ok = ok && doc.at("saturated").get<bool>();
        if (!ok) return kExitIncomplete;
    }
    if (doc.contains("oracle_match") && !doc.at("oracle_match").get<bool>()) {
        return kExitFailure;
    }
    return 0;
}

int run(const std::string& command, const CommonOpts& o, const SliceOpts& s) {
    morikit::JobConfig cfg = morikit::load_job_config(o.config);
    if (!o.height_bound.empty()) {
        try {
            cfg.budget.height_bound = morikit::parse_rational(o.height_bound);
        } catch (const morikit::mk_error& err) {
            throw morikit::input_error("bad_rational", err.what(), {"--height-bound"});
        }
    }
    if (o.word_bound != 0) cfg.budget.word_bound = o.word_bound;
    if (!o.coeff_bound.empty()) {
        try {
            cfg.budget.coeff_bound = Int(o.coeff_bound);
        } catch (const std::exception&) {
            throw morikit::input_error("bad_value", "expected an integer", {"--coeff-bound"});
        }
    }
    if (!o.format.empty()) cfg.output.format = o.format;

    Json doc;
    if (command == "k3cone") {
        doc = morikit::k3cone_document(cfg, cfg.budget, o.deterministic);
        return emit(doc, cfg, o);
    }
    const morikit::BuiltModel bm = morikit::build_model(cfg);
    if (command == "build") {
        doc = morikit::build_document(bm, o.deterministic);
        return emit(doc, cfg, o);
    }
    const morikit::EnumerationBudget budget =
        morikit::effective_budget(bm.model, cfg.budget);
    if (command == "mori") {
        doc = morikit::mori_document(bm, budget, o.deterministic);
    } else if (command == "nef") {
        doc = morikit::nef_document(bm, budget, o.deterministic);
    } else if (command == "movable") {
        doc = morikit::movable_document(bm, budget, o.deterministic);
    } else if (command == "check") {
        doc = morikit::check_document(bm, budget, o.deterministic);
    } else if (command == "slice") {
        std::optional<VecI> plane;
        if (!s.plane.empty()) plane = parse_class_list(s.plane, "--plane");
        doc = morikit::slice_document(bm, budget, s.cone, plane, s.samples, o.deterministic);
    } else {
        std::cerr << "unknown command " << command << "\n";
        return kExitUsage;
    }
    return emit(doc, cfg, o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Mori / nef / movable cone computations on the divisor "
                 "lattice of a holomorphic symplectic model"};
    app.require_subcommand(1);

    CommonOpts opts;
    SliceOpts slice_opts;

    const char* commands[] = {"build", "mori", "nef", "movable", "k3cone", "check", "slice"};
    const char* descriptions[] = {
        "construct the model and echo its derived constants",
        "extremal curve classes and the dual cone data",
        "nef chamber of the polarization",
        "movable cone chamber decomposition",
        "pseudoeffective cone of the underlying K3 lattice",
        "cross-validate the enumeration against the box oracle",
        "rational slice data of a computed cone for plotting"};
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
        add_common(sub, opts);
        if (std::string(commands[i]) == "slice") {
            sub->add_option("--cone", slice_opts.cone, "which cone to slice")
                ->check(CLI::IsMember({"mori", "nef", "movable"}));
            sub->add_option("--plane", slice_opts.plane,
                            "ambient class of the slicing plane, comma-separated integers");
            sub->add_option("--samples", slice_opts.samples,
                            "quadric boundary samples per edge")
                ->check(CLI::PositiveNumber);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opts, slice_opts);
    } catch (const morikit::input_error& err) {
        std::cout << morikit::render(morikit::error_document(err), "json");
        return kExitInvalid;
    } catch (const morikit::validation_error& err) {
        std::cout << morikit::render(morikit::error_document(err), "json");
        return kExitInvalid;
    } catch (const morikit::unsupported_error& err) {
        std::cout << morikit::render(morikit::error_document(err), "json");
        return kExitInvalid;
    } catch (const std::exception& err) {
        std::cout << morikit::render(morikit::error_document(err), "json");
        return kExitFailure;
    }
}
