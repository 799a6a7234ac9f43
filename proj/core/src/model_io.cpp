#include "morikit/model_io.hpp"

#include <algorithm>
#include <ctime>
#include <fstream>
#include <sstream>

#include "morikit/errors.hpp"
#include "morikit/linalg.hpp"

namespace morikit {

namespace {

// ---- config parsing ----

const Json& require_field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw input_error("missing_field", "missing required field", {path});
    }
    return obj.at(key);
}

Int json_int(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Int(v.get<long long>());
    if (v.is_number_unsigned()) return Int(v.get<unsigned long long>());
    if (v.is_string()) {
        try {
            return Int(v.get<std::string>());
        } catch (const std::exception&) {
            throw input_error("bad_value", "expected an integer", {path});
        }
    }
    throw input_error("bad_type", "expected an integer (number or decimal string)", {path});
}

Rat json_rat(const Json& v, const std::string& path) {
    if (v.is_number_integer() || v.is_number_unsigned() || v.is_string()) {
        if (!v.is_string()) return Rat(json_int(v, path));
        try {
            return parse_rational(v.get<std::string>());
        } catch (const mk_error& err) {
            throw input_error("bad_rational", err.what(), {path});
        }
    }
    throw input_error("bad_type", "expected a rational as integer or \"p/q\" string",
                      {path});
}

int json_machine_int(const Json& v, const std::string& path) {
    const Int x = json_int(v, path);
    if (x < -1000000 || x > 1000000) {
        throw input_error("bad_value", "value out of range", {path});
    }
    return static_cast<int>(x.convert_to<long long>());
}

VecI json_veci(const Json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) {
        throw input_error("bad_type", "expected a nonempty integer array", {path});
    }
    VecI out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(json_int(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

MatI json_mati(const Json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) {
        throw input_error("bad_type", "expected a nonempty array of integer rows", {path});
    }
    std::vector<VecI> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rows.push_back(json_veci(v[i], path + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) {
            throw input_error("bad_value", "matrix rows have unequal lengths", {path});
        }
    }
    MatI m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
    return m;
}

// ---- emission helpers ----

Json int_json(const Int& v) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return Json(v.convert_to<long long>());
    return Json(v.str());
}

Json rat_json(const Rat& r) { return Json(format_rational(r)); }

Json veci_json(const VecI& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(int_json(x));
    return a;
}

Json vecr_json(const VecR& v) {
    Json a = Json::array();
    for (const Rat& x : v) a.push_back(rat_json(x));
    return a;
}

Json mati_json(const MatI& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows(); ++i) a.push_back(veci_json(m.row(i)));
    return a;
}

std::string now_rfc3339() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

VecI h2_int(const ExtendedAlgebraicLattice& e, const VecR& x) {
    auto c = h2_coordinates(e, x);
    if (!c) throw mk_error("internal_invariant", "class outside the divisor lattice span");
    auto [ints, den] = clear_denominators(*c);
    if (den != 1) throw mk_error("internal_invariant", "non-integral divisor coordinates");
    return ints;
}

// ambient integral representative of a divisor-basis integer vector
VecI ambient_class(const ExtendedAlgebraicLattice& e, const VecI& v2) {
    const auto& basis = e.h2_alg_basis();
    VecI out(e.rank(), Int(0));
    for (std::size_t i = 0; i < v2.size(); ++i) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += v2[i] * basis[i][k];
    }
    return out;
}

Json curve_json(const CurveClass& c) {
    Json j;
    j["coords"] = vecr_json(c.coords);
    j["q"] = rat_json(c.q);
    j["denominator"] = int_json(c.denominator);
    return j;
}

Json theorem_class_json(const TheoremClass& tc) {
    Json j = curve_json(tc.r);
    j["height"] = rat_json(tc.height);
    j["a"] = veci_json(tc.a);
    j["a_sq"] = int_json(tc.a_sq);
    j["av"] = int_json(tc.av);
    return j;
}

Json budget_json(const EnumerationBudget& b) {
    Json j;
    j["height_bound"] = rat_json(b.height_bound);
    j["word_bound"] = b.word_bound;
    j["coeff_bound"] = int_json(b.coeff_bound);
    return j;
}

Json base_document(const char* command, const BuiltModel& bm, bool deterministic) {
    const ExtendedAlgebraicLattice& e = bm.model;
    Json doc;
    doc["schema"] = "morikit/1";
    doc["command"] = command;
    doc["model"]["raw"]["gram"] = mati_json(e.lattice().gram());
    doc["model"]["raw"]["v"] = veci_json(e.v());
    doc["model"]["raw"]["ample"] = veci_json(e.h());

    Json derived;
    derived["n"] = int_json(e.n());
    derived["v_sq"] = int_json(e.v_sq());
    derived["rank"] = e.lattice().rank();
    derived["h2_rank"] = e.h2_alg_gram().rows();
    const auto sig = e.lattice().signature();
    derived["signature"] = Json::array({sig.first, sig.second});
    if (bm.delta) {
        derived["delta"] = veci_json(*bm.delta);
        derived["delta_sq"] = int_json(e.pair(*bm.delta, *bm.delta));
    }
    doc["derived"] = derived;
    if (!deterministic) doc["generated_at"] = now_rfc3339();
    return doc;
}

// facets of a divisor-basis cone as ambient classes: the pairing-dual of
// each inward normal, primitivized
Json facet_classes_json(const ExtendedAlgebraicLattice& e, const RationalCone& c) {
    const MatR g = to_rational(e.h2_alg_gram());
    Json a = Json::array();
    for (const VecI& f : c.facets) {
        const auto y = solve(g, to_rational(f));
        if (!y) throw mk_error("internal_invariant", "divisor gram is singular");
        a.push_back(veci_json(ambient_class(e, primitive_vector(*y))));
    }
    return a;
}

Json ray_classes_json(const ExtendedAlgebraicLattice& e, const RationalCone& c) {
    Json a = Json::array();
    for (const VecI& r : c.rays) a.push_back(veci_json(ambient_class(e, r)));
    return a;
}

// ---- tsv rendering ----

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string joined_row(const Json& arr) {
    std::string out;
    for (const auto& x : arr) {
        if (!out.empty()) out += ",";
        out += scalar_text(x);
    }
    return out;
}

void tsv_class_row(std::ostringstream& os, const char* tag, const Json& item,
                   const std::string& prefix = "") {
    os << tag << '\t' << prefix;
    if (item.is_array()) {
        os << joined_row(item) << '\n';
        return;
    }
    os << joined_row(item.at("coords"));
    if (item.contains("q")) os << "\tq=" << scalar_text(item.at("q"));
    if (item.contains("height")) os << "\theight=" << scalar_text(item.at("height"));
    if (item.contains("a")) os << "\ta=" << joined_row(item.at("a"));
    if (item.contains("a_sq")) os << "\ta_sq=" << scalar_text(item.at("a_sq"));
    if (item.contains("av")) os << "\tav=" << scalar_text(item.at("av"));
    os << '\n';
}

std::string render_tsv(const Json& doc) {
    std::ostringstream os;
    static const char* complex_keys[] = {"model",   "derived",  "budget", "rays",
                                         "facets",  "chambers", "walls",  "generators",
                                         "exceptional_walls", "shell_rays", "polylines",
                                         "error",   "plane"};
    auto is_complex = [&](const std::string& k) {
        return std::find_if(std::begin(complex_keys), std::end(complex_keys),
                            [&](const char* c) { return k == c; }) != std::end(complex_keys);
    };
    for (const auto& [key, value] : doc.items()) {
        if (is_complex(key)) continue;
        os << key << '\t' << scalar_text(value) << '\n';
    }
    for (const char* key : {"model", "derived", "budget", "plane", "error"}) {
        if (doc.contains(key)) os << key << '\t' << doc.at(key).dump() << '\n';
    }
    for (const char* key : {"rays", "generators", "facets", "walls", "exceptional_walls",
                            "shell_rays"}) {
        if (!doc.contains(key)) continue;
        std::string tag(key);
        if (!tag.empty() && tag.back() == 's') tag.pop_back();
        for (const auto& item : doc.at(key)) tsv_class_row(os, tag.c_str(), item);
    }
    if (doc.contains("chambers")) {
        int idx = 0;
        for (const auto& ch : doc.at("chambers")) {
            os << "chamber\t" << idx << "\tcontains_h="
               << scalar_text(ch.at("contains_h")) << "\tinterior="
               << joined_row(ch.at("interior_point")) << '\n';
            const std::string prefix = std::to_string(idx) + "\t";
            for (const auto& r : ch.at("rays")) tsv_class_row(os, "chamber_ray", r, prefix);
            for (const auto& w : ch.at("walls")) tsv_class_row(os, "chamber_wall", w, prefix);
            ++idx;
        }
    }
    if (doc.contains("polylines")) {
        for (const auto& pl : doc.at("polylines")) {
            const std::string label = pl.at("label").get<std::string>();
            for (const auto& p : pl.at("points")) {
                os << "point\t" << label << '\t' << joined_row(p) << '\n';
            }
        }
    }
    return os.str();
}

} // namespace

JobConfig parse_job_config(const std::string& text) {
    const Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw input_error("bad_json", "config is not a JSON object", {});
    }
    JobConfig cfg;
    const Json& model = require_field(doc, "model", "model");
    const bool has_k3 = model.is_object() && model.contains("k3");
    const bool has_raw = model.is_object() && model.contains("raw");
    if (has_k3 && has_raw) {
        throw validation_error("ambiguous_model", "config supplies both k3 and raw models",
                               {"model.k3", "model.raw"});
    }
    if (!has_k3 && !has_raw) {
        throw input_error("missing_field", "model requires a k3 or raw block", {"model"});
    }
    if (has_k3) {
        const Json& k3 = model.at("k3");
        cfg.k3 = K3Config{json_mati(require_field(k3, "gram", "model.k3.gram"), "model.k3.gram"),
                          json_veci(require_field(k3, "polarization", "model.k3.polarization"),
                                    "model.k3.polarization"),
                          json_int(require_field(k3, "n", "model.k3.n"), "model.k3.n")};
    } else {
        const Json& raw = model.at("raw");
        cfg.raw =
            RawConfig{json_mati(require_field(raw, "gram", "model.raw.gram"), "model.raw.gram"),
                      json_veci(require_field(raw, "v", "model.raw.v"), "model.raw.v"),
                      json_veci(require_field(raw, "ample", "model.raw.ample"),
                                "model.raw.ample")};
    }
    if (doc.contains("ample")) cfg.ample = json_veci(doc.at("ample"), "ample");
    if (doc.contains("budget")) {
        const Json& b = doc.at("budget");
        if (!b.is_object()) {
            throw input_error("bad_type", "budget must be an object", {"budget"});
        }
        if (b.contains("height_bound")) {
            cfg.budget.height_bound = json_rat(b.at("height_bound"), "budget.height_bound");
        }
        if (b.contains("word_bound")) {
            cfg.budget.word_bound = json_machine_int(b.at("word_bound"), "budget.word_bound");
        }
        if (b.contains("coeff_bound")) {
            cfg.budget.coeff_bound = json_int(b.at("coeff_bound"), "budget.coeff_bound");
        }
    }
    if (doc.contains("output")) {
        const Json& o = doc.at("output");
        if (!o.is_object()) {
            throw input_error("bad_type", "output must be an object", {"output"});
        }
        if (o.contains("format")) {
            if (!o.at("format").is_string()) {
                throw input_error("bad_type", "output.format must be a string",
                                  {"output.format"});
            }
            cfg.output.format = o.at("format").get<std::string>();
            if (cfg.output.format != "json" && cfg.output.format != "tsv") {
                throw input_error("bad_value", "output.format must be json or tsv",
                                  {"output.format"});
            }
        }
        if (o.contains("path")) {
            if (!o.at("path").is_string()) {
                throw input_error("bad_type", "output.path must be a string",
                                  {"output.path"});
            }
            cfg.output.path = o.at("path").get<std::string>();
        }
    }
    return cfg;
}

JobConfig load_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("config_unreadable", "cannot open config file", {"config"});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_job_config(buf.str());
}

BuiltModel build_model(const JobConfig& cfg) {
    auto with_override = [&](ExtendedAlgebraicLattice model) {
        if (!cfg.ample) return model;
        try {
            return model.with_polarization(*cfg.ample);
        } catch (const validation_error& err) {
            throw validation_error(err.code(), err.what(), {"ample"});
        } catch (const input_error& err) {
            throw input_error(err.code(), err.what(), {"ample"});
        }
    };
    if (cfg.k3) {
        HilbertModel hm = from_k3_hilbert(cfg.k3->gram, cfg.k3->n, cfg.k3->polarization);
        return BuiltModel{with_override(std::move(hm.model)), std::move(hm.delta)};
    }
    if (!cfg.raw) {
        throw input_error("missing_field", "config has no model", {"model"});
    }
    return BuiltModel{with_override(from_raw(cfg.raw->gram, cfg.raw->v, cfg.raw->ample)),
                      std::nullopt};
}

EnumerationBudget effective_budget(const ExtendedAlgebraicLattice& e, const BudgetConfig& b) {
    EnumerationBudget out = EnumerationBudget::defaults_for(e);
    if (b.height_bound) out.height_bound = *b.height_bound;
    if (b.word_bound) out.word_bound = *b.word_bound;
    if (b.coeff_bound) out.coeff_bound = *b.coeff_bound;
    if (out.height_bound <= 0) {
        throw validation_error("bad_budget", "height bound must be positive",
                               {"budget.height_bound"});
    }
    if (out.word_bound < 0) {
        throw validation_error("bad_budget", "word bound must be nonnegative",
                               {"budget.word_bound"});
    }
    if (out.coeff_bound < 1) {
        throw validation_error("bad_budget", "coefficient bound must be at least 1",
                               {"budget.coeff_bound"});
    }
    return out;
}

Json build_document(const BuiltModel& bm, bool deterministic) {
    return base_document("build", bm, deterministic);
}

Json mori_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic) {
    Json doc = base_document("mori", bm, deterministic);
    doc["budget"] = budget_json(budget);
    const NegativeRays nr = negative_extremal_rays(bm.model, budget);
    const ConeDescription cd = mori_cone(bm.model, budget);
    Json rays = Json::array();
    for (const TheoremClass& tc : nr.rays) rays.push_back(theorem_class_json(tc));
    doc["rays"] = rays;
    doc["generators"] = ray_classes_json(bm.model, cd.polyhedral);
    doc["complete"] = cd.complete;
    return doc;
}

Json nef_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic) {
    Json doc = base_document("nef", bm, deterministic);
    doc["budget"] = budget_json(budget);
    const NefCone nc = nef_cone(bm.model, budget);
    doc["rays"] = ray_classes_json(bm.model, nc.cone);
    doc["facets"] = facet_classes_json(bm.model, nc.cone);
    doc["exact_boundary"] = nc.exact_boundary;
    doc["complete"] = nc.complete;
    return doc;
}

Json movable_document(const BuiltModel& bm, const EnumerationBudget& budget,
                      bool deterministic) {
    Json doc = base_document("movable", bm, deterministic);
    doc["budget"] = budget_json(budget);
    try {
        const MovableDecomposition md = movable_chambers(bm.model, budget);
        Json chambers = Json::array();
        for (const Chamber& ch : md.chambers) {
            Json c;
            c["rays"] = ray_classes_json(bm.model, ch.cone);
            Json walls = Json::array();
            for (const CurveClass& w : ch.walls) walls.push_back(curve_json(w));
            c["walls"] = walls;
            c["interior_point"] = veci_json(ambient_class(bm.model, ch.interior_point));
            c["contains_h"] = ch.contains_h;
            chambers.push_back(c);
        }
        doc["chambers"] = chambers;
        Json walls = Json::array();
        for (const VecI& w : md.exceptional_walls) walls.push_back(veci_json(w));
        doc["exceptional_walls"] = walls;
        doc["shell_rays"] = ray_classes_json(bm.model, md.shell);
        doc["exact_boundary"] = md.exact_boundary;
        doc["complete"] = md.complete;
        doc["saturated"] = md.saturated;
    } catch (const unsupported_error& err) {
        // rank too large for the chamber walk: report the walls individually
        doc["error"] = error_document(err)["error"];
        Json walls = Json::array();
        for (const VecI& w : exceptional_candidates(bm.model, budget)) {
            walls.push_back(veci_json(w));
        }
        doc["exceptional_walls"] = walls;
    }
    return doc;
}

Json k3cone_document(const JobConfig& cfg, const BudgetConfig& budget, bool deterministic) {
    if (!cfg.k3) {
        throw validation_error("k3_required", "k3cone requires a k3 model", {"model.k3"});
    }
    const MatI& gram = cfg.k3->gram;
    const VecI& h = cfg.k3->polarization;
    if (gram.rows() != gram.cols() || static_cast<std::size_t>(gram.rows()) != h.size()) {
        throw validation_error("dimension_mismatch",
                               "polarization length must match the Picard rank",
                               {"model.k3.polarization"});
    }
    Rat hsq(dot(h, mat_vec(gram, h)));
    EnumerationBudget eb{hsq > 0 ? Rat(10) * hsq : Rat(10), 8, 8};
    if (budget.height_bound) eb.height_bound = *budget.height_bound;
    if (budget.word_bound) eb.word_bound = *budget.word_bound;
    if (budget.coeff_bound) eb.coeff_bound = *budget.coeff_bound;

    const K3EffectiveCone kc = k3_pseudoeffective(gram, h, eb);
    Json doc;
    doc["schema"] = "morikit/1";
    doc["command"] = "k3cone";
    doc["model"]["k3"]["gram"] = mati_json(gram);
    doc["model"]["k3"]["polarization"] = veci_json(h);
    doc["model"]["k3"]["n"] = int_json(cfg.k3->n);
    doc["budget"] = budget_json(eb);
    Json rays = Json::array();
    for (const VecI& r : kc.rays) rays.push_back(veci_json(r));
    doc["rays"] = rays;
    doc["complete"] = kc.complete;
    if (!deterministic) doc["generated_at"] = now_rfc3339();
    return doc;
}

Json check_document(const BuiltModel& bm, const EnumerationBudget& budget, bool deterministic) {
    Json doc = base_document("check", bm, deterministic);
    doc["budget"] = budget_json(budget);
    const TheoremSet ts = enumerate_theorem_set(bm.model, budget);
    const auto boxed = box_oracle(bm.model, budget.coeff_bound, budget.height_bound);

    std::vector<VecI> lattice_side;
    for (const TheoremClass& tc : ts.classes) {
        bool in_box = true;
        for (const Int& c : tc.a) {
            if (c > budget.coeff_bound || c < -budget.coeff_bound) in_box = false;
        }
        if (in_box) lattice_side.push_back(tc.a);
    }
    std::vector<VecI> box_side;
    for (const TheoremClass& tc : boxed) box_side.push_back(tc.a);

    doc["enumerated_in_box"] = lattice_side.size();
    doc["box_total"] = box_side.size();
    doc["oracle_match"] = (lattice_side == box_side);
    return doc;
}

namespace {

// Simplest rational in [a, b] by continued-fraction descent; keeps plot
// coordinates readable after a deep bisection has pinned the bracket.
Rat simplest_rational_in(const Rat& a, const Rat& b) {
    if (a > b) return simplest_rational_in(b, a);
    if (a <= 0 && 0 <= b) return Rat(0);
    if (a > 0) {
        const Int ia = rat_ceil(a);
        if (Rat(ia) <= b) return Rat(ia);
        const Int w = rat_floor(a);
        return Rat(w) + Rat(1) / simplest_rational_in(Rat(1) / (b - Rat(w)), Rat(1) / (a - Rat(w)));
    }
    return -simplest_rational_in(-b, -a);
}

} // namespace

Json slice_document(const BuiltModel& bm, const EnumerationBudget& budget,
                    const std::string& which, const std::optional<VecI>& plane_class,
                    int samples, bool deterministic) {
    const ExtendedAlgebraicLattice& e = bm.model;
    const MatI& g2 = e.h2_alg_gram();
    const int m = g2.rows();
    if (m != 2 && m != 3) {
        throw unsupported_error("unsupported_rank", "slice supports divisor rank 2 or 3",
                                {"model"});
    }

    VecI p_amb = plane_class ? *plane_class : e.h();
    if (p_amb.size() != e.rank()) {
        throw input_error("dimension_mismatch", "plane class has the wrong dimension",
                          {"plane"});
    }
    const VecI p2 = h2_int(e, to_rational(p_amb));
    const VecI c = mat_vec(g2, p2); // plane {x : dot(c, x) = 1}
    const Int psq = dot(p2, c);
    if (psq <= 0) {
        throw validation_error("bad_plane", "plane class must have positive square", {"plane"});
    }

    RationalCone cone{0, {}, {}};
    if (which == "mori") {
        cone = mori_cone(e, budget).polyhedral;
    } else if (which == "nef") {
        cone = nef_cone(e, budget).cone;
    } else if (which == "movable") {
        cone = movable_chambers(e, budget).shell;
    } else {
        throw input_error("bad_value", "slice cone must be mori, nef or movable", {"cone"});
    }

    // plane point of x0 = p / q(p), the natural center
    VecR center(m);
    for (int i = 0; i < m; ++i) center[i] = Rat(p2[i], psq);

    std::vector<VecR> vertices;
    bool unbounded = false;
    for (const VecI& r : cone.rays) {
        const Int d = dot(c, r);
        if (d <= 0) {
            unbounded = true;
            continue;
        }
        VecR v(m);
        for (int i = 0; i < m; ++i) v[i] = Rat(r[i], d);
        vertices.push_back(v);
    }

    if (m == 3 && vertices.size() > 2) {
        // convex angular order around the center, exact orientation tests
        auto cross_sign = [&](const VecR& a, const VecR& b) {
            // orientation of (a - center, b - center) inside the plane,
            // measured against the plane normal via a 3x3 determinant
            MatR mdet(3, 3);
            for (int i = 0; i < 3; ++i) {
                mdet(0, i) = a[i] - center[i];
                mdet(1, i) = b[i] - center[i];
                mdet(2, i) = Rat(p2[i]);
            }
            const Rat det = mdet(0, 0) * (mdet(1, 1) * mdet(2, 2) - mdet(1, 2) * mdet(2, 1)) -
                            mdet(0, 1) * (mdet(1, 0) * mdet(2, 2) - mdet(1, 2) * mdet(2, 0)) +
                            mdet(0, 2) * (mdet(1, 0) * mdet(2, 1) - mdet(1, 1) * mdet(2, 0));
            return sign(det);
        };
        const VecR anchor = vertices.front();
        std::sort(vertices.begin() + 1, vertices.end(), [&](const VecR& a, const VecR& b) {
            const int sa = cross_sign(anchor, a);
            const int sb = cross_sign(anchor, b);
            if (sa != sb) return sa > sb;
            return cross_sign(a, b) > 0;
        });
    } else {
        std::sort(vertices.begin(), vertices.end(),
                  [](const VecR& a, const VecR& b) { return a < b; });
    }

    const MatR gr = to_rational(g2);
    auto q_at = [&](const VecR& x) { return dot(x, mat_vec(gr, x)); };

    std::vector<VecR> arc;
    const int per_edge = std::max(samples, 1);
    const std::size_t nv = vertices.size();
    const std::size_t edges = (m == 3 && nv > 2) ? nv : (nv == 2 ? 1 : 0);
    for (std::size_t ei = 0; ei < edges; ++ei) {
        const VecR& a = vertices[ei];
        const VecR& b = vertices[(ei + 1) % nv];
        for (int t = 0; t <= per_edge; ++t) {
            if (t == per_edge && ei + 1 < edges) continue; // shared corner
            VecR w(m);
            for (int i = 0; i < m; ++i) {
                w[i] = (Rat(per_edge - t) * a[i] + Rat(t) * b[i]) / per_edge;
            }
            // push outward from the center until the quadric changes sign,
            // then bisect; the emitted point stays weakly inside
            VecR dir(m);
            for (int i = 0; i < m; ++i) dir[i] = w[i] - center[i];
            if (is_zero(dir)) continue;
            auto at = [&](const Rat& s) {
                VecR x(m);
                for (int i = 0; i < m; ++i) x[i] = center[i] + s * dir[i];
                return x;
            };
            Rat lo = 0, hi = 1;
            bool crossed = q_at(at(hi)) < 0;
            for (int k = 0; !crossed && k < 64; ++k) {
                lo = hi;
                hi *= 2;
                crossed = q_at(at(hi)) < 0;
            }
            if (!crossed) continue; // direction never leaves the positive cone
            for (int k = 0; k < 20; ++k) {
                const Rat mid = (lo + hi) / 2;
                (q_at(at(mid)) >= 0 ? lo : hi) = mid;
            }
            const Rat snap = simplest_rational_in(lo, hi);
            const VecR snapped = at(snap);
            const VecR pt = q_at(snapped) >= 0 ? snapped : at(lo);
            if (arc.empty() || arc.back() != pt) arc.push_back(pt);
        }
    }

    Json doc = base_document("slice", bm, deterministic);
    doc["budget"] = budget_json(budget);
    doc["cone"] = which;
    doc["plane"]["class"] = veci_json(p_amb);
    doc["plane"]["level"] = "1";
    doc["unbounded"] = unbounded;
    Json polylines = Json::array();
    Json shell;
    shell["label"] = "shell";
    Json pts = Json::array();
    for (const VecR& v : vertices) pts.push_back(vecr_json(v));
    shell["points"] = pts;
    polylines.push_back(shell);
    Json arcj;
    arcj["label"] = "positive_boundary_inner";
    Json apts = Json::array();
    for (const VecR& v : arc) apts.push_back(vecr_json(v));
    arcj["points"] = apts;
    polylines.push_back(arcj);
    doc["polylines"] = polylines;
    return doc;
}

Json error_document(const std::exception& err) {
    Json doc;
    doc["schema"] = "morikit/1";
    Json e;
    if (const auto* me = dynamic_cast<const mk_error*>(&err)) {
        e["code"] = me->code();
        e["message"] = me->what();
        Json fields = Json::array();
        for (const std::string& f : me->fields()) fields.push_back(f);
        e["fields"] = fields;
    } else {
        e["code"] = "internal";
        e["message"] = err.what();
        e["fields"] = Json::array();
    }
    doc["error"] = e;
    return doc;
}

std::string render(const Json& doc, const std::string& format) {
    if (format == "tsv") return render_tsv(doc);
    if (format == "json") return doc.dump(2) + "\n";
    throw input_error("bad_value", "unknown output format", {"output.format"});
}

} // namespace morikit
