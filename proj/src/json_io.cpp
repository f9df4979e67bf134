#include "githeight/json_io.hpp"

#include <fstream>
#include <sstream>

#include "githeight/errors.hpp"

namespace githeight {

namespace {

void reject_unknown(const Json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) { ok = true; break; }
        if (!ok) throw ParseError(where + "." + key, "unknown field");
    }
}

} // namespace

ConfigFile parse_config_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("document", e.what());
    }
    if (!j.is_object()) throw ParseError("document", "expected a JSON object");
    reject_unknown(j, {"ambient", "points", "options"}, "document");
    if (!j.contains("ambient") || !j["ambient"].is_number_integer())
        throw ParseError("ambient", "expected an integer");
    const int ambient = j["ambient"].get<int>();
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw ParseError("points", "expected a nonempty array");

    std::vector<std::pair<RatVec, Rat>> raw;
    int pi = 0;
    for (const auto& pt : j["points"]) {
        const std::string where = "points[" + std::to_string(pi) + "]";
        if (!pt.is_object()) throw ParseError(where, "expected an object");
        reject_unknown(pt, {"vector", "multiplicity"}, where);
        if (!pt.contains("vector") || !pt["vector"].is_array())
            throw ParseError(where + ".vector", "expected an array of rational strings");
        RatVec v;
        int vi = 0;
        for (const auto& entry : pt["vector"]) {
            const std::string field = where + ".vector[" + std::to_string(vi) + "]";
            if (entry.is_number_integer()) {
                v.push_back(Rat(entry.get<long>()));
            } else if (entry.is_string()) {
                v.push_back(parse_rational(entry.get<std::string>(), field));
            } else {
                throw ParseError(field, "expected a rational string");
            }
            ++vi;
        }
        Rat mult(1);
        if (pt.contains("multiplicity")) {
            const std::string field = where + ".multiplicity";
            if (pt["multiplicity"].is_number_integer()) {
                mult = Rat(pt["multiplicity"].get<long>());
            } else if (pt["multiplicity"].is_string()) {
                mult = parse_rational(pt["multiplicity"].get<std::string>(), field);
            } else {
                throw ParseError(field, "expected a rational string");
            }
        }
        raw.emplace_back(std::move(v), mult);
        ++pi;
    }

    ConfigFile out{Configuration::make(ambient, raw), HeightOptions{}};
    if (j.contains("options")) {
        const Json& o = j["options"];
        if (!o.is_object()) throw ParseError("options", "expected an object");
        reject_unknown(o, {"mc_samples", "seed", "tol", "search_depth", "section"}, "options");
        if (o.contains("mc_samples")) out.options.mc_samples = o["mc_samples"].get<long>();
        if (o.contains("seed")) out.options.seed = o["seed"].get<unsigned long long>();
        if (o.contains("tol")) out.options.tol = o["tol"].get<double>();
        if (o.contains("search_depth")) out.options.search_depth = o["search_depth"].get<int>();
    }
    return out;
}

ConfigFile load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_file(ss.str());
}

Json config_to_json(const Configuration& config) {
    Json j;
    j["ambient"] = config.ambient();
    j["points"] = Json::array();
    for (const auto& p : config.points()) {
        Json pt;
        pt["vector"] = Json::array();
        for (const auto& x : p.vec) pt["vector"].push_back(rat_string(x));
        pt["multiplicity"] = rat_string(p.mult);
        j["points"].push_back(std::move(pt));
    }
    return j;
}

Json verdict_to_json(const StabilityVerdict& verdict) {
    Json j;
    j["status"] = to_string(verdict.status);
    if (verdict.witness) {
        Json w;
        w["dim"] = verdict.witness->dim;
        w["mass"] = rat_string(verdict.witness->mass);
        w["basis"] = Json::array();
        for (const auto& row : verdict.witness->basis) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(rat_string(x));
            w["basis"].push_back(std::move(r));
        }
        j["witness"] = std::move(w);
    }
    return j;
}

Json decomposition_to_json(const BasisDecomposition& dec) {
    Json j;
    j["dictionary"] = Json::array();
    for (const auto& v : dec.dictionary) {
        Json r = Json::array();
        for (const auto& x : v) r.push_back(rat_string(x));
        j["dictionary"].push_back(std::move(r));
    }
    j["terms"] = Json::array();
    for (const auto& t : dec.terms) {
        Json term;
        term["coefficient"] = rat_string(t.coeff);
        term["basis"] = t.basis;
        j["terms"].push_back(std::move(term));
    }
    return j;
}

Json height_to_json(const HeightEstimate& est) {
    Json j;
    j["config_digest"] = est.config_digest;
    j["total"] = {{"lower", est.lower}, {"upper", est.upper}};
    j["places"] = Json::array();
    for (const auto& pl : est.places) {
        Json p;
        p["place"] = pl.place_name();
        p["lower"] = pl.lower;
        p["upper"] = pl.upper;
        p["certificate"] = to_string(pl.certificate);
        if (pl.certificate == LocalHeightInterval::Certificate::SearchDepth)
            p["search_depth"] = pl.search_depth;
        if (!pl.note.empty()) p["note"] = pl.note;
        j["places"].push_back(std::move(p));
    }
    j["section"] = est.section_note;
    j["options"] = {{"mc_samples", est.options.mc_samples},
                    {"seed", est.options.seed},
                    {"tol", est.options.tol},
                    {"search_depth", est.options.search_depth}};
    return j;
}

Json dual_constant_to_json(const DualConstant& dc) {
    Json j;
    j["N"] = dc.N;
    j["closed_form"] = rat_string(dc.closed_form);
    j["closed_form_value"] = to_double(dc.closed_form);
    j["mc"] = {{"mean", dc.mc_check.mean},
               {"stderr", dc.mc_check.stderr_},
               {"samples", dc.mc_check.samples},
               {"seed", dc.mc_check.seed},
               {"resampled", dc.mc_check.resampled}};
    return j;
}

Json suite_to_json(const SuiteReport& rep) {
    Json j;
    j["all_pass"] = rep.all_pass();
    j["counts"] = {{"stable", rep.stable},
                   {"strictly_semistable", rep.strictly_semistable},
                   {"unstable", rep.unstable}};
    j["checks"] = Json::array();
    for (const auto& c : rep.checks) {
        Json e;
        e["name"] = c.name;
        e["checked"] = c.checked;
        e["failed"] = c.failed;
        e["pass"] = c.pass();
        if (!c.counterexamples.empty()) e["counterexamples"] = c.counterexamples;
        j["checks"].push_back(std::move(e));
    }
    return j;
}

Json subadditivity_to_json(const SubadditivityReport& rep) {
    Json j;
    j["pass"] = rep.pass;
    j["interval_ok"] = rep.interval_ok;
    j["pointwise_ok"] = rep.pointwise_ok;
    j["weighted_sum_upper"] = rep.weighted_sum_upper;
    j["weighted_parts_lower"] = rep.weighted_parts_lower;
    j["pointwise_gap"] = rep.pointwise_gap;
    return j;
}

} // namespace githeight
