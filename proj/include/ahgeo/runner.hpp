#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ahgeo/models.hpp"
#include "ahgeo/report.hpp"

namespace ahgeo {

struct RunConfig {
    std::string command;
    std::string model;       // built-in model or embedding name
    std::string input;       // path to a JSON description instead
    std::string report_path; // write the JSON document here
    std::string export_dir = "models";
    bool json_out = false;   // print the JSON document instead of the summary
    SubOptions opt;
};

namespace runner_detail {

using report::ojson;
using report::from;

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string yesno(bool b) { return b ? "yes" : "no"; }

inline const models::ModelSpec* try_model(const std::string& name) {
    for (const models::ModelSpec& s : models::catalog())
        if (s.manifold.name() == name) return &s;
    return nullptr;
}

inline const models::EmbeddingSpec* try_embedding(const std::string& name) {
    for (const models::EmbeddingSpec& s : models::embeddings())
        if (s.embedding.name() == name) return &s;
    return nullptr;
}

inline ChartManifold load_model(const RunConfig& cfg) {
    if (!cfg.input.empty()) return ChartManifold::load_file(cfg.input);
    if (cfg.model.empty()) throw ConfigError("need --model or --input");
    return models::find_model(cfg.model).manifold;
}

inline Embedding load_embedding(const RunConfig& cfg) {
    if (!cfg.input.empty()) return Embedding::load_file(cfg.input);
    if (cfg.model.empty()) throw ConfigError("need --model or --input");
    return models::find_embedding(cfg.model).embedding;
}

// "validate" accepts either kind of input; embeddings are recognized by the
// presence of an ambient block (file) or by their catalog name.
inline bool names_embedding(const RunConfig& cfg) {
    if (!cfg.input.empty()) {
        std::ifstream in(cfg.input);
        if (!in) throw ConfigError("cannot open '" + cfg.input + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("invalid JSON in '" + cfg.input + "': " + e.what());
        }
        return doc.is_object() && doc.contains("ambient");
    }
    return try_embedding(cfg.model) != nullptr;
}

inline ojson envelope(const RunConfig& cfg) {
    ojson doc;
    doc["command"] = cfg.command;
    ojson o;
    o["seed"] = cfg.opt.seed;
    o["points"] = cfg.opt.points;
    o["frames"] = cfg.opt.frames;
    o["pairs"] = cfg.opt.pairs;
    o["tol"] = cfg.opt.tol;
    if (cfg.command == "submanifold") o["gamma_fault"] = cfg.opt.gamma_fault;
    doc["options"] = std::move(o);
    return doc;
}

inline void emit(const RunConfig& cfg, const ojson& doc, const std::string& summary,
                 std::ostream& out) {
    if (cfg.json_out)
        out << doc.dump(2) << "\n";
    else
        out << summary;
    if (!cfg.report_path.empty()) {
        std::ofstream f(cfg.report_path);
        if (!f) throw ConfigError("cannot write '" + cfg.report_path + "'");
        f << doc.dump(2) << "\n";
    }
}

// Collects mismatches between measured results and catalog pins.
struct PinCheck {
    std::vector<std::string> mismatches;

    void flag(const char* what, int pin, bool got) {
        if (pin >= 0 && got != (pin == 1))
            mismatches.push_back(std::string(what) + ": expected " + yesno(pin == 1) +
                                 ", measured " + yesno(got));
    }
    void number(const char* what, double pin, double got, double margin) {
        if (models::pinned(pin) && std::abs(got - pin) > margin)
            mismatches.push_back(std::string(what) + ": expected " + fmt(pin) + ", measured " +
                                 fmt(got));
    }
    void verdict(const char* what, const std::string& pin, const std::string& got) {
        if (!pin.empty() && pin != got)
            mismatches.push_back(std::string(what) + ": expected " + pin + ", measured " + got);
    }
    void require(const char* what, bool ok) {
        if (!ok) mismatches.push_back(what);
    }
};

inline int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    ojson doc = envelope(cfg);
    std::string summary;
    bool ok = false;
    if (names_embedding(cfg)) {
        Embedding e = load_embedding(cfg);
        doc["embedding"] = e.name();
        Rng arng(derive_seed(cfg.opt.seed, tags::kValidate));
        ValidationReport amb = e.ambient().validate(arng, cfg.opt.points);
        Rng mrng(derive_seed(cfg.opt.seed, tags::kValidate, 1));
        double margin = e.immersion_margin(mrng, cfg.opt.points);
        ok = amb.ok() && margin > kRankMargin;
        doc["ambient_validation"] = from(amb);
        doc["immersion_margin"] = margin;
        doc["ok"] = ok;
        summary = "validate " + e.name() + ": " + (ok ? "ok" : "FAILED") +
                  "\n  ambient " + (amb.ok() ? "ok" : "FAILED") + "  immersion margin " +
                  fmt(margin) + "\n";
    } else {
        ChartManifold m = load_model(cfg);
        doc["model"] = m.name();
        Rng rng(derive_seed(cfg.opt.seed, tags::kValidate));
        ValidationReport rep = m.validate(rng, cfg.opt.points);
        ok = rep.ok();
        doc["validation"] = from(rep);
        summary = "validate " + m.name() + ": " + (ok ? "ok" : "FAILED") + "\n  sym_resid " +
                  fmt(rep.sym_resid) + "  min_eig " + fmt(rep.min_eig);
        if (rep.has_j)
            summary += "  j2_resid " + fmt(rep.j2_resid) + "  compat_resid " +
                       fmt(rep.compat_resid);
        summary += "\n";
    }
    emit(cfg, doc, summary, out);
    return ok ? 0 : 1;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    ChartManifold m = load_model(cfg);
    IdentityReport ids = classify_identities(m, cfg.opt);
    StructureReport st = structure_scan(m, cfg.opt);
    ojson doc = envelope(cfg);
    doc["model"] = m.name();
    doc["identities"] = from(ids);
    doc["structure"] = from(st);
    std::string classes;
    if (ids.in_class1) classes += "1";
    if (ids.in_class2) classes += classes.empty() ? "2" : ",2";
    if (ids.in_class3) classes += classes.empty() ? "3" : ",3";
    std::string summary =
        "classify " + m.name() + "\n  identities r1 " + fmt(ids.r1) + "  r2 " + fmt(ids.r2) +
        "  r3 " + fmt(ids.r3) + "  -> classes {" + classes + "}" +
        (ids.chain_ok ? "" : "  CHAIN BROKEN") + "\n  structure  nabla_j " +
        fmt(st.nablaj_max) + (st.kahler ? " (kahler)" : "") + "  nk_resid " + fmt(st.nk_resid) +
        (st.nearly_kahler ? " (nearly kahler)" : "") + "\n";
    emit(cfg, doc, summary, out);
    return ids.chain_ok ? 0 : 1;
}

inline int cmd_constant_type(const RunConfig& cfg, std::ostream& out) {
    ChartManifold m = load_model(cfg);
    TypeConsistencyReport rep = type_consistency_check(m, cfg.opt);
    ojson doc = envelope(cfg);
    doc["model"] = m.name();
    doc["consistency"] = from(rep);
    const TypeReport& t = rep.type;
    std::string summary = "constant-type " + m.name() + "\n  alpha_strict " +
                          fmt(t.alpha_strict) + "  resid " + fmt(t.strict_resid) + " (" +
                          (t.strict_pass ? "pass" : "fail") + ")\n  alpha_weak   " +
                          fmt(t.alpha_weak) + "  resid " + fmt(t.weak_resid) + " (" +
                          (t.weak_pass ? "pass" : "fail") +
                          (t.weak_pointwise ? ", pointwise" : "") + ")\n  verdict " +
                          rep.verdict + "\n";
    emit(cfg, doc, summary, out);
    return rep.verdict == "violation" ? 1 : 0;
}

inline int cmd_spaceform(const RunConfig& cfg, std::ostream& out) {
    ChartManifold m = load_model(cfg);
    SpaceformReport rep = spaceform_fit(m, cfg.opt);
    ojson doc = envelope(cfg);
    doc["model"] = m.name();
    doc["spaceform"] = from(rep);
    std::string summary = "spaceform " + m.name() + ": " + (rep.pass ? "pass" : "no fit") +
                          "\n  alpha " + fmt(rep.alpha) + "  beta " + fmt(rep.beta) +
                          "  resid " + fmt(rep.resid) + "\n  hol_sec " + fmt(rep.hol_sec) +
                          "  antihol_sec " + fmt(rep.antihol_sec) +
                          (rep.degenerate ? "  (degenerate basis)" : "") + "\n";
    emit(cfg, doc, summary, out);
    return 0;
}

inline int cmd_rizza(const RunConfig& cfg, std::ostream& out) {
    ChartManifold m = load_model(cfg);
    RizzaReport rep = rizza_scan(m, cfg.opt);
    ojson doc = envelope(cfg);
    doc["model"] = m.name();
    doc["rizza"] = from(rep);
    std::string summary = "rizza " + m.name() + ": " + rep.verdict + "\n  mu " + fmt(rep.mu) +
                          "  mu_fit " + fmt(rep.mu_fit) + "  hol_spread " +
                          fmt(rep.hol_spread) + "  resid " + fmt(rep.resid) + "\n";
    emit(cfg, doc, summary, out);
    return rep.verdict == "fail" ? 1 : 0;
}

inline std::string sub_summary(const std::string& name, const SubReport& r) {
    std::string s = "submanifold " + name + "\n";
    s += "  immersion margin " + fmt(r.immersion_margin) + "  b_max " + fmt(r.b_max) +
         "  |H| in [" + fmt(r.h_min) + ", " + fmt(r.h_max) + "]\n";
    s += "  umbilical " + yesno(r.umbilical) + " (resid " + fmt(r.umbilical_resid) +
         ")  parallel_h " + yesno(r.parallel_h) + " (resid " + fmt(r.parallel_h_resid) + ")\n";
    s += "  weingarten " + fmt(r.weingarten_resid) + "  codazzi " + fmt(r.codazzi_resid) +
         "  umbilic flux " + fmt(r.umbilic_normal_resid) + " (scale " +
         fmt(r.umbilic_normal_scale) + ")\n";
    s += "  weak resid " + fmt(r.weak_resid) + " (" +
         (r.weak_invariant ? "invariant" : "not invariant") + ")  strong resid " +
         fmt(r.strong_resid) + " (" + (r.strong_invariant ? "invariant" : "not invariant") +
         ")\n";
    if (r.ambient_has_j) {
        s += "  holomorphic " + yesno(r.holomorphic) + "  totally_real " +
             yesno(r.totally_real) + "\n";
        s += "  gates: mu " + std::string(r.mu_gate ? "on" : "off") + " (mu " +
             fmt(r.ambient_mu) + ")  alpha " + (r.alpha_gate ? "on" : "off") + " (alpha " +
             fmt(r.ambient_alpha) + ")\n";
    }
    s += "  verdicts: umbilical_equivalence " + r.umbilical_equivalence + ", obstruction_mu " +
         r.obstruction_mu + ", obstruction_alpha " + r.obstruction_alpha + "\n";
    return s;
}

inline int cmd_submanifold(const RunConfig& cfg, std::ostream& out) {
    Embedding e = load_embedding(cfg);
    SubReport rep = submanifold_scan(e, cfg.opt);
    ojson doc = envelope(cfg);
    doc["embedding"] = e.name();
    doc["submanifold"] = from(rep);
    emit(cfg, doc, sub_summary(e.name(), rep), out);
    bool violation = rep.umbilical_equivalence == "violation" ||
                     rep.obstruction_mu == "violation" || rep.obstruction_alpha == "violation";
    return violation ? 1 : 0;
}

inline PinCheck check_model_pins(const models::ModelSpec& spec, const ValidationReport& val,
                                 const SymmetryReport& sym, const SectionalReport& sec,
                                 const StructureReport* st, const TypeConsistencyReport* cons,
                                 const SpaceformReport* sf, const RizzaReport* rz) {
    PinCheck pc;
    pc.require("validation failed", val.ok());
    pc.require("curvature symmetries failed", sym.ok);
    if (st) {
        pc.flag("kahler", spec.kahler, st->kahler);
        pc.flag("nearly_kahler", spec.nearly_kahler, st->nearly_kahler);
    }
    if (cons) {
        pc.require("class chain broken", cons->ids.chain_ok);
        pc.flag("class1", spec.class1, cons->ids.in_class1);
        pc.flag("class2", spec.class2, cons->ids.in_class2);
        pc.flag("class3", spec.class3, cons->ids.in_class3);
        pc.flag("strict_type", spec.strict_type, cons->type.strict_pass);
        pc.flag("weak_type", spec.weak_type, cons->type.weak_pass);
        pc.number("alpha_weak", spec.alpha_weak, cons->type.alpha_weak, 1e-4);
        pc.require("type consistency violated", cons->verdict != "violation");
    }
    if (sf) {
        pc.flag("spaceform", spec.spaceform, sf->pass);
        if (sf->pass) pc.number("hol_sec", spec.hol_sec, sf->hol_sec, 1e-4);
    }
    if (rz) pc.verdict("rizza", spec.rizza, rz->verdict);
    if (models::pinned(spec.sectional)) {
        pc.number("sectional", spec.sectional, sec.mean_k, 1e-5);
        pc.require("sectional curvature not constant", sec.spread < 1e-5);
    }
    return pc;
}

inline PinCheck check_embedding_pins(const models::EmbeddingSpec& spec, const SubReport& r) {
    PinCheck pc;
    pc.require("immersion margin too small", r.immersion_margin > kRankMargin);
    pc.flag("holomorphic", spec.holomorphic, r.holomorphic);
    pc.flag("totally_real", spec.totally_real, r.totally_real);
    pc.flag("umbilical", spec.umbilical, r.umbilical);
    pc.flag("parallel_h", spec.parallel_h, r.parallel_h);
    pc.flag("weak_invariant", spec.weak_invariant, r.weak_invariant);
    pc.flag("strong_invariant", spec.strong_invariant, r.strong_invariant);
    if (models::pinned(spec.h_norm)) {
        pc.number("h_min", spec.h_norm, r.h_min, 1e-6);
        pc.number("h_max", spec.h_norm, r.h_max, 1e-6);
    }
    pc.verdict("umbilical_equivalence", spec.thm_umbilical, r.umbilical_equivalence);
    pc.verdict("obstruction_mu", spec.thm_mu, r.obstruction_mu);
    pc.verdict("obstruction_alpha", spec.thm_alpha, r.obstruction_alpha);
    pc.require("umbilical equivalence violated", r.umbilical_equivalence != "violation");
    pc.require("mu obstruction violated", r.obstruction_mu != "violation");
    pc.require("alpha obstruction violated", r.obstruction_alpha != "violation");
    return pc;
}

inline int cmd_all(const RunConfig& cfg, std::ostream& out) {
    ojson doc = envelope(cfg);
    std::string summary = "all catalog (seed " + std::to_string(cfg.opt.seed) + ", " +
                          std::to_string(cfg.opt.points) + " points)\n";
    int total = 0;
    auto line = [&](const std::string& kind, const std::string& name, const PinCheck& pc) {
        summary += "  " + kind + " " + name;
        for (std::size_t i = name.size() + kind.size(); i < 24; ++i) summary += ' ';
        if (pc.mismatches.empty()) {
            summary += " ok\n";
        } else {
            summary += " MISMATCH:";
            for (const std::string& m : pc.mismatches) summary += " [" + m + "]";
            summary += "\n";
        }
        total += static_cast<int>(pc.mismatches.size());
    };

    ojson model_docs = ojson::array();
    for (const models::ModelSpec& spec : models::catalog()) {
        const ChartManifold& m = spec.manifold;
        ojson entry;
        entry["name"] = m.name();
        Rng vrng(derive_seed(cfg.opt.seed, tags::kValidate));
        ValidationReport val = m.validate(vrng, std::min(cfg.opt.points, 32));
        SymmetryReport sym = symmetry_scan(m, cfg.opt);
        SectionalReport sec = sectional_scan(m, cfg.opt);
        entry["validation"] = from(val);
        entry["symmetries"] = from(sym);
        entry["sectional"] = from(sec);
        PinCheck pc;
        if (m.has_j()) {
            StructureReport st = structure_scan(m, cfg.opt);
            TypeConsistencyReport cons = type_consistency_check(m, cfg.opt);
            SpaceformReport sf = spaceform_fit(m, cfg.opt);
            RizzaReport rz = rizza_scan(m, cfg.opt);
            entry["structure"] = from(st);
            entry["consistency"] = from(cons);
            entry["spaceform"] = from(sf);
            entry["rizza"] = from(rz);
            pc = check_model_pins(spec, val, sym, sec, &st, &cons, &sf, &rz);
        } else {
            pc = check_model_pins(spec, val, sym, sec, nullptr, nullptr, nullptr, nullptr);
        }
        entry["mismatches"] = pc.mismatches;
        model_docs.push_back(std::move(entry));
        line("model    ", m.name(), pc);
    }
    doc["models"] = std::move(model_docs);

    ojson emb_docs = ojson::array();
    for (const models::EmbeddingSpec& spec : models::embeddings()) {
        ojson entry;
        entry["name"] = spec.embedding.name();
        SubReport rep = submanifold_scan(spec.embedding, cfg.opt);
        entry["submanifold"] = from(rep);
        PinCheck pc = check_embedding_pins(spec, rep);
        entry["mismatches"] = pc.mismatches;
        emb_docs.push_back(std::move(entry));
        line("embedding", spec.embedding.name(), pc);
    }
    doc["embeddings"] = std::move(emb_docs);
    doc["pin_mismatches"] = total;

    summary += "all: " + std::to_string(models::catalog().size()) + " models, " +
               std::to_string(models::embeddings().size()) + " embeddings, " +
               std::to_string(total) + " pin mismatches\n";
    emit(cfg, doc, summary, out);
    return total == 0 ? 0 : 1;
}

inline int cmd_list_models(const RunConfig& cfg, std::ostream& out) {
    ojson doc = envelope(cfg);
    ojson ms = ojson::array(), es = ojson::array();
    std::string summary = "built-in models:\n";
    for (const models::ModelSpec& s : models::catalog()) {
        summary += "  " + s.manifold.name();
        for (std::size_t i = s.manifold.name().size(); i < 14; ++i) summary += ' ';
        summary += " dim " + std::to_string(s.manifold.dim()) +
                   (s.manifold.has_j() ? " J " : "   ") + " " + s.blurb + "\n";
        ojson e;
        e["name"] = s.manifold.name();
        e["dim"] = s.manifold.dim();
        e["has_j"] = s.manifold.has_j();
        e["blurb"] = s.blurb;
        ms.push_back(std::move(e));
    }
    summary += "built-in embeddings:\n";
    for (const models::EmbeddingSpec& s : models::embeddings()) {
        summary += "  " + s.embedding.name();
        for (std::size_t i = s.embedding.name().size(); i < 14; ++i) summary += ' ';
        summary += " " + std::to_string(s.embedding.subdim()) + " -> " +
                   std::to_string(s.embedding.ambient().dim()) + "  " + s.blurb + "\n";
        ojson e;
        e["name"] = s.embedding.name();
        e["subdim"] = s.embedding.subdim();
        e["ambient"] = s.embedding.ambient().name();
        e["blurb"] = s.blurb;
        es.push_back(std::move(e));
    }
    doc["models"] = std::move(ms);
    doc["embeddings"] = std::move(es);
    emit(cfg, doc, summary, out);
    return 0;
}

inline int cmd_export_models(const RunConfig& cfg, std::ostream& out) {
    models::export_all(cfg.export_dir);
    std::size_t n = models::catalog().size() + models::embeddings().size();
    out << "wrote " << n << " files to " << cfg.export_dir << "\n";
    return 0;
}

} // namespace runner_detail

// Dispatches a parsed configuration. Returns the process exit code: 0 when
// every check came out clean, 1 when a verdict failed or a catalog pin did
// not match, 2 for configuration or evaluation errors.
inline int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    using namespace runner_detail;
    try {
        if (cfg.command == "validate") return cmd_validate(cfg, out);
        if (cfg.command == "classify") return cmd_classify(cfg, out);
        if (cfg.command == "constant-type") return cmd_constant_type(cfg, out);
        if (cfg.command == "spaceform") return cmd_spaceform(cfg, out);
        if (cfg.command == "rizza") return cmd_rizza(cfg, out);
        if (cfg.command == "submanifold") return cmd_submanifold(cfg, out);
        if (cfg.command == "all") return cmd_all(cfg, out);
        if (cfg.command == "list-models") return cmd_list_models(cfg, out);
        if (cfg.command == "export-models") return cmd_export_models(cfg, out);
        throw ConfigError("unknown command '" + cfg.command + "'");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ahgeo
