#pragma once

#include <json.hpp>

#include "ahgeo/classify.hpp"
#include "ahgeo/manifold.hpp"
#include "ahgeo/submanifold.hpp"

namespace ahgeo::report {

// Insertion-ordered documents keep report files byte-stable run to run: key
// order is fixed here, doubles serialize as shortest round-trip, and nothing
// time- or path-dependent is ever written.
using ojson = nlohmann::ordered_json;

inline ojson from(const ValidationReport& r) {
    ojson doc;
    doc["points"] = r.points;
    doc["has_j"] = r.has_j;
    doc["sym_resid"] = r.sym_resid;
    doc["min_eig"] = r.min_eig;
    doc["symmetric"] = r.symmetric;
    doc["positive"] = r.positive;
    if (r.has_j) {
        doc["j2_resid"] = r.j2_resid;
        doc["compat_resid"] = r.compat_resid;
        doc["almost_complex"] = r.almost_complex;
        doc["compatible"] = r.compatible;
    }
    doc["ok"] = r.ok();
    return doc;
}

inline ojson from(const SymmetryReport& r) {
    ojson doc;
    doc["anti_xy"] = r.anti_xy;
    doc["anti_zw"] = r.anti_zw;
    doc["pair_sym"] = r.pair_sym;
    doc["bianchi"] = r.bianchi;
    doc["ok"] = r.ok;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const IdentityReport& r) {
    ojson doc;
    doc["r1"] = r.r1;
    doc["r2"] = r.r2;
    doc["r3"] = r.r3;
    doc["in_class1"] = r.in_class1;
    doc["in_class2"] = r.in_class2;
    doc["in_class3"] = r.in_class3;
    doc["chain_ok"] = r.chain_ok;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const StructureReport& r) {
    ojson doc;
    doc["nablaj_max"] = r.nablaj_max;
    doc["nk_resid"] = r.nk_resid;
    doc["kahler"] = r.kahler;
    doc["nearly_kahler"] = r.nearly_kahler;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const TypeReport& r) {
    ojson doc;
    doc["alpha_strict"] = r.alpha_strict;
    doc["alpha_weak"] = r.alpha_weak;
    doc["strict_resid"] = r.strict_resid;
    doc["weak_resid"] = r.weak_resid;
    doc["strict_spread"] = r.strict_spread;
    doc["weak_spread"] = r.weak_spread;
    doc["eq_j_sym_resid"] = r.eq_j_sym_resid;
    doc["strict_pass"] = r.strict_pass;
    doc["weak_pass"] = r.weak_pass;
    doc["weak_pointwise"] = r.weak_pointwise;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const TypeConsistencyReport& r) {
    ojson doc;
    doc["type"] = from(r.type);
    doc["identities"] = from(r.ids);
    doc["precondition"] = r.precondition;
    doc["verdict"] = r.verdict;
    return doc;
}

inline ojson from(const SpaceformReport& r) {
    ojson doc;
    doc["alpha"] = r.alpha;
    doc["beta"] = r.beta;
    doc["resid"] = r.resid;
    doc["degenerate"] = r.degenerate;
    doc["pass"] = r.pass;
    doc["hol_sec"] = r.hol_sec;
    doc["antihol_sec"] = r.antihol_sec;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const SectionalReport& r) {
    ojson doc;
    doc["min_k"] = r.min_k;
    doc["max_k"] = r.max_k;
    doc["mean_k"] = r.mean_k;
    doc["spread"] = r.spread;
    doc["planes"] = r.planes;
    return doc;
}

inline ojson from(const RizzaReport& r) {
    ojson doc;
    doc["mu"] = r.mu;
    doc["mu_fit"] = r.mu_fit;
    doc["mu_spread"] = r.mu_spread;
    doc["hol_spread"] = r.hol_spread;
    doc["resid"] = r.resid;
    doc["gated"] = r.gated;
    doc["pass"] = r.pass;
    doc["verdict"] = r.verdict;
    doc["tol"] = r.tol;
    doc["samples"] = r.samples;
    return doc;
}

inline ojson from(const SubReport& r) {
    ojson doc;
    doc["points"] = r.points;
    doc["immersion_margin"] = r.immersion_margin;
    doc["b_max"] = r.b_max;
    doc["h_min"] = r.h_min;
    doc["h_max"] = r.h_max;
    doc["umbilical_resid"] = r.umbilical_resid;
    doc["parallel_h_resid"] = r.parallel_h_resid;
    doc["weingarten_resid"] = r.weingarten_resid;
    doc["codazzi_resid"] = r.codazzi_resid;
    doc["umbilic_normal_resid"] = r.umbilic_normal_resid;
    doc["umbilic_normal_scale"] = r.umbilic_normal_scale;
    doc["umbilical"] = r.umbilical;
    doc["parallel_h"] = r.parallel_h;
    doc["weak_resid"] = r.weak_resid;
    doc["strong_resid"] = r.strong_resid;
    doc["weak_invariant"] = r.weak_invariant;
    doc["strong_invariant"] = r.strong_invariant;
    doc["ambient_has_j"] = r.ambient_has_j;
    if (r.ambient_has_j) {
        doc["holo_resid"] = r.holo_resid;
        doc["totally_real_resid"] = r.totally_real_resid;
        doc["holomorphic"] = r.holomorphic;
        doc["totally_real"] = r.totally_real;
        doc["ambient_mu"] = r.ambient_mu;
        doc["ambient_mu_plane_spread"] = r.ambient_mu_plane_spread;
        doc["ambient_mu_point_spread"] = r.ambient_mu_point_spread;
        doc["ambient_alpha"] = r.ambient_alpha;
        doc["ambient_alpha_resid"] = r.ambient_alpha_resid;
        doc["ambient_alpha_spread"] = r.ambient_alpha_spread;
        doc["mu_gate"] = r.mu_gate;
        doc["alpha_gate"] = r.alpha_gate;
        doc["mixed_type_resid"] = r.mixed_type_resid;
    }
    doc["umbilical_equivalence"] = r.umbilical_equivalence;
    doc["obstruction_mu"] = r.obstruction_mu;
    doc["obstruction_alpha"] = r.obstruction_alpha;
    doc["tol"] = r.tol;
    return doc;
}

} // namespace ahgeo::report
