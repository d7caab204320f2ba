#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "ahgeo/manifold.hpp"

namespace ahgeo::models {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
inline bool pinned(double v) { return !std::isnan(v); }

// Built-in chart with the verdicts the analysis pipeline is expected to
// reproduce. Tri-state pins: -1 unchecked, 0 expected false, 1 expected true.
// Numeric pins are NaN when the quantity is not constant for the model.
struct ModelSpec {
    ChartManifold manifold;
    std::string blurb;
    int kahler = -1, nearly_kahler = -1;
    int class1 = -1, class2 = -1, class3 = -1;
    int strict_type = -1, weak_type = -1;
    int spaceform = -1;
    double alpha_weak = kUnset; // weak type constant
    double hol_sec = kUnset;    // holomorphic sectional curvature from the fit
    double sectional = kUnset;  // constant sectional curvature
    std::string rizza;          // expected verdict, empty = unchecked
};

struct EmbeddingSpec {
    Embedding embedding;
    std::string blurb;
    int holomorphic = -1, totally_real = -1;
    int umbilical = -1, parallel_h = -1;
    int weak_invariant = -1, strong_invariant = -1;
    double h_norm = kUnset;     // |H| when constant over the patch
    std::string thm_umbilical;  // expected verdict, empty = unchecked
    std::string thm_mu, thm_alpha;
};

namespace detail {

using Rows = std::vector<std::vector<std::string>>;

inline Rows flat_metric(int dim) {
    Rows g(dim, std::vector<std::string>(dim, "0"));
    for (int i = 0; i < dim; ++i) g[i][i] = "1";
    return g;
}

inline Rows diag_metric(std::vector<std::string> entries) {
    const int dim = static_cast<int>(entries.size());
    Rows g(dim, std::vector<std::string>(dim, "0"));
    for (int i = 0; i < dim; ++i) g[i][i] = std::move(entries[i]);
    return g;
}

// Block-diagonal standard complex structure: J maps e_{2k} to e_{2k+1}.
inline Rows std_j(int dim) {
    Rows j(dim, std::vector<std::string>(dim, "0"));
    for (int k = 0; k + 1 < dim; k += 2) {
        j[k + 1][k] = "1";
        j[k][k + 1] = "-1";
    }
    return j;
}

inline std::vector<std::array<double, 2>> box(double lo, double hi, int dim) {
    return std::vector<std::array<double, 2>>(dim, {lo, hi});
}

// Real form of the two-complex-dimensional constant holomorphic curvature
// metric in an affine chart, (x1,x2,x3,x4) = (Re z1, Im z1, Re z2, Im z2).
// compact=true is the positively curved model, compact=false the ball model.
inline Rows fubini_block(bool compact) {
    const char* s = compact ? "+" : "-";
    auto sq = [&](const char* a, const char* b) {
        return std::string("(1 ") + s + " " + a + "^2 " + s + " " + b + "^2)";
    };
    std::string rho = std::string("(1 ") + s + " x1^2 " + s + " x2^2 " + s + " x3^2 " + s +
                      " x4^2)";
    std::string q = " / " + rho + "^2";
    std::string n12 = sq("x3", "x4") + q;
    std::string n34 = sq("x1", "x2") + q;
    const char* cross = compact ? "-" : "";
    const char* anti = compact ? "" : "-";
    std::string a = std::string(cross) + "(x1*x3 + x2*x4)" + q;
    std::string b = std::string(cross) + "(x1*x4 - x2*x3)" + q;
    std::string c = std::string(anti) + "(x1*x4 - x2*x3)" + q;
    return {{n12, "0", a, b}, {"0", n12, c, a}, {a, c, n34, "0"}, {b, a, "0", n34}};
}

inline Rows round_sphere6_metric() {
    std::string rr = "(x1^2 + x2^2 + x3^2 + x4^2 + x5^2 + x6^2)";
    Rows g(6, std::vector<std::string>(6));
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            std::string t =
                "x" + std::to_string(i) + "*x" + std::to_string(j) + "/(1 - " + rr + ")";
            g[i - 1][j - 1] = i == j ? "1 + " + t : t;
        }
    return g;
}

// Almost complex structure of the round six-sphere from the seven-dimensional
// cross product: J(v) = P x v for the chart point P = (x, h), h = sqrt(1-r^2).
// The multiplication table is generated from the seven defining triples.
inline Rows round_sphere6_j() {
    int eps[8][8][8] = {};
    const int tri[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                           {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
    for (const auto& t : tri) {
        int a = t[0], b = t[1], c = t[2];
        eps[a][b][c] = eps[b][c][a] = eps[c][a][b] = 1;
        eps[a][c][b] = eps[c][b][a] = eps[b][a][c] = -1;
    }
    std::string h = "sqrt(1 - x1^2 - x2^2 - x3^2 - x4^2 - x5^2 - x6^2)";
    Rows jm(6, std::vector<std::string>(6));
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j) {
            std::string s;
            auto add = [&](int sign, const std::string& term) {
                if (sign == 0) return;
                if (s.empty())
                    s = (sign > 0 ? "" : "-") + term;
                else
                    s += (sign > 0 ? " + " : " - ") + term;
            };
            for (int a = 1; a <= 6; ++a) add(eps[a][j][i], "x" + std::to_string(a));
            add(eps[7][j][i], h);
            for (int a = 1; a <= 6; ++a)
                add(-eps[a][7][i], "x" + std::to_string(j) + "*x" + std::to_string(a) + "/" + h);
            jm[i - 1][j - 1] = s.empty() ? "0" : s;
        }
    return jm;
}

} // namespace detail

inline const std::vector<ModelSpec>& catalog() {
    static const std::vector<ModelSpec> entries = [] {
        using namespace detail;
        std::vector<ModelSpec> v;

        auto flat_complex = [&](const std::string& name, int dim, const std::string& blurb) {
            ModelSpec s;
            auto j = std_j(dim);
            s.manifold = ChartManifold::make(name, dim, box(-1.0, 1.0, dim), flat_metric(dim), &j);
            s.blurb = blurb;
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 1;
            s.hol_sec = 0.0;
            s.sectional = 0.0;
            s.rizza = "pass";
            return s;
        };
        v.push_back(flat_complex("flat-c1", 2, "flat complex line"));
        v.push_back(flat_complex("flat-c2", 4, "flat complex plane"));
        v.push_back(flat_complex("flat-c3", 6, "flat complex 3-space"));

        {
            ModelSpec s;
            Rows g = {{"1/(1 + x1^2 + x2^2)^2", "0"}, {"0", "1/(1 + x1^2 + x2^2)^2"}};
            auto j = std_j(2);
            s.manifold = ChartManifold::make("cp1", 2, box(-0.4, 0.4, 2), g, &j);
            s.blurb = "complex projective line, curvature 4";
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 1;
            s.hol_sec = 4.0;
            s.sectional = 4.0;
            s.rizza = "pass";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            auto j = std_j(4);
            s.manifold = ChartManifold::make("cp2", 4, box(-0.4, 0.4, 4), fubini_block(true), &j);
            s.blurb = "complex projective plane, holomorphic curvature 4";
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 1;
            s.hol_sec = 4.0;
            s.rizza = "pass";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            auto j = std_j(4);
            s.manifold =
                ChartManifold::make("ch2", 4, box(-0.35, 0.35, 4), fubini_block(false), &j);
            s.blurb = "complex hyperbolic plane, holomorphic curvature -4";
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 1;
            s.hol_sec = -4.0;
            s.rizza = "pass";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            auto g = round_sphere6_metric();
            auto j = round_sphere6_j();
            s.manifold = ChartManifold::make("s6-nk", 6, box(-0.35, 0.35, 6), g, &j);
            s.blurb = "round six-sphere with the cross product structure";
            s.kahler = 0;
            s.nearly_kahler = 1;
            s.class1 = 0;
            s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 1.0;
            s.spaceform = 1;
            s.hol_sec = 1.0;
            s.sectional = 1.0;
            s.rizza = "pass";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g = diag_metric({"1", "sin(x1)^2", "0.25", "0.25*sin(x3)^2"});
            Rows j(4, std::vector<std::string>(4, "0"));
            j[0][1] = "-sin(x1)";
            j[1][0] = "1/sin(x1)";
            j[2][3] = "-sin(x3)";
            j[3][2] = "1/sin(x3)";
            std::vector<std::array<double, 2>> dom = {{0.4, 2.7}, {0.0, 3.0}, {0.4, 2.7}, {0.0, 3.0}};
            s.manifold = ChartManifold::make("s2xs2", 4, dom, g, &j);
            s.blurb = "product of spheres of radius 1 and 1/2";
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 0;
            s.rizza = "inconclusive";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g = diag_metric({"1", "sin(x1)^2"});
            std::vector<std::array<double, 2>> dom = {{0.4, 2.7}, {0.0, 3.0}};
            s.manifold = ChartManifold::make("s2-round", 2, dom, g, nullptr);
            s.blurb = "round unit two-sphere (no complex structure)";
            s.sectional = 1.0;
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g = diag_metric({"1", "sin(x1)^2", "sin(x1)^2*sin(x2)^2"});
            std::vector<std::array<double, 2>> dom = {{0.4, 2.7}, {0.4, 2.7}, {0.0, 3.0}};
            s.manifold = ChartManifold::make("s3-round", 3, dom, g, nullptr);
            s.blurb = "round unit three-sphere";
            s.sectional = 1.0;
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            s.manifold = ChartManifold::make("flat-r3", 3, box(-2.0, 2.0, 3), flat_metric(3));
            s.blurb = "flat euclidean three-space";
            s.sectional = 0.0;
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g = diag_metric({"1/x2^2", "1/x2^2"});
            auto j = std_j(2);
            std::vector<std::array<double, 2>> dom = {{-2.0, 2.0}, {0.5, 2.0}};
            s.manifold = ChartManifold::make("poincare", 2, dom, g, &j);
            s.blurb = "hyperbolic upper half-plane";
            s.kahler = s.nearly_kahler = 1;
            s.class1 = s.class2 = s.class3 = 1;
            s.strict_type = s.weak_type = 1;
            s.alpha_weak = 0.0;
            s.spaceform = 1;
            s.hol_sec = -1.0;
            s.sectional = -1.0;
            s.rizza = "pass";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g(4, std::vector<std::string>(4));
            std::string d12 = "1 + 0.1*(sin(x1 + x3) + 0.5*cos(x2))";
            std::string d34 = "1 + 0.1*(x1*x4 + sin(x2)*sin(x4))";
            std::string c13 = "0.1*(0.25*(x1^2 - x2) + 0.5*cos(x1)*x3)";
            std::string c14 = "0.1*(0.3*x2*x3 - 0.3*cos(x4))";
            g = {{d12, "0", c13, c14},
                 {"0", d12, "-(" + c14 + ")", c13},
                 {c13, "-(" + c14 + ")", d34, "0"},
                 {c14, c13, "0", d34}};
            auto j = std_j(4);
            s.manifold = ChartManifold::make("perturbed-r4", 4, box(-1.0, 1.0, 4), g, &j);
            s.blurb = "generic compatible perturbation of the flat metric";
            s.kahler = s.nearly_kahler = 0;
            s.class1 = s.class2 = s.class3 = 0;
            s.strict_type = s.weak_type = 0;
            s.spaceform = 0;
            s.rizza = "inconclusive";
            v.push_back(std::move(s));
        }
        {
            ModelSpec s;
            Rows g = diag_metric(
                {"exp(0.2*x1)", "exp(0.2*x1)", "exp(0.2*x1)", "exp(0.2*x1)"});
            auto j = std_j(4);
            s.manifold = ChartManifold::make("conf-r4", 4, box(-1.0, 1.0, 4), g, &j);
            s.blurb = "conformally flat metric with the standard structure";
            s.kahler = 0;
            s.nearly_kahler = 0;
            s.spaceform = 0;
            v.push_back(std::move(s));
        }
        return v;
    }();
    return entries;
}

inline const ModelSpec& find_model(const std::string& name) {
    for (const ModelSpec& s : catalog())
        if (s.manifold.name() == name) return s;
    std::string names;
    for (const ModelSpec& s : catalog()) names += (names.empty() ? "" : ", ") + s.manifold.name();
    throw ConfigError("unknown model '" + name + "' (available: " + names + ")");
}

inline const std::vector<EmbeddingSpec>& embeddings() {
    static const std::vector<EmbeddingSpec> entries = [] {
        using namespace detail;
        std::vector<EmbeddingSpec> v;

        {
            EmbeddingSpec e;
            e.embedding = Embedding::make("cp1-in-cp2", find_model("cp2").manifold, 2,
                                          box(-0.4, 0.4, 2), {"x1", "x2", "0", "0"});
            e.blurb = "linear projective line inside the projective plane";
            e.holomorphic = 1;
            e.totally_real = 0;
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 0;
            e.h_norm = 0.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "consistent";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            e.embedding = Embedding::make("c1-in-c2", find_model("flat-c2").manifold, 2,
                                          box(-1.0, 1.0, 2), {"x1", "x2", "0", "0"});
            e.blurb = "flat complex line inside the flat complex plane";
            e.holomorphic = 1;
            e.totally_real = 0;
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 1;
            e.h_norm = 0.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            e.embedding = Embedding::make("r2-in-c2", find_model("flat-c2").manifold, 2,
                                          box(-1.0, 1.0, 2), {"x1", "0", "x2", "0"});
            e.blurb = "totally real plane inside the flat complex plane";
            e.holomorphic = 0;
            e.totally_real = 1;
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 1;
            e.h_norm = 0.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            std::vector<std::array<double, 2>> dom = {{0.4, 2.7}, {0.0, 3.0}};
            e.embedding = Embedding::make(
                "s2-in-r3", find_model("flat-r3").manifold, 2, dom,
                {"1.5*sin(x1)*cos(x2)", "1.5*sin(x1)*sin(x2)", "1.5*cos(x1)"});
            e.blurb = "sphere of radius 3/2 in flat three-space";
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 1;
            e.h_norm = 2.0 / 3.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            std::vector<std::array<double, 2>> dom = {{0.4, 2.7}, {0.0, 3.0}};
            e.embedding = Embedding::make(
                "s2-in-conf-r4", find_model("conf-r4").manifold, 2, dom,
                {"sin(x1)*cos(x2)", "sin(x1)*sin(x2)", "cos(x1)", "0"});
            e.blurb = "unit sphere in a curved conformally flat space";
            e.holomorphic = 0;
            e.umbilical = 1;
            e.parallel_h = 0;
            e.weak_invariant = 0;
            e.strong_invariant = 0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            e.embedding = Embedding::make("graph-in-r3", find_model("flat-r3").manifold, 2,
                                          box(-0.7, 0.7, 2), {"x1", "x2", "x1^2 + 2*x2^2"});
            e.blurb = "non-umbilical paraboloid graph in flat three-space";
            e.umbilical = 0;
            e.parallel_h = 0;
            e.weak_invariant = 1;
            e.strong_invariant = 1;
            e.thm_umbilical = "inconclusive";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            e.embedding = Embedding::make("s2-in-s6", find_model("s6-nk").manifold, 2,
                                          box(-0.3, 0.3, 2), {"x1", "0", "0", "0", "0", "x2"});
            e.blurb = "great two-sphere spanning a multiplication triple";
            e.holomorphic = 1;
            e.totally_real = 0;
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 0;
            e.h_norm = 0.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "consistent";
            e.thm_alpha = "consistent";
            v.push_back(std::move(e));
        }
        {
            EmbeddingSpec e;
            std::vector<std::array<double, 2>> dom = {{0.3, 1.2}, {0.0, 3.0}, {0.0, 3.0}};
            e.embedding = Embedding::make(
                "s3-in-c2", find_model("flat-c2").manifold, 3, dom,
                {"sin(x1)*cos(x2)", "sin(x1)*sin(x2)", "cos(x1)*cos(x3)", "cos(x1)*sin(x3)"});
            e.blurb = "unit three-sphere in the flat complex plane";
            e.holomorphic = 0;
            e.totally_real = 0;
            e.umbilical = 1;
            e.parallel_h = 1;
            e.weak_invariant = 1;
            e.strong_invariant = 1;
            e.h_norm = 1.0;
            e.thm_umbilical = "consistent";
            e.thm_mu = "inconclusive";
            e.thm_alpha = "inconclusive";
            v.push_back(std::move(e));
        }
        return v;
    }();
    return entries;
}

inline const EmbeddingSpec& find_embedding(const std::string& name) {
    for (const EmbeddingSpec& s : embeddings())
        if (s.embedding.name() == name) return s;
    std::string names;
    for (const EmbeddingSpec& s : embeddings())
        names += (names.empty() ? "" : ", ") + s.embedding.name();
    throw ConfigError("unknown embedding '" + name + "' (available: " + names + ")");
}

// Writes every built-in model and embedding as a JSON input file, one file
// per entry, so the same geometry can be fed back through the file loader.
inline void export_all(const std::string& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const std::string& name, const json& doc) {
        std::ofstream out(dir + "/" + name + ".json");
        if (!out) throw ConfigError("cannot write '" + dir + "/" + name + ".json'");
        out << doc.dump(2) << "\n";
    };
    for (const ModelSpec& s : catalog()) write(s.manifold.name(), s.manifold.to_json());
    for (const EmbeddingSpec& s : embeddings()) write(s.embedding.name(), s.embedding.to_json());
}

} // namespace ahgeo::models
