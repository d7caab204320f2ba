#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ahgeo/errors.hpp"
#include "ahgeo/expr.hpp"
#include "ahgeo/linalg.hpp"
#include "ahgeo/rng.hpp"
#include "ahgeo/tolerances.hpp"

namespace ahgeo {

using json = nlohmann::json;

struct ValidationReport {
    int points = 0;
    bool has_j = false;
    double sym_resid = 0.0;    // max |g_ij - g_ji|
    double min_eig = 0.0;      // min eigenvalue of g over samples
    double j2_resid = 0.0;     // max |(J^2 + I)^i_j|
    double compat_resid = 0.0; // max |(J^T g J - g)_ij|
    bool symmetric = true;
    bool positive = true;
    bool almost_complex = true; // vacuous without J
    bool compatible = true;     // vacuous without J

    bool ok() const { return symmetric && positive && almost_complex && compatible; }
};

// A coordinate chart with a closed-form metric and (optionally) a closed-form
// almost complex structure J, both given as expression matrices over x1..xn.
// J is stored with components J[i][j] = J^i_j, so (JX)^i = sum_j J^i_j X^j.
class ChartManifold {
public:
    ChartManifold() = default;

    static ChartManifold make(std::string name, int dim,
                              std::vector<std::array<double, 2>> domain,
                              const std::vector<std::vector<std::string>>& g,
                              const std::vector<std::vector<std::string>>* j_opt = nullptr) {
        ChartManifold m;
        m.name_ = std::move(name);
        if (dim < 1 || dim > Jet::kMaxDim)
            throw ConfigError("dimension must be between 1 and " + std::to_string(Jet::kMaxDim));
        m.dim_ = dim;
        if (static_cast<int>(domain.size()) != dim)
            throw ConfigError("domain needs one [lo, hi] interval per coordinate");
        for (const auto& iv : domain)
            if (!(iv[0] < iv[1])) throw ConfigError("domain interval must have lo < hi");
        m.domain_ = std::move(domain);
        m.g_ = parse_matrix(g, dim, "g");
        if (j_opt) {
            if (dim % 2 != 0)
                throw ConfigError("almost complex structure needs even dimension");
            m.j_ = parse_matrix(*j_opt, dim, "J");
        }
        return m;
    }

    static ChartManifold from_json(const json& doc) {
        if (!doc.is_object()) throw ConfigError("manifold description must be a JSON object");
        std::string name = doc.value("name", std::string("input"));
        if (!doc.contains("dim") || !doc["dim"].is_number_integer())
            throw ConfigError("missing integer field 'dim'");
        int dim = doc["dim"].get<int>();
        std::vector<std::array<double, 2>> domain;
        for (const auto& iv : expect_array(doc, "domain")) {
            if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number())
                throw ConfigError("'domain' entries must be [lo, hi] number pairs");
            domain.push_back({iv[0].get<double>(), iv[1].get<double>()});
        }
        auto g = string_matrix(expect_array(doc, "g"), "g");
        if (doc.contains("J")) {
            auto j = string_matrix(doc["J"], "J");
            return make(name, dim, std::move(domain), g, &j);
        }
        return make(name, dim, std::move(domain), g, nullptr);
    }

    static ChartManifold load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open '" + path + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("invalid JSON in '" + path + "': " + e.what());
        }
        return from_json(doc);
    }

    json to_json() const {
        json doc;
        doc["name"] = name_;
        doc["dim"] = dim_;
        json dom = json::array();
        for (const auto& iv : domain_) dom.push_back({iv[0], iv[1]});
        doc["domain"] = dom;
        doc["g"] = source_matrix(g_);
        if (j_) doc["J"] = source_matrix(*j_);
        return doc;
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    bool has_j() const { return j_.has_value(); }
    const std::vector<std::array<double, 2>>& domain() const { return domain_; }

    Mat<double> g_at(const std::vector<double>& p) const { return eval_matrix(g_, p); }

    Mat<double> j_at(const std::vector<double>& p) const {
        require_j();
        return eval_matrix(*j_, p);
    }

    Mat<Jet> g_jets(const std::vector<double>& p, int order, int jet_dim = 0) const {
        return eval_matrix_jets(g_, p, order, jet_dim);
    }

    Mat<Jet> j_jets(const std::vector<double>& p, int order, int jet_dim = 0) const {
        require_j();
        return eval_matrix_jets(*j_, p, order, jet_dim);
    }

    // Uniform sample strictly inside the domain box (small inset keeps
    // stencil-free evaluations away from the boundary).
    std::vector<double> sample_point(Rng& rng) const {
        std::vector<double> p(dim_);
        for (int i = 0; i < dim_; ++i) {
            double lo = domain_[i][0], hi = domain_[i][1];
            double m = 1e-3 * (hi - lo);
            p[i] = rng.uniform(lo + m, hi - m);
        }
        return p;
    }

    // Random g-orthonormal frame at p (rows are frame vectors).
    Mat<double> sample_frame(const std::vector<double>& p, Rng& rng) const {
        Mat<double> g = g_at(p);
        Mat<double> frame;
        for (int a = 0; a < dim_; ++a) {
            bool placed = false;
            for (int attempt = 0; attempt < 16 && !placed; ++attempt) {
                std::vector<double> v(dim_);
                for (double& c : v) c = rng.gauss();
                for (const auto& e : frame) {
                    double proj = g_dot(g, e, v);
                    for (int i = 0; i < dim_; ++i) v[i] -= proj * e[i];
                }
                double nrm2 = g_dot(g, v, v);
                if (nrm2 > kGramFloor) {
                    double s = 1.0 / std::sqrt(nrm2);
                    for (double& c : v) c *= s;
                    frame.push_back(std::move(v));
                    placed = true;
                }
            }
            if (!placed) throw EvalError("failed to build an orthonormal frame (metric degenerate?)");
        }
        return frame;
    }

    // Random pair (X, Y) with g(X,X)=g(Y,Y)=1, g(X,Y)=0 and g(JX,Y)=0, i.e.
    // Y orthogonal to the whole complex line of X. Needs dim >= 4.
    std::pair<std::vector<double>, std::vector<double>>
    sample_antiholomorphic_pair(const std::vector<double>& p, Rng& rng) const {
        require_j();
        if (dim_ < 4)
            throw ConfigError("anti-holomorphic planes need dimension >= 4");
        Mat<double> g = g_at(p);
        Mat<double> jm = j_at(p);
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<double> x(dim_);
            for (double& c : x) c = rng.gauss();
            double nx = g_dot(g, x, x);
            if (nx <= kGramFloor) continue;
            double s = 1.0 / std::sqrt(nx);
            for (double& c : x) c *= s;
            std::vector<double> jx = mat_vec(jm, x);
            double njx = g_dot(g, jx, jx); // ~1 when J is compatible
            std::vector<double> y(dim_);
            for (double& c : y) c = rng.gauss();
            double cx = g_dot(g, x, y);
            double cj = g_dot(g, jx, y) / njx;
            for (int i = 0; i < dim_; ++i) y[i] -= cx * x[i] + cj * jx[i];
            double ny = g_dot(g, y, y);
            if (ny <= kGramFloor) continue;
            double t = 1.0 / std::sqrt(ny);
            for (double& c : y) c *= t;
            return {std::move(x), std::move(y)};
        }
        throw EvalError("failed to sample an anti-holomorphic pair");
    }

    ValidationReport validate(Rng& rng, int points = 64) const {
        ValidationReport rep;
        rep.points = points;
        rep.has_j = has_j();
        rep.min_eig = std::numeric_limits<double>::infinity();
        for (int s = 0; s < points; ++s) {
            std::vector<double> p = sample_point(rng);
            Mat<double> g = g_at(p);
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    rep.sym_resid = std::max(rep.sym_resid, std::abs(g[i][j] - g[j][i]));
            rep.min_eig = std::min(rep.min_eig, sym_min_eigenvalue(g));
            if (has_j()) {
                Mat<double> jm = j_at(p);
                Mat<double> j2 = mat_mul(jm, jm);
                for (int i = 0; i < dim_; ++i)
                    for (int j = 0; j < dim_; ++j)
                        rep.j2_resid = std::max(
                            rep.j2_resid, std::abs(j2[i][j] + (i == j ? 1.0 : 0.0)));
                // (J^T g J)_ab = g( J e_a, J e_b )
                for (int a = 0; a < dim_; ++a)
                    for (int b = 0; b < dim_; ++b) {
                        double acc = 0.0;
                        for (int i = 0; i < dim_; ++i)
                            for (int j = 0; j < dim_; ++j) acc += jm[i][a] * g[i][j] * jm[j][b];
                        rep.compat_resid =
                            std::max(rep.compat_resid, std::abs(acc - g[a][b]));
                    }
            }
        }
        rep.symmetric = rep.sym_resid <= kTolStructure;
        rep.positive = rep.min_eig > 0.0;
        rep.almost_complex = !has_j() || rep.j2_resid <= kTolStructure;
        rep.compatible = !has_j() || rep.compat_resid <= kTolStructure;
        return rep;
    }

private:
    void require_j() const {
        if (!j_) throw ConfigError("manifold '" + name_ + "' has no almost complex structure");
    }

    static const json& expect_array(const json& doc, const char* key) {
        if (!doc.contains(key) || !doc[key].is_array())
            throw ConfigError(std::string("missing array field '") + key + "'");
        return doc[key];
    }

    static std::vector<std::vector<std::string>> string_matrix(const json& arr, const char* key) {
        if (!arr.is_array()) throw ConfigError(std::string("field '") + key + "' must be an array");
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : arr) {
            if (!row.is_array()) throw ConfigError(std::string("'") + key + "' must be a matrix of strings");
            std::vector<std::string> r;
            for (const auto& cell : row) {
                if (!cell.is_string())
                    throw ConfigError(std::string("'") + key + "' entries must be expression strings");
                r.push_back(cell.get<std::string>());
            }
            rows.push_back(std::move(r));
        }
        return rows;
    }

    static Mat<Expr> parse_matrix(const std::vector<std::vector<std::string>>& src, int dim,
                                  const char* key) {
        if (static_cast<int>(src.size()) != dim)
            throw ConfigError(std::string("'") + key + "' must be " + std::to_string(dim) + "x" +
                              std::to_string(dim));
        Mat<Expr> out;
        for (const auto& row : src) {
            if (static_cast<int>(row.size()) != dim)
                throw ConfigError(std::string("'") + key + "' must be " + std::to_string(dim) +
                                  "x" + std::to_string(dim));
            std::vector<Expr> r;
            for (const std::string& cell : row) r.push_back(Expr::parse(cell, dim));
            out.push_back(std::move(r));
        }
        return out;
    }

    static json source_matrix(const Mat<Expr>& m) {
        json rows = json::array();
        for (const auto& row : m) {
            json r = json::array();
            for (const Expr& e : row) r.push_back(e.source());
            rows.push_back(r);
        }
        return rows;
    }

    Mat<double> eval_matrix(const Mat<Expr>& m, const std::vector<double>& p) const {
        Mat<double> out(dim_, std::vector<double>(dim_));
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) out[i][j] = m[i][j].eval(p);
        return out;
    }

    Mat<Jet> eval_matrix_jets(const Mat<Expr>& m, const std::vector<double>& p, int order,
                              int jet_dim) const {
        Mat<Jet> out(dim_, std::vector<Jet>(dim_));
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) out[i][j] = m[i][j].eval_jet(p, order, jet_dim);
        return out;
    }

    std::string name_;
    int dim_ = 0;
    std::vector<std::array<double, 2>> domain_;
    Mat<Expr> g_;
    std::optional<Mat<Expr>> j_;
};

// An isometric embedding phi: U -> M given by closed-form component
// expressions over the submanifold coordinates x1..xk.
class Embedding {
public:
    static Embedding make(std::string name, ChartManifold ambient, int subdim,
                          std::vector<std::array<double, 2>> subdomain,
                          const std::vector<std::string>& phi) {
        Embedding e;
        e.name_ = std::move(name);
        e.ambient_ = std::move(ambient);
        if (subdim < 1 || subdim >= e.ambient_.dim())
            throw ConfigError("subdim must satisfy 1 <= subdim < ambient dim");
        e.subdim_ = subdim;
        if (static_cast<int>(subdomain.size()) != subdim)
            throw ConfigError("subdomain needs one interval per submanifold coordinate");
        for (const auto& iv : subdomain)
            if (!(iv[0] < iv[1])) throw ConfigError("subdomain interval must have lo < hi");
        e.subdomain_ = std::move(subdomain);
        if (static_cast<int>(phi.size()) != e.ambient_.dim())
            throw ConfigError("phi needs one component per ambient coordinate");
        for (const std::string& c : phi) e.phi_.push_back(Expr::parse(c, subdim));
        return e;
    }

    static Embedding from_json(const json& doc) {
        if (!doc.is_object()) throw ConfigError("embedding description must be a JSON object");
        if (!doc.contains("ambient"))
            throw ConfigError("missing field 'ambient'");
        ChartManifold ambient = ChartManifold::from_json(doc["ambient"]);
        if (!doc.contains("subdim") || !doc["subdim"].is_number_integer())
            throw ConfigError("missing integer field 'subdim'");
        int subdim = doc["subdim"].get<int>();
        std::vector<std::array<double, 2>> subdomain;
        if (!doc.contains("subdomain") || !doc["subdomain"].is_array())
            throw ConfigError("missing array field 'subdomain'");
        for (const auto& iv : doc["subdomain"]) {
            if (!iv.is_array() || iv.size() != 2)
                throw ConfigError("'subdomain' entries must be [lo, hi] pairs");
            subdomain.push_back({iv[0].get<double>(), iv[1].get<double>()});
        }
        if (!doc.contains("phi") || !doc["phi"].is_array())
            throw ConfigError("missing array field 'phi'");
        std::vector<std::string> phi;
        for (const auto& c : doc["phi"]) {
            if (!c.is_string()) throw ConfigError("'phi' entries must be expression strings");
            phi.push_back(c.get<std::string>());
        }
        std::string name = doc.value("name", std::string("input"));
        return make(name, std::move(ambient), subdim, std::move(subdomain), phi);
    }

    static Embedding load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open '" + path + "'");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("invalid JSON in '" + path + "': " + e.what());
        }
        return from_json(doc);
    }

    json to_json() const {
        json doc;
        doc["name"] = name_;
        doc["ambient"] = ambient_.to_json();
        doc["subdim"] = subdim_;
        json dom = json::array();
        for (const auto& iv : subdomain_) dom.push_back({iv[0], iv[1]});
        doc["subdomain"] = dom;
        json phi = json::array();
        for (const Expr& c : phi_) phi.push_back(c.source());
        doc["phi"] = phi;
        return doc;
    }

    const std::string& name() const { return name_; }
    const ChartManifold& ambient() const { return ambient_; }
    int subdim() const { return subdim_; }
    const std::vector<std::array<double, 2>>& subdomain() const { return subdomain_; }
    const std::vector<Expr>& phi() const { return phi_; }

    std::vector<double> phi_at(const std::vector<double>& u) const {
        std::vector<double> x;
        x.reserve(phi_.size());
        for (const Expr& c : phi_) x.push_back(c.eval(u));
        return x;
    }

    std::vector<double> sample_point(Rng& rng) const {
        std::vector<double> u(subdim_);
        for (int i = 0; i < subdim_; ++i) {
            double lo = subdomain_[i][0], hi = subdomain_[i][1];
            double m = 1e-3 * (hi - lo);
            u[i] = rng.uniform(lo + m, hi - m);
        }
        return u;
    }

    // Jacobian d(phi)^a / d(u_i), ambient-dim rows by subdim columns.
    Mat<double> jacobian_at(const std::vector<double>& u) const {
        const int n = ambient_.dim();
        Mat<double> jac(n, std::vector<double>(subdim_));
        for (int a = 0; a < n; ++a) {
            Jet c = phi_[a].eval_jet(u, 1);
            for (int i = 0; i < subdim_; ++i) jac[a][i] = c.d(i);
        }
        return jac;
    }

    // Minimum singular value of the Jacobian over sampled points; the map is
    // an immersion on the sampled region when this stays above kRankMargin.
    double immersion_margin(Rng& rng, int points = 64) const {
        double worst = std::numeric_limits<double>::infinity();
        for (int s = 0; s < points; ++s) {
            std::vector<double> u = sample_point(rng);
            Mat<double> jac = jacobian_at(u);
            Eigen::MatrixXd m(ambient_.dim(), subdim_);
            for (int a = 0; a < ambient_.dim(); ++a)
                for (int i = 0; i < subdim_; ++i) m(a, i) = jac[a][i];
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
            worst = std::min(worst, svd.singularValues().minCoeff());
        }
        return worst;
    }

private:
    std::string name_;
    ChartManifold ambient_;
    int subdim_ = 0;
    std::vector<std::array<double, 2>> subdomain_;
    std::vector<Expr> phi_;
};

} // namespace ahgeo
