#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ahgeo/classify.hpp"
#include "ahgeo/curvature.hpp"
#include "ahgeo/linalg.hpp"
#include "ahgeo/manifold.hpp"
#include "ahgeo/rng.hpp"
#include "ahgeo/tolerances.hpp"

namespace ahgeo {

struct SubOptions : SampleOptions {
    // Value-lane perturbation of the ambient connection used inside the
    // submanifold pipeline only. The profile carries an index-antisymmetric
    // component, since a purely symmetric value shift is pointwise the jet of
    // some other torsion-free connection and would only surface at second
    // order. The fundamental-equation residuals must flag this at first order.
    double gamma_fault = 0.0;
};

// Everything the submanifold analysis measures. Residuals are maxima over
// sample points, scaled so that unit-size data gives unit-size residuals.
struct SubReport {
    int points = 0;
    double immersion_margin = 0.0;

    // second fundamental form and mean curvature
    double b_max = 0.0;
    double h_min = 0.0, h_max = 0.0;
    double umbilical_resid = 0.0;
    double parallel_h_resid = 0.0;
    double weingarten_resid = 0.0;
    double codazzi_resid = 0.0;
    // normal projection of the curvature operator against the mean-curvature
    // flux implied by umbilicity, and the size of the two sides
    double umbilic_normal_resid = 0.0;
    double umbilic_normal_scale = 0.0;
    bool umbilical = false, parallel_h = false;

    // normal components of the ambient curvature applied to probe vectors
    double weak_resid = 0.0, strong_resid = 0.0;
    bool weak_invariant = false, strong_invariant = false;

    // tangency of the image under the ambient structure
    bool ambient_has_j = false;
    double holo_resid = 0.0, totally_real_resid = 0.0;
    bool holomorphic = false, totally_real = false;

    // ambient gate quantities sampled along the image
    double ambient_mu = 0.0;            // mean holomorphic sectional curvature
    double ambient_mu_plane_spread = 0.0;  // worst spread across planes at a point
    double ambient_mu_point_spread = 0.0;  // spread of the per-point means
    double ambient_alpha = 0.0;         // mean of the per-point weak type fits
    double ambient_alpha_resid = 0.0;   // pointwise weak identity defect
    double ambient_alpha_spread = 0.0;  // spread of the per-point fits
    bool mu_gate = false;               // pointwise constant, nonzero
    bool alpha_gate = false;            // pointwise weak type, nonzero
    // weak type identity on mixed tangent/normal planes (unit weight under
    // holomorphy), measured against the per-point ambient fit
    double mixed_type_resid = 0.0;

    // theorem verdicts: consistent | violation | inconclusive
    std::string umbilical_equivalence;
    std::string obstruction_mu;
    std::string obstruction_alpha;

    double tol = kTolClass;
};

namespace detail {

using JVec = std::vector<Jet>;

// All first-order data of the submanifold geometry at one parameter point.
// Scalars are order-1 jets in the submanifold coordinates, so one evaluation
// yields both values and the coordinate derivatives needed by the normal
// connection.
struct SubPoint {
    int k = 0, n = 0;
    std::vector<double> u, x;
    std::vector<JVec> tang; // tang[i][a]: tangent field components
    Mat<double> tval;
    Mat<Jet> gamb;   // ambient metric along the image
    Mat<double> gval;
    std::vector<Jet> gamma; // ambient connection along the image (with fault)
    Mat<Jet> ghat, ghat_inv;
    Mat<double> ghat_val, ghat_inv_val;
    std::vector<Jet> gammahat;
    std::vector<JVec> bform; // bform[i*k+j][a]
    JVec hvec;
    std::vector<JVec> normals;
    CurvaturePoint amb; // clean ambient curvature at the image point
    Mat<double> jval;   // ambient J at the image point, empty without J

    const Jet& gm(int c, int a, int b) const {
        return gamma[(static_cast<std::size_t>(c) * n + a) * n + b];
    }
    const Jet& gh(int m, int i, int j) const {
        return gammahat[(static_cast<std::size_t>(m) * k + i) * k + j];
    }
    const JVec& bf(int i, int j) const { return bform[static_cast<std::size_t>(i) * k + j]; }
};

inline Jet jet_pair(const SubPoint& sp, const JVec& a, const JVec& b) {
    Jet acc = Jet::constant(sp.k, 1, 0.0);
    for (int p = 0; p < sp.n; ++p)
        for (int q = 0; q < sp.n; ++q) acc += sp.gamb[p][q] * a[p] * b[q];
    return acc;
}

inline std::vector<double> jet_values(const JVec& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
    return out;
}

inline double vpair(const SubPoint& sp, const std::vector<double>& a,
                    const std::vector<double>& b) {
    return g_dot(sp.gval, a, b);
}

inline double vnorm(const SubPoint& sp, const std::vector<double>& a) {
    return std::sqrt(std::max(0.0, vpair(sp, a, a)));
}

inline std::vector<double> tangential(const SubPoint& sp, const std::vector<double>& v) {
    std::vector<double> proj(sp.k, 0.0);
    for (int j = 0; j < sp.k; ++j) proj[j] = vpair(sp, v, sp.tval[j]);
    std::vector<double> out(sp.n, 0.0);
    for (int i = 0; i < sp.k; ++i) {
        double c = 0.0;
        for (int j = 0; j < sp.k; ++j) c += sp.ghat_inv_val[i][j] * proj[j];
        for (int a = 0; a < sp.n; ++a) out[a] += c * sp.tval[i][a];
    }
    return out;
}

inline std::vector<double> normal_part(const SubPoint& sp, const std::vector<double>& v) {
    std::vector<double> t = tangential(sp, v);
    std::vector<double> out(sp.n);
    for (int a = 0; a < sp.n; ++a) out[a] = v[a] - t[a];
    return out;
}

// Value of the ambient covariant derivative of a first-order field along the
// i-th coordinate direction of the submanifold.
inline std::vector<double> cov_deriv(const SubPoint& sp, const JVec& field, int i) {
    std::vector<double> out(sp.n, 0.0);
    for (int c = 0; c < sp.n; ++c) {
        double acc = field[c].d(i);
        for (int a = 0; a < sp.n; ++a)
            for (int b = 0; b < sp.n; ++b)
                acc += sp.gm(c, a, b).value() * sp.tval[i][a] * field[b].value();
        out[c] = acc;
    }
    return out;
}

inline std::vector<double> normal_deriv(const SubPoint& sp, const JVec& field, int i) {
    return normal_part(sp, cov_deriv(sp, field, i));
}

inline SubPoint analyze_point(const Embedding& e, const std::vector<double>& u, double fault) {
    SubPoint sp;
    const ChartManifold& m = e.ambient();
    sp.k = e.subdim();
    sp.n = m.dim();
    sp.u = u;
    const int k = sp.k, n = sp.n;

    std::vector<Jet> phj;
    phj.reserve(n);
    for (const Expr& c : e.phi()) phj.push_back(c.eval_jet(u, 3));
    sp.x.resize(n);
    for (int a = 0; a < n; ++a) sp.x[a] = phj[a].value();

    // repackage the third-order map jets into first-order tangent data
    sp.tang.assign(k, JVec(n));
    sp.tval.assign(k, std::vector<double>(n));
    std::vector<std::vector<JVec>> dtan(k, std::vector<JVec>(k, JVec(n)));
    double grad[Jet::kMaxDim];
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < k; ++i) {
            for (int mm = 0; mm < k; ++mm) grad[mm] = phj[a].d(i, mm);
            sp.tang[i][a] = Jet::linear(k, phj[a].d(i), grad);
            sp.tval[i][a] = phj[a].d(i);
            for (int j = 0; j < k; ++j) {
                for (int mm = 0; mm < k; ++mm) grad[mm] = phj[a].d(i, j, mm);
                dtan[i][j][a] = Jet::linear(k, phj[a].d(i, j), grad);
            }
        }

    // ambient metric and connection along the image, chain-ruled onto the
    // submanifold coordinates
    sp.amb = curvature_at(m, sp.x);
    Mat<Jet> gj = m.g_jets(sp.x, 1);
    sp.gamb.assign(n, std::vector<Jet>(n, Jet()));
    sp.gval.assign(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            for (int mm = 0; mm < k; ++mm) {
                double acc = 0.0;
                for (int c = 0; c < n; ++c) acc += gj[a][b].d(c) * sp.tval[mm][c];
                grad[mm] = acc;
            }
            sp.gamb[a][b] = Jet::linear(k, gj[a][b].value(), grad);
            sp.gval[a][b] = gj[a][b].value();
        }
    sp.gamma.resize(static_cast<std::size_t>(n) * n * n);
    for (int c = 0; c < n; ++c)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                for (int mm = 0; mm < k; ++mm) {
                    double acc = 0.0;
                    for (int d = 0; d < n; ++d) acc += sp.amb.dG(d, c, a, b) * sp.tval[mm][d];
                    grad[mm] = acc;
                }
                double v = sp.amb.G(c, a, b);
                if (fault != 0.0)
                    v += fault * (1.0 + 0.3 * c + 0.1 * (a + b) + 0.5 * (a - b));
                sp.gamma[(static_cast<std::size_t>(c) * n + a) * n + b] =
                    Jet::linear(k, v, grad);
            }
    if (m.has_j()) sp.jval = m.j_at(sp.x);

    // induced metric
    Jet one = Jet::constant(k, 1, 1.0);
    sp.ghat.assign(k, std::vector<Jet>(k, Jet()));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sp.ghat[i][j] = jet_pair(sp, sp.tang[i], sp.tang[j]);
    sp.ghat_inv = mat_inverse(sp.ghat, one);
    sp.ghat_val.assign(k, std::vector<double>(k));
    sp.ghat_inv_val.assign(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            sp.ghat_val[i][j] = sp.ghat[i][j].value();
            sp.ghat_inv_val[i][j] = sp.ghat_inv[i][j].value();
        }

    // second derivative corrected by the ambient connection, split into the
    // induced connection and the second fundamental form
    std::vector<JVec> w(static_cast<std::size_t>(k) * k, JVec(n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < n; ++c) {
                Jet acc = dtan[i][j][c];
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        acc += sp.gm(c, a, b) * sp.tang[i][a] * sp.tang[j][b];
                w[static_cast<std::size_t>(i) * k + j][c] = acc;
            }
    sp.gammahat.resize(static_cast<std::size_t>(k) * k * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::vector<Jet> pr(k);
            for (int l = 0; l < k; ++l)
                pr[l] = jet_pair(sp, w[static_cast<std::size_t>(i) * k + j], sp.tang[l]);
            for (int mm = 0; mm < k; ++mm) {
                Jet acc = Jet::constant(k, 1, 0.0);
                for (int l = 0; l < k; ++l) acc += sp.ghat_inv[mm][l] * pr[l];
                sp.gammahat[(static_cast<std::size_t>(mm) * k + i) * k + j] = acc;
            }
        }
    sp.bform.assign(static_cast<std::size_t>(k) * k, JVec(n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < n; ++c) {
                Jet acc = w[static_cast<std::size_t>(i) * k + j][c];
                for (int mm = 0; mm < k; ++mm) acc -= sp.gh(mm, i, j) * sp.tang[mm][c];
                sp.bform[static_cast<std::size_t>(i) * k + j][c] = acc;
            }
    sp.hvec.assign(n, Jet::constant(k, 1, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int c = 0; c < n; ++c)
                sp.hvec[c] += sp.ghat_inv[i][j] * sp.bf(i, j)[c] * (1.0 / k);

    // orthonormal normal frame by greedy pivoted projection of the ambient
    // coordinate fields; the pivot looks only at the value lane, so the frame
    // stays smooth near the sample point
    for (int r = 0; r < n - k; ++r) {
        double best = -1.0;
        JVec keep;
        for (int c = 0; c < n; ++c) {
            JVec cand(n, Jet::constant(k, 1, 0.0));
            cand[c] = one;
            std::vector<Jet> pr(k);
            for (int j = 0; j < k; ++j) pr[j] = jet_pair(sp, cand, sp.tang[j]);
            for (int i = 0; i < k; ++i) {
                Jet coef = Jet::constant(k, 1, 0.0);
                for (int j = 0; j < k; ++j) coef += sp.ghat_inv[i][j] * pr[j];
                for (int a = 0; a < n; ++a) cand[a] -= coef * sp.tang[i][a];
            }
            for (const JVec& prev : sp.normals) {
                Jet coef = jet_pair(sp, cand, prev);
                for (int a = 0; a < n; ++a) cand[a] -= coef * prev[a];
            }
            double nn = jet_pair(sp, cand, cand).value();
            if (nn > best) {
                best = nn;
                keep = std::move(cand);
            }
        }
        if (best <= kGramFloor) throw EvalError("degenerate normal space");
        Jet len = sqrt(jet_pair(sp, keep, keep));
        for (int a = 0; a < sp.n; ++a) keep[a] = keep[a] / len;
        sp.normals.push_back(std::move(keep));
    }
    return sp;
}

// Orthonormal tangent frame as coefficient rows over the coordinate fields,
// built by deterministic Gram-Schmidt against the induced metric.
inline Mat<double> tangent_frame(const SubPoint& sp) {
    Mat<double> fr;
    for (int a = 0; a < sp.k; ++a) {
        std::vector<double> c(sp.k, 0.0);
        c[a] = 1.0;
        for (const auto& prev : fr) {
            double d = 0.0;
            for (int i = 0; i < sp.k; ++i)
                for (int j = 0; j < sp.k; ++j) d += sp.ghat_val[i][j] * c[i] * prev[j];
            for (int i = 0; i < sp.k; ++i) c[i] -= d * prev[i];
        }
        double nn = 0.0;
        for (int i = 0; i < sp.k; ++i)
            for (int j = 0; j < sp.k; ++j) nn += sp.ghat_val[i][j] * c[i] * c[j];
        if (nn <= kGramFloor) throw EvalError("degenerate induced metric");
        double s = 1.0 / std::sqrt(nn);
        for (double& v : c) v *= s;
        fr.push_back(std::move(c));
    }
    return fr;
}

inline std::vector<double> push_tangent(const SubPoint& sp, const std::vector<double>& coef) {
    std::vector<double> out(sp.n, 0.0);
    for (int i = 0; i < sp.k; ++i)
        for (int a = 0; a < sp.n; ++a) out[a] += coef[i] * sp.tval[i][a];
    return out;
}

} // namespace detail

inline SubReport submanifold_scan(const Embedding& e, const SubOptions& opt) {
    using namespace detail;
    SubReport rep;
    rep.tol = opt.tol;
    const ChartManifold& m = e.ambient();
    const int k = e.subdim(), n = m.dim();
    rep.ambient_has_j = m.has_j();
    rep.h_min = std::numeric_limits<double>::infinity();
    rep.h_max = 0.0;

    {
        Rng mrng(derive_seed(opt.seed, tags::kSubmanifold, 0));
        rep.immersion_margin = e.immersion_margin(mrng, std::min(opt.points, 32));
    }

    double weak_num = 0.0, strong_num = 0.0, probe_den = kNormFloor;
    std::vector<double> mu_point, alpha_point;
    double mu_abs_min = std::numeric_limits<double>::infinity();
    double alpha_abs_min = mu_abs_min;
    struct Mixed {
        int point;
        double lhs;
        double w;
    };
    std::vector<Mixed> mixed;

    Rng prng(derive_seed(opt.seed, tags::kSubmanifold));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> u = e.sample_point(prng);
        SubPoint sp = analyze_point(e, u, opt.gamma_fault);
        Rng vrng(derive_seed(opt.seed, tags::kSubmanifold, static_cast<std::uint64_t>(s) + 1));
        ++rep.points;

        Mat<double> frame = tangent_frame(sp);
        std::vector<std::vector<double>> frame_amb;
        for (const auto& c : frame) frame_amb.push_back(push_tangent(sp, c));

        // mean curvature and umbilicity in the orthonormal tangent frame
        std::vector<double> hval = jet_values(sp.hvec);
        double hn = vnorm(sp, hval);
        rep.h_min = std::min(rep.h_min, hn);
        rep.h_max = std::max(rep.h_max, hn);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                std::vector<double> bab(n, 0.0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) {
                        double cc = frame[a][i] * frame[b][j];
                        if (cc == 0.0) continue;
                        for (int c = 0; c < n; ++c) bab[c] += cc * sp.bf(i, j)[c].value();
                    }
                rep.b_max = std::max(rep.b_max, vnorm(sp, bab));
                if (a == b)
                    for (int c = 0; c < n; ++c) bab[c] -= hval[c];
                rep.umbilical_resid =
                    std::max(rep.umbilical_resid, vnorm(sp, bab) / (1.0 + hn));
            }

        // normal connection applied to the mean curvature field
        std::vector<std::vector<double>> ndh(k);
        for (int i = 0; i < k; ++i) ndh[i] = normal_deriv(sp, sp.hvec, i);
        for (const auto& c : frame) {
            std::vector<double> d(n, 0.0);
            for (int i = 0; i < k; ++i)
                for (int a = 0; a < n; ++a) d[a] += c[i] * ndh[i][a];
            rep.parallel_h_resid = std::max(rep.parallel_h_resid, vnorm(sp, d) / (1.0 + hn));
        }

        // duality between the shape operator and the second fundamental form
        for (const JVec& xi : sp.normals) {
            std::vector<double> xival = jet_values(xi);
            for (int i = 0; i < k; ++i) {
                std::vector<double> dxi = cov_deriv(sp, xi, i);
                std::vector<double> shape = tangential(sp, dxi);
                for (double& v : shape) v = -v;
                for (int j = 0; j < k; ++j) {
                    double lhs = vpair(sp, jet_values(sp.bf(i, j)), xival);
                    double rhs = vpair(sp, shape, sp.tval[j]);
                    rep.weingarten_resid =
                        std::max(rep.weingarten_resid,
                                 std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs)));
                }
            }
        }

        // covariant-exterior derivative of the second fundamental form versus
        // the normal projection of the ambient curvature
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                for (int l = 0; l < k; ++l) {
                    std::vector<double> lhs =
                        normal_part(sp, r_operator(sp.amb, sp.tval[i], sp.tval[j], sp.tval[l]));
                    auto nabla_b = [&](int a, int b, int c) {
                        std::vector<double> out = cov_deriv(sp, sp.bf(b, c), a);
                        for (int mm = 0; mm < k; ++mm) {
                            double g1 = sp.gh(mm, a, b).value();
                            double g2 = sp.gh(mm, a, c).value();
                            for (int cc = 0; cc < n; ++cc) {
                                out[cc] -= g1 * sp.bf(mm, c)[cc].value();
                                out[cc] -= g2 * sp.bf(b, mm)[cc].value();
                            }
                        }
                        return normal_part(sp, out);
                    };
                    std::vector<double> rhs = nabla_b(j, i, l);
                    std::vector<double> rhs2 = nabla_b(i, j, l);
                    std::vector<double> diff(n);
                    for (int a = 0; a < n; ++a) diff[a] = lhs[a] - (rhs[a] - rhs2[a]);
                    double den = 1.0 + vnorm(sp, lhs) + vnorm(sp, rhs) + vnorm(sp, rhs2);
                    rep.codazzi_resid = std::max(rep.codazzi_resid, vnorm(sp, diff) / den);

                    // umbilical form of the same equation: both sides reduce
                    // to a mean-curvature flux
                    std::vector<double> flux(n);
                    for (int a = 0; a < n; ++a)
                        flux[a] =
                            sp.ghat_val[i][l] * ndh[j][a] - sp.ghat_val[j][l] * ndh[i][a];
                    std::vector<double> fdiff(n);
                    for (int a = 0; a < n; ++a) fdiff[a] = lhs[a] - flux[a];
                    rep.umbilic_normal_scale =
                        std::max({rep.umbilic_normal_scale, vnorm(sp, lhs), vnorm(sp, flux)});
                    rep.umbilic_normal_resid =
                        std::max(rep.umbilic_normal_resid,
                                 vnorm(sp, fdiff) / (1.0 + vnorm(sp, lhs) + vnorm(sp, flux)));
                }

        // invariance probes: tangent triples for the weak notion, ambient
        // pairs against tangent vectors for the strong one, all unit length,
        // all sharing one denominator so strong dominates weak
        auto unit_tangent = [&]() {
            for (int attempt = 0; attempt < 32; ++attempt) {
                std::vector<double> c(k);
                for (double& v : c) v = vrng.gauss();
                std::vector<double> amb = push_tangent(sp, c);
                double nn = vnorm(sp, amb);
                if (nn * nn <= kGramFloor) continue;
                for (double& v : amb) v /= nn;
                return amb;
            }
            throw EvalError("failed to sample a tangent vector");
        };
        auto unit_ambient = [&]() {
            for (int attempt = 0; attempt < 32; ++attempt) {
                std::vector<double> v(n);
                for (double& c : v) c = vrng.gauss();
                double nn = vnorm(sp, v);
                if (nn * nn <= kGramFloor) continue;
                for (double& c : v) c /= nn;
                return v;
            }
            throw EvalError("failed to sample an ambient vector");
        };
        std::vector<std::array<std::vector<double>, 3>> weak_probes, strong_probes;
        for (const auto& x : frame_amb)
            for (const auto& y : frame_amb)
                for (const auto& z : frame_amb) weak_probes.push_back({x, y, z});
        for (int q = 0; q < opt.pairs; ++q)
            weak_probes.push_back({unit_tangent(), unit_tangent(), unit_tangent()});
        std::vector<std::vector<double>> basis_amb;
        for (int a = 0; a < n; ++a) {
            std::vector<double> v(n, 0.0);
            v[a] = 1.0;
            double nn = vnorm(sp, v);
            for (double& c : v) c /= nn;
            basis_amb.push_back(std::move(v));
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                for (const auto& z : frame_amb)
                    strong_probes.push_back({basis_amb[a], basis_amb[b], z});
            }
        for (int q = 0; q < opt.pairs; ++q)
            strong_probes.push_back({unit_ambient(), unit_ambient(), unit_tangent()});
        auto run_probes = [&](const std::vector<std::array<std::vector<double>, 3>>& probes,
                              double& num) {
            for (const auto& pr : probes) {
                std::vector<double> v = r_operator(sp.amb, pr[0], pr[1], pr[2]);
                probe_den = std::max(probe_den, vnorm(sp, v));
                num = std::max(num, vnorm(sp, normal_part(sp, v)));
            }
        };
        run_probes(weak_probes, weak_num);
        run_probes(strong_probes, strong_num);

        if (rep.ambient_has_j) {
            // tangency of J on the tangent bundle
            auto probe_j = [&](const std::vector<double>& v) {
                std::vector<double> jv = mat_vec(sp.jval, v);
                rep.holo_resid = std::max(rep.holo_resid, vnorm(sp, normal_part(sp, jv)));
                rep.totally_real_resid =
                    std::max(rep.totally_real_resid, vnorm(sp, tangential(sp, jv)));
            };
            for (const auto& v : frame_amb) probe_j(v);
            for (int q = 0; q < 8; ++q) probe_j(unit_tangent());

            // holomorphic sectional curvature of the ambient space along the
            // image, and its per-point weak type fit
            double k_lo = std::numeric_limits<double>::infinity(), k_hi = -k_lo, k_sum = 0.0;
            int k_cnt = 0;
            double num = 0.0, den = 0.0;
            std::vector<std::pair<double, double>> wsamples; // (lhs, w)
            for (int q = 0; q < opt.pairs; ++q) {
                std::vector<double> x = unit_ambient();
                std::vector<double> jx = mat_vec(sp.jval, x);
                double kh = r_apply(sp.amb.rlow, x, jx, x, jx);
                k_lo = std::min(k_lo, kh);
                k_hi = std::max(k_hi, kh);
                k_sum += kh;
                ++k_cnt;

                std::vector<double> y = unit_ambient();
                double xy = vpair(sp, x, y);
                for (int a = 0; a < n; ++a) y[a] -= xy * x[a];
                double ny = vnorm(sp, y);
                if (ny * ny <= kGramFloor) continue;
                for (double& c : y) c /= ny;
                std::vector<double> jy = mat_vec(sp.jval, y);
                double lhs = r_apply(sp.amb.rlow, x, y, x, y) -
                             2.0 * r_apply(sp.amb.rlow, x, y, jx, jy) +
                             r_apply(sp.amb.rlow, jx, jy, jx, jy);
                double wgt = 1.0 - vpair(sp, jx, y) * vpair(sp, jx, y);
                num += 0.5 * lhs * wgt;
                den += wgt * wgt;
                wsamples.emplace_back(lhs, wgt);
            }
            if (k_cnt > 0) {
                double mu_p = k_sum / k_cnt;
                mu_point.push_back(mu_p);
                mu_abs_min = std::min(mu_abs_min, std::abs(mu_p));
                rep.ambient_mu_plane_spread =
                    std::max(rep.ambient_mu_plane_spread, k_hi - k_lo);
            }
            double alpha_p = den > kNormFloor ? num / den : 0.0;
            alpha_point.push_back(alpha_p);
            alpha_abs_min = std::min(alpha_abs_min, std::abs(alpha_p));
            for (const auto& [lhs, wgt] : wsamples)
                rep.ambient_alpha_resid =
                    std::max(rep.ambient_alpha_resid, std::abs(lhs - 2.0 * alpha_p * wgt) /
                                                          std::max(1.0, std::abs(alpha_p)));

            // weak type pairing on mixed tangent/normal planes; the plane
            // weight collapses to one when the tangent bundle is J-stable
            for (const auto& x : frame_amb)
                for (const JVec& xi : sp.normals) {
                    std::vector<double> xv = jet_values(xi);
                    std::vector<double> jx = mat_vec(sp.jval, x);
                    std::vector<double> jxi = mat_vec(sp.jval, xv);
                    double lhs = r_apply(sp.amb.rlow, x, xv, x, xv) -
                                 2.0 * r_apply(sp.amb.rlow, x, xv, jx, jxi) +
                                 r_apply(sp.amb.rlow, jx, jxi, jx, jxi);
                    double s1 = vpair(sp, jx, xv);
                    double wgt = 1.0 - s1 * s1;
                    mixed.push_back({s, lhs, wgt});
                }
        }
    }

    rep.weak_resid = weak_num / probe_den;
    rep.strong_resid = strong_num / probe_den;
    rep.weak_invariant = rep.weak_resid <= opt.tol;
    rep.strong_invariant = rep.strong_resid <= opt.tol;
    rep.umbilical = rep.umbilical_resid <= opt.tol;
    rep.parallel_h = rep.parallel_h_resid <= opt.tol;
    rep.holomorphic = rep.ambient_has_j && rep.holo_resid <= opt.tol;
    rep.totally_real = rep.ambient_has_j && rep.totally_real_resid <= opt.tol;
    if (rep.h_min > rep.h_max) rep.h_min = rep.h_max;

    double gate_tol = 100.0 * opt.tol;
    if (!mu_point.empty()) {
        double lo = mu_point[0], hi = mu_point[0], sum = 0.0;
        for (double v : mu_point) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        rep.ambient_mu = sum / static_cast<double>(mu_point.size());
        rep.ambient_mu_point_spread = hi - lo;
    }
    if (!alpha_point.empty()) {
        double lo = alpha_point[0], hi = alpha_point[0], sum = 0.0;
        for (double v : alpha_point) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        rep.ambient_alpha = sum / static_cast<double>(alpha_point.size());
        rep.ambient_alpha_spread = hi - lo;
    }
    double mu_scale = std::max(1.0, std::abs(rep.ambient_mu));
    rep.mu_gate = rep.ambient_has_j && rep.holomorphic && !mu_point.empty() &&
                  rep.ambient_mu_plane_spread <= gate_tol * mu_scale &&
                  mu_abs_min > kContradictionFloor;
    rep.alpha_gate = rep.ambient_has_j && rep.holomorphic && !alpha_point.empty() &&
                     rep.ambient_alpha_resid <= gate_tol &&
                     alpha_abs_min > kContradictionFloor;
    if (rep.ambient_has_j && !alpha_point.empty()) {
        for (const auto& mx : mixed) {
            double expect = 2.0 * alpha_point[static_cast<std::size_t>(mx.point)] * mx.w;
            rep.mixed_type_resid =
                std::max(rep.mixed_type_resid,
                         std::abs(mx.lhs - expect) / std::max(1.0, std::abs(expect)));
        }
    }

    if (!rep.umbilical)
        rep.umbilical_equivalence = "inconclusive";
    else if (rep.weak_invariant == rep.parallel_h)
        rep.umbilical_equivalence = "consistent";
    else
        rep.umbilical_equivalence = "violation";

    auto obstruction = [&](bool gate) {
        if (!gate) return std::string("inconclusive");
        if (rep.strong_resid > kContradictionFloor) return std::string("consistent");
        // a genuinely invariant image under an active gate contradicts the
        // obstruction; the gap between tolerance and floor stays undecided
        return rep.strong_invariant ? std::string("violation") : std::string("inconclusive");
    };
    rep.obstruction_mu = obstruction(rep.mu_gate);
    rep.obstruction_alpha = obstruction(rep.alpha_gate);
    return rep;
}

} // namespace ahgeo
