#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "ahgeo/jet.hpp"
#include "ahgeo/linalg.hpp"
#include "ahgeo/manifold.hpp"
#include "ahgeo/tolerances.hpp"

namespace ahgeo {

struct Tensor4 {
    int n = 0;
    std::vector<double> v;

    Tensor4() = default;
    explicit Tensor4(int n_)
        : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0) {}

    double& at(int i, int j, int k, int l) {
        return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }
    double at(int i, int j, int k, int l) const {
        return v[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
    }

    double frobenius() const {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    }
    double max_abs() const {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    }
};

inline Tensor4 operator-(const Tensor4& a, const Tensor4& b) {
    Tensor4 out(a.n);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] - b.v[i];
    return out;
}

inline Tensor4 operator+(const Tensor4& a, const Tensor4& b) {
    Tensor4 out(a.n);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] + b.v[i];
    return out;
}

inline Tensor4 operator*(double s, const Tensor4& a) {
    Tensor4 out(a.n);
    for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = s * a.v[i];
    return out;
}

// Exact pointwise curvature data for a chart, computed from order-2 metric
// jets (no numeric differentiation anywhere).
//
// Sign convention: R(X,Y)Z = nabla_[X,Y] Z - [nabla_X, nabla_Y] Z, so
//   R^l_ijk = -( d_i Gamma^l_jk - d_j Gamma^l_ik
//                + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik )
//   R_ijkl  = R^m_ijk g_ml,   R(X,Y,Z,W) = R_ijkl X^i Y^j Z^k W^l.
// With this convention R(X,Y,X,Y) > 0 on the round sphere.
struct CurvaturePoint {
    int n = 0;
    std::vector<double> p;
    Mat<double> g, ginv;
    std::vector<double> gamma;   // Gamma^k_ij, index (k, i, j)
    std::vector<double> dgamma;  // d_l Gamma^k_ij, index (l, k, i, j)
    Tensor4 rlow;                // R_ijkl
    Mat<double> jmat;            // J^i_j (empty without J)
    std::vector<double> nablaj;  // (nabla_i J)^k_j, index (i, k, j) (empty without J)

    double G(int k, int i, int j) const { return gamma[(static_cast<std::size_t>(k) * n + i) * n + j]; }
    double dG(int l, int k, int i, int j) const {
        return dgamma[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j];
    }
    double nJ(int i, int k, int j) const {
        return nablaj[(static_cast<std::size_t>(i) * n + k) * n + j];
    }
    bool has_j() const { return !jmat.empty(); }
};

// Christoffel symbols as order-1 jets (value + first derivatives), from
// order-2 jets of the metric.
inline std::vector<Jet> christoffel_jets(const Mat<Jet>& g2, int n) {
    Jet one = Jet::constant(g2[0][0].dim(), 1, 1.0);
    Mat<Jet> g1(n, std::vector<Jet>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g1[i][j] = g2[i][j].truncated(1);
    Mat<Jet> ginv = mat_inverse(g1, one);

    auto dg = [&](int m, int a, int b) { return g2[a][b].deriv(m); };
    std::vector<Jet> gam(static_cast<std::size_t>(n) * n * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc = one * 0.0;
                for (int l = 0; l < n; ++l)
                    acc = acc + ginv[k][l] * (dg(i, l, j) + dg(j, l, i) - dg(l, i, j));
                gam[(static_cast<std::size_t>(k) * n + i) * n + j] = acc * 0.5;
            }
    return gam;
}

inline CurvaturePoint curvature_at(const ChartManifold& m, const std::vector<double>& p) {
    const int n = m.dim();
    CurvaturePoint cp;
    cp.n = n;
    cp.p = p;

    Mat<Jet> g2 = m.g_jets(p, 2);
    cp.g.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cp.g[i][j] = g2[i][j].value();
    cp.ginv = mat_inverse(cp.g, 1.0);

    std::vector<Jet> gam = christoffel_jets(g2, n);
    cp.gamma.resize(gam.size());
    cp.dgamma.resize(static_cast<std::size_t>(n) * n * n * n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Jet& gj = gam[(static_cast<std::size_t>(k) * n + i) * n + j];
                cp.gamma[(static_cast<std::size_t>(k) * n + i) * n + j] = gj.value();
                for (int l = 0; l < n; ++l)
                    cp.dgamma[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j] = gj.d(l);
            }

    // R^l_ijk then lower the last index with g.
    std::vector<double> rup(static_cast<std::size_t>(n) * n * n * n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double acc = cp.dG(i, l, j, k) - cp.dG(j, l, i, k);
                    for (int mm = 0; mm < n; ++mm)
                        acc += cp.G(l, i, mm) * cp.G(mm, j, k) - cp.G(l, j, mm) * cp.G(mm, i, k);
                    rup[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k] = -acc;
                }
    cp.rlow = Tensor4(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    double acc = 0.0;
                    for (int mm = 0; mm < n; ++mm)
                        acc += rup[((static_cast<std::size_t>(mm) * n + i) * n + j) * n + k] *
                               cp.g[mm][l];
                    cp.rlow.at(i, j, k, l) = acc;
                }

    if (m.has_j()) {
        Mat<Jet> j1 = m.j_jets(p, 1);
        cp.jmat.assign(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cp.jmat[i][j] = j1[i][j].value();
        cp.nablaj.resize(static_cast<std::size_t>(n) * n * n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) {
                    double acc = j1[k][j].d(i);
                    for (int mm = 0; mm < n; ++mm)
                        acc += cp.G(k, i, mm) * cp.jmat[mm][j] - cp.G(mm, i, j) * cp.jmat[k][mm];
                    cp.nablaj[(static_cast<std::size_t>(i) * n + k) * n + j] = acc;
                }
    }
    return cp;
}

// R(x, y, z, w) by full contraction of the lowered tensor.
inline double r_apply(const Tensor4& rlow, const std::vector<double>& x,
                      const std::vector<double>& y, const std::vector<double>& z,
                      const std::vector<double>& w) {
    const int n = rlow.n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < n; ++j) {
            if (y[j] == 0.0) continue;
            for (int k = 0; k < n; ++k) {
                if (z[k] == 0.0) continue;
                double inner = 0.0;
                for (int l = 0; l < n; ++l) inner += rlow.at(i, j, k, l) * w[l];
                acc += x[i] * y[j] * z[k] * inner;
            }
        }
    }
    return acc;
}

// R(X,Y)Z as a vector (index raised with g^{-1}).
inline std::vector<double> r_operator(const CurvaturePoint& cp, const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<double>& z) {
    const int n = cp.n;
    std::vector<double> low(n, 0.0);
    for (int l = 0; l < n; ++l) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) acc += cp.rlow.at(i, j, k, l) * x[i] * y[j] * z[k];
        low[l] = acc;
    }
    return mat_vec(cp.ginv, low);
}

// Sectional curvature of span{x, y}; nullopt when the plane is degenerate.
inline std::optional<double> sectional(const CurvaturePoint& cp, const std::vector<double>& x,
                                       const std::vector<double>& y) {
    double xx = g_dot(cp.g, x, x), yy = g_dot(cp.g, y, y), xy = g_dot(cp.g, x, y);
    double w = xx * yy - xy * xy;
    if (w < kGramFloor) return std::nullopt;
    return r_apply(cp.rlow, x, y, x, y) / w;
}

// Curvature tensor expressed in a frame: RT[a][b][c][d] = R(E_a,E_b,E_c,E_d).
// Contracted one slot at a time.
inline Tensor4 frame_curvature(const CurvaturePoint& cp, const Mat<double>& frame) {
    const int n = cp.n;
    auto contract_slot0 = [n](const Tensor4& t, const Mat<double>& e) {
        Tensor4 out(n);
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double acc = 0.0;
                        for (int i = 0; i < n; ++i) acc += e[a][i] * t.at(i, j, k, l);
                        out.at(a, j, k, l) = acc;
                    }
        return out;
    };
    // rotate slots: after four passes of (contract slot 0, then cycle) every
    // slot has been contracted once and the index order is restored
    auto cycle = [n](const Tensor4& t) {
        Tensor4 out(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) out.at(j, k, l, i) = t.at(i, j, k, l);
        return out;
    };
    Tensor4 t = cp.rlow;
    for (int pass = 0; pass < 4; ++pass) t = cycle(contract_slot0(t, frame));
    return t;
}

// JB[a][b] = g(J E_a, E_b); for a g-orthonormal frame, J E_a = JB[a][b] E_b.
inline Mat<double> frame_j(const CurvaturePoint& cp, const Mat<double>& frame) {
    const int n = cp.n;
    Mat<double> jb(n, std::vector<double>(n, 0.0));
    for (int a = 0; a < n; ++a) {
        std::vector<double> je = mat_vec(cp.jmat, frame[a]);
        for (int b = 0; b < n; ++b) jb[a][b] = g_dot(cp.g, je, frame[b]);
    }
    return jb;
}

// Replace the arguments of a frame tensor by J-images on the slots selected
// by `mask` (bit 3 = first slot ... bit 0 = last slot). With mask 0b0011,
// T[a][b][c][d] becomes R(E_a, E_b, J E_c, J E_d).
inline Tensor4 masked_frame_tensor(const Tensor4& rt, const Mat<double>& jb, unsigned mask) {
    const int n = rt.n;
    Tensor4 t = rt;
    for (int slot = 0; slot < 4; ++slot) {
        if (!(mask & (1u << (3 - slot)))) continue;
        Tensor4 out(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int idx[4] = {a, b, c, d};
                        double acc = 0.0;
                        for (int e = 0; e < n; ++e) {
                            int src[4] = {a, b, c, d};
                            src[slot] = e;
                            acc += jb[idx[slot]][e] * t.at(src[0], src[1], src[2], src[3]);
                        }
                        out.at(a, b, c, d) = acc;
                    }
        t = out;
    }
    return t;
}

} // namespace ahgeo
