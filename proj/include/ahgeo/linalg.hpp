#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ahgeo/errors.hpp"
#include "ahgeo/jet.hpp"

namespace ahgeo {

template <class T>
using Mat = std::vector<std::vector<T>>;

inline double lane(double x) { return x; }
inline double lane(const Jet& x) { return x.value(); }

template <class T>
Mat<T> mat_identity(int n, const T& one) {
    Mat<T> m(n, std::vector<T>(n, one * 0.0));
    for (int i = 0; i < n; ++i) m[i][i] = one;
    return m;
}

// Gauss-Jordan inverse with partial pivoting on the value lane. Works for
// double and for jets (where it propagates derivatives of the inverse).
template <class T>
Mat<T> mat_inverse(Mat<T> a, const T& one) {
    const int n = static_cast<int>(a.size());
    Mat<T> inv = mat_identity(n, one);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lane(a[r][col])) > std::abs(lane(a[piv][col]))) piv = r;
        if (lane(a[piv][col]) == 0.0) throw EvalError("singular matrix");
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(inv[piv], inv[col]);
        }
        T d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] = a[col][j] / d;
            inv[col][j] = inv[col][j] / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

template <class T>
std::vector<T> mat_vec(const Mat<T>& a, const std::vector<T>& v) {
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(v.size());
    std::vector<T> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        T acc = a[i][0] * v[0];
        for (int j = 1; j < m; ++j) acc = acc + a[i][j] * v[j];
        out.push_back(acc);
    }
    return out;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
    const int n = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int m = static_cast<int>(b[0].size());
    Mat<T> out(n, std::vector<T>(m, a[0][0] * 0.0));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l)
            for (int j = 0; j < m; ++j) out[i][j] = out[i][j] + a[i][l] * b[l][j];
    return out;
}

// Inner product x^T g y.
template <class T>
T g_dot(const Mat<T>& g, const std::vector<T>& x, const std::vector<T>& y) {
    const int n = static_cast<int>(g.size());
    T acc = g[0][0] * 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc = acc + g[i][j] * x[i] * y[j];
    return acc;
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

inline double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

inline double sym_min_eigenvalue(const Mat<double>& a) {
    const int n = static_cast<int>(a.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (a[i][j] + a[j][i]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace ahgeo
