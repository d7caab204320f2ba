#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>

#include "ahgeo/errors.hpp"

namespace ahgeo {

// Truncated Taylor scalar: value plus all mixed partial derivatives up to
// `order` (at most 3) in `dim` coordinates (at most kMaxDim). Derivative
// tensors are fully symmetric and stored once per sorted multi-index.
class Jet {
public:
    static constexpr int kMaxDim = 8;
    static constexpr int kD2 = kMaxDim * (kMaxDim + 1) / 2;
    static constexpr int kD3 = kMaxDim * (kMaxDim + 1) * (kMaxDim + 2) / 6;

    Jet() = default;

    static Jet constant(int dim, int order, double v) {
        Jet j(dim, order);
        j.v = v;
        return j;
    }

    static Jet variable(int dim, int order, int i, double v) {
        assert(i >= 0 && i < dim);
        Jet j(dim, order);
        j.v = v;
        if (order >= 1) j.d1[i] = 1.0;
        return j;
    }

    // Order-1 jet with prescribed value and gradient lanes. Used to repackage
    // higher-order jet data as first-order fields of derived quantities.
    static Jet linear(int dim, double v, const double* grad) {
        Jet j(dim, 1);
        j.v = v;
        for (int i = 0; i < dim; ++i) j.d1[i] = grad[i];
        return j;
    }

    int dim() const { return n_; }
    int order() const { return k_; }

    static int idx2(int i, int j) { // requires i <= j
        return j * (j + 1) / 2 + i;
    }
    static int idx3(int i, int j, int k) { // requires i <= j <= k
        return k * (k + 1) * (k + 2) / 6 + j * (j + 1) / 2 + i;
    }

    double value() const { return v; }
    double d(int i) const { return k_ >= 1 ? d1[i] : 0.0; }
    double d(int i, int j) const {
        if (k_ < 2) return 0.0;
        if (i > j) std::swap(i, j);
        return d2[idx2(i, j)];
    }
    double d(int i, int j, int k) const {
        if (k_ < 3) return 0.0;
        sort3(i, j, k);
        return d3[idx3(i, j, k)];
    }

    // The order-(K-1) jet of the partial derivative with respect to x_i.
    Jet deriv(int i) const {
        assert(k_ >= 1);
        Jet r(n_, k_ - 1);
        r.v = d1[i];
        if (r.k_ >= 1)
            for (int a = 0; a < n_; ++a) r.d1[a] = d(a, i);
        if (r.k_ >= 2)
            for (int a = 0; a < n_; ++a)
                for (int b = a; b < n_; ++b) r.d2[idx2(a, b)] = d(a, b, i);
        return r;
    }

    // Same derivative data truncated to a lower order.
    Jet truncated(int order) const {
        assert(order <= k_);
        Jet r(n_, order);
        r.v = v;
        if (order >= 1) r.d1 = d1;
        if (order >= 2) r.d2 = d2;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet c = a;
        c.v += b.v;
        if (c.k_ >= 1)
            for (int i = 0; i < c.n_; ++i) c.d1[i] += b.d1[i];
        if (c.k_ >= 2)
            for (int t = 0, m = count2(c.n_); t < m; ++t) c.d2[t] += b.d2[t];
        if (c.k_ >= 3)
            for (int t = 0, m = count3(c.n_); t < m; ++t) c.d3[t] += b.d3[t];
        return c;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet c = a;
        c.v -= b.v;
        if (c.k_ >= 1)
            for (int i = 0; i < c.n_; ++i) c.d1[i] -= b.d1[i];
        if (c.k_ >= 2)
            for (int t = 0, m = count2(c.n_); t < m; ++t) c.d2[t] -= b.d2[t];
        if (c.k_ >= 3)
            for (int t = 0, m = count3(c.n_); t < m; ++t) c.d3[t] -= b.d3[t];
        return c;
    }

    friend Jet operator-(const Jet& a) {
        Jet c = a;
        c.v = -c.v;
        for (int i = 0; i < c.n_; ++i) c.d1[i] = -c.d1[i];
        for (int t = 0, m = count2(c.n_); t < m; ++t) c.d2[t] = -c.d2[t];
        for (int t = 0, m = count3(c.n_); t < m; ++t) c.d3[t] = -c.d3[t];
        return c;
    }

    // Leibniz rule through order 3; the split over sorted multi-indices
    // enumerates which part of the multiset differentiates each factor, so
    // repeated indices need no special casing.
    friend Jet operator*(const Jet& a, const Jet& b) {
        assert(a.n_ == b.n_ && a.k_ == b.k_);
        Jet c(a.n_, a.k_);
        c.v = a.v * b.v;
        if (c.k_ >= 1)
            for (int i = 0; i < c.n_; ++i) c.d1[i] = a.d1[i] * b.v + a.v * b.d1[i];
        if (c.k_ >= 2)
            for (int i = 0; i < c.n_; ++i)
                for (int j = i; j < c.n_; ++j)
                    c.d2[idx2(i, j)] = a.d2[idx2(i, j)] * b.v + a.d1[i] * b.d1[j] +
                                       a.d1[j] * b.d1[i] + a.v * b.d2[idx2(i, j)];
        if (c.k_ >= 3)
            for (int i = 0; i < c.n_; ++i)
                for (int j = i; j < c.n_; ++j)
                    for (int k = j; k < c.n_; ++k)
                        c.d3[idx3(i, j, k)] =
                            a.d3[idx3(i, j, k)] * b.v + a.v * b.d3[idx3(i, j, k)] +
                            a.d2[idx2(i, j)] * b.d1[k] + a.d2[idx2(i, k)] * b.d1[j] +
                            a.d2[idx2(j, k)] * b.d1[i] + a.d1[i] * b.d2[idx2(j, k)] +
                            a.d1[j] * b.d2[idx2(i, k)] + a.d1[k] * b.d2[idx2(i, j)];
        return c;
    }

    // Quotient rule solved for the result so the value lane is exactly
    // a.v / b.v (matching a plain double evaluation bit for bit).
    friend Jet operator/(const Jet& a, const Jet& b) {
        assert(a.n_ == b.n_ && a.k_ == b.k_);
        if (b.v == 0.0) throw EvalError("division by zero");
        Jet c(a.n_, a.k_);
        c.v = a.v / b.v;
        if (c.k_ >= 1)
            for (int i = 0; i < c.n_; ++i) c.d1[i] = (a.d1[i] - c.v * b.d1[i]) / b.v;
        if (c.k_ >= 2)
            for (int i = 0; i < c.n_; ++i)
                for (int j = i; j < c.n_; ++j)
                    c.d2[idx2(i, j)] = (a.d2[idx2(i, j)] - c.v * b.d2[idx2(i, j)] -
                                        c.d1[i] * b.d1[j] - c.d1[j] * b.d1[i]) /
                                       b.v;
        if (c.k_ >= 3)
            for (int i = 0; i < c.n_; ++i)
                for (int j = i; j < c.n_; ++j)
                    for (int k = j; k < c.n_; ++k)
                        c.d3[idx3(i, j, k)] =
                            (a.d3[idx3(i, j, k)] - c.v * b.d3[idx3(i, j, k)] -
                             c.d1[i] * b.d2[idx2(j, k)] - c.d1[j] * b.d2[idx2(i, k)] -
                             c.d1[k] * b.d2[idx2(i, j)] - c.d2[idx2(i, j)] * b.d1[k] -
                             c.d2[idx2(i, k)] * b.d1[j] - c.d2[idx2(j, k)] * b.d1[i]) /
                            b.v;
        return c;
    }

    friend Jet operator+(const Jet& a, double s) { Jet c = a; c.v += s; return c; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { Jet c = a; c.v -= s; return c; }
    friend Jet operator-(double s, const Jet& a) { Jet c = -a; c.v += s; return c; }
    friend Jet operator*(const Jet& a, double s) {
        Jet c = a;
        c.v *= s;
        for (int i = 0; i < c.n_; ++i) c.d1[i] *= s;
        for (int t = 0, m = count2(c.n_); t < m; ++t) c.d2[t] *= s;
        for (int t = 0, m = count3(c.n_); t < m; ++t) c.d3[t] *= s;
        return c;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) {
        if (s == 0.0) throw EvalError("division by zero");
        return a * (1.0 / s);
    }
    friend Jet operator/(double s, const Jet& a) {
        return constant(a.n_, a.k_, s) / a;
    }

    Jet& operator+=(const Jet& b) { *this = *this + b; return *this; }
    Jet& operator-=(const Jet& b) { *this = *this - b; return *this; }
    Jet& operator*=(const Jet& b) { *this = *this * b; return *this; }

    // Univariate chain rule (Faa di Bruno through order 3):
    // c0..c3 are f, f', f'', f''' evaluated at the value lane.
    Jet compose(double c0, double c1, double c2, double c3) const {
        Jet h(n_, k_);
        h.v = c0;
        if (k_ >= 1)
            for (int i = 0; i < n_; ++i) h.d1[i] = c1 * d1[i];
        if (k_ >= 2)
            for (int i = 0; i < n_; ++i)
                for (int j = i; j < n_; ++j)
                    h.d2[idx2(i, j)] = c1 * d2[idx2(i, j)] + c2 * d1[i] * d1[j];
        if (k_ >= 3)
            for (int i = 0; i < n_; ++i)
                for (int j = i; j < n_; ++j)
                    for (int k = j; k < n_; ++k)
                        h.d3[idx3(i, j, k)] =
                            c1 * d3[idx3(i, j, k)] +
                            c2 * (d1[i] * d2[idx2(j, k)] + d1[j] * d2[idx2(i, k)] +
                                  d1[k] * d2[idx2(i, j)]) +
                            c3 * d1[i] * d1[j] * d1[k];
        return h;
    }

private:
    Jet(int dim, int order) : n_(dim), k_(order) {
        assert(dim >= 1 && dim <= kMaxDim && order >= 0 && order <= 3);
        d1.fill(0.0);
        d2.fill(0.0);
        d3.fill(0.0);
    }

    static int count2(int n) { return n * (n + 1) / 2; }
    static int count3(int n) { return n * (n + 1) * (n + 2) / 6; }
    static void sort3(int& i, int& j, int& k) {
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
    }

    int n_ = 1;
    int k_ = 0;
    double v = 0.0;
    std::array<double, kMaxDim> d1{};
    std::array<double, kD2> d2{};
    std::array<double, kD3> d3{};
};

inline Jet sin(const Jet& x) {
    double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(s, c, -s, -c);
}
inline Jet cos(const Jet& x) {
    double s = std::sin(x.value()), c = std::cos(x.value());
    return x.compose(c, -s, -c, s);
}
inline Jet tan(const Jet& x) {
    double t = std::tan(x.value());
    double sec2 = 1.0 + t * t;
    return x.compose(t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t));
}
inline Jet exp(const Jet& x) {
    double e = std::exp(x.value());
    return x.compose(e, e, e, e);
}
inline Jet log(const Jet& x) {
    double v = x.value();
    if (v <= 0.0) throw DomainError("log of non-positive value");
    double u = 1.0 / v;
    return x.compose(std::log(v), u, -u * u, 2.0 * u * u * u);
}
inline Jet sqrt(const Jet& x) {
    double v = x.value();
    if (v < 0.0) throw DomainError("sqrt of negative value");
    if (v == 0.0 && x.order() >= 1) throw DomainError("sqrt derivative at zero");
    double s = std::sqrt(v);
    double i = x.order() >= 1 ? 1.0 / s : 0.0;
    return x.compose(s, 0.5 * i, -0.25 * i * i * i, 0.375 * i * i * i * i * i);
}
inline Jet sinh(const Jet& x) {
    double s = std::sinh(x.value()), c = std::cosh(x.value());
    return x.compose(s, c, s, c);
}
inline Jet cosh(const Jet& x) {
    double s = std::sinh(x.value()), c = std::cosh(x.value());
    return x.compose(c, s, c, s);
}
inline Jet atan(const Jet& x) {
    double v = x.value();
    double u = 1.0 / (1.0 + v * v);
    return x.compose(std::atan(v), u, -2.0 * v * u * u, (6.0 * v * v - 2.0) * u * u * u);
}

// Integer power by binary exponentiation. Shared by the double and jet
// evaluation paths so both produce identical value-lane rounding.
template <class T>
T pow_int(const T& base, long long e, const T& one) {
    if (e < 0) return one / pow_int(base, -e, one);
    T acc = one;
    T b = base;
    long long k = e;
    while (k > 0) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

} // namespace ahgeo
