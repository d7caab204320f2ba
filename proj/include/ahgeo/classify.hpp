#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ahgeo/curvature.hpp"
#include "ahgeo/manifold.hpp"
#include "ahgeo/rng.hpp"
#include "ahgeo/tolerances.hpp"

namespace ahgeo {

struct SampleOptions {
    int points = 64;
    int frames = 8;
    int pairs = 32;
    std::uint64_t seed = 0;
    double tol = kTolClass;
};

namespace tags {
inline constexpr std::uint64_t kIdentities = 1;
inline constexpr std::uint64_t kStructure = 2;
inline constexpr std::uint64_t kType = 3;
inline constexpr std::uint64_t kSpaceform = 4;
inline constexpr std::uint64_t kRizza = 5;
inline constexpr std::uint64_t kSectional = 6;
inline constexpr std::uint64_t kSymmetry = 7;
inline constexpr std::uint64_t kSubmanifold = 8;
inline constexpr std::uint64_t kValidate = 9;
} // namespace tags

namespace detail {

inline void require_j(const ChartManifold& m, const char* op) {
    if (!m.has_j())
        throw ConfigError(std::string(op) + " needs an almost complex structure, but '" +
                          m.name() + "' has none");
}

// Unit vector, then a unit vector g-orthogonal to it. Generic: no constraint
// against the J-image, so the spanned planes sample all holomorphy angles.
inline std::pair<std::vector<double>, std::vector<double>>
sample_orthonormal_pair(const Mat<double>& g, Rng& rng) {
    const int n = static_cast<int>(g.size());
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<double> x(n), y(n);
        for (double& c : x) c = rng.gauss();
        double nx = g_dot(g, x, x);
        if (nx <= kGramFloor) continue;
        double sx = 1.0 / std::sqrt(nx);
        for (double& c : x) c *= sx;
        for (double& c : y) c = rng.gauss();
        double xy = g_dot(g, x, y);
        for (int i = 0; i < n; ++i) y[i] -= xy * x[i];
        double ny = g_dot(g, y, y);
        if (ny <= kGramFloor) continue;
        double sy = 1.0 / std::sqrt(ny);
        for (double& c : y) c *= sy;
        return {std::move(x), std::move(y)};
    }
    throw EvalError("failed to sample an orthonormal pair");
}

} // namespace detail

// --- curvature identity chain ------------------------------------------------

// Residuals of the three J-curvature identities that define the nested
// classes (1 is the strongest, 3 the weakest):
//   (1) R(X,Y,Z,W) = R(X,Y,JZ,JW)
//   (2) R(X,Y,Z,W) = R(JX,JY,Z,W) + R(JX,Y,JZ,W) + R(JX,Y,Z,JW)
//   (3) R(X,Y,Z,W) = R(JX,JY,JZ,JW)
// Each residual is the max-norm defect of the identity over sampled frames,
// relative to the Frobenius norm of the frame curvature tensor.
struct IdentityReport {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    bool in_class1 = false, in_class2 = false, in_class3 = false;
    bool chain_ok = false; // class memberships are nested as expected
    double tol = kTolClass;
    int samples = 0;
};

inline IdentityReport classify_identities(const ChartManifold& m, const SampleOptions& opt) {
    detail::require_j(m, "identity classification");
    IdentityReport rep;
    rep.tol = opt.tol;
    Rng prng(derive_seed(opt.seed, tags::kIdentities));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        Rng frng(derive_seed(opt.seed, tags::kIdentities, static_cast<std::uint64_t>(s) + 1));
        for (int f = 0; f < opt.frames; ++f) {
            Mat<double> frame = m.sample_frame(p, frng);
            Tensor4 rt = frame_curvature(cp, frame);
            Mat<double> jb = frame_j(cp, frame);
            double fro = std::max(rt.frobenius(), kNormFloor);
            Tensor4 m0011 = masked_frame_tensor(rt, jb, 0b0011u);
            Tensor4 m1100 = masked_frame_tensor(rt, jb, 0b1100u);
            Tensor4 m1010 = masked_frame_tensor(rt, jb, 0b1010u);
            Tensor4 m1001 = masked_frame_tensor(rt, jb, 0b1001u);
            Tensor4 m1111 = masked_frame_tensor(rt, jb, 0b1111u);
            rep.r1 = std::max(rep.r1, (rt - m0011).max_abs() / fro);
            rep.r2 = std::max(rep.r2, (rt - (m1100 + m1010 + m1001)).max_abs() / fro);
            rep.r3 = std::max(rep.r3, (rt - m1111).max_abs() / fro);
            ++rep.samples;
        }
    }
    rep.in_class1 = rep.r1 <= opt.tol;
    rep.in_class2 = rep.r2 <= opt.tol;
    rep.in_class3 = rep.r3 <= opt.tol;
    rep.chain_ok = (!rep.in_class1 || rep.in_class2) && (!rep.in_class2 || rep.in_class3);
    return rep;
}

// --- structure scan (Kaehler / nearly Kaehler) --------------------------------

struct StructureReport {
    double nablaj_max = 0.0; // max component of nabla J over samples
    double nk_resid = 0.0;   // max |(nabla_X J) X| over unit X
    bool kahler = false;
    bool nearly_kahler = false;
    double tol = kTolClass;
    int samples = 0;
};

inline StructureReport structure_scan(const ChartManifold& m, const SampleOptions& opt) {
    detail::require_j(m, "structure scan");
    StructureReport rep;
    rep.tol = opt.tol;
    const int n = m.dim();
    Rng prng(derive_seed(opt.seed, tags::kStructure));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        for (double v : cp.nablaj) rep.nablaj_max = std::max(rep.nablaj_max, std::abs(v));
        Rng frng(derive_seed(opt.seed, tags::kStructure, static_cast<std::uint64_t>(s) + 1));
        for (int f = 0; f < opt.frames; ++f) {
            Mat<double> frame = m.sample_frame(p, frng);
            for (int a = 0; a < n; ++a) {
                const std::vector<double>& x = frame[a];
                std::vector<double> t(n, 0.0);
                for (int k = 0; k < n; ++k)
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) t[k] += x[i] * cp.nJ(i, k, j) * x[j];
                rep.nk_resid = std::max(rep.nk_resid, std::sqrt(g_dot(cp.g, t, t)));
                ++rep.samples;
            }
        }
    }
    rep.kahler = rep.nablaj_max <= opt.tol;
    rep.nearly_kahler = rep.nk_resid <= opt.tol;
    return rep;
}

// --- constant type -------------------------------------------------------------

// lambda(X,Y) = R(X,Y,X,Y) - R(X,Y,JX,JY) and w(X,Y) is the squared area of
// the plane corrected by the holomorphy angle:
//   w = g(X,X)g(Y,Y) - g(X,Y)^2 - g(JX,Y)^2.
// Strict constant type: lambda = alpha * w for a single global alpha.
// Weak form: R(X,Y,X,Y) - 2R(X,Y,JX,JY) + R(JX,JY,JX,JY) = 2 alpha w.
// Both alphas are least-squares fits over all sampled pairs; residuals are
// measured against the global fit, so a pointwise-only property fails here.
struct TypeReport {
    double alpha_strict = 0.0, alpha_weak = 0.0;
    double strict_resid = 0.0, weak_resid = 0.0;
    double strict_spread = 0.0, weak_spread = 0.0; // range of per-point fits
    double eq_j_sym_resid = 0.0; // |R(X,Y,X,Y) - R(JX,JY,JX,JY)|
    bool strict_pass = false, weak_pass = false;
    bool weak_pointwise = false; // weak identity holds with per-point alpha
    double tol = kTolClass;
    int samples = 0;
};

inline TypeReport constant_type_scan(const ChartManifold& m, const SampleOptions& opt) {
    detail::require_j(m, "constant type analysis");
    TypeReport rep;
    rep.tol = opt.tol;
    const int n = m.dim();

    struct Sample {
        int point;
        double lam, weak_lhs, w, eq_j_sym;
    };
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(opt.points) * opt.pairs);

    Rng prng(derive_seed(opt.seed, tags::kType));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        Rng vrng(derive_seed(opt.seed, tags::kType, static_cast<std::uint64_t>(s) + 1));
        for (int q = 0; q < opt.pairs; ++q) {
            auto [x, y] = detail::sample_orthonormal_pair(cp.g, vrng);
            std::vector<double> jx = mat_vec(cp.jmat, x);
            std::vector<double> jy = mat_vec(cp.jmat, y);
            double rxyxy = r_apply(cp.rlow, x, y, x, y);
            double rxyjxjy = r_apply(cp.rlow, x, y, jx, jy);
            double rjj = r_apply(cp.rlow, jx, jy, jx, jy);
            double gjxy = g_dot(cp.g, jx, y);
            Sample smp;
            smp.point = s;
            smp.lam = rxyxy - rxyjxjy;
            smp.weak_lhs = rxyxy - 2.0 * rxyjxjy + rjj;
            smp.w = 1.0 - gjxy * gjxy; // X, Y are g-orthonormal
            smp.eq_j_sym = std::abs(rxyxy - rjj);
            samples.push_back(smp);
        }
    }
    rep.samples = static_cast<int>(samples.size());

    // In dimension two every orthonormal pair spans the (holomorphic) tangent
    // plane, so w vanishes identically and the fit denominator is rounding
    // noise; the floor makes the fit report exactly zero instead of a ratio
    // of noise terms.
    auto fit = [&](auto value_of, int point) {
        double num = 0.0, den = 0.0;
        for (const Sample& s : samples) {
            if (point >= 0 && s.point != point) continue;
            num += value_of(s) * s.w;
            den += s.w * s.w;
        }
        return den > kNormFloor ? num / den : 0.0;
    };
    auto lam_of = [](const Sample& s) { return s.lam; };
    auto weak_of = [](const Sample& s) { return 0.5 * s.weak_lhs; };

    rep.alpha_strict = fit(lam_of, -1);
    rep.alpha_weak = fit(weak_of, -1);

    double strict_lo = std::numeric_limits<double>::infinity(), strict_hi = -strict_lo;
    double weak_lo = strict_lo, weak_hi = -strict_lo;
    double weak_pw_resid = 0.0;
    for (int s = 0; s < opt.points; ++s) {
        double as = fit(lam_of, s);
        double aw = fit(weak_of, s);
        strict_lo = std::min(strict_lo, as);
        strict_hi = std::max(strict_hi, as);
        weak_lo = std::min(weak_lo, aw);
        weak_hi = std::max(weak_hi, aw);
        for (const Sample& smp : samples)
            if (smp.point == s)
                weak_pw_resid =
                    std::max(weak_pw_resid, std::abs(smp.weak_lhs - 2.0 * aw * smp.w));
    }
    rep.strict_spread = strict_hi - strict_lo;
    rep.weak_spread = weak_hi - weak_lo;

    double scale_strict = std::max(1.0, std::abs(rep.alpha_strict));
    double scale_weak = std::max(1.0, std::abs(rep.alpha_weak));
    for (const Sample& smp : samples) {
        rep.strict_resid = std::max(
            rep.strict_resid, std::abs(smp.lam - rep.alpha_strict * smp.w) / scale_strict);
        rep.weak_resid = std::max(
            rep.weak_resid, std::abs(smp.weak_lhs - 2.0 * rep.alpha_weak * smp.w) / scale_weak);
        rep.eq_j_sym_resid = std::max(rep.eq_j_sym_resid, smp.eq_j_sym);
    }
    rep.strict_pass = rep.strict_resid <= opt.tol;
    rep.weak_pass = rep.weak_resid <= opt.tol;
    rep.weak_pointwise = weak_pw_resid / scale_weak <= opt.tol;
    return rep;
}

// Consistency gate between the weak/strict type conditions and membership in
// class 3. Under the weak condition the strict one is expected to hold
// exactly when identity (3) does; we report whether the computed verdicts
// agree. "inconclusive" means the precondition (global weak constant type)
// failed, so the equivalence is not being tested at all.
struct TypeConsistencyReport {
    TypeReport type;
    IdentityReport ids;
    bool precondition = false;
    std::string verdict; // consistent | violation | inconclusive
};

inline TypeConsistencyReport type_consistency_check(const ChartManifold& m,
                                                    const SampleOptions& opt) {
    TypeConsistencyReport rep;
    rep.type = constant_type_scan(m, opt);
    rep.ids = classify_identities(m, opt);
    rep.precondition = rep.type.weak_pass;
    if (!rep.precondition)
        rep.verdict = "inconclusive";
    else if (rep.type.strict_pass == rep.ids.in_class3)
        rep.verdict = "consistent";
    else
        rep.verdict = "violation";
    return rep;
}

// --- space form fit ------------------------------------------------------------

// Least-squares fit of the frame curvature tensor to the two-parameter
// rotationally invariant model RT = alpha*R1 + beta*R2 with
//   R1[abcd] = d_ad d_bc - d_ac d_bd
//   R2[abcd] = JB_ad JB_bc - JB_ac JB_bd - 2 JB_ab JB_cd.
// In dimension 2 the two basis tensors are collinear (R2 = 3 R1 for any
// compatible J), so the fit degenerates to alpha alone and beta is reported
// as zero with the `degenerate` flag set.
struct SpaceformReport {
    double alpha = 0.0, beta = 0.0;
    double resid = 0.0; // relative Frobenius residual of the global fit
    bool degenerate = false;
    bool pass = false;
    double hol_sec = 0.0;  // -(alpha + 3 beta): holomorphic sectional curvature
    double antihol_sec = 0.0; // -alpha: anti-holomorphic sectional curvature
    double tol = kTolClass;
    int samples = 0;
};

inline SpaceformReport spaceform_fit(const ChartManifold& m, const SampleOptions& opt) {
    detail::require_j(m, "space form fit");
    SpaceformReport rep;
    rep.tol = opt.tol;
    const int n = m.dim();

    struct FrameData {
        Tensor4 rt;
        Mat<double> jb;
    };
    std::vector<FrameData> data;
    data.reserve(static_cast<std::size_t>(opt.points) * opt.frames);

    Rng prng(derive_seed(opt.seed, tags::kSpaceform));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        Rng frng(derive_seed(opt.seed, tags::kSpaceform, static_cast<std::uint64_t>(s) + 1));
        for (int f = 0; f < opt.frames; ++f) {
            Mat<double> frame = m.sample_frame(p, frng);
            data.push_back({frame_curvature(cp, frame), frame_j(cp, frame)});
        }
    }
    rep.samples = static_cast<int>(data.size());

    auto r1 = [](int a, int b, int c, int d) {
        return (a == d && b == c ? 1.0 : 0.0) - (a == c && b == d ? 1.0 : 0.0);
    };
    auto r2 = [](const Mat<double>& jb, int a, int b, int c, int d) {
        return jb[a][d] * jb[b][c] - jb[a][c] * jb[b][d] - 2.0 * jb[a][b] * jb[c][d];
    };

    double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0, rr = 0;
    for (const FrameData& fd : data)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double v1 = r1(a, b, c, d);
                        double v2 = r2(fd.jb, a, b, c, d);
                        double rv = fd.rt.at(a, b, c, d);
                        s11 += v1 * v1;
                        s12 += v1 * v2;
                        s22 += v2 * v2;
                        b1 += v1 * rv;
                        b2 += v2 * rv;
                        rr += rv * rv;
                    }

    double det = s11 * s22 - s12 * s12;
    if (det <= 1e-12 * s11 * s22 || s22 == 0.0) {
        rep.degenerate = true;
        rep.alpha = s11 > 0.0 ? b1 / s11 : 0.0;
        rep.beta = 0.0;
    } else {
        rep.alpha = (b1 * s22 - b2 * s12) / det;
        rep.beta = (b2 * s11 - b1 * s12) / det;
    }

    double num = 0.0;
    for (const FrameData& fd : data)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        double model = rep.alpha * r1(a, b, c, d) + rep.beta * r2(fd.jb, a, b, c, d);
                        double diff = fd.rt.at(a, b, c, d) - model;
                        num += diff * diff;
                    }
    rep.resid = std::sqrt(num / std::max(rr, kNormFloor));
    rep.pass = rep.resid <= opt.tol;
    rep.hol_sec = -(rep.alpha + 3.0 * rep.beta);
    rep.antihol_sec = -rep.alpha;
    return rep;
}

// --- sectional curvature scan ----------------------------------------------------

struct SectionalReport {
    double min_k = 0.0, max_k = 0.0, mean_k = 0.0;
    double spread = 0.0;
    int planes = 0;
};

inline SectionalReport sectional_scan(const ChartManifold& m, const SampleOptions& opt) {
    SectionalReport rep;
    rep.min_k = std::numeric_limits<double>::infinity();
    rep.max_k = -rep.min_k;
    double sum = 0.0;
    Rng prng(derive_seed(opt.seed, tags::kSectional));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        Rng vrng(derive_seed(opt.seed, tags::kSectional, static_cast<std::uint64_t>(s) + 1));
        for (int q = 0; q < opt.pairs; ++q) {
            auto [x, y] = detail::sample_orthonormal_pair(cp.g, vrng);
            auto k = sectional(cp, x, y);
            if (!k) continue;
            rep.min_k = std::min(rep.min_k, *k);
            rep.max_k = std::max(rep.max_k, *k);
            sum += *k;
            ++rep.planes;
        }
    }
    if (rep.planes > 0) rep.mean_k = sum / rep.planes;
    rep.spread = rep.max_k - rep.min_k;
    return rep;
}

// --- cross-term identity -----------------------------------------------------------

// The eight-fold J-symmetrization of the curvature tensor against a
// one-parameter model: LHS[abcd] built from masked frame tensors, RHS =
// mu * B[abcd] where B collects the metric/J pairings and mu is the
// holomorphic sectional curvature at the point. The identity is only claimed
// when the holomorphic sectional curvature is constant across planes at each
// point, so that constancy is checked first (hol_spread) and acts as a gate:
// without it the scan reports "inconclusive" rather than pass/fail.
struct RizzaReport {
    double mu = 0.0;         // mean holomorphic sectional curvature over samples
    double mu_fit = 0.0;     // global least-squares fit of LHS against the basis
    double mu_spread = 0.0;  // range of the per-point means
    double hol_spread = 0.0; // worst per-point spread across holomorphic planes
    double resid = 0.0;      // identity defect against the per-point mu
    bool gated = false;      // per-point holomorphic sectional curvature is constant
    bool pass = false;
    std::string verdict;     // pass | fail | inconclusive
    double tol = kTolClass;
    int samples = 0;
};

namespace detail {

inline Tensor4 rizza_lhs(const Tensor4& rt, const Mat<double>& jb) {
    const int n = rt.n;
    Tensor4 m0011 = masked_frame_tensor(rt, jb, 0b0011u);
    Tensor4 m1100 = masked_frame_tensor(rt, jb, 0b1100u);
    Tensor4 m1111 = masked_frame_tensor(rt, jb, 0b1111u);
    Tensor4 m0110 = masked_frame_tensor(rt, jb, 0b0110u);
    Tensor4 m1001 = masked_frame_tensor(rt, jb, 0b1001u);
    Tensor4 m0101 = masked_frame_tensor(rt, jb, 0b0101u);
    Tensor4 m1010 = masked_frame_tensor(rt, jb, 0b1010u);
    Tensor4 lhs(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double t3 = rt.at(a, b, c, d) + m0011.at(a, b, c, d) +
                                m1100.at(a, b, c, d) + m1111.at(a, b, c, d);
                    double t2 = m0011.at(a, d, b, c) + m1100.at(a, d, b, c) -
                                m0011.at(a, c, b, d) - m1100.at(a, c, b, d);
                    double t1 = m0110.at(a, b, c, d) + m1001.at(a, b, c, d) +
                                m0101.at(a, b, c, d) + m1010.at(a, b, c, d);
                    lhs.at(a, b, c, d) = 3.0 * t3 - 2.0 * t2 - t1;
                }
    return lhs;
}

inline Tensor4 rizza_basis(const Mat<double>& jb) {
    const int n = static_cast<int>(jb.size());
    Tensor4 basis(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double v = (a == c && b == d ? 1.0 : 0.0) - (a == d && b == c ? 1.0 : 0.0) +
                               jb[c][a] * jb[d][b] - jb[d][a] * jb[c][b] +
                               2.0 * jb[b][a] * jb[d][c];
                    basis.at(a, b, c, d) = 4.0 * v;
                }
    return basis;
}

} // namespace detail

inline RizzaReport rizza_scan(const ChartManifold& m, const SampleOptions& opt) {
    detail::require_j(m, "cross-term identity");
    RizzaReport rep;
    rep.tol = opt.tol;
    const int n = m.dim();

    struct FrameData {
        int point;
        Tensor4 lhs, basis;
    };
    std::vector<FrameData> data;
    data.reserve(static_cast<std::size_t>(opt.points) * opt.frames);
    std::vector<double> mu_point(opt.points, 0.0);

    double mu_lo = std::numeric_limits<double>::infinity(), mu_hi = -mu_lo;
    Rng prng(derive_seed(opt.seed, tags::kRizza));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        Rng frng(derive_seed(opt.seed, tags::kRizza, static_cast<std::uint64_t>(s) + 1));

        // Holomorphic sectional curvature across random planes (X, JX); for a
        // unit X the plane has unit area, so K is just the curvature pairing.
        double k_lo = std::numeric_limits<double>::infinity(), k_hi = -k_lo, k_sum = 0.0;
        int k_cnt = 0;
        for (int q = 0; q < opt.pairs; ++q) {
            std::vector<double> x(n);
            for (double& c : x) c = frng.gauss();
            double nx = g_dot(cp.g, x, x);
            if (nx <= kGramFloor) continue;
            double sx = 1.0 / std::sqrt(nx);
            for (double& c : x) c *= sx;
            std::vector<double> jx = mat_vec(cp.jmat, x);
            double k = r_apply(cp.rlow, x, jx, x, jx);
            k_lo = std::min(k_lo, k);
            k_hi = std::max(k_hi, k);
            k_sum += k;
            ++k_cnt;
        }
        if (k_cnt > 0) {
            mu_point[s] = k_sum / k_cnt;
            rep.hol_spread = std::max(rep.hol_spread, k_hi - k_lo);
            mu_lo = std::min(mu_lo, mu_point[s]);
            mu_hi = std::max(mu_hi, mu_point[s]);
        }

        for (int f = 0; f < opt.frames; ++f) {
            Mat<double> frame = m.sample_frame(p, frng);
            Tensor4 rt = frame_curvature(cp, frame);
            Mat<double> jb = frame_j(cp, frame);
            data.push_back({s, detail::rizza_lhs(rt, jb), detail::rizza_basis(jb)});
        }
    }
    rep.samples = static_cast<int>(data.size());

    double mu_sum = 0.0;
    for (double v : mu_point) mu_sum += v;
    rep.mu = opt.points > 0 ? mu_sum / opt.points : 0.0;
    rep.mu_spread = mu_hi - mu_lo;

    double num = 0.0, den = 0.0;
    for (const FrameData& fd : data)
        for (std::size_t i = 0; i < fd.lhs.v.size(); ++i) {
            num += fd.lhs.v[i] * fd.basis.v[i];
            den += fd.basis.v[i] * fd.basis.v[i];
        }
    rep.mu_fit = den > 0.0 ? num / den : 0.0;

    double scale = std::max(1.0, std::abs(rep.mu));
    for (const FrameData& fd : data)
        for (std::size_t i = 0; i < fd.lhs.v.size(); ++i)
            rep.resid = std::max(
                rep.resid, std::abs(fd.lhs.v[i] - mu_point[fd.point] * fd.basis.v[i]) / scale);

    rep.gated = rep.hol_spread / scale <= opt.tol * 100.0;
    rep.pass = rep.gated && rep.resid <= opt.tol;
    rep.verdict = !rep.gated ? "inconclusive" : (rep.resid <= opt.tol ? "pass" : "fail");
    return rep;
}

// --- generic symmetry scan ---------------------------------------------------------

struct SymmetryReport {
    double anti_xy = 0.0, anti_zw = 0.0, pair_sym = 0.0, bianchi = 0.0;
    bool ok = false;
    double tol = kTolAlgebra;
    int samples = 0;
};

inline SymmetryReport symmetry_scan(const ChartManifold& m, const SampleOptions& opt) {
    SymmetryReport rep;
    const int n = m.dim();
    Rng prng(derive_seed(opt.seed, tags::kSymmetry));
    for (int s = 0; s < opt.points; ++s) {
        std::vector<double> p = m.sample_point(prng);
        CurvaturePoint cp = curvature_at(m, p);
        double scale = std::max(cp.rlow.frobenius(), 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        double r = cp.rlow.at(i, j, k, l);
                        rep.anti_xy = std::max(
                            rep.anti_xy, std::abs(r + cp.rlow.at(j, i, k, l)) / scale);
                        rep.anti_zw = std::max(
                            rep.anti_zw, std::abs(r + cp.rlow.at(i, j, l, k)) / scale);
                        rep.pair_sym = std::max(
                            rep.pair_sym, std::abs(r - cp.rlow.at(k, l, i, j)) / scale);
                        rep.bianchi = std::max(
                            rep.bianchi,
                            std::abs(r + cp.rlow.at(j, k, i, l) + cp.rlow.at(k, i, j, l)) / scale);
                    }
        ++rep.samples;
    }
    rep.ok = rep.anti_xy <= rep.tol && rep.anti_zw <= rep.tol && rep.pair_sym <= rep.tol &&
             rep.bianchi <= rep.tol;
    return rep;
}

} // namespace ahgeo
