#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ahgeo/models.hpp"
#include "ahgeo/submanifold.hpp"

using namespace ahgeo;

namespace {

SubOptions fast_opts(int points = 12) {
    SubOptions o;
    o.points = points;
    o.frames = 4;
    o.pairs = 16;
    return o;
}

Embedding emb(const std::string& name) { return models::find_embedding(name).embedding; }

} // namespace

TEST_CASE("paraboloid second fundamental form matches the closed form") {
    Embedding e = emb("graph-in-r3");
    // at the critical point the graph has B(e1,e1)=2n, B(e2,e2)=4n, B(e1,e2)=0
    detail::SubPoint sp = detail::analyze_point(e, {0.0, 0.0}, 0.0);
    REQUIRE(sp.k == 2);
    REQUIRE(sp.n == 3);
    CHECK(sp.bf(0, 0)[2].value() == Catch::Approx(2.0).margin(1e-12));
    CHECK(sp.bf(1, 1)[2].value() == Catch::Approx(4.0).margin(1e-12));
    for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(sp.bf(0, 1)[c].value()) < 1e-12);
        if (c < 2) {
            CHECK(std::abs(sp.bf(0, 0)[c].value()) < 1e-12);
            CHECK(std::abs(sp.bf(1, 1)[c].value()) < 1e-12);
        }
    }
    std::vector<double> h = detail::jet_values(sp.hvec);
    CHECK(h[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(h[1] == Catch::Approx(0.0).margin(1e-12));
    CHECK(h[2] == Catch::Approx(3.0).margin(1e-12));

    // induced metric jet away from the critical point: g11 = 1 + 4 u1^2
    detail::SubPoint sq = detail::analyze_point(e, {0.1, 0.2}, 0.0);
    CHECK(sq.ghat[0][0].value() == Catch::Approx(1.0 + 4.0 * 0.01).epsilon(1e-12));
    CHECK(sq.ghat[0][0].d(0) == Catch::Approx(8.0 * 0.1).epsilon(1e-12));
}

TEST_CASE("normal frame is orthonormal to first order") {
    for (const char* name : {"graph-in-r3", "s2-in-conf-r4", "cp1-in-cp2"}) {
        Embedding e = emb(name);
        Rng rng(7);
        std::vector<double> u = e.sample_point(rng);
        detail::SubPoint sp = detail::analyze_point(e, u, 0.0);
        REQUIRE(static_cast<int>(sp.normals.size()) == sp.n - sp.k);
        for (std::size_t a = 0; a < sp.normals.size(); ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                Jet p = detail::jet_pair(sp, sp.normals[a], sp.normals[b]);
                double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(p.value() - want) < 1e-10);
                for (int i = 0; i < sp.k; ++i) CHECK(std::abs(p.d(i)) < 1e-9);
            }
            for (int j = 0; j < sp.k; ++j) {
                Jet p = detail::jet_pair(sp, sp.normals[a], sp.tang[j]);
                CHECK(std::abs(p.value()) < 1e-10);
                for (int i = 0; i < sp.k; ++i) CHECK(std::abs(p.d(i)) < 1e-9);
            }
        }
    }
}

TEST_CASE("totally geodesic embeddings have vanishing second fundamental form") {
    for (const char* name : {"c1-in-c2", "r2-in-c2", "cp1-in-cp2"}) {
        SubReport r = submanifold_scan(emb(name), fast_opts());
        INFO(name);
        CHECK(r.b_max < 1e-9);
        CHECK(r.h_max < 1e-9);
        CHECK(r.umbilical);
        CHECK(r.parallel_h);
        CHECK(r.weak_invariant);
        CHECK(r.codazzi_resid < 1e-9);
        CHECK(r.weingarten_resid < 1e-9);
    }
    SubReport s6 = submanifold_scan(emb("s2-in-s6"), fast_opts(6));
    CHECK(s6.b_max < 1e-8);
    CHECK(s6.h_max < 1e-8);
    CHECK(s6.umbilical);
    CHECK(s6.parallel_h);
    CHECK(s6.weak_invariant);
}

TEST_CASE("round spheres carry the expected mean curvature") {
    SubReport r3 = submanifold_scan(emb("s2-in-r3"), fast_opts());
    CHECK(r3.h_min == Catch::Approx(2.0 / 3.0).margin(1e-8));
    CHECK(r3.h_max == Catch::Approx(2.0 / 3.0).margin(1e-8));
    CHECK(r3.umbilical_resid < 1e-8);
    CHECK(r3.umbilical);
    CHECK(r3.parallel_h);
    CHECK(r3.b_max == Catch::Approx(2.0 / 3.0).margin(1e-6));

    SubReport s3 = submanifold_scan(emb("s3-in-c2"), fast_opts());
    CHECK(s3.h_min == Catch::Approx(1.0).margin(1e-8));
    CHECK(s3.h_max == Catch::Approx(1.0).margin(1e-8));
    CHECK(s3.umbilical);
    CHECK(s3.parallel_h);
}

TEST_CASE("paraboloid is neither umbilical nor mean-curvature parallel") {
    SubReport r = submanifold_scan(emb("graph-in-r3"), fast_opts());
    CHECK(r.umbilical_resid > 1e-2);
    CHECK_FALSE(r.umbilical);
    CHECK(r.parallel_h_resid > 1e-2);
    CHECK_FALSE(r.parallel_h);
    CHECK(r.umbilical_equivalence == "inconclusive");
    // flat ambient: invariant even though the shape is curved
    CHECK(r.weak_invariant);
    CHECK(r.strong_invariant);
    // the fundamental equation balances a nontrivial second fundamental form
    CHECK(r.b_max > 0.5);
    CHECK(r.codazzi_resid < 1e-9);
    CHECK(r.weingarten_resid < 1e-9);
}

TEST_CASE("fundamental equations hold in a curved ambient space") {
    SubReport r = submanifold_scan(emb("s2-in-conf-r4"), fast_opts());
    CHECK(r.codazzi_resid < 1e-7);
    CHECK(r.weingarten_resid < 1e-9);
    CHECK(r.umbilical);
    // the conformal factor varies along the sphere, so the mean curvature
    // field cannot be parallel and the image cannot be invariant
    CHECK(r.parallel_h_resid > 1e-3);
    CHECK_FALSE(r.parallel_h);
    CHECK(r.weak_resid > 1e-3);
    CHECK_FALSE(r.weak_invariant);
    CHECK(r.umbilical_equivalence == "consistent");
    // umbilical flux form of the same identity, nontrivial on both sides
    CHECK(r.umbilic_normal_resid < 1e-6);
    CHECK(r.umbilic_normal_scale > 1e-4);
}

TEST_CASE("a connection fault breaks the fundamental equations") {
    SubOptions opt = fast_opts();
    opt.gamma_fault = 1e-3;
    SubReport flat = submanifold_scan(emb("s2-in-r3"), opt);
    CHECK(flat.codazzi_resid > 1e-4);
    SubReport curved = submanifold_scan(emb("s2-in-conf-r4"), opt);
    CHECK(curved.codazzi_resid > 1e-4);
    // control: the same scans are clean without the fault
    SubReport clean = submanifold_scan(emb("s2-in-r3"), fast_opts());
    CHECK(clean.codazzi_resid < 1e-9);
}

TEST_CASE("structure flags track the ambient structure") {
    SubReport hol = submanifold_scan(emb("c1-in-c2"), fast_opts());
    CHECK(hol.ambient_has_j);
    CHECK(hol.holomorphic);
    CHECK_FALSE(hol.totally_real);
    CHECK(hol.holo_resid < 1e-10);
    CHECK(hol.totally_real_resid > 0.5);

    SubReport real = submanifold_scan(emb("r2-in-c2"), fast_opts());
    CHECK(real.totally_real);
    CHECK_FALSE(real.holomorphic);
    CHECK(real.totally_real_resid < 1e-10);
    CHECK(real.holo_resid > 0.5);

    SubReport cp = submanifold_scan(emb("cp1-in-cp2"), fast_opts());
    CHECK(cp.holomorphic);
    CHECK_FALSE(cp.totally_real);

    SubReport s6 = submanifold_scan(emb("s2-in-s6"), fast_opts(6));
    CHECK(s6.holomorphic);
    CHECK(s6.holo_resid < 1e-8);

    SubReport none = submanifold_scan(emb("s2-in-r3"), fast_opts());
    CHECK_FALSE(none.ambient_has_j);
    CHECK_FALSE(none.holomorphic);
    CHECK_FALSE(none.totally_real);
}

TEST_CASE("invariance residuals separate the two notions") {
    SubReport cp = submanifold_scan(emb("cp1-in-cp2"), fast_opts());
    CHECK(cp.weak_resid < 1e-7);
    CHECK(cp.weak_invariant);
    CHECK(cp.strong_resid > 0.1);
    CHECK_FALSE(cp.strong_invariant);

    SubReport s6 = submanifold_scan(emb("s2-in-s6"), fast_opts(6));
    CHECK(s6.weak_resid < 1e-7);
    CHECK(s6.weak_invariant);
    CHECK(s6.strong_resid > 0.1);
    CHECK_FALSE(s6.strong_invariant);

    for (const char* name : {"c1-in-c2", "r2-in-c2", "s2-in-r3", "graph-in-r3",
                             "s2-in-conf-r4", "s3-in-c2"}) {
        SubReport r = submanifold_scan(emb(name), fast_opts(8));
        INFO(name);
        CHECK(r.strong_resid >= r.weak_resid - 1e-15);
    }
}

TEST_CASE("obstruction gates open only under a constant ambient invariant") {
    SubReport cp = submanifold_scan(emb("cp1-in-cp2"), fast_opts());
    CHECK(cp.mu_gate);
    CHECK(cp.ambient_mu == Catch::Approx(4.0).margin(1e-5));
    CHECK(cp.ambient_mu_plane_spread < 1e-6);
    CHECK(cp.obstruction_mu == "consistent");
    // the ambient space satisfies the first identity, so its type vanishes
    CHECK_FALSE(cp.alpha_gate);
    CHECK(std::abs(cp.ambient_alpha) < 1e-6);
    CHECK(cp.obstruction_alpha == "inconclusive");
    CHECK(cp.mixed_type_resid < 1e-6);

    SubReport s6 = submanifold_scan(emb("s2-in-s6"), fast_opts(6));
    CHECK(s6.mu_gate);
    CHECK(s6.alpha_gate);
    CHECK(s6.ambient_mu == Catch::Approx(1.0).margin(1e-5));
    CHECK(s6.ambient_alpha == Catch::Approx(1.0).margin(1e-5));
    CHECK(s6.obstruction_mu == "consistent");
    CHECK(s6.obstruction_alpha == "consistent");
    CHECK(s6.mixed_type_resid < 1e-6);

    SubReport flat = submanifold_scan(emb("c1-in-c2"), fast_opts());
    CHECK_FALSE(flat.mu_gate);
    CHECK_FALSE(flat.alpha_gate);
    CHECK(flat.obstruction_mu == "inconclusive");
    CHECK(flat.obstruction_alpha == "inconclusive");

    SubReport noj = submanifold_scan(emb("s2-in-r3"), fast_opts());
    CHECK(noj.obstruction_mu == "inconclusive");
    CHECK(noj.obstruction_alpha == "inconclusive");
}

TEST_CASE("submanifold scans are deterministic") {
    SubOptions opt = fast_opts(8);
    opt.seed = 42;
    SubReport a = submanifold_scan(emb("s2-in-conf-r4"), opt);
    SubReport b = submanifold_scan(emb("s2-in-conf-r4"), opt);
    CHECK(a.codazzi_resid == b.codazzi_resid);
    CHECK(a.weak_resid == b.weak_resid);
    CHECK(a.strong_resid == b.strong_resid);
    CHECK(a.h_max == b.h_max);
    CHECK(a.parallel_h_resid == b.parallel_h_resid);
    opt.seed = 43;
    SubReport c = submanifold_scan(emb("s2-in-conf-r4"), opt);
    CHECK(a.codazzi_resid != c.codazzi_resid);
    CHECK(c.umbilical);
}

TEST_CASE("immersion margins are comfortable") {
    for (const char* name : {"cp1-in-cp2", "s2-in-r3", "graph-in-r3", "s3-in-c2"}) {
        SubReport r = submanifold_scan(emb(name), fast_opts(8));
        INFO(name);
        CHECK(r.immersion_margin > 0.1);
        CHECK(r.points == 8);
    }
}
