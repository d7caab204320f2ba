#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ahgeo/runner.hpp"

using namespace ahgeo;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(RunConfig cfg) {
    std::ostringstream out, err;
    int code = run_config(cfg, out, err);
    return {code, out.str(), err.str()};
}

RunConfig base(const std::string& command, const std::string& model = "") {
    RunConfig cfg;
    cfg.command = command;
    cfg.model = model;
    cfg.opt.points = 8;
    cfg.opt.frames = 4;
    cfg.opt.pairs = 12;
    return cfg;
}

} // namespace

TEST_CASE("classify command reports classes and exits cleanly") {
    RunConfig cfg = base("classify", "cp2");
    cfg.json_out = true;
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["command"] == "classify");
    CHECK(doc["model"] == "cp2");
    CHECK(doc["identities"]["in_class1"] == true);
    CHECK(doc["identities"]["chain_ok"] == true);
    CHECK(doc["structure"]["kahler"] == true);
    CHECK(doc["options"]["points"] == 8);
}

TEST_CASE("summary mode prints a readable block") {
    RunResult r = run(base("classify", "s6-nk"));
    CHECK(r.code == 0);
    CHECK(r.out.find("classify s6-nk") != std::string::npos);
    CHECK(r.out.find("classes {2,3}") != std::string::npos);
    CHECK(r.out.find("nearly kahler") != std::string::npos);
}

TEST_CASE("constant-type and spaceform commands agree with the catalog") {
    RunConfig cfg = base("constant-type", "s6-nk");
    cfg.json_out = true;
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["consistency"]["verdict"] == "consistent");
    double alpha = doc["consistency"]["type"]["alpha_weak"].get<double>();
    CHECK(alpha == Catch::Approx(1.0).margin(1e-5));

    cfg = base("spaceform", "cp2");
    cfg.json_out = true;
    r = run(cfg);
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["spaceform"]["pass"] == true);
    CHECK(doc["spaceform"]["hol_sec"].get<double>() == Catch::Approx(4.0).margin(1e-5));
}

TEST_CASE("rizza command surfaces the gate") {
    RunConfig cfg = base("rizza", "s2xs2");
    cfg.json_out = true;
    RunResult r = run(cfg);
    CHECK(r.code == 0); // inconclusive is not a failure
    json doc = json::parse(r.out);
    CHECK(doc["rizza"]["verdict"] == "inconclusive");
    CHECK(doc["rizza"]["gated"] == false);
}

TEST_CASE("submanifold command reports verdicts") {
    RunConfig cfg = base("submanifold", "s2-in-s6");
    cfg.opt.points = 6;
    cfg.json_out = true;
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["embedding"] == "s2-in-s6");
    CHECK(doc["submanifold"]["obstruction_mu"] == "consistent");
    CHECK(doc["submanifold"]["obstruction_alpha"] == "consistent");
    CHECK(doc["submanifold"]["strong_resid"].get<double>() > 0.1);
    CHECK(doc["options"].contains("gamma_fault"));
}

TEST_CASE("validate works for models, embeddings and bad metrics") {
    RunResult r = run(base("validate", "cp2"));
    CHECK(r.code == 0);
    CHECK(r.out.find("validate cp2: ok") != std::string::npos);

    r = run(base("validate", "s2-in-conf-r4"));
    CHECK(r.code == 0);
    CHECK(r.out.find("immersion margin") != std::string::npos);

    fs::path bad = fs::temp_directory_path() / "ahgeo-bad-metric.json";
    {
        std::ofstream f(bad);
        f << R"({"name":"bad","dim":1,"domain":[[-1,1]],"g":[["-1"]]})";
    }
    RunConfig cfg = base("validate");
    cfg.input = bad.string();
    r = run(cfg);
    CHECK(r.code == 1);
    CHECK(r.out.find("FAILED") != std::string::npos);
    fs::remove(bad);
}

TEST_CASE("configuration errors exit with code 2") {
    RunResult r = run(base("classify", "no-such-model"));
    CHECK(r.code == 2);
    CHECK(r.err.find("unknown model") != std::string::npos);

    r = run(base("rizza", "s2-round")); // no almost complex structure
    CHECK(r.code == 2);

    RunConfig cfg = base("classify");
    cfg.input = "/nonexistent/path.json";
    r = run(cfg);
    CHECK(r.code == 2);

    fs::path garbled = fs::temp_directory_path() / "ahgeo-garbled.json";
    {
        std::ofstream f(garbled);
        f << "{ not json";
    }
    cfg.input = garbled.string();
    r = run(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.find("invalid JSON") != std::string::npos);
    fs::remove(garbled);

    r = run(base("frobnicate", "cp2"));
    CHECK(r.code == 2);
}

TEST_CASE("file inputs reproduce built-in results byte for byte") {
    fs::path dir = fs::temp_directory_path() / "ahgeo-cli-export";
    fs::remove_all(dir);
    RunConfig ex = base("export-models");
    ex.export_dir = dir.string();
    REQUIRE(run(ex).code == 0);

    RunConfig builtin = base("classify", "ch2");
    builtin.json_out = true;
    RunConfig loaded = base("classify");
    loaded.input = (dir / "ch2.json").string();
    loaded.json_out = true;
    CHECK(run(builtin).out == run(loaded).out);

    RunConfig bsub = base("submanifold", "s2-in-conf-r4");
    bsub.opt.points = 5;
    bsub.json_out = true;
    RunConfig lsub = base("submanifold");
    lsub.opt.points = 5;
    lsub.input = (dir / "s2-in-conf-r4.json").string();
    lsub.json_out = true;
    CHECK(run(bsub).out == run(lsub).out);
    fs::remove_all(dir);
}

TEST_CASE("reports are deterministic per seed") {
    RunConfig cfg = base("all");
    cfg.opt.points = 6;
    cfg.opt.frames = 2;
    cfg.opt.pairs = 8;
    cfg.json_out = true;
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    cfg.opt.seed = 123;
    RunResult c = run(cfg);
    REQUIRE(c.code == 0);
    CHECK(a.out != c.out);
    json doc = json::parse(c.out);
    CHECK(doc["pin_mismatches"] == 0);
    CHECK(doc["models"].size() == models::catalog().size());
    CHECK(doc["embeddings"].size() == models::embeddings().size());
}

TEST_CASE("report files are written and parse back") {
    fs::path path = fs::temp_directory_path() / "ahgeo-report.json";
    RunConfig cfg = base("rizza", "cp1");
    cfg.report_path = path.string();
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    json doc = json::parse(f);
    CHECK(doc["rizza"]["verdict"] == "pass");
    CHECK(doc["rizza"]["mu"].get<double>() == Catch::Approx(4.0).margin(1e-5));
    fs::remove(path);
}

TEST_CASE("list-models covers the whole catalog") {
    RunConfig cfg = base("list-models");
    cfg.json_out = true;
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["models"].size() == models::catalog().size());
    CHECK(doc["embeddings"].size() == models::embeddings().size());
    bool saw_cp2 = false;
    for (const auto& m : doc["models"])
        if (m["name"] == "cp2") saw_cp2 = m["has_j"] == true && m["dim"] == 4;
    CHECK(saw_cp2);
}

TEST_CASE("injected faults flip the submanifold verdict data") {
    RunConfig cfg = base("submanifold", "s2-in-r3");
    cfg.opt.points = 6;
    cfg.opt.gamma_fault = 1e-3;
    cfg.json_out = true;
    RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["options"]["gamma_fault"].get<double>() == 1e-3);
    CHECK(doc["submanifold"]["codazzi_resid"].get<double>() > 1e-4);
}
