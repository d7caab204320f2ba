#include <CLI11.hpp>

#include <iostream>

#include "ahgeo/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"chart-based curvature toolkit for almost Hermitian manifolds"};
    app.require_subcommand(1);

    ahgeo::RunConfig cfg;
    auto add_common = [&](CLI::App* sub, bool takes_target) {
        sub->add_option("--seed", cfg.opt.seed, "random seed for all sampling");
        sub->add_option("--points", cfg.opt.points, "number of chart sample points")
            ->check(CLI::Range(1, 1 << 20));
        sub->add_option("--frames", cfg.opt.frames, "orthonormal frames per point")
            ->check(CLI::Range(1, 1 << 20));
        sub->add_option("--pairs", cfg.opt.pairs, "random probe pairs per point")
            ->check(CLI::Range(1, 1 << 20));
        sub->add_option("--tol", cfg.opt.tol, "pass/fail tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--report", cfg.report_path, "write the JSON report to this file");
        sub->add_flag("--json", cfg.json_out, "print the JSON report instead of the summary");
        if (takes_target) {
            sub->add_option("--model", cfg.model, "built-in model or embedding name");
            sub->add_option("--input", cfg.input, "JSON description file")
                ->check(CLI::ExistingFile);
        }
    };

    add_common(app.add_subcommand("validate", "check metric symmetry, positivity and the "
                                              "almost complex structure"),
               true);
    add_common(app.add_subcommand("classify", "curvature identity classes and structure flags"),
               true);
    add_common(app.add_subcommand("constant-type",
                                  "strict and weak constant type constants and their gates"),
               true);
    add_common(app.add_subcommand("spaceform",
                                  "fit to the constant-holomorphic-curvature model"),
               true);
    add_common(app.add_subcommand("rizza", "gated holomorphic sectional curvature identity"),
               true);
    CLI::App* sub =
        app.add_subcommand("submanifold", "fundamental forms, invariance and obstructions");
    add_common(sub, true);
    sub->add_option("--gamma-fault", cfg.opt.gamma_fault,
                    "inject a connection fault of this size into the pipeline");
    add_common(app.add_subcommand("all", "run the whole catalog against its pins"), false);
    add_common(app.add_subcommand("list-models", "list built-in models and embeddings"), false);
    CLI::App* ex = app.add_subcommand("export-models", "write built-in inputs as JSON files");
    ex->add_option("--dir", cfg.export_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    return ahgeo::run_config(cfg, std::cout, std::cerr);
}
