#include "hdcc/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char **argv)
{
    using namespace hdcc;
    CLI::App app{"hdcc: compiles .hdcc classification descriptions to C"};
    app.require_subcommand(1);
    app.fallthrough();

    cli::Options opt;
    std::uint64_t seed = 0;
    std::uint32_t threads = 0;
    std::vector<double> range;
    app.add_option("--seed", seed, "PRNG seed; overrides .SEED");
    app.add_option("--threads", threads, "worker count; overrides .NUM_THREADS")->check(CLI::PositiveNumber);
    app.add_option("--range", range, "min max for mapping values onto LEVEL rows")->expected(2);
    app.add_flag("--auto-range", opt.auto_range, "derive the LEVEL range from the training data");
    app.add_option("-o,--output", opt.out_dir, "output directory");

    std::string desc;
    core::DataPaths paths;
    auto add_data = [&](CLI::App *sub) {
        sub->add_option("train_data", paths.train_data)->required();
        sub->add_option("train_labels", paths.train_labels)->required();
        sub->add_option("test_data", paths.test_data)->required();
        sub->add_option("test_labels", paths.test_labels)->required();
    };

    auto *compile = app.add_subcommand("compile", "write the C program and Makefile");
    compile->add_option("description", desc)->required();

    auto *run = app.add_subcommand("run", "train and test with the reference interpreter");
    run->add_option("description", desc)->required();
    add_data(run);
    std::string report;
    run->add_option("--report", report, "write the memory digest and predictions here");

    auto *check = app.add_subcommand("check", "parse, validate and type-check");
    check->add_option("description", desc)->required();

    auto *dump = app.add_subcommand("ir-dump", "print the encoding IR");
    dump->add_option("description", desc)->required();
    dump->add_flag("--unfused", opt.unfused, "print the IR before fusion");

    auto *conf = app.add_subcommand("conformance", "compare the compiled program against the interpreter");
    conf->add_option("description", desc)->required();
    add_data(conf);
    std::uint64_t perturb = 0;
    auto *perturb_opt = conf->add_option("--perturb-seed", perturb, "bake this seed into the binary instead");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    if (app.count("--seed"))
        opt.seed = seed;
    if (app.count("--threads"))
        opt.threads = threads;
    if (!range.empty()) {
        if (!(range[0] < range[1])) {
            std::cerr << "--range: min must be less than max\n";
            return cli::kExitUsage;
        }
        opt.range = dataio::ValueRange{range[0], range[1]};
    }
    if (!report.empty())
        opt.report = report;
    if (perturb_opt->count())
        opt.perturb_seed = perturb;

    if (*compile)
        return cli::cmd_compile(desc, opt, std::cout, std::cerr);
    if (*run)
        return cli::cmd_run(desc, paths, opt, std::cout, std::cerr);
    if (*check)
        return cli::cmd_check(desc, opt, std::cout, std::cerr);
    if (*dump)
        return cli::cmd_ir_dump(desc, opt, std::cout, std::cerr);
    return cli::cmd_conformance(desc, paths, opt, std::cout, std::cerr);
}
