#include <exception>
#include <iostream>

#include "CLI11.hpp"

#include "corrmetric/errors.hpp"
#include "commands.hpp"

namespace {

template <typename Command>
int run_guarded(Command&& command) {
    try {
        return command();
    } catch (const corrmetric::ZeroVarianceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"absolute correlation distance: pairwise matrices, relaxed "
                 "triangle inequality certification, and exact nearest "
                 "neighbor search",
                 "corrmetric"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "0.1.0");

    corrmetric::cli::DistOptions dist_opt;
    CLI::App* dist = app.add_subcommand(
        "dist", "write the pairwise distance matrix of a dataset as CSV");
    dist->add_option("input", dist_opt.input, "input CSV, one sample per row")
        ->required();
    dist->add_option("--out", dist_opt.out, "output path (default: stdout)");
    dist->add_flag("--header", dist_opt.header, "skip the first input line");
    dist->add_flag("--id-col", dist_opt.id_col,
                   "treat the first column as sample ids");

    corrmetric::cli::VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand(
        "verify", "sweep triple configurations and report the worst ratio "
                  "d(x,z) / (d(x,y) + d(y,z))");
    verify->add_option("--mode", verify_opt.mode, "sweep mode")
        ->required()
        ->check(CLI::IsMember({"grid", "random"}));
    verify->add_option("--step", verify_opt.step,
                       "grid spacing in radians (grid mode)");
    verify->add_option("--trials", verify_opt.trials,
                       "number of random triples (random mode)");
    verify->add_option("--dim", verify_opt.dim,
                       "sample length for random triples (random mode)");
    verify->add_option("--seed", verify_opt.seed,
                       "seed for the random sweep (default: 0)");
    verify->add_option("--k", verify_opt.k,
                       "relaxation constant to certify (default: 2)");
    verify->add_option("--out", verify_opt.out,
                       "report path (default: stdout)");

    corrmetric::cli::CounterexampleOptions cx_opt;
    CLI::App* cx = app.add_subcommand(
        "counterexample",
        "construct a triple violating the k-relaxed triangle inequality");
    cx->add_option("--k", cx_opt.k, "relaxation constant to refute")
        ->required();
    cx->add_option("--out", cx_opt.out, "witness path (default: stdout)");

    corrmetric::cli::IndexOptions index_opt;
    CLI::App* index = app.add_subcommand(
        "index", "build a vantage point index and write it as JSON");
    index->add_option("--data", index_opt.data, "corpus CSV")->required();
    index->add_option("--out", index_opt.out,
                      "index path (default: stdout)");
    index->add_option("--strategy", index_opt.strategy,
                      "pruning strategy (default: relaxed-k)")
        ->check(CLI::IsMember({"relaxed-k", "projective-angle", "brute"}));
    index->add_option("--k-constant", index_opt.k_constant,
                      "relaxation constant used for pruning (default: 2)");
    index->add_option("--leaf-size", index_opt.leaf_size,
                      "maximum points per leaf (default: 16)");
    index->add_option("--seed", index_opt.seed,
                      "seed for vantage point selection (default: 0)");
    index->add_flag("--header", index_opt.header, "skip the first input line");
    index->add_flag("--id-col", index_opt.id_col,
                    "treat the first column as sample ids");

    corrmetric::cli::KnnOptions knn_opt;
    CLI::App* knn = app.add_subcommand(
        "knn", "answer k nearest neighbor queries, one JSON line per query");
    CLI::Option* knn_index =
        knn->add_option("--index", knn_opt.index_path, "index JSON file");
    CLI::Option* knn_data =
        knn->add_option("--data", knn_opt.data,
                        "corpus CSV to index on the fly");
    knn_index->excludes(knn_data);
    knn->add_option("--query", knn_opt.query, "query CSV")->required();
    knn->add_option("--k", knn_opt.k, "number of neighbors per query")
        ->required();
    knn->add_option("--strategy", knn_opt.strategy,
                    "pruning strategy override")
        ->check(CLI::IsMember({"relaxed-k", "projective-angle", "brute"}));
    knn->add_flag("--header", knn_opt.header, "skip the first input line");
    knn->add_flag("--id-col", knn_opt.id_col,
                  "treat the first column as sample ids");
    knn->add_option("--out", knn_opt.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand(dist)) {
        return run_guarded([&] { return corrmetric::cli::cmd_dist(dist_opt); });
    }
    if (app.got_subcommand(verify)) {
        return run_guarded(
            [&] { return corrmetric::cli::cmd_verify(verify_opt); });
    }
    if (app.got_subcommand(cx)) {
        return run_guarded(
            [&] { return corrmetric::cli::cmd_counterexample(cx_opt); });
    }
    if (app.got_subcommand(index)) {
        return run_guarded(
            [&] { return corrmetric::cli::cmd_index(index_opt); });
    }
    if (app.got_subcommand(knn)) {
        return run_guarded([&] { return corrmetric::cli::cmd_knn(knn_opt); });
    }
    std::cerr << "error: no command given\n";
    return 2;
}
