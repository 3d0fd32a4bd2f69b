#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "corrmetric/distance.hpp"
#include "corrmetric/errors.hpp"
#include "corrmetric/serialize.hpp"
#include "corrmetric/verify.hpp"
#include "corrmetric/vp_tree.hpp"
#include "csv.hpp"

namespace corrmetric::cli {

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw Error("failed to write '" + path + "'");
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// With samples of length 2, centering collapses every sample onto the line
// spanned by (1, -1), so all pairwise distances are 0 and the relaxed
// triangle inequality holds vacuously.
void warn_if_vacuous(std::size_t dimension) {
    if (dimension == 2) {
        std::cerr << "warning: samples of length 2 collapse to a single line "
                     "after centering; all distances are 0 up to rounding and "
                     "the relaxed triangle inequality is vacuous\n";
    }
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

int cmd_dist(const DistOptions& opt) {
    const Dataset ds = read_csv(opt.input, opt.header, opt.id_col);
    warn_if_vacuous(ds.dimension);
    const DistanceMatrix m = pairwise_matrix(ds.samples);
    std::ostringstream out;
    write_matrix_csv(out, m);
    write_output(opt.out, out.str());
    return 0;
}

int cmd_verify(const VerifyOptions& opt) {
    RelaxConfig cfg;
    cfg.k = opt.k;

    RatioReport report;
    if (opt.mode == "grid") {
        if (opt.step <= 0.0) {
            throw Error("--mode grid requires --step");
        }
        report = sweep_grid(opt.step, cfg);
    } else if (opt.mode == "random") {
        if (opt.trials == 0) {
            throw Error("--mode random requires --trials");
        }
        if (opt.dim == 0) {
            throw Error("--mode random requires --dim");
        }
        report = sweep_random(opt.trials, opt.dim, opt.seed, cfg);
    } else {
        throw Error("--mode must be 'grid' or 'random'");
    }

    write_output(opt.out, ratio_report_to_json(report));

    if (report.max_ratio > opt.k + 1e-9) {
        std::cerr << "violation: ratio " << format_full(report.max_ratio)
                  << " exceeds k = " << format_full(opt.k)
                  << " at (alpha, beta, gamma) = ("
                  << format_full(report.argmax.alpha) << ", "
                  << format_full(report.argmax.beta) << ", "
                  << format_full(report.argmax.gamma) << ")\n";
        return 1;
    }
    return 0;
}

int cmd_counterexample(const CounterexampleOptions& opt) {
    const Counterexample witness = find_counterexample(opt.k);
    write_output(opt.out, counterexample_to_json(witness, opt.k));
    return 0;
}

int cmd_index(const IndexOptions& opt) {
    const Dataset ds = read_csv(opt.data, opt.header, opt.id_col);
    warn_if_vacuous(ds.dimension);
    IndexConfig cfg;
    cfg.strategy = strategy_from_name(opt.strategy);
    cfg.k_constant = opt.k_constant;
    cfg.leaf_size = opt.leaf_size;
    cfg.seed = opt.seed;
    const QmIndex index = QmIndex::build(ds.samples, cfg);
    write_output(opt.out, index_to_json(index));
    return 0;
}

int cmd_knn(const KnnOptions& opt) {
    if (opt.index_path.empty() == opt.data.empty()) {
        throw Error("exactly one of --index and --data is required");
    }
    if (opt.k == 0) {
        throw DomainError("--k must be at least 1");
    }

    std::optional<QmIndex> index;
    if (!opt.index_path.empty()) {
        index = index_from_json(slurp(opt.index_path));
    } else {
        const Dataset corpus = read_csv(opt.data, opt.header, opt.id_col);
        warn_if_vacuous(corpus.dimension);
        IndexConfig cfg;
        if (!opt.strategy.empty()) {
            cfg.strategy = strategy_from_name(opt.strategy);
        }
        index = QmIndex::build(corpus.samples, cfg);
    }
    if (!opt.strategy.empty()) {
        index->set_strategy(strategy_from_name(opt.strategy));
    }

    const Dataset queries = read_csv(opt.query, opt.header, opt.id_col);

    std::ostringstream out;
    for (const Sample& q : queries.samples) {
        const QueryResult result = index->knn(q, opt.k);
        nlohmann::ordered_json line;
        line["query_id"] = q.id;
        nlohmann::ordered_json neighbors = nlohmann::ordered_json::array();
        for (const Neighbor& n : result.neighbors) {
            nlohmann::ordered_json entry;
            entry["id"] = index->id(n.ordinal);
            entry["distance"] = n.distance;
            neighbors.push_back(std::move(entry));
        }
        line["neighbors"] = std::move(neighbors);
        line["distance_evaluations"] = result.stats.distance_evaluations;
        out << line.dump() << '\n';
    }
    write_output(opt.out, out.str());
    return 0;
}

}  // namespace corrmetric::cli
