#ifndef CORRMETRIC_TOOLS_COMMANDS_HPP
#define CORRMETRIC_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <string>

namespace corrmetric::cli {

struct DistOptions {
    std::string input;
    std::string out;  // empty: stdout
    bool header = false;
    bool id_col = false;
};

struct VerifyOptions {
    std::string mode;  // "grid" or "random"
    double step = 0.0;
    std::uint64_t trials = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    double k = 2.0;
    std::string out;  // empty: stdout
};

struct CounterexampleOptions {
    double k = 0.0;
    std::string out;  // empty: stdout
};

struct IndexOptions {
    std::string data;
    std::string out;  // empty: stdout
    std::string strategy = "relaxed-k";
    double k_constant = 2.0;
    std::size_t leaf_size = 16;
    std::uint64_t seed = 0;
    bool header = false;
    bool id_col = false;
};

struct KnnOptions {
    std::string index_path;  // exactly one of index_path / data must be set
    std::string data;
    std::string query;
    std::size_t k = 0;
    std::string strategy;  // empty: keep the index's configured strategy
    bool header = false;
    bool id_col = false;
    std::string out;  // empty: stdout
};

int cmd_dist(const DistOptions& opt);
int cmd_verify(const VerifyOptions& opt);
int cmd_counterexample(const CounterexampleOptions& opt);
int cmd_index(const IndexOptions& opt);
int cmd_knn(const KnnOptions& opt);

}  // namespace corrmetric::cli

#endif  // CORRMETRIC_TOOLS_COMMANDS_HPP
