#include "corrmetric/serialize.hpp"

#include <cstdint>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "corrmetric/errors.hpp"

namespace corrmetric {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string ratio_report_to_json(const RatioReport& report) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = report.k_used;
    j["max_ratio"] = report.max_ratio;
    j["argmax"]["alpha"] = report.argmax.alpha;
    j["argmax"]["beta"] = report.argmax.beta;
    j["argmax"]["gamma"] = report.argmax.gamma;
    j["evaluated"] = report.samples_evaluated;
    j["skipped"] = report.samples_skipped_degenerate;
    j["parameters"]["mode"] = report.parameters.mode;
    if (report.parameters.mode == "grid") {
        j["parameters"]["step"] = report.parameters.step;
    } else {
        j["parameters"]["trials"] = report.parameters.trials;
        j["parameters"]["seed"] = report.parameters.seed;
        j["parameters"]["dimension"] = report.parameters.dimension;
    }
    j["generator_name"] = report.generator_name;
    return j.dump(2) + "\n";
}

std::string counterexample_to_json(const Counterexample& witness, double k) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = k;
    j["ratio"] = witness.ratio;
    j["angles"]["alpha"] = witness.angles.alpha;
    j["angles"]["beta"] = witness.angles.beta;
    j["angles"]["gamma"] = witness.angles.gamma;
    j["x"] = witness.x.values();
    j["y"] = witness.y.values();
    j["z"] = witness.z.values();
    return j.dump(2) + "\n";
}

std::string index_to_json(const QmIndex& index) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["config"]["strategy"] = strategy_name(index.config().strategy);
    j["config"]["k_constant"] = index.config().k_constant;
    j["config"]["leaf_size"] = index.config().leaf_size;
    j["config"]["seed"] = index.config().seed;
    j["points"] = ordered_json::array();
    for (std::size_t i = 0; i < index.size(); ++i) {
        ordered_json p;
        p["id"] = index.id(i);
        p["values"] = index.point(i).values();
        j["points"].push_back(std::move(p));
    }
    j["nodes"] = ordered_json::array();
    for (const VpNode& nd : index.nodes()) {
        ordered_json n;
        n["vantage"] = nd.vantage;
        n["mu"] = nd.mu;
        n["near"] = nd.near;
        n["far"] = nd.far;
        j["nodes"].push_back(std::move(n));
    }
    return j.dump(2) + "\n";
}

QmIndex index_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw Error(std::string("invalid index file: ") + e.what());
    }
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw Error("unsupported index schema_version");
        }
        IndexConfig cfg;
        const ordered_json& jc = j.at("config");
        cfg.strategy = strategy_from_name(jc.at("strategy").get<std::string>());
        cfg.k_constant = jc.at("k_constant").get<double>();
        cfg.leaf_size = jc.at("leaf_size").get<std::size_t>();
        cfg.seed = jc.at("seed").get<std::uint64_t>();

        std::vector<CenteredUnit> points;
        for (const ordered_json& p : j.at("points")) {
            points.push_back(CenteredUnit::from_unit_vector(
                p.at("values").get<std::vector<double>>(), p.at("id").get<std::string>()));
        }
        std::vector<VpNode> skeleton;
        for (const ordered_json& n : j.at("nodes")) {
            VpNode nd;
            nd.vantage = n.at("vantage").get<std::size_t>();
            nd.mu = n.at("mu").get<double>();
            nd.near = n.at("near").get<std::int64_t>();
            nd.far = n.at("far").get<std::int64_t>();
            skeleton.push_back(std::move(nd));
        }
        return QmIndex::rebuild(std::move(points), cfg, skeleton);
    } catch (const ordered_json::exception& e) {
        throw Error(std::string("invalid index file: ") + e.what());
    }
}

}  // namespace corrmetric
