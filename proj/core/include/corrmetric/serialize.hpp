#ifndef CORRMETRIC_SERIALIZE_HPP
#define CORRMETRIC_SERIALIZE_HPP

#include <string>

#include "corrmetric/verify.hpp"
#include "corrmetric/vp_tree.hpp"

namespace corrmetric {

inline constexpr int kSchemaVersion = 1;

/// RatioReport as a JSON document:
/// {schema_version, k, max_ratio, argmax {alpha, beta, gamma}, evaluated,
///  skipped, parameters {mode, step | trials, seed, dimension},
///  generator_name}. Field order is stable; serialization is byte-
/// deterministic for equal reports.
std::string ratio_report_to_json(const RatioReport& report);

/// Counterexample witness as JSON: {schema_version, k, ratio,
///  angles {alpha, beta, gamma}, x, y, z} with vectors as number arrays.
std::string counterexample_to_json(const Counterexample& witness, double k);

/// Index as JSON: {schema_version, config, points: [{id, values}],
///  nodes: [{vantage, mu, near, far}]} with node references by array offset
/// and -1 for "that side is a leaf". Stored values are the centered-unit
/// representatives.
std::string index_to_json(const QmIndex& index);

/// Inverse of index_to_json; buckets and envelopes are reconstructed by
/// replaying each node's partition, so a serialize/load round trip preserves
/// query results exactly. Throws Error on schema violations.
QmIndex index_from_json(const std::string& text);

}  // namespace corrmetric

#endif
