#ifndef CORRMETRIC_VP_TREE_HPP
#define CORRMETRIC_VP_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corrmetric/types.hpp"

namespace corrmetric {

enum class Strategy { RelaxedK, ProjectiveAngle, Brute };

/// "relaxed-k", "projective-angle" or "brute".
std::string strategy_name(Strategy s);

/// Inverse of strategy_name; throws DomainError on unknown names.
Strategy strategy_from_name(const std::string& name);

struct IndexConfig {
    Strategy strategy = Strategy::RelaxedK;
    double k_constant = 2.0;
    std::size_t leaf_size = 16;
    std::uint64_t seed = 0;
};

/// One corpus point in a query result. `ordinal` is the position in the
/// corpus the index was built from; results order by (distance, ordinal).
struct Neighbor {
    std::size_t ordinal = 0;
    double distance = 0.0;
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct QueryStats {
    std::size_t nodes_visited = 0;
    std::size_t distance_evaluations = 0;
};

struct QueryResult {
    std::vector<Neighbor> neighbors;
    QueryStats stats;
};

/// Distance lower bound implied by the k-relaxed triangle inequality:
/// d(q,x) >= max(d_qp/k - d_px, d_px/k - d_qp, 0) for every x with
/// d(p,x) = d_px, sound by the relaxed triangle inequality when k >= 2.
/// Requires d_qp, d_px in [0,1] and k >= 2. Index traversal with a smaller
/// k_constant (the negative-control configuration) computes the same formula
/// internally without this guard.
double lower_bound_relaxed(double d_qp, double d_px, double k);

/// Distance lower bound through the folded-angle representation: folded
/// angles are a genuine metric, so theta(q,x) >= |theta_qp - theta_px| and
/// d = 1 - cos(theta) is monotone on [0, pi/2]. Requires both angles in
/// [0, pi/2].
double lower_bound_angle(double theta_qp, double theta_px);

/// Internal split node. `near`/`far` point at child nodes by array offset,
/// or -1 when that side is a leaf whose members are stored in the bucket.
/// Envelopes bound d(vantage, p) over each side.
struct VpNode {
    std::size_t vantage = 0;  // corpus ordinal
    double mu = 0.0;          // split radius: near side has d <= mu
    std::int64_t near = -1;
    std::int64_t far = -1;
    double near_lo = 0.0, near_hi = 0.0;
    double far_lo = 0.0, far_hi = 0.0;
    std::vector<std::size_t> near_bucket;  // used only when near == -1
    std::vector<std::size_t> far_bucket;   // used only when far == -1
};

/// Vantage-point tree over centered-unit representatives, immutable after
/// construction. Concurrent read-only queries are safe.
class QmIndex {
  public:
    /// Centers and normalizes `points` and builds the tree. Vantage points
    /// are chosen by a SplitMix64 stream seeded from cfg.seed, so the tree
    /// is a pure function of (point order, cfg). Throws ZeroVarianceError
    /// naming the offending id, DimensionMismatchError on ragged input, and
    /// DomainError on an empty corpus or non-positive leaf_size/k_constant.
    static QmIndex build(const std::vector<Sample>& points, const IndexConfig& cfg = {});

    /// Reassembles an index from stored parts: the tree topology is given by
    /// (vantage, mu, near, far) per node and the buckets and envelopes are
    /// recomputed by replaying each node's partition. Because the partition
    /// rule is deterministic, the result is bit-identical to the index the
    /// parts were taken from.
    static QmIndex rebuild(std::vector<CenteredUnit> points, const IndexConfig& cfg,
                           const std::vector<VpNode>& skeleton);

    /// Exactly the min(k, size()) nearest neighbors of `query`, ascending by
    /// (distance, ordinal). Exact for strategy relaxed-k with k_constant >= 2
    /// and for projective-angle; brute scans linearly. Requires k >= 1.
    QueryResult knn(const Sample& query, std::size_t k) const;
    QueryResult knn(const CenteredUnit& query, std::size_t k) const;

    /// Ordinals of all points within distance r of `query`, ascending.
    /// Requires r in [0,1].
    std::vector<std::size_t> range_query(const Sample& query, double r) const;
    std::vector<std::size_t> range_query(const CenteredUnit& query, double r) const;

    /// Walks the tree and rechecks the structural invariants: every point in
    /// exactly one bucket, near/far sides on the correct side of mu, and
    /// envelopes covering the true distances. Throws Error on any violation.
    void validate() const;

    const IndexConfig& config() const { return config_; }

    /// Switches the pruning strategy used by subsequent queries. The tree
    /// itself is strategy-independent, so this never invalidates the index.
    void set_strategy(Strategy s) { config_.strategy = s; }

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_.empty() ? 0 : points_.front().size(); }
    const CenteredUnit& point(std::size_t ordinal) const { return points_[ordinal]; }
    const std::string& id(std::size_t ordinal) const { return points_[ordinal].source_id(); }
    const std::vector<VpNode>& nodes() const { return nodes_; }

  private:
    QmIndex() = default;

    std::vector<CenteredUnit> points_;
    std::vector<VpNode> nodes_;  // preorder; root at offset 0 when non-empty
    std::vector<std::size_t> root_bucket_;  // used when nodes_ is empty
    IndexConfig config_;
};

/// Linear-scan ground truth with the same result contract as QmIndex::knn.
/// Throws DomainError on an empty corpus or k == 0.
QueryResult brute_force_knn(const std::vector<Sample>& points, const Sample& query,
                            std::size_t k);
QueryResult brute_force_knn(const std::vector<CenteredUnit>& points,
                            const CenteredUnit& query, std::size_t k);

}  // namespace corrmetric

#endif
