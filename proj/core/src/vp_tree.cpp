#include "corrmetric/vp_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

#include "corrmetric/distance.hpp"
#include "corrmetric/errors.hpp"
#include "corrmetric/rng.hpp"

namespace corrmetric {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::RelaxedK: return "relaxed-k";
        case Strategy::ProjectiveAngle: return "projective-angle";
        case Strategy::Brute: return "brute";
    }
    throw DomainError("unknown strategy value");
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "relaxed-k") return Strategy::RelaxedK;
    if (name == "projective-angle") return Strategy::ProjectiveAngle;
    if (name == "brute") return Strategy::Brute;
    throw DomainError("unknown strategy '" + name + "'");
}

double lower_bound_relaxed(double d_qp, double d_px, double k) {
    if (!(d_qp >= 0.0 && d_qp <= 1.0) || !(d_px >= 0.0 && d_px <= 1.0)) {
        throw DomainError("distances must lie in [0, 1]");
    }
    if (!(k >= 2.0)) throw DomainError("k must be at least 2");
    return std::max({d_qp / k - d_px, d_px / k - d_qp, 0.0});
}

double lower_bound_angle(double theta_qp, double theta_px) {
    if (!(theta_qp >= 0.0 && theta_qp <= kHalfPi + 1e-12) ||
        !(theta_px >= 0.0 && theta_px <= kHalfPi + 1e-12)) {
        throw DomainError("angles must lie in [0, pi/2]");
    }
    return 1.0 - std::cos(std::fabs(theta_qp - theta_px));
}

namespace {

void check(bool condition, const char* what) {
    if (!condition) throw Error(std::string("index invariant violated: ") + what);
}

/// Distance lower bound for all points of one tree side, given the cached
/// query-to-vantage distance and the side's envelope [lo, hi] of distances
/// to the vantage.
double side_lower_bound(const IndexConfig& cfg, double d_qv, double lo, double hi) {
    if (cfg.strategy == Strategy::ProjectiveAngle) {
        const double t_qv = std::acos(std::clamp(1.0 - d_qv, 0.0, 1.0));
        const double t_lo = std::acos(std::clamp(1.0 - lo, 0.0, 1.0));
        const double t_hi = std::acos(std::clamp(1.0 - hi, 0.0, 1.0));
        double gap = 0.0;
        if (t_qv < t_lo) {
            gap = t_lo - t_qv;
        } else if (t_qv > t_hi) {
            gap = t_qv - t_hi;
        }
        return 1.0 - std::cos(gap);
    }
    const double k = cfg.k_constant;
    return std::max({d_qv / k - hi, lo / k - d_qv, 0.0});
}

struct BuiltChild {
    std::int64_t offset;              // node index, or -1 when the side is a leaf
    std::vector<std::size_t> bucket;  // leaf members when offset == -1
};

BuiltChild build_subtree(std::vector<VpNode>& nodes, const std::vector<CenteredUnit>& pts,
                         std::vector<std::size_t> subset, std::size_t leaf_size,
                         SplitMix64& rng) {
    if (subset.size() <= leaf_size) return {-1, std::move(subset)};

    const std::size_t vantage = subset[rng.next_below(subset.size())];
    std::vector<double> dist(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        dist[i] = abs_corr_distance_unit(pts[vantage], pts[subset[i]]);
    }
    std::vector<double> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    const double mu = sorted[(sorted.size() - 1) / 2];  // lower median

    std::vector<std::size_t> near_set;
    std::vector<std::size_t> far_set;
    double near_lo = kInf, near_hi = 0.0, far_lo = kInf, far_hi = 0.0;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (dist[i] <= mu) {
            near_set.push_back(subset[i]);
            near_lo = std::min(near_lo, dist[i]);
            near_hi = std::max(near_hi, dist[i]);
        } else {
            far_set.push_back(subset[i]);
            far_lo = std::min(far_lo, dist[i]);
            far_hi = std::max(far_hi, dist[i]);
        }
    }
    if (far_set.empty()) {
        // every distance ties with mu; a split cannot shrink, so stop here
        return {-1, std::move(subset)};
    }

    const std::size_t self = nodes.size();
    nodes.emplace_back();
    nodes[self].vantage = vantage;
    nodes[self].mu = mu;
    nodes[self].near_lo = near_lo;
    nodes[self].near_hi = near_hi;
    nodes[self].far_lo = far_lo;
    nodes[self].far_hi = far_hi;

    BuiltChild nb = build_subtree(nodes, pts, std::move(near_set), leaf_size, rng);
    nodes[self].near = nb.offset;
    if (nb.offset < 0) nodes[self].near_bucket = std::move(nb.bucket);
    BuiltChild fb = build_subtree(nodes, pts, std::move(far_set), leaf_size, rng);
    nodes[self].far = fb.offset;
    if (fb.offset < 0) nodes[self].far_bucket = std::move(fb.bucket);
    return {static_cast<std::int64_t>(self), {}};
}

/// Re-partitions the subset governed by node `off` exactly the way the
/// builder did, restoring buckets and envelopes from topology alone.
void replay_node(std::vector<VpNode>& nodes, const std::vector<CenteredUnit>& pts,
                 std::size_t off, std::vector<std::size_t> subset,
                 std::vector<char>& visited) {
    if (off >= nodes.size()) throw Error("index file is inconsistent: node offset out of range");
    if (visited[off]) throw Error("index file is inconsistent: node referenced twice");
    visited[off] = 1;
    VpNode& nd = nodes[off];
    if (nd.vantage >= pts.size()) {
        throw Error("index file is inconsistent: vantage ordinal out of range");
    }

    bool vantage_in_subset = false;
    std::vector<std::size_t> near_set;
    std::vector<std::size_t> far_set;
    double near_lo = kInf, near_hi = 0.0, far_lo = kInf, far_hi = 0.0;
    for (std::size_t p : subset) {
        if (p == nd.vantage) vantage_in_subset = true;
        const double d = abs_corr_distance_unit(pts[nd.vantage], pts[p]);
        if (d <= nd.mu) {
            near_set.push_back(p);
            near_lo = std::min(near_lo, d);
            near_hi = std::max(near_hi, d);
        } else {
            far_set.push_back(p);
            far_lo = std::min(far_lo, d);
            far_hi = std::max(far_hi, d);
        }
    }
    if (!vantage_in_subset) {
        throw Error("index file is inconsistent: vantage outside its own subtree");
    }
    if (near_set.empty() || far_set.empty()) {
        throw Error("index file is inconsistent: empty split side");
    }
    nd.near_lo = near_lo;
    nd.near_hi = near_hi;
    nd.far_lo = far_lo;
    nd.far_hi = far_hi;

    if (nd.near >= 0) {
        replay_node(nodes, pts, static_cast<std::size_t>(nd.near), std::move(near_set), visited);
    } else {
        nd.near_bucket = std::move(near_set);
    }
    if (nd.far >= 0) {
        replay_node(nodes, pts, static_cast<std::size_t>(nd.far), std::move(far_set), visited);
    } else {
        nd.far_bucket = std::move(far_set);
    }
}

/// Traversal state for one knn query: a lazy distance cache (so no corpus
/// point is ever evaluated twice) and a max-heap of the current k best.
class Searcher {
  public:
    Searcher(const QmIndex& idx, const CenteredUnit& q, std::size_t k)
        : idx_(idx), q_(q), k_(k), cache_(idx.size(), -1.0) {}

    double evaluate(std::size_t p) {
        double& c = cache_[p];
        if (c < 0.0) {
            c = abs_corr_distance_unit(q_, idx_.point(p));
            ++stats_.distance_evaluations;
            heap_.emplace(c, p);
            if (heap_.size() > k_) heap_.pop();
        }
        return c;
    }

    void scan(const std::vector<std::size_t>& bucket) {
        for (std::size_t p : bucket) evaluate(p);
    }

    void visit(std::int64_t off) {
        ++stats_.nodes_visited;
        const VpNode& nd = idx_.nodes()[static_cast<std::size_t>(off)];
        const double d_qv = evaluate(nd.vantage);
        const bool near_first = d_qv <= nd.mu;
        for (int pass = 0; pass < 2; ++pass) {
            const bool near_side = (pass == 0) == near_first;
            const double lo = near_side ? nd.near_lo : nd.far_lo;
            const double hi = near_side ? nd.near_hi : nd.far_hi;
            // Prune only on a strict excess: a side whose bound ties the
            // current k-th distance may still hold a smaller ordinal.
            if (side_lower_bound(idx_.config(), d_qv, lo, hi) > tau()) continue;
            const std::int64_t child = near_side ? nd.near : nd.far;
            if (child >= 0) {
                visit(child);
            } else {
                scan(near_side ? nd.near_bucket : nd.far_bucket);
            }
        }
    }

    QueryResult finish() {
        QueryResult out;
        out.neighbors.resize(heap_.size());
        for (std::size_t i = heap_.size(); i-- > 0;) {
            out.neighbors[i] = Neighbor{heap_.top().second, heap_.top().first};
            heap_.pop();
        }
        out.stats = stats_;
        return out;
    }

  private:
    double tau() const { return heap_.size() < k_ ? kInf : heap_.top().first; }

    const QmIndex& idx_;
    const CenteredUnit& q_;
    std::size_t k_;
    std::vector<double> cache_;
    std::priority_queue<std::pair<double, std::size_t>> heap_;
    QueryStats stats_;
};

/// Range-query twin of Searcher: fixed radius instead of a shrinking heap.
class RangeCollector {
  public:
    RangeCollector(const QmIndex& idx, const CenteredUnit& q, double r)
        : idx_(idx), q_(q), r_(r), cache_(idx.size(), -1.0) {}

    double evaluate(std::size_t p) {
        double& c = cache_[p];
        if (c < 0.0) {
            c = abs_corr_distance_unit(q_, idx_.point(p));
            if (c <= r_) hits_.push_back(p);
        }
        return c;
    }

    void scan(const std::vector<std::size_t>& bucket) {
        for (std::size_t p : bucket) evaluate(p);
    }

    void visit(std::int64_t off) {
        const VpNode& nd = idx_.nodes()[static_cast<std::size_t>(off)];
        const double d_qv = evaluate(nd.vantage);
        for (int pass = 0; pass < 2; ++pass) {
            const bool near_side = pass == 0;
            const double lo = near_side ? nd.near_lo : nd.far_lo;
            const double hi = near_side ? nd.near_hi : nd.far_hi;
            if (side_lower_bound(idx_.config(), d_qv, lo, hi) > r_) continue;
            const std::int64_t child = near_side ? nd.near : nd.far;
            if (child >= 0) {
                visit(child);
            } else {
                scan(near_side ? nd.near_bucket : nd.far_bucket);
            }
        }
    }

    std::vector<std::size_t> finish() {
        std::sort(hits_.begin(), hits_.end());
        return std::move(hits_);
    }

  private:
    const QmIndex& idx_;
    const CenteredUnit& q_;
    double r_;
    std::vector<double> cache_;
    std::vector<std::size_t> hits_;
};

void validate_subtree(const QmIndex& idx, std::int64_t off, std::vector<std::size_t> subset,
                      std::vector<char>& seen) {
    const VpNode& nd = idx.nodes()[static_cast<std::size_t>(off)];
    check(nd.vantage < idx.size(), "vantage ordinal out of range");

    bool vantage_in_subset = false;
    std::vector<std::size_t> near_set;
    std::vector<std::size_t> far_set;
    double near_min = kInf, near_max = 0.0, far_min = kInf, far_max = 0.0;
    for (std::size_t p : subset) {
        if (p == nd.vantage) vantage_in_subset = true;
        const double d = abs_corr_distance_unit(idx.point(nd.vantage), idx.point(p));
        if (d <= nd.mu) {
            near_set.push_back(p);
            near_min = std::min(near_min, d);
            near_max = std::max(near_max, d);
        } else {
            far_set.push_back(p);
            far_min = std::min(far_min, d);
            far_max = std::max(far_max, d);
        }
    }
    check(vantage_in_subset, "vantage outside its own subtree");
    check(!near_set.empty() && !far_set.empty(), "empty split side");
    check(nd.near_lo <= near_min && near_max <= nd.near_hi, "near envelope does not cover");
    check(nd.far_lo <= far_min && far_max <= nd.far_hi, "far envelope does not cover");

    auto descend = [&](std::int64_t child, std::vector<std::size_t> side,
                       const std::vector<std::size_t>& bucket) {
        if (child >= 0) {
            validate_subtree(idx, child, std::move(side), seen);
        } else {
            check(bucket == side, "leaf bucket does not match its partition");
            for (std::size_t p : bucket) {
                check(!seen[p], "point appears in two leaves");
                seen[p] = 1;
            }
        }
    };
    descend(nd.near, std::move(near_set), nd.near_bucket);
    descend(nd.far, std::move(far_set), nd.far_bucket);
}

}  // namespace

QmIndex QmIndex::build(const std::vector<Sample>& points, const IndexConfig& cfg) {
    if (points.empty()) throw DomainError("cannot build an index over an empty corpus");
    if (cfg.leaf_size == 0) throw DomainError("leaf_size must be >= 1");
    if (!(cfg.k_constant > 0.0)) throw DomainError("k_constant must be positive");

    QmIndex idx;
    idx.config_ = cfg;
    idx.points_.reserve(points.size());
    const std::size_t dim = points.front().size();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw DimensionMismatchError(dim, points[i].size());
        Sample named = points[i];
        if (named.id.empty()) named.id = std::to_string(i);
        idx.points_.push_back(center_and_normalize(named));
    }

    std::vector<std::size_t> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    SplitMix64 rng(cfg.seed);
    BuiltChild root = build_subtree(idx.nodes_, idx.points_, std::move(all), cfg.leaf_size, rng);
    if (root.offset < 0) idx.root_bucket_ = std::move(root.bucket);
    return idx;
}

QmIndex QmIndex::rebuild(std::vector<CenteredUnit> points, const IndexConfig& cfg,
                         const std::vector<VpNode>& skeleton) {
    if (points.empty()) throw DomainError("cannot build an index over an empty corpus");
    if (cfg.leaf_size == 0) throw DomainError("leaf_size must be >= 1");
    if (!(cfg.k_constant > 0.0)) throw DomainError("k_constant must be positive");
    const std::size_t dim = points.front().size();
    for (const CenteredUnit& p : points) {
        if (p.size() != dim) throw DimensionMismatchError(dim, p.size());
    }

    QmIndex idx;
    idx.config_ = cfg;
    idx.points_ = std::move(points);
    idx.nodes_.reserve(skeleton.size());
    for (const VpNode& s : skeleton) {
        VpNode nd;
        nd.vantage = s.vantage;
        nd.mu = s.mu;
        nd.near = s.near;
        nd.far = s.far;
        idx.nodes_.push_back(std::move(nd));
    }

    std::vector<std::size_t> all(idx.points_.size());
    std::iota(all.begin(), all.end(), 0);
    if (idx.nodes_.empty()) {
        idx.root_bucket_ = std::move(all);
        return idx;
    }
    std::vector<char> visited(idx.nodes_.size(), 0);
    replay_node(idx.nodes_, idx.points_, 0, std::move(all), visited);
    for (char v : visited) {
        if (!v) throw Error("index file is inconsistent: unreachable node");
    }
    return idx;
}

QueryResult QmIndex::knn(const CenteredUnit& query, std::size_t k) const {
    if (k == 0) throw DomainError("k must be >= 1");
    if (query.size() != dimension()) throw DimensionMismatchError(dimension(), query.size());
    Searcher s(*this, query, k);
    if (config_.strategy == Strategy::Brute) {
        for (std::size_t p = 0; p < points_.size(); ++p) s.evaluate(p);
    } else if (nodes_.empty()) {
        s.scan(root_bucket_);
    } else {
        s.visit(0);
    }
    return s.finish();
}

QueryResult QmIndex::knn(const Sample& query, std::size_t k) const {
    return knn(center_and_normalize(query), k);
}

std::vector<std::size_t> QmIndex::range_query(const CenteredUnit& query, double r) const {
    if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius outside [0, 1]");
    if (query.size() != dimension()) throw DimensionMismatchError(dimension(), query.size());
    RangeCollector rc(*this, query, r);
    if (config_.strategy == Strategy::Brute) {
        for (std::size_t p = 0; p < points_.size(); ++p) rc.evaluate(p);
    } else if (nodes_.empty()) {
        rc.scan(root_bucket_);
    } else {
        rc.visit(0);
    }
    return rc.finish();
}

std::vector<std::size_t> QmIndex::range_query(const Sample& query, double r) const {
    return range_query(center_and_normalize(query), r);
}

void QmIndex::validate() const {
    std::vector<char> seen(points_.size(), 0);
    if (nodes_.empty()) {
        for (std::size_t p : root_bucket_) {
            check(p < points_.size(), "bucket ordinal out of range");
            check(!seen[p], "point appears in two leaves");
            seen[p] = 1;
        }
    } else {
        std::vector<std::size_t> all(points_.size());
        std::iota(all.begin(), all.end(), 0);
        validate_subtree(*this, 0, std::move(all), seen);
    }
    for (char c : seen) check(c, "point missing from every leaf");
}

QueryResult brute_force_knn(const std::vector<CenteredUnit>& points,
                            const CenteredUnit& query, std::size_t k) {
    if (points.empty()) throw DomainError("corpus is empty");
    if (k == 0) throw DomainError("k must be >= 1");
    std::vector<Neighbor> all;
    all.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        all.push_back(Neighbor{i, abs_corr_distance_unit(query, points[i])});
    }
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance ||
               (a.distance == b.distance && a.ordinal < b.ordinal);
    });
    if (all.size() > k) all.resize(k);
    QueryResult out;
    out.neighbors = std::move(all);
    out.stats.distance_evaluations = points.size();
    return out;
}

QueryResult brute_force_knn(const std::vector<Sample>& points, const Sample& query,
                            std::size_t k) {
    if (points.empty()) throw DomainError("corpus is empty");
    const std::size_t dim = points.front().size();
    std::vector<CenteredUnit> units;
    units.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != dim) throw DimensionMismatchError(dim, points[i].size());
        Sample named = points[i];
        if (named.id.empty()) named.id = std::to_string(i);
        units.push_back(center_and_normalize(named));
    }
    if (query.size() != dim) throw DimensionMismatchError(dim, query.size());
    return brute_force_knn(units, center_and_normalize(query), k);
}

}  // namespace corrmetric
