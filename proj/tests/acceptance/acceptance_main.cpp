// Acceptance harness: one line per criterion, exit code = number of failures.
// Every threshold is pinned here on purpose; loosening one is a contract
// change, not a test fix.

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "corrmetric/angles.hpp"
#include "corrmetric/distance.hpp"
#include "corrmetric/rng.hpp"
#include "corrmetric/types.hpp"
#include "corrmetric/verify.hpp"
#include "corrmetric/vp_tree.hpp"

using namespace corrmetric;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

Sample normal_sample(SplitMix64& rng, std::size_t dim, std::string id) {
    Sample s;
    s.id = std::move(id);
    s.values.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) s.values.push_back(rng.next_normal());
    return s;
}

Sample as_sample(const CenteredUnit& u, std::string id) {
    return Sample{{u.values().begin(), u.values().end()}, std::move(id)};
}

bool criterion_right_angle_fixture(std::string& detail) {
    const double target = 1.0 / (2.0 - kSqrt2);
    const AngleTriple t{kPi / 4.0, kPi / 4.0, kPi / 2.0};
    const auto via_angles = ratio_angles(t);
    if (!via_angles.has_value()) return false;
    const Counterexample w = realize_angles(t, 3);
    const auto via_vectors =
        ratio_vectors(as_sample(w.x, "x"), as_sample(w.y, "y"), as_sample(w.z, "z"));
    if (!via_vectors.has_value()) return false;
    char buf[128];
    std::snprintf(buf, sizeof buf, "ratio %.17g vs %.17g", *via_angles, target);
    detail = buf;
    return std::fabs(*via_angles - target) <= 1e-12 &&
           std::fabs(*via_vectors - target) <= 1e-8;
}

bool criterion_sweep_bounds(std::string& detail) {
    const RatioReport grid = sweep_grid(0.01);
    const RatioReport random = sweep_random(1000000, 5, 0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "grid max %.17g, random max %.17g", grid.max_ratio,
                  random.max_ratio);
    detail = buf;
    return grid.max_ratio <= 2.0 + 1e-9 && grid.max_ratio >= 1.999 &&
           random.max_ratio <= 2.0 + 1e-12;
}

bool criterion_sharpness(std::string& detail) {
    const double near_two = sharpness_ratio(1e-3);
    char buf[128];
    std::snprintf(buf, sizeof buf, "sharpness_ratio(1e-3) = %.17g", near_two);
    detail = buf;
    if (!(near_two >= 2.0 - 1e-6 && near_two < 2.0)) return false;
    for (double k : {1.5, 1.7071, 1.9, 1.99}) {
        const Counterexample w = find_counterexample(k);
        if (!(w.ratio > k)) return false;
        const double d_xy = abs_corr_distance_unit(w.x, w.y);
        const double d_yz = abs_corr_distance_unit(w.y, w.z);
        const double d_xz = abs_corr_distance_unit(w.x, w.z);
        if (!(d_xz > k * (d_xy + d_yz))) return false;
    }
    return true;
}

bool criterion_quarter_pi_checkpoint(std::string& detail) {
    const double g = g_alpha_beta(kPi / 4.0, kPi / 4.0);
    const double target = 2.0 * (2.0 - kSqrt2);
    char buf[128];
    std::snprintf(buf, sizeof buf, "g(pi/4, pi/4) = %.17g vs %.17g", g, target);
    detail = buf;
    return std::fabs(g - target) <= 1e-12 && g > 1.0;
}

bool criterion_planar_certificate(std::string& detail) {
    const PlanarReport sharp = planar_inequality_check(0.005);
    RelaxConfig soft;
    soft.k = 1.5;
    const PlanarReport broken = planar_inequality_check(0.005, soft);
    char buf[160];
    std::snprintf(buf, sizeof buf, "min margin %.17g over %llu points; k=1.5 margin %.17g",
                  sharp.min_margin, static_cast<unsigned long long>(sharp.points_checked),
                  broken.min_margin);
    detail = buf;
    if (!(sharp.passed && sharp.min_margin >= -1e-12 && sharp.points_checked >= 390000)) {
        return false;
    }
    if (broken.passed) return false;
    // The reported witness must actually violate the k = 1.5 inequality.
    RelaxConfig cfg;
    cfg.k = 1.5;
    const double replay = g_alpha_beta(broken.worst_alpha, broken.worst_beta, cfg) -
                          f_gamma(fold_angle_sum(broken.worst_alpha + broken.worst_beta));
    return replay < 0.0 && std::fabs(replay - broken.min_margin) <= 1e-15;
}

bool criterion_index_exactness(std::string& detail) {
    SplitMix64 rng(42);
    std::vector<Sample> corpus;
    corpus.reserve(1000);
    for (std::size_t i = 0; i < 1000; ++i) {
        corpus.push_back(normal_sample(rng, 20, std::to_string(i)));
    }
    std::vector<Sample> queries;
    queries.reserve(100);
    for (std::size_t i = 0; i < 100; ++i) {
        queries.push_back(normal_sample(rng, 20, "q" + std::to_string(i)));
    }

    IndexConfig cfg;
    cfg.strategy = Strategy::RelaxedK;
    const QmIndex relaxed = QmIndex::build(corpus, cfg);
    cfg.strategy = Strategy::ProjectiveAngle;
    const QmIndex angle = QmIndex::build(corpus, cfg);

    std::size_t mismatches = 0;
    std::size_t dominance_failures = 0;
    for (const Sample& q : queries) {
        const QueryResult want = brute_force_knn(corpus, q, 10);
        const QueryResult r = relaxed.knn(q, 10);
        const QueryResult a = angle.knn(q, 10);
        if (r.neighbors != want.neighbors || a.neighbors != want.neighbors) ++mismatches;
        if (a.stats.distance_evaluations > r.stats.distance_evaluations) {
            ++dominance_failures;
        }
    }

    // Negative control: with k_constant = 1 the relaxed bound over-prunes on
    // a right-angle configuration and dismisses the true nearest neighbor.
    const std::vector<Sample> trap{
        Sample{{0.7071067811865475, -0.7071067811865475, 0.0, 0.0}, "x"},
        Sample{{0.7787799286447911, 0.07167314745824357, -0.3096203847834362,
                -0.5408326913195984},
               "w"},
        Sample{{0.7886751345948129, -0.21132486540518702, -0.5773502691896258, 0.0}, "y"},
    };
    const Sample probe{
        {0.4082482904638631, 0.4082482904638631, -0.8164965809277261, 0.0}, "z"};
    IndexConfig unsound_cfg;
    unsound_cfg.leaf_size = 1;
    unsound_cfg.seed = 3;
    unsound_cfg.k_constant = 1.0;
    const QmIndex unsound = QmIndex::build(trap, unsound_cfg);
    const std::size_t claimed = unsound.knn(probe, 1).neighbors[0].ordinal;
    const std::size_t truth = brute_force_knn(trap, probe, 1).neighbors[0].ordinal;
    const bool dismissed = claimed != truth;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "mismatches %zu, dominance failures %zu, false dismissal %s", mismatches,
                  dominance_failures, dismissed ? "observed" : "missing");
    detail = buf;
    return mismatches == 0 && dominance_failures == 0 && dismissed;
}

bool criterion_bound_soundness(std::string& detail) {
    SplitMix64 rng(7);
    double worst_relaxed = -1.0;
    double worst_angle = -1.0;
    for (int t = 0; t < 100000; ++t) {
        const std::size_t dim = 3 + static_cast<std::size_t>(rng.next() % 14);
        const CenteredUnit q = center_and_normalize(normal_sample(rng, dim, "q"));
        const CenteredUnit p = center_and_normalize(normal_sample(rng, dim, "p"));
        const CenteredUnit x = center_and_normalize(normal_sample(rng, dim, "x"));
        const double d_qx = abs_corr_distance_unit(q, x);
        const double lb_r = lower_bound_relaxed(abs_corr_distance_unit(q, p),
                                                abs_corr_distance_unit(p, x), 2.0);
        const double lb_a =
            lower_bound_angle(projective_angle(q, p), projective_angle(p, x));
        worst_relaxed = std::max(worst_relaxed, lb_r - d_qx);
        worst_angle = std::max(worst_angle, lb_a - d_qx);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst excess: relaxed %.3g, angle %.3g", worst_relaxed,
                  worst_angle);
    detail = buf;
    return worst_relaxed <= 1e-12 && worst_angle <= 1e-12;
}

bool criterion_metric_axioms(std::string& detail) {
    SplitMix64 rng(8);
    std::size_t failures = 0;
    for (int t = 0; t < 10000; ++t) {
        const std::size_t dim = 3 + static_cast<std::size_t>(rng.next() % 30);
        const Sample x = normal_sample(rng, dim, "x");
        const Sample y = normal_sample(rng, dim, "y");
        const double d = abs_corr_distance(x, y);
        if (d != abs_corr_distance(y, x)) ++failures;
        if (!(d >= 0.0 && d <= 1.0)) ++failures;

        double a = -3.0 + 6.0 * rng.next_unit();
        if (std::fabs(a) < 0.05) a = 0.05;
        const double b = -5.0 + 10.0 * rng.next_unit();
        Sample affine = x;
        for (double& v : affine.values) v = a * v + b;
        if (std::fabs(abs_corr_distance(affine, y) - d) > 1e-9) ++failures;

        Sample flipped = x;
        for (double& v : flipped.values) v = -v;
        if (abs_corr_distance(flipped, y) != d) ++failures;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%zu failures in 10000 cases", failures);
    detail = buf;
    return failures == 0;
}

struct Criterion {
    const char* label;
    bool (*fn)(std::string&);
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"right-angle ratio fixture", criterion_right_angle_fixture},
        {"sweep maxima below the sharp constant", criterion_sweep_bounds},
        {"sharpness family and counterexamples", criterion_sharpness},
        {"quarter-pi checkpoint", criterion_quarter_pi_checkpoint},
        {"planar inequality certificate", criterion_planar_certificate},
        {"index exactness and negative control", criterion_index_exactness},
        {"pruning bound soundness", criterion_bound_soundness},
        {"metric axiom suite", criterion_metric_axioms},
    };

    int failed = 0;
    int number = 0;
    for (const Criterion& c : criteria) {
        ++number;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failed;
        std::printf("%s  criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, c.label,
                    detail.c_str());
    }
    return failed;
}
