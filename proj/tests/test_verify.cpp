#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "corrmetric/angles.hpp"
#include "corrmetric/distance.hpp"
#include "corrmetric/errors.hpp"
#include "corrmetric/rng.hpp"
#include "corrmetric/verify.hpp"
#include "support/oracle.hpp"

using namespace corrmetric;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kSqrt2 = std::numbers::sqrt2;

Sample as_sample(const CenteredUnit& u, std::string id) {
    return Sample{{u.values().begin(), u.values().end()}, std::move(id)};
}

}  // namespace

TEST_CASE("sweep_grid frozen reports", "[verify]") {
    SECTION("step 0.5") {
        const RatioReport r = sweep_grid(0.5);
        REQUIRE(r.max_ratio == 1.8775825618903732);
        REQUIRE(r.argmax.alpha == 0.5);
        REQUIRE(r.argmax.beta == 0.5);
        REQUIRE(r.argmax.gamma == 1.0);
        REQUIRE(r.samples_evaluated == 118);
        REQUIRE(r.samples_skipped_degenerate == 4);
        REQUIRE(r.k_used == 2.0);
        REQUIRE(r.max_ratio < 2.0);
        REQUIRE(r.max_ratio >= 1.7);
        REQUIRE(r.generator_name.empty());
        REQUIRE(r.parameters.mode == "grid");
        REQUIRE(r.parameters.step == 0.5);
    }
    SECTION("step 0.1") {
        const RatioReport r = sweep_grid(0.1);
        REQUIRE(r.max_ratio == 1.9950041652780479);
        REQUIRE(r.argmax.alpha == 0.1);
        REQUIRE(r.argmax.beta == 0.1);
        REQUIRE(r.argmax.gamma == 0.2);
        REQUIRE(r.samples_evaluated == 10677);
        REQUIRE(r.samples_skipped_degenerate == 4);
    }
}

TEST_CASE("sweep_grid agrees with a plain re-enumeration", "[verify]") {
    for (double step : {0.5, 0.37, 0.1}) {
        const RatioReport r = sweep_grid(step);
        const oracle::GridScan o = oracle::grid_scan(step);
        INFO("step = " << step);
        REQUIRE(r.samples_evaluated == o.evaluated);
        REQUIRE(r.samples_skipped_degenerate == o.skipped);
        REQUIRE(r.argmax.alpha == o.alpha);
        REQUIRE(r.argmax.beta == o.beta);
        REQUIRE(r.argmax.gamma == o.gamma);
        REQUIRE(r.max_ratio == Approx(o.max_ratio).margin(1e-12));
    }
}

TEST_CASE("sweep_grid invariants", "[verify]") {
    SECTION("exactly the four zero-denominator corners are skipped") {
        for (double step : {1.0, 0.7, 0.23}) {
            REQUIRE(sweep_grid(step).samples_skipped_degenerate == 4);
        }
    }
    SECTION("argmax is feasible and the bound holds") {
        const RatioReport r = sweep_grid(0.2);
        REQUIRE(feasible(r.argmax));
        REQUIRE(r.max_ratio <= 2.0 + 1e-9);
    }
    SECTION("step domain") {
        REQUIRE_THROWS_AS(sweep_grid(0.0), DomainError);
        REQUIRE_THROWS_AS(sweep_grid(-0.1), DomainError);
        REQUIRE_THROWS_AS(sweep_grid(1.5), DomainError);
    }
    SECTION("independent of the thread budget") {
        const RatioReport base = sweep_grid(0.1);
        for (const char* budget : {"1", "3", "16"}) {
            setenv("CORRMETRIC_THREADS", budget, 1);
            const RatioReport r = sweep_grid(0.1);
            REQUIRE(r.max_ratio == base.max_ratio);
            REQUIRE(r.argmax.alpha == base.argmax.alpha);
            REQUIRE(r.argmax.beta == base.argmax.beta);
            REQUIRE(r.argmax.gamma == base.argmax.gamma);
            REQUIRE(r.samples_evaluated == base.samples_evaluated);
        }
        unsetenv("CORRMETRIC_THREADS");
    }
}

TEST_CASE("sweep_random frozen reports", "[verify]") {
    SECTION("ten thousand trials in dimension 5") {
        const RatioReport r = sweep_random(10000, 5, 0);
        REQUIRE(r.max_ratio == 1.8532956477239491);
        REQUIRE(r.argmax.alpha == 0.4703044144627897);
        REQUIRE(r.argmax.beta == 2.7621930463018809);
        REQUIRE(r.argmax.gamma == 2.3009649691951419);
        REQUIRE(r.samples_evaluated == 10000);
        REQUIRE(r.samples_skipped_degenerate == 0);
        REQUIRE(r.generator_name == "splitmix64-boxmuller");
        REQUIRE(r.parameters.mode == "random");
        REQUIRE(r.parameters.trials == 10000);
        REQUIRE(r.parameters.seed == 0);
        REQUIRE(r.parameters.dimension == 5);

        // The recorded argmax angles reproduce the recorded ratio. (They can
        // sit a rounding error outside the feasibility predicate, so the
        // ratio is recomputed directly rather than through ratio_angles.)
        const double recomputed = f_gamma(r.argmax.gamma) /
                                  (f_gamma(r.argmax.alpha) + f_gamma(r.argmax.beta));
        REQUIRE(recomputed == Approx(r.max_ratio).margin(1e-9));
    }
    SECTION("a single trial is fully accounted for") {
        const RatioReport r = sweep_random(1, 5, 0);
        REQUIRE(r.samples_evaluated + r.samples_skipped_degenerate == 1);
        REQUIRE(r.max_ratio == 0.4185375348921252);
    }
    SECTION("dimension independence of the bound") {
        const RatioReport r3 = sweep_random(100000, 3, 1);
        const RatioReport r50 = sweep_random(100000, 50, 1);
        REQUIRE(r3.max_ratio == 1.9995102075131876);
        REQUIRE(r50.max_ratio == 0.83998667757990531);
        REQUIRE(r3.max_ratio <= 2.0 + 1e-12);
        REQUIRE(r50.max_ratio <= 2.0 + 1e-12);
    }
}

TEST_CASE("sweep_random determinism", "[verify]") {
    const RatioReport a = sweep_random(5000, 4, 9);
    const RatioReport b = sweep_random(5000, 4, 9);
    REQUIRE(a.max_ratio == b.max_ratio);
    REQUIRE(a.argmax.alpha == b.argmax.alpha);
    REQUIRE(a.argmax.beta == b.argmax.beta);
    REQUIRE(a.argmax.gamma == b.argmax.gamma);

    const RatioReport c = sweep_random(5000, 4, 10);
    REQUIRE(a.max_ratio != c.max_ratio);

    SECTION("independent of the thread budget") {
        setenv("CORRMETRIC_THREADS", "7", 1);
        const RatioReport d = sweep_random(5000, 4, 9);
        unsetenv("CORRMETRIC_THREADS");
        REQUIRE(d.max_ratio == a.max_ratio);
        REQUIRE(d.argmax.alpha == a.argmax.alpha);
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(sweep_random(0, 5, 0), DomainError);
        REQUIRE_THROWS_AS(sweep_random(10, 2, 0), DomainError);
    }
}

TEST_CASE("ratio_vectors", "[verify]") {
    SECTION("realized right-angle fixture") {
        const Counterexample w = realize_angles(AngleTriple{kPi / 4.0, kPi / 4.0, kHalfPi}, 3);
        const auto r = ratio_vectors(as_sample(w.x, "x"), as_sample(w.y, "y"),
                                     as_sample(w.z, "z"));
        REQUIRE(r.has_value());
        REQUIRE(*r == Approx(1.0 / (2.0 - kSqrt2)).margin(1e-8));
    }
    SECTION("repeated endpoint gives a tiny ratio") {
        const Sample x{{1, 0, -1}, "x"};
        const Sample y{{0, 1, -1}, "y"};
        const auto r = ratio_vectors(x, y, x);
        REQUIRE(r.has_value());
        REQUIRE(*r >= 0.0);
        REQUIRE(*r <= 1e-15);
    }
    SECTION("fully degenerate triple is undefined but harmless") {
        const Sample x{{0.3, -1.2, 4.0, 1.1}, "x"};
        REQUIRE_FALSE(ratio_vectors(x, x, x).has_value());
        REQUIRE(abs_corr_distance(x, x) < 1e-6);
    }
    SECTION("errors propagate") {
        REQUIRE_THROWS_AS(ratio_vectors(Sample{{1, 1, 1}, "flat"}, Sample{{1, 0, -1}, "y"},
                                        Sample{{0, 1, -1}, "z"}),
                          ZeroVarianceError);
        REQUIRE_THROWS_AS(ratio_vectors(Sample{{1, 0, -1}, "x"}, Sample{{1, 0, -1, 0}, "y"},
                                        Sample{{0, 1, -1}, "z"}),
                          DimensionMismatchError);
    }
}

TEST_CASE("realize_angles", "[verify]") {
    SECTION("right-angle fixture in dimensions 3 and 7") {
        for (std::size_t dim : {std::size_t{3}, std::size_t{7}}) {
            const Counterexample w =
                realize_angles(AngleTriple{kPi / 4.0, kPi / 4.0, kHalfPi}, dim);
            REQUIRE(w.x.size() == dim);
            REQUIRE(abs_corr_distance_unit(w.x, w.y) ==
                    Approx(f_gamma(kPi / 4.0)).margin(1e-9));
            REQUIRE(abs_corr_distance_unit(w.y, w.z) ==
                    Approx(f_gamma(kPi / 4.0)).margin(1e-9));
            REQUIRE(abs_corr_distance_unit(w.x, w.z) == Approx(1.0).margin(1e-9));
            REQUIRE(w.ratio == Approx(1.0 / (2.0 - kSqrt2)).margin(1e-8));
        }
    }
    SECTION("random feasible triples round-trip their angles") {
        SplitMix64 rng(26);
        int done = 0;
        while (done < 50) {
            const AngleTriple t{0.05 + (kPi - 0.05) * rng.next_unit(),
                                0.05 + (kPi - 0.05) * rng.next_unit(),
                                0.05 + (kPi - 0.05) * rng.next_unit()};
            if (!feasible(t)) continue;
            ++done;
            const Counterexample w = realize_angles(t, 4);
            REQUIRE(abs_corr_distance_unit(w.x, w.y) == Approx(f_gamma(t.alpha)).margin(1e-9));
            REQUIRE(abs_corr_distance_unit(w.y, w.z) == Approx(f_gamma(t.beta)).margin(1e-9));
            REQUIRE(abs_corr_distance_unit(w.x, w.z) == Approx(f_gamma(t.gamma)).margin(1e-9));

            const auto ra = ratio_angles(t);
            if (ra.has_value() && f_gamma(t.alpha) + f_gamma(t.beta) > 1e-3) {
                const auto rv = ratio_vectors(as_sample(w.x, "x"), as_sample(w.y, "y"),
                                              as_sample(w.z, "z"));
                REQUIRE(rv.has_value());
                REQUIRE(*rv == Approx(*ra).margin(1e-8));
            }
        }
    }
    SECTION("collapsed triple returns three copies") {
        const Counterexample w = realize_angles(AngleTriple{0.0, 0.0, 0.0}, 3);
        REQUIRE(abs_corr_distance_unit(w.x, w.y) <= 1e-12);
        REQUIRE(abs_corr_distance_unit(w.y, w.z) <= 1e-12);
        REQUIRE(abs_corr_distance_unit(w.x, w.z) <= 1e-12);
    }
    SECTION("rank demands dimension") {
        REQUIRE_THROWS_AS(realize_angles(AngleTriple{kHalfPi, kHalfPi, kHalfPi}, 3),
                          DimensionTooSmallError);
        const Counterexample w = realize_angles(AngleTriple{kHalfPi, kHalfPi, kHalfPi}, 4);
        REQUIRE(abs_corr_distance_unit(w.x, w.y) == Approx(1.0).margin(1e-9));
        REQUIRE(abs_corr_distance_unit(w.y, w.z) == Approx(1.0).margin(1e-9));
        REQUIRE(abs_corr_distance_unit(w.x, w.z) == Approx(1.0).margin(1e-9));
    }
    SECTION("preconditions") {
        REQUIRE_THROWS_AS(realize_angles(AngleTriple{0.3, 0.3, 2.9}, 3), InfeasibleError);
        REQUIRE_THROWS_AS(realize_angles(AngleTriple{0.3, 0.3, 0.5}, 2), DomainError);
    }
}

TEST_CASE("find_counterexample", "[verify]") {
    SECTION("frozen witness for k = 1.9") {
        const Counterexample w = find_counterexample(1.9);
        REQUIRE(w.angles.alpha == 0.22551340589813132);
        REQUIRE(w.angles.beta == w.angles.alpha);
        REQUIRE(w.angles.gamma == 2.0 * w.angles.alpha);
        REQUIRE(w.ratio == 1.974679434480898);
    }
    SECTION("beats the right-angle bound") {
        const Counterexample w = find_counterexample(1.7071067811865475);
        REQUIRE(w.ratio == 1.9238795325112887);
        REQUIRE(w.ratio > 1.7071067811865475);
    }
    SECTION("violations are real vector violations") {
        for (double k : {0.5, 1.0, 1.5, 1.9, 1.99, 1.999}) {
            const Counterexample w = find_counterexample(k);
            REQUIRE(w.ratio > k);
            const double d_xy = abs_corr_distance_unit(w.x, w.y);
            const double d_yz = abs_corr_distance_unit(w.y, w.z);
            const double d_xz = abs_corr_distance_unit(w.x, w.z);
            REQUIRE(d_xz > k * (d_xy + d_yz));
        }
    }
    SECTION("one hundred random k in (1, 2)") {
        SplitMix64 rng(27);
        for (int t = 0; t < 100; ++t) {
            const double k = 1.0 + rng.next_unit();
            const Counterexample w = find_counterexample(k);
            REQUIRE(w.ratio > k);
        }
    }
    SECTION("k at or above 2 is refused with the sharpness message") {
        REQUIRE_THROWS_WITH(find_counterexample(2.0),
                            Catch::Matchers::ContainsSubstring("no counterexample exists"));
        REQUIRE_THROWS_AS(find_counterexample(2.0), DomainError);
        REQUIRE_THROWS_AS(find_counterexample(5.0), DomainError);
        REQUIRE_THROWS_AS(find_counterexample(0.0), DomainError);
        REQUIRE_THROWS_AS(find_counterexample(-1.0), DomainError);
    }
}

TEST_CASE("planar_inequality_check", "[verify]") {
    SECTION("passes for the proven constant") {
        const PlanarReport p = planar_inequality_check(0.01);
        REQUIRE(p.passed);
        REQUIRE(p.min_margin == 0.0);
        REQUIRE(p.worst_alpha == 0.0);
        REQUIRE(p.worst_beta == 0.0);
        REQUIRE(p.points_checked == 99856);
    }
    SECTION("fails for k = 1.5 with a reproducible witness") {
        RelaxConfig soft;
        soft.k = 1.5;
        const PlanarReport p = planar_inequality_check(0.01, soft);
        REQUIRE_FALSE(p.passed);
        REQUIRE(p.min_margin == -0.12499886114341641);
        REQUIRE(p.worst_alpha == Approx(2.42).margin(1e-12));
        REQUIRE(p.worst_beta == p.worst_alpha);
        // The analytic minimum of the k = 1.5 margin on the mirrored
        // sharpness family is exactly -1/8.
        REQUIRE(p.min_margin == Approx(-0.125).margin(2e-6));
    }
    SECTION("quarter-pi checkpoint") {
        const double margin = g_alpha_beta(kPi / 4.0, kPi / 4.0) -
                              f_gamma(fold_angle_sum(kPi / 4.0 + kPi / 4.0));
        REQUIRE(margin == Approx(2.0 * (2.0 - kSqrt2) - 1.0).margin(1e-12));
        REQUIRE(margin > 0.0);
    }
    SECTION("step domain") {
        REQUIRE_THROWS_AS(planar_inequality_check(0.0), DomainError);
        REQUIRE_THROWS_AS(planar_inequality_check(0.06), DomainError);
    }
}
