#include "corrmetric/distance.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "corrmetric/errors.hpp"

namespace corrmetric {

namespace {

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

std::string display_id(const Sample& x) {
    return x.id.empty() ? "<unnamed>" : x.id;
}

}  // namespace

CenteredUnit CenteredUnit::from_unit_vector(std::vector<double> values,
                                            std::string source_id) {
    if (values.size() < 2) {
        throw DomainError("centered unit vector must have at least 2 entries");
    }
    double sum = 0.0;
    double sq = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("centered unit vector has a non-finite entry");
        sum += v;
        sq += v * v;
    }
    const double mean = sum / static_cast<double>(values.size());
    if (std::fabs(mean) > kUnitTolerance) {
        throw DomainError("vector is not centered: |mean| = " + std::to_string(std::fabs(mean)));
    }
    if (std::fabs(std::sqrt(sq) - 1.0) > kUnitTolerance) {
        throw DomainError("vector is not normalized: norm = " + std::to_string(std::sqrt(sq)));
    }
    return CenteredUnit(std::move(values), std::move(source_id));
}

CenteredUnit center_and_normalize(const Sample& x) {
    if (x.size() < 2) {
        throw DomainError("sample '" + display_id(x) + "' has fewer than 2 entries");
    }
    for (double v : x.values) {
        if (!std::isfinite(v)) {
            throw DomainError("sample '" + display_id(x) + "' has a non-finite entry");
        }
    }

    std::vector<double> c = x.values;
    const double mean = mean_of(c);
    for (double& v : c) v -= mean;
    // Second pass removes the rounding residue the first subtraction leaves
    // behind when the offset dwarfs the spread, e.g. (1e9, 1e9 + 1, ...).
    const double residue = mean_of(c);
    for (double& v : c) v -= residue;

    double sq = 0.0;
    for (double v : c) sq += v * v;
    const double norm = std::sqrt(sq);
    if (norm <= kZeroVarianceNorm) throw ZeroVarianceError(display_id(x));
    for (double& v : c) v /= norm;
    return CenteredUnit(std::move(c), x.id);
}

double abs_corr_distance_unit(const CenteredUnit& u, const CenteredUnit& v) {
    if (u.size() != v.size()) throw DimensionMismatchError(u.size(), v.size());
    double dot = 0.0;
    const std::vector<double>& a = u.values();
    const std::vector<double>& b = v.values();
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    double d = 1.0 - std::fabs(dot);
    if (d < 0.0) d = 0.0;
    if (d > 1.0) d = 1.0;
    return d;
}

double abs_corr_distance(const Sample& x, const Sample& y) {
    if (x.size() != y.size()) throw DimensionMismatchError(x.size(), y.size());
    return abs_corr_distance_unit(center_and_normalize(x), center_and_normalize(y));
}

double projective_angle(const CenteredUnit& u, const CenteredUnit& v) {
    if (u.size() != v.size()) throw DimensionMismatchError(u.size(), v.size());
    double dot = 0.0;
    const std::vector<double>& a = u.values();
    const std::vector<double>& b = v.values();
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    double c = std::fabs(dot);
    if (c > 1.0) c = 1.0;
    return std::acos(c);
}

DistanceMatrix pairwise_matrix(const std::vector<Sample>& samples) {
    const std::size_t n = samples.size();
    DistanceMatrix m;
    m.size = n;
    m.values.assign(n * n, 0.0);
    if (n == 0) return m;

    const std::size_t dim = samples.front().size();
    std::vector<CenteredUnit> units;
    units.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (samples[i].size() != dim) throw DimensionMismatchError(dim, samples[i].size());
        Sample named = samples[i];
        if (named.id.empty()) named.id = std::to_string(i);
        units.push_back(center_and_normalize(named));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = abs_corr_distance_unit(units[i], units[j]);
            m.values[i * n + j] = d;
            m.values[j * n + i] = d;
        }
    }
    return m;
}

}  // namespace corrmetric
