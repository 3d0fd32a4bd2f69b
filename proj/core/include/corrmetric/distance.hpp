#ifndef CORRMETRIC_DISTANCE_HPP
#define CORRMETRIC_DISTANCE_HPP

#include <cstddef>
#include <vector>

#include "corrmetric/types.hpp"

namespace corrmetric {

/// Subtracts the mean and divides by the Euclidean norm.
/// Throws ZeroVarianceError if the centered norm is <= kZeroVarianceNorm,
/// DomainError if the sample is shorter than 2 or contains non-finite values.
CenteredUnit center_and_normalize(const Sample& x);

/// Absolute correlation distance: 1 - |corr(x, y)|, clamped to [0, 1].
/// Computed between centered-unit representatives; symmetric bit-for-bit.
double abs_corr_distance(const Sample& x, const Sample& y);

/// Distance between representatives that are already centered and normalized:
/// 1 - |<u, v>|, clamped to [0, 1].
double abs_corr_distance_unit(const CenteredUnit& u, const CenteredUnit& v);

/// Folded angle acos(clamp(|<u, v>|, 0, 1)) in [0, pi/2].
/// Monotone link: abs_corr_distance_unit(u, v) == 1 - cos(projective_angle(u, v)).
double projective_angle(const CenteredUnit& u, const CenteredUnit& v);

/// Symmetric matrix of pairwise absolute correlation distances.
struct DistanceMatrix {
    std::size_t size = 0;
    std::vector<double> values;  // row-major, size x size

    double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

/// M[i][j] = abs_corr_distance(samples[i], samples[j]); zero diagonal; each
/// unordered pair computed once, so the matrix is symmetric bit-for-bit.
/// Errors carry the offending sample's id (or index when unnamed).
DistanceMatrix pairwise_matrix(const std::vector<Sample>& samples);

}  // namespace corrmetric

#endif
