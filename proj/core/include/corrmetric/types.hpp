#ifndef CORRMETRIC_TYPES_HPP
#define CORRMETRIC_TYPES_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace corrmetric {

/// Centered vectors with Euclidean norm at or below this are treated as
/// constant (zero variance). Absolute threshold, independent of input scale.
inline constexpr double kZeroVarianceNorm = 1e-12;

/// Tolerance on the CenteredUnit invariants: |mean| and |norm - 1|.
inline constexpr double kUnitTolerance = 1e-10;

/// A raw data vector in R^n, n >= 2. Entries must be finite.
struct Sample {
    std::vector<double> values;
    std::string id;  // optional opaque identifier, "" if unnamed

    Sample() = default;
    explicit Sample(std::vector<double> v, std::string sample_id = "")
        : values(std::move(v)), id(std::move(sample_id)) {}

    std::size_t size() const noexcept { return values.size(); }
};

/// A centered, unit-normalized representative on the zero-mean sphere:
/// mean(values) ~ 0 and ||values|| ~ 1 within kUnitTolerance.
/// Construct via center_and_normalize() or from_unit_vector().
class CenteredUnit {
public:
    /// Wraps a vector that is already centered and normalized, validating
    /// the invariants. Throws DomainError if they do not hold.
    static CenteredUnit from_unit_vector(std::vector<double> values,
                                         std::string source_id = "");

    const std::vector<double>& values() const noexcept { return values_; }
    const std::string& source_id() const noexcept { return source_id_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    friend CenteredUnit center_and_normalize(const Sample& x);

    CenteredUnit(std::vector<double> values, std::string source_id)
        : values_(std::move(values)), source_id_(std::move(source_id)) {}

    std::vector<double> values_;
    std::string source_id_;
};

}  // namespace corrmetric

#endif
