#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fracx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define FRACX_DECLARE_ERROR(Name)                         \
    class Name : public Error {                           \
    public:                                               \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

FRACX_DECLARE_ERROR(DimensionMismatch);
FRACX_DECLARE_ERROR(UnboundedPolyhedron);
FRACX_DECLARE_ERROR(InfeasibleRegion);
FRACX_DECLARE_ERROR(MissingBounds);
FRACX_DECLARE_ERROR(IterationLimit);
FRACX_DECLARE_ERROR(NumericalBreakdown);
FRACX_DECLARE_ERROR(DomainError);
FRACX_DECLARE_ERROR(NotSingleRatio);
FRACX_DECLARE_ERROR(SizeGuard);
FRACX_DECLARE_ERROR(NegativeWeight);
FRACX_DECLARE_ERROR(DuplicatePoles);
FRACX_DECLARE_ERROR(IllConditioned);
FRACX_DECLARE_ERROR(SignAssumptionViolated);
FRACX_DECLARE_ERROR(PoleInRange);
FRACX_DECLARE_ERROR(UnsupportedBox);
FRACX_DECLARE_ERROR(TooLarge);
FRACX_DECLARE_ERROR(Infeasible);
FRACX_DECLARE_ERROR(DegenerateGap);
FRACX_DECLARE_ERROR(InvalidArgument);

#undef FRACX_DECLARE_ERROR

/// Raised when a denominator is not certified positive; carries the minimizing point.
class NonPositiveDenominator : public Error {
public:
    NonPositiveDenominator(int ratio, std::vector<double> witness, double value);

    int ratio;
    std::vector<double> witness;
    double value;
};

}  // namespace fracx
