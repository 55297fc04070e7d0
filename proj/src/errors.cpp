#include "fracx/errors.hpp"

namespace fracx {

NonPositiveDenominator::NonPositiveDenominator(int ratio_, std::vector<double> witness_, double value_)
    : Error("NonPositiveDenominator: ratio " + std::to_string(ratio_) + " reaches " + std::to_string(value_)),
      ratio(ratio_),
      witness(std::move(witness_)),
      value(value_) {}

}  // namespace fracx
