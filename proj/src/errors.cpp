#include "expgof/errors.hpp"

#include <utility>

namespace expgof {

NumericalError::NumericalError(const std::string& what, double achieved, std::string trace)
    : std::runtime_error(what), achieved_(achieved), trace_(std::move(trace)) {}

}  // namespace expgof
