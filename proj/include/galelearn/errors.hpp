#pragma once

#include <stdexcept>
#include <string>

namespace galelearn {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An oracle was consulted past its declared query-length bound.
struct BoundError : Error {
    using Error::Error;
};

// An exhaustive operation would exceed the configured desk-scale cap.
struct ResourceError : Error {
    using Error::Error;
};

// A reduction, oracle machine, or learner violated its declared contract
// (query bounds, output bounds, universe mismatch).
struct ContractError : Error {
    using Error::Error;
};

// A truncated combination could not establish the bound on omitted terms.
struct PrecisionError : Error {
    using Error::Error;
};

// Bad manifest, scenario config, or parameter choice.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace galelearn
