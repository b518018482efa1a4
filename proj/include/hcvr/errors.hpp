#pragma once

#include <stdexcept>
#include <string>

namespace hcvr {

/// A computation was refused or aborted because it would exceed a configured
/// size limit or the machine's memory.  Argument errors use
/// std::invalid_argument instead.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hcvr
