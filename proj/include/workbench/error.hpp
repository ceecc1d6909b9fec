#pragma once

#include <stdexcept>
#include <string>

namespace wb {

enum class ErrorCode {
    parse = 1,
    precondition = 2,
    invalid = 3,
    budget = 4,
    undetermined = 5,
    io = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace wb
