#pragma once

#include <stdexcept>
#include <string>

namespace superflat {

enum class ErrorCode {
    invalid_argument = 1,
    config = 2,
    pole = 3,
    numerical = 4,
    io = 5,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

struct InputError : Error {
    explicit InputError(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

// a coordinate pair collided with a pole locus; the message names the pair
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(ErrorCode::pole, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(ErrorCode::numerical, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

} // namespace superflat
