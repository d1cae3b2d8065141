#pragma once

#include <stdexcept>
#include <string>

namespace graphrag {

// Error classes map one-to-one onto CLI exit codes and C API status values.
enum class ErrorClass {
    Config = 2,
    Provider = 3,
    Data = 4,
    Internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string message)
        : std::runtime_error(std::move(message)), class_(cls) {}

    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw Error(ErrorClass::Config, msg); }
[[noreturn]] inline void throw_provider(const std::string& msg) { throw Error(ErrorClass::Provider, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw Error(ErrorClass::Data, msg); }
[[noreturn]] inline void throw_internal(const std::string& msg) { throw Error(ErrorClass::Internal, msg); }

}  // namespace graphrag
