#pragma once

#include <stdexcept>
#include <string>

namespace coal {

// Validation failures carry the offending row / witness in the message.
struct NotStochastic : std::runtime_error {
    explicit NotStochastic(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotMixing : std::runtime_error {
    explicit NotMixing(const std::string& msg) : std::runtime_error(msg) {}
};

struct SolverFailure : std::runtime_error {
    explicit SolverFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapExceeded : std::runtime_error {
    CapExceeded(const std::string& msg, std::size_t found)
        : std::runtime_error(msg), count_found(found) {}
    std::size_t count_found;
};

struct HorizonExceeded : std::runtime_error {
    explicit HorizonExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct InsufficientPoints : std::runtime_error {
    explicit InsufficientPoints(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace coal
