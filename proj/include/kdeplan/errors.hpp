#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kdeplan {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (dimension mismatch, bad argument).
struct ContractViolation : Error {
    using Error::Error;
};

// Erosion removed the entire free space.
struct EmptyFreeSpace : Error {
    double rho;
    EmptyFreeSpace(double rho_, const std::string& msg) : Error(msg), rho(rho_) {}
};

// No data points survive a truncation filter.
struct EmptyDataset : Error {
    using Error::Error;
};

// Kernel without finite support used where the rejection-free guarantee needs one.
struct UnsupportedKernel : Error {
    using Error::Error;
};

// A generated sample fell outside the free space. Indicates a geometry or
// offsetting bug; never expected in a correctly prepared sampler.
struct GuaranteeViolation : Error {
    std::vector<double> point;
    std::size_t violation_count;
    GuaranteeViolation(std::vector<double> pt, std::size_t count, const std::string& msg)
        : Error(msg), point(std::move(pt)), violation_count(count) {}
};

// A scenario or data file failed schema validation.
struct ScenarioError : Error {
    using Error::Error;
};

}  // namespace kdeplan
