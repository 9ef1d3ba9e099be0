#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace wdvv::support {

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Wall-clock and resident-memory caps, checked cooperatively by long
/// computations. An unset cap is unlimited.
class Budget {
public:
    Budget() : start_(std::chrono::steady_clock::now()) {}
    Budget(std::optional<double> seconds, std::optional<double> gigabytes);

    static Budget unlimited() { return Budget(); }

    double elapsed() const;
    /// Throws BudgetExceeded naming `where` when a cap is exceeded.
    void check(const std::string& where) const;

    std::optional<double> seconds() const { return seconds_; }
    std::optional<double> gigabytes() const { return gigabytes_; }

private:
    std::chrono::steady_clock::time_point start_;
    std::optional<double> seconds_;
    std::optional<double> gigabytes_;
};

/// Current resident set size in bytes (0 when unavailable).
std::size_t resident_bytes();
/// Peak resident set size in bytes.
std::size_t peak_resident_bytes();

} // namespace wdvv::support
