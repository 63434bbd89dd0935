#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace resatlas {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wall-clock and size limits for the long enumerations. A default-constructed
// budget is unlimited in time; `max_points` bounds the truncated series and
// orbit sizes regardless.
class Budget {
public:
    Budget() = default;
    static Budget milliseconds(std::int64_t ms);
    // Reads RESATLAS_BUDGET_MS; unlimited when unset or unparsable.
    static Budget from_env();

    void check(const char* what) const;
    bool limited() const { return limited_; }
    std::size_t max_points = 20'000'000;

private:
    bool limited_ = false;
    std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace resatlas
