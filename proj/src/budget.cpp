#include "resatlas/budget.hpp"

#include <cstdlib>

namespace resatlas {

Budget Budget::milliseconds(std::int64_t ms) {
    Budget b;
    b.limited_ = true;
    b.deadline_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return b;
}

Budget Budget::from_env() {
    const char* raw = std::getenv("RESATLAS_BUDGET_MS");
    if (!raw || !*raw) return Budget{};
    char* end = nullptr;
    long long ms = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0' || ms <= 0) return Budget{};
    return milliseconds(ms);
}

void Budget::check(const char* what) const {
    if (limited_ && std::chrono::steady_clock::now() > deadline_)
        throw BudgetExceeded(std::string("time budget exceeded during ") + what);
}

}  // namespace resatlas
