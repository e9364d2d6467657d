#ifndef GEOINEQ_DEADLINE_HPP
#define GEOINEQ_DEADLINE_HPP

#include <chrono>
#include <optional>

namespace geoineq {

// Scoped wall-clock limit for the current thread. Nested scopes keep the
// tighter limit; the previous limit is restored on destruction. Long-running
// kernels (pseudo-division, Buchberger, root refinement) poll the active
// limit and throw std::runtime_error("timeout") once it has passed.
class DeadlineScope {
public:
    explicit DeadlineScope(std::chrono::steady_clock::time_point until);
    explicit DeadlineScope(std::optional<std::chrono::steady_clock::time_point> until);
    DeadlineScope(const DeadlineScope&) = delete;
    DeadlineScope& operator=(const DeadlineScope&) = delete;
    ~DeadlineScope();

private:
    std::optional<std::chrono::steady_clock::time_point> prev_;
};

// Cheap poll (clock read amortized over many calls); throws "timeout" when
// the active limit is exceeded. No-op when no DeadlineScope is active.
void poll_deadline();

} // namespace geoineq

#endif
