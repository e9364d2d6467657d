#include "geoineq/deadline.hpp"

#include <stdexcept>

namespace geoineq {

namespace {

thread_local std::optional<std::chrono::steady_clock::time_point> g_deadline;
thread_local unsigned g_tick = 0;

} // namespace

DeadlineScope::DeadlineScope(std::chrono::steady_clock::time_point until) : prev_(g_deadline) {
    if (!g_deadline || until < *g_deadline) g_deadline = until;
}

DeadlineScope::DeadlineScope(std::optional<std::chrono::steady_clock::time_point> until)
    : prev_(g_deadline) {
    if (until && (!g_deadline || *until < *g_deadline)) g_deadline = until;
}

DeadlineScope::~DeadlineScope() { g_deadline = prev_; }

void poll_deadline() {
    if (!g_deadline) return;
    if (++g_tick % 64 != 0) return;
    if (std::chrono::steady_clock::now() > *g_deadline) throw std::runtime_error("timeout");
}

} // namespace geoineq
