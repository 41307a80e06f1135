#include "hsk/parallel.hpp"

#include <atomic>

namespace hsk {

namespace {
std::atomic<int> g_max_threads{0};
}

int max_threads() noexcept { return g_max_threads.load(std::memory_order_relaxed); }

void set_max_threads(int n) noexcept { g_max_threads.store(n, std::memory_order_relaxed); }

}  // namespace hsk
