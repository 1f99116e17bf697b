#pragma once

#include <cstddef>
#include <functional>

namespace pt {

// Worker count: PAULI_TOMOGRAPH_THREADS if set, else 1; overridable by set_thread_count.
int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n). Each index is written by exactly one worker, so results do not
// depend on the thread count as long as body only touches its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pt
