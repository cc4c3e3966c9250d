#pragma once

#include <functional>

namespace png {

// Worker count: set_thread_count() if called with n > 0, otherwise the
// PNG_TODA_THREADS environment variable, otherwise hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Runs body(0..n-1) on up to thread_count() threads. Each index must write to
// its own output slot so results do not depend on scheduling.
void parallel_for(long n, const std::function<void(long)>& body);

}  // namespace png
