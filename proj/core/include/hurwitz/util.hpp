#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hurwitz {

// Raised when an input violates a documented precondition.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation would exceed the configured memory budget.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal structural invariant fails (a bug, never user input).
struct MathError : std::runtime_error {
    explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Memory budget shared by enumeration and complex assembly.
// charge() is called with an estimate before the allocation happens.
class Budget {
  public:
    explicit Budget(std::size_t bytes = kDefaultBytes) : limit_(bytes) {}

    void charge(std::size_t bytes, const char* what) {
        used_ += bytes;
        if (used_ > limit_)
            throw ResourceError(std::string(what) + ": memory budget exceeded (" +
                                std::to_string(used_) + " > " + std::to_string(limit_) +
                                " bytes)");
    }
    void release(std::size_t bytes) { used_ = bytes > used_ ? 0 : used_ - bytes; }
    std::size_t limit() const { return limit_; }
    std::size_t used() const { return used_; }

    static constexpr std::size_t kDefaultBytes = std::size_t(2) << 30;  // 2 GiB

  private:
    std::size_t limit_;
    std::size_t used_ = 0;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
// written to preallocated slots so that the outcome is independent of
// scheduling order.
inline void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= count) return;
                    fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hurwitz
