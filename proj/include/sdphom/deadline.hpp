#pragma once

#include "sdphom/rational.hpp"

#include <chrono>
#include <optional>

namespace sdphom {

// Cooperative time budget threaded through the symbolic kernels; expiry
// surfaces as TimeoutError and is reported per stratum, never swallowed.
class Deadline {
public:
    Deadline() = default;
    static Deadline after_ms(int64_t ms) {
        Deadline d;
        if (ms > 0) d.at_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        return d;
    }
    static Deadline unlimited() { return Deadline(); }

    bool expired() const { return at_ && std::chrono::steady_clock::now() > *at_; }
    void check(const char* where) const {
        if (expired()) throw TimeoutError(std::string("time budget exhausted in ") + where);
    }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace sdphom
