#pragma once

#include <chrono>
#include <vector>

#include "automol/errors.hpp"

namespace automol {

using Matrix = std::vector<std::vector<double>>;  // row major
using Labels = std::vector<int>;                  // values in {0, 1}

// Wall-clock budget polled cooperatively between trees / boosting rounds /
// node splits. Hard preemption would break deterministic replay.
class Deadline {
public:
    static Deadline unlimited() { return Deadline(); }
    static Deadline after(double seconds) {
        Deadline d;
        d.unlimited_ = false;
        d.end_ = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
        return d;
    }

    bool expired() const { return !unlimited_ && std::chrono::steady_clock::now() >= end_; }
    void poll() const {
        if (expired()) throw DeadlineExceeded();
    }

private:
    bool unlimited_ = true;
    std::chrono::steady_clock::time_point end_{};
};

}  // namespace automol
