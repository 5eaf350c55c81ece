#pragma once

#include <array>
#include <cstddef>

namespace coarea {

/// Streaming pairwise (tree) summation: values are plain-summed in blocks of
/// 256 and block results merged binary-counter style, keeping round-off at
/// O(block + log n) ulps instead of O(n). O(log n) state, deterministic.
class PairwiseSum {
public:
    void add(double x) {
        block_ += x;
        if (++filled_ == kBlock) {
            push(block_);
            block_ = 0.0;
            filled_ = 0;
        }
    }

    double value() const {
        double total = block_;
        for (unsigned lvl = 0; lvl < kLevels; ++lvl) {
            if (occupied_ & (1ull << lvl)) total += levels_[lvl];
        }
        return total;
    }

private:
    static constexpr std::size_t kBlock = 256;
    static constexpr unsigned kLevels = 64;

    void push(double v) {
        unsigned lvl = 0;
        while (occupied_ & (1ull << lvl)) {
            v += levels_[lvl];
            occupied_ &= ~(1ull << lvl);
            ++lvl;
        }
        levels_[lvl] = v;
        occupied_ |= 1ull << lvl;
    }

    std::array<double, kLevels> levels_{};
    unsigned long long occupied_ = 0;
    double block_ = 0.0;
    std::size_t filled_ = 0;
};

/// Kahan compensated accumulator for running sums whose increments arrive
/// over time (and therefore cannot be tree-summed).
class KahanSum {
public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace coarea
