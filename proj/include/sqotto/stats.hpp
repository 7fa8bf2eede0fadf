// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace sqotto {

/// Sample mean with its standard error.
struct MeanEstimate {
    double mean = 0.0;
    double error = 0.0;  // standard error of the mean
    std::size_t count = 0;
};

/// Two-pass mean and standard error, summed in index order.
inline MeanEstimate mean_estimate(std::span<const double> values)
{
    MeanEstimate out;
    out.count = values.size();
    if (values.empty())
        return out;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values)
            ss += (v - out.mean) * (v - out.mean);
        const double n = static_cast<double>(values.size());
        out.error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

/// Accumulates paired samples (w, q) to estimate sum(w)/sum(q).
///
/// The standard error uses the delta method on the residuals w - ratio*q.
class RatioAccumulator {
public:
    void add(double w, double q) noexcept
    {
        sum_w_ += w;
        sum_q_ += q;
        sum_ww_ += w * w;
        sum_qq_ += q * q;
        sum_wq_ += w * q;
        ++count_;
    }

    void merge(const RatioAccumulator& other) noexcept
    {
        sum_w_ += other.sum_w_;
        sum_q_ += other.sum_q_;
        sum_ww_ += other.sum_ww_;
        sum_qq_ += other.sum_qq_;
        sum_wq_ += other.sum_wq_;
        count_ += other.count_;
    }

    std::size_t count() const noexcept { return count_; }
    double sum_numerator() const noexcept { return sum_w_; }
    double sum_denominator() const noexcept { return sum_q_; }
    double ratio() const noexcept { return sum_w_ / sum_q_; }

    double standard_error() const noexcept
    {
        if (count_ < 2 || sum_q_ == 0.0)
            return 0.0;
        const double eta = ratio();
        const double n = static_cast<double>(count_);
        double resid = sum_ww_ - 2.0 * eta * sum_wq_ + eta * eta * sum_qq_;
        resid = resid > 0.0 ? resid : 0.0;
        return std::sqrt(resid * n / (n - 1.0)) / std::abs(sum_q_);
    }

private:
    double sum_w_ = 0.0;
    double sum_q_ = 0.0;
    double sum_ww_ = 0.0;
    double sum_qq_ = 0.0;
    double sum_wq_ = 0.0;
    std::size_t count_ = 0;
};

}  // namespace sqotto
