// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>

namespace nbzeta {

/// Neumaier-compensated running sum. Deterministic for a fixed input order.
template <class Scalar_>
class NeumaierSum
{
public:
    void add(Scalar_ v)
    {
        const Scalar_ t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            carry_ += (sum_ - t) + v;
        } else {
            carry_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    Scalar_ value() const { return sum_ + carry_; }

private:
    Scalar_ sum_ = 0;
    Scalar_ carry_ = 0;
};

template <class Scalar_>
class NeumaierSum<std::complex<Scalar_>>
{
public:
    void add(const std::complex<Scalar_>& v)
    {
        re_.add(v.real());
        im_.add(v.imag());
    }

    std::complex<Scalar_> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum<Scalar_> re_;
    NeumaierSum<Scalar_> im_;
};

/// Pairwise (tree) summation over a fixed order of terms.
template <class T>
T pairwise_sum(std::span<const T> terms)
{
    if (terms.empty()) return T{};
    if (terms.size() == 1) return terms[0];
    const std::size_t half = terms.size() / 2;
    return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

} // namespace nbzeta
