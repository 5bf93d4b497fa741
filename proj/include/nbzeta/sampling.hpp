// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <nbzeta/types.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace nbzeta {

/// Samples [k * kChunkSize, (k+1) * kChunkSize) from chunk k.
inline constexpr std::uint64_t kChunkSize = std::uint64_t{1} << 16;

/// Maps 64 random bits to a double in the open interval (0,1).
inline double uniform_open(std::uint64_t bits)
{
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/**
 * Generator for one chunk: mt19937_64 seeded through std::seed_seq with
 * the 32-bit halves of (seed, chunk). Both engine and seeding algorithm are
 * fixed by the standard, so streams agree across platforms and worker counts.
 */
class ChunkRng
{
public:
    ChunkRng(std::uint64_t seed, std::uint64_t chunk);

    double uniform() { return uniform_open(engine_()); }

private:
    std::mt19937_64 engine_;
};

/// Runs fn(i) for i in [0, count) on up to `workers` threads (inline when workers <= 1).
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

/// Per-output sums over a Monte-Carlo run.
struct SampleMoments
{
    Vector sum;
    Vector sum_sq;
    std::uint64_t n = 0;

    Vector mean() const { return sum / static_cast<double>(n); }
    /// Standard error of each mean (sample variance with n - 1).
    Vector std_error() const;
};

using SampleFn = std::function<void(std::span<const double> x, Eigen::Ref<Vector> out)>;

/**
 * Draws n points uniformly on (0,1)^d and accumulates g(x) (n_outputs values
 * per point). Chunk sums are compensated and sequential; chunks are then
 * combined by pairwise summation in chunk order, so the result is
 * bit-identical for any worker count.
 */
SampleMoments sample_moments(std::uint64_t n, std::uint64_t seed, int d, int n_outputs, int workers,
                             const SampleFn& g);

} // namespace nbzeta
