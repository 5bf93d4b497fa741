// Copyright 2026 The nbzeta Authors
// SPDX-License-Identifier: Apache-2.0
#include <nbzeta/sampling.hpp>

#include <nbzeta/error.hpp>
#include <nbzeta/summation.hpp>

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nbzeta {
namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t chunk)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

struct ChunkSums
{
    Vector sum;
    Vector sum_sq;
};

ChunkSums combine(const ChunkSums& a, const ChunkSums& b)
{
    return {a.sum + b.sum, a.sum_sq + b.sum_sq};
}

ChunkSums pairwise(std::span<const ChunkSums> parts)
{
    if (parts.size() == 1) return parts[0];
    const std::size_t half = parts.size() / 2;
    return combine(pairwise(parts.first(half)), pairwise(parts.subspan(half)));
}

} // namespace

ChunkRng::ChunkRng(std::uint64_t seed, std::uint64_t chunk) : engine_(seeded_engine(seed, chunk)) {}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn)
{
    const auto n_threads = static_cast<std::size_t>(std::max(1, workers));
    if (n_threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    const std::size_t used = std::min(n_threads, count);
    pool.reserve(used);
    for (std::size_t t = 0; t < used; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += used) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Vector SampleMoments::std_error() const
{
    const double nd = static_cast<double>(n);
    if (n < 2) return Vector::Constant(sum.size(), std::numeric_limits<double>::infinity());
    const Vector m = mean();
    Vector var = (sum_sq - nd * m.cwiseProduct(m)) / (nd - 1.0);
    return var.cwiseMax(0.0).cwiseQuotient(Vector::Constant(var.size(), nd)).cwiseSqrt();
}

SampleMoments sample_moments(std::uint64_t n, std::uint64_t seed, int d, int n_outputs, int workers,
                             const SampleFn& g)
{
    if (n < 1) throw DomainError("sample_moments: need at least one sample");
    if (d < 1 || n_outputs < 1) throw DomainError("sample_moments: d and n_outputs must be >= 1");

    const std::uint64_t n_chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkSums> parts(static_cast<std::size_t>(n_chunks));

    parallel_for(static_cast<std::size_t>(n_chunks), workers, [&](std::size_t k) {
        const std::uint64_t begin = k * kChunkSize;
        const std::uint64_t end = std::min(n, begin + kChunkSize);
        ChunkRng rng(seed, k);
        std::vector<double> x(static_cast<std::size_t>(d));
        Vector out(n_outputs);
        std::vector<NeumaierSum<double>> s(static_cast<std::size_t>(n_outputs));
        std::vector<NeumaierSum<double>> s2(static_cast<std::size_t>(n_outputs));
        for (std::uint64_t i = begin; i < end; ++i) {
            for (auto& xj : x) xj = rng.uniform();
            out.setZero();
            g(x, out);
            for (int o = 0; o < n_outputs; ++o) {
                s[static_cast<std::size_t>(o)].add(out[o]);
                s2[static_cast<std::size_t>(o)].add(out[o] * out[o]);
            }
        }
        ChunkSums cs{Vector(n_outputs), Vector(n_outputs)};
        for (int o = 0; o < n_outputs; ++o) {
            cs.sum[o] = s[static_cast<std::size_t>(o)].value();
            cs.sum_sq[o] = s2[static_cast<std::size_t>(o)].value();
        }
        parts[k] = std::move(cs);
    });

    const ChunkSums total = pairwise(std::span<const ChunkSums>(parts));
    return {total.sum, total.sum_sq, n};
}

} // namespace nbzeta
