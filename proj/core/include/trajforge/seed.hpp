// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>

namespace trajforge
{

// mt19937_64 and seed_seq are fully specified by the standard; the standard
// distributions are not, so bounded draws go through the helpers below.
using Rng = std::mt19937_64;

/// Mixes a base seed with a list of stream identifiers into a new seed.
auto derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) -> std::uint64_t;

auto make_rng(std::uint64_t seed) -> Rng;

/// Uniform index in [0, bound). `bound` must be positive.
auto draw_index(Rng& rng, std::size_t bound) -> std::size_t;

/// Uniform integer in [low, high].
auto draw_int(Rng& rng, std::int64_t low, std::int64_t high) -> std::int64_t;

/// 64-bit FNV-1a; used for stable identifiers and config hashes.
auto fnv1a(std::string_view bytes) -> std::uint64_t;

template <typename T>
void seeded_shuffle(std::span<T> items, Rng& rng)
{
    for (auto i = items.size(); i > 1; --i)
    {
        auto j = draw_index(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace trajforge
