// SPDX-License-Identifier: Apache-2.0
#include <trajforge/seed.hpp>

#include <limits>
#include <vector>

namespace trajforge
{

auto derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) -> std::uint64_t
{
    auto words = std::vector<std::uint32_t> {};
    words.reserve(2 * (parts.size() + 1));
    auto push = [&](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(base);
    for (auto p: parts)
        push(p);
    auto seq = std::seed_seq(words.begin(), words.end());
    auto rng = Rng(seq);
    return rng();
}

auto make_rng(std::uint64_t seed) -> Rng
{
    return Rng(derive_seed(seed, {}));
}

auto draw_index(Rng& rng, std::size_t bound) -> std::size_t
{
    // Rejection sampling keeps the draw unbiased and platform independent.
    auto const range = static_cast<std::uint64_t>(bound);
    auto const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    auto value = rng();
    while (value >= limit)
        value = rng();
    return static_cast<std::size_t>(value % range);
}

auto draw_int(Rng& rng, std::int64_t low, std::int64_t high) -> std::int64_t
{
    auto span = static_cast<std::size_t>(high - low) + 1;
    return low + static_cast<std::int64_t>(draw_index(rng, span));
}

auto fnv1a(std::string_view bytes) -> std::uint64_t
{
    auto hash = std::uint64_t { 0xcbf29ce484222325ULL };
    for (unsigned char c: bytes)
    {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace trajforge
