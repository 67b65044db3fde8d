// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file aghetnet/rng.hpp
//! Counter-keyed random substreams.
//!
//! Every random draw in a simulation is taken from a substream identified by
//! (master seed, purpose, indices). A substream is a xoshiro256** engine
//! seeded through splitmix64, so deriving one costs a handful of integer ops
//! and results never depend on evaluation order or thread count.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace aghetnet
{
inline constexpr std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

//! xoshiro256** 1.0; satisfies UniformRandomBitGenerator.
class Xoshiro256
{
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0)
    {
        std::uint64_t sm = seed;
        for (auto& word : s_)
        {
            word = splitmix64(sm);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    //! Uniform double in the open interval (0, 1).
    double uniform_open()
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
};

//! Purpose tags keep substreams for different consumers disjoint.
enum class StreamTag : std::uint64_t
{
    Layout = 0x4c41594fULL,
    UeLinks = 0x55454c4bULL,
    ProbeLinks = 0x50524f42ULL,
    PathLossCdf = 0x504c4344ULL,
    Test = 0x54455354ULL
};

//! Hash (master, tag, a, b, c) into a 64-bit substream key.
inline std::uint64_t stream_key(std::uint64_t master,
                                StreamTag tag,
                                std::uint64_t a = 0,
                                std::uint64_t b = 0,
                                std::uint64_t c = 0)
{
    std::uint64_t state = master;
    std::uint64_t h = splitmix64(state);
    for (std::uint64_t word : {static_cast<std::uint64_t>(tag), a, b, c})
    {
        state = h ^ word;
        h = splitmix64(state);
    }
    return h;
}

inline Xoshiro256 substream(std::uint64_t master,
                            StreamTag tag,
                            std::uint64_t a = 0,
                            std::uint64_t b = 0,
                            std::uint64_t c = 0)
{
    return Xoshiro256{stream_key(master, tag, a, b, c)};
}

}  // namespace aghetnet
