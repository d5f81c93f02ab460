#pragma once

#include <cstdint>
#include <string_view>

#include <boost/random/mersenne_twister.hpp>

namespace sskcrit {

using Seed = std::uint64_t;
using Engine = boost::random::mt19937_64;

/// Recorded in run metadata so output files name the generator that made them.
inline constexpr std::string_view kGeneratorId = "boost-mt19937_64+splitmix64";

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a hash; turns an operation name into a stream tag.
constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Independent substream for (seed, tag). Two different tags never share a
/// stream for the same seed, so call order does not matter.
Seed derive_seed(Seed seed, std::uint64_t tag);

/// Substream for replicate `r` (attempt 0 is the first try, 1 the re-seed).
Seed replicate_seed(Seed master, std::uint64_t replicate, std::uint32_t attempt = 0);

Engine make_engine(Seed seed, std::string_view operation);

}  // namespace sskcrit
