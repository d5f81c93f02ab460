#include "sskcrit/rng.hpp"

namespace sskcrit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed seed, std::uint64_t tag) {
  return splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

Seed replicate_seed(Seed master, std::uint64_t replicate, std::uint32_t attempt) {
  const auto tag = stream_tag("replicate") ^ splitmix64(replicate) ^
                   (static_cast<std::uint64_t>(attempt) << 56);
  return derive_seed(master, tag);
}

Engine make_engine(Seed seed, std::string_view operation) {
  return Engine(derive_seed(seed, stream_tag(operation)));
}

}  // namespace sskcrit
