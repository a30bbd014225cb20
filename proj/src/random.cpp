#include "fuknagaev/random.hpp"

namespace fuknagaev {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Engine make_engine(std::uint64_t seed, std::uint64_t index) {
  return Engine(derive_seed(seed, index));
}

double uniform_open01(Engine& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace fuknagaev
