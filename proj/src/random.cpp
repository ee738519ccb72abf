#include "osearch/random.hpp"

#include <numeric>

#include "osearch/error.hpp"

namespace osearch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (std::uint64_t part : parts) h = splitmix64(h ^ splitmix64(part));
  return h;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) fail(ErrorKind::invalid_parameter, "uniform_below needs a positive bound");
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<int> sample_distinct(Rng& rng, int universe, int count) {
  if (count < 0 || count > universe) {
    fail(ErrorKind::invalid_parameter, "cannot draw that many distinct values");
  }
  std::vector<int> pool(static_cast<std::size_t>(universe));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < count; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(universe - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace osearch
