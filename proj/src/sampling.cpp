#include "parab/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace parab {

double halton(std::uint64_t index, std::uint32_t base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t offset) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ (0xa0761d6478bd642fULL * (offset + 1))));
}

std::vector<Vec> unit_sphere_directions(int n, int count) {
  if (n < 1) throw std::invalid_argument("unit_sphere_directions: n < 1");
  if (count < 1) throw std::invalid_argument("unit_sphere_directions: count < 1");
  static const std::uint32_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < n && static_cast<int>(dirs.size()) < count; ++i)
    dirs.push_back(axis_vector(n, i));

  std::uint64_t index = 1;
  const int pairs = (n + 1) / 2;
  if (pairs * 2 > static_cast<int>(sizeof(bases) / sizeof(bases[0])))
    throw std::invalid_argument("unit_sphere_directions: dimension too large");
  while (static_cast<int>(dirs.size()) < count) {
    Vec v(static_cast<std::size_t>(n));
    for (int p = 0; p < pairs; ++p) {
      double u1 = halton(index, bases[static_cast<std::size_t>(2 * p)]);
      double u2 = halton(index, bases[static_cast<std::size_t>(2 * p + 1)]);
      if (u1 <= 0.0) u1 = 0.5;  // index 0 never used, but stay safe
      const double rad = std::sqrt(-2.0 * std::log(u1));
      const double z1 = rad * std::cos(2.0 * M_PI * u2);
      const double z2 = rad * std::sin(2.0 * M_PI * u2);
      v[static_cast<std::size_t>(2 * p)] = z1;
      if (2 * p + 1 < n) v[static_cast<std::size_t>(2 * p + 1)] = z2;
    }
    ++index;
    const double nn = norm2(v);
    if (nn < 1e-8) continue;
    dirs.push_back(scaled(v, 1.0 / nn));
  }
  return dirs;
}

}  // namespace parab
