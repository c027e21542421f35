#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace cswseg
{

  // Uniform draw in [0, bound) from mt19937_64 by rejection. Unlike
  // std::uniform_int_distribution the sequence is the same on every
  // standard library.
  inline std::uint64_t bounded_draw(std::mt19937_64& engine, std::uint64_t bound)
  {
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
    std::uint64_t draw;
    do
      draw = engine();
    while (draw >= limit);
    return draw % bound;
  }

  template <typename T>
  void seeded_shuffle(std::vector<T>& items, std::mt19937_64& engine)
  {
    for (std::size_t i = items.size(); i > 1; --i)
    {
      const auto j = static_cast<std::size_t>(bounded_draw(engine, i));
      std::swap(items[i - 1], items[j]);
    }
  }

}
