#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fitbench {

// Compensated (Kahan) summation.
struct KahanAccumulator {
  double sum = 0.0;
  double c = 0.0;

  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// All reductions run over fixed-size tiles combined in ascending tile order,
// with the compensation carried across tiles. Tile boundaries depend only on
// the element count, never on the worker count, so the serial and the
// OpenMP-parallel drivers produce bitwise-identical sums.
inline constexpr std::size_t kReductionTile = 8192;

struct TilePartial {
  double sum = 0.0;
  double c = 0.0;
};

inline double combine_tiles_ascending(const std::vector<TilePartial>& partials) {
  KahanAccumulator acc;
  for (const TilePartial& p : partials) {
    acc.add(p.sum);
    acc.add(-p.c);
  }
  return acc.sum;
}

// term(i) -> i-th addend. Serial driver.
template <class TermFn>
double tiled_kahan_sum(std::size_t n, TermFn term) {
  KahanAccumulator acc;
  for (std::size_t tile_begin = 0; tile_begin < n; tile_begin += kReductionTile) {
    const std::size_t tile_end = tile_begin + kReductionTile < n ? tile_begin + kReductionTile : n;
    KahanAccumulator tile;
    for (std::size_t i = tile_begin; i < tile_end; ++i) tile.add(term(i));
    acc.add(tile.sum);
    acc.add(-tile.c);
  }
  return acc.sum;
}

// OpenMP driver: tiles are computed by the worker pool and combined serially
// in ascending order. Result is bitwise-identical to tiled_kahan_sum.
template <class TermFn>
double tiled_kahan_sum_parallel(std::size_t n, TermFn term) {
  const std::size_t n_tiles = (n + kReductionTile - 1) / kReductionTile;
  std::vector<TilePartial> partials(n_tiles);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(n_tiles); ++t) {
    const std::size_t tile_begin = static_cast<std::size_t>(t) * kReductionTile;
    const std::size_t tile_end = tile_begin + kReductionTile < n ? tile_begin + kReductionTile : n;
    KahanAccumulator tile;
    for (std::size_t i = tile_begin; i < tile_end; ++i) tile.add(term(i));
    partials[static_cast<std::size_t>(t)] = {tile.sum, tile.c};
  }
  return combine_tiles_ascending(partials);
}

// Streaming variant used by the per-event scalar path. Feeding it the same
// terms in the same order yields bitwise the same result as the drivers
// above (same tile boundaries, same combination order).
class TiledKahanStream {
 public:
  void add(double v) {
    tile_.add(v);
    if (++filled_ == kReductionTile) flush_tile();
  }

  double result() {
    if (filled_ > 0) flush_tile();
    return total_.sum;
  }

 private:
  void flush_tile() {
    total_.add(tile_.sum);
    total_.add(-tile_.c);
    tile_ = KahanAccumulator{};
    filled_ = 0;
  }

  KahanAccumulator tile_;
  KahanAccumulator total_;
  std::size_t filled_ = 0;
};

}  // namespace fitbench
