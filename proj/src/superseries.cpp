#include "nsvosa/superseries.hpp"

#include <numeric>

namespace nsvosa {

bool convolution_exact(const std::int64_t* e, int k, const Interval* sa, const Interval* sb, const Interval* ea,
                       const Interval* eb, const Interval& band_a, const Interval& band_b) {
  std::int64_t lo[kMaxEven], hi[kMaxEven];
  std::int64_t esum = 0;
  for (int v = 0; v < k; ++v) {
    lo[v] = std::max(sa[v].lo, sat_add(e[v], -sb[v].hi));
    hi[v] = std::min(sa[v].hi, sat_add(e[v], -sb[v].lo));
    if (lo[v] > hi[v]) return true;
    esum += e[v];
  }
  std::int64_t sumlo = 0, sumhi = 0;
  for (int v = 0; v < k; ++v) {
    sumlo = sat_add(sumlo, lo[v]);
    sumhi = sat_add(sumhi, hi[v]);
  }
  Interval band = intersect(band_a, shifted(negated(band_b), esum));
  band = intersect(band, Interval{sumlo, sumhi});
  if (band.is_empty()) return true;
  for (int v = 0; v < k; ++v) {
    std::int64_t rest_lo = 0, rest_hi = 0;
    for (int w = 0; w < k; ++w)
      if (w != v) {
        rest_lo = sat_add(rest_lo, lo[w]);
        rest_hi = sat_add(rest_hi, hi[w]);
      }
    Interval iv{std::max(lo[v], sat_add(band.lo, -rest_hi)), std::min(hi[v], sat_add(band.hi, -rest_lo))};
    if (iv.is_empty()) return true;
    if (!ea[v].contains(iv)) return false;
    Interval jv{sat_add(e[v], -iv.hi), sat_add(e[v], -iv.lo)};
    if (!eb[v].contains(jv)) return false;
  }
  return true;
}

std::int64_t box_volume(const std::vector<Interval>& box) {
  std::int64_t vol = 1;
  for (const auto& iv : box) {
    if (iv.is_empty()) return 0;
    if (!iv.bounded()) return -1;
    vol *= iv.size();
  }
  return vol;
}

std::vector<Interval> shrink_box(std::vector<Interval> box, const std::function<bool(const std::int64_t*)>& pred) {
  const int k = static_cast<int>(box.size());
  if (k == 0) return box;
  std::int64_t vol = box_volume(box);
  if (vol == 0) return box;
  if (vol < 0) throw Error(ErrorKind::EmptyWindow, "exactness search over an unbounded region");
  if (vol > 50'000'000) throw Error(ErrorKind::EmptyWindow, "exactness search region too large");
  std::vector<std::int64_t> lo(k), dim(k);
  for (int v = 0; v < k; ++v) {
    lo[v] = box[v].lo;
    dim[v] = box[v].size();
  }
  std::vector<char> bad(static_cast<std::size_t>(vol));
  std::int64_t nbad = 0;
  {
    std::vector<std::int64_t> e(lo);
    for (std::int64_t idx = 0; idx < vol; ++idx) {
      std::int64_t r = idx;
      for (int v = k - 1; v >= 0; --v) {
        e[v] = lo[v] + r % dim[v];
        r /= dim[v];
      }
      bad[idx] = !pred(e.data());
      nbad += bad[idx];
    }
  }
  if (nbad == 0) return box;
  std::vector<std::int64_t> cur_lo(k, 0), cur_hi(k);
  for (int v = 0; v < k; ++v) cur_hi[v] = dim[v] - 1;
  while (true) {
    // Count failures per face of the current box.
    std::vector<std::int64_t> face_lo(k, 0), face_hi(k, 0);
    std::int64_t total = 0;
    std::vector<std::int64_t> c(cur_lo);
    bool done = false;
    for (int v = 0; v < k; ++v)
      if (cur_lo[v] > cur_hi[v]) done = true;
    if (done) break;
    while (true) {
      std::int64_t idx = 0;
      for (int v = 0; v < k; ++v) idx = idx * dim[v] + c[v];
      if (bad[idx]) {
        ++total;
        for (int v = 0; v < k; ++v) {
          if (c[v] == cur_lo[v]) ++face_lo[v];
          if (c[v] == cur_hi[v]) ++face_hi[v];
        }
      }
      int v = k - 1;
      while (v >= 0) {
        if (++c[v] <= cur_hi[v]) break;
        c[v] = cur_lo[v];
        --v;
      }
      if (v < 0) break;
    }
    if (total == 0) break;
    int best_v = -1;
    bool best_lo = true;
    std::int64_t best = -1;
    for (int v = 0; v < k; ++v) {
      if (face_lo[v] > best) {
        best = face_lo[v];
        best_v = v;
        best_lo = true;
      }
      if (face_hi[v] > best) {
        best = face_hi[v];
        best_v = v;
        best_lo = false;
      }
    }
    if (best_lo) ++cur_lo[best_v];
    else --cur_hi[best_v];
  }
  for (int v = 0; v < k; ++v) {
    if (cur_lo[v] > cur_hi[v]) {
      for (auto& iv : box) iv = Interval::empty();
      return box;
    }
    box[v] = Interval{lo[v] + cur_lo[v], lo[v] + cur_hi[v]};
  }
  return box;
}

namespace detail {
std::int64_t count_even_vectors(const std::vector<Interval>& region, std::size_t present) {
  std::int64_t vol = box_volume(region);
  if (vol < 0) return static_cast<std::int64_t>(present);
  return region.empty() ? 1 : vol;
}
}  // namespace detail

}  // namespace nsvosa
