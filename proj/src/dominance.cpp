#include "sumlab/dominance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumlab {

namespace {

constexpr std::size_t kBruteForceSize = 32;
constexpr std::size_t kBruteForcePairs = 1024;

struct Reporter {
  const PointSet& ps;
  std::vector<DominancePair> out;

  bool dominates(std::size_t r, std::size_t b, std::size_t dims) const {
    const auto& p = ps.red[r];
    const auto& q = ps.blue[b];
    for (std::size_t t = 0; t < dims; ++t) {
      if (p[t] < q[t]) return false;
    }
    return true;
  }

  void run(const std::vector<std::uint32_t>& reds, const std::vector<std::uint32_t>& blues, std::size_t dims) {
    if (reds.empty() || blues.empty()) return;
    if (dims == 0) {
      for (auto r : reds) {
        for (auto b : blues) out.emplace_back(r, b);
      }
      return;
    }
    if (reds.size() + blues.size() <= kBruteForceSize || reds.size() * blues.size() <= kBruteForcePairs) {
      for (auto r : reds) {
        for (auto b : blues) {
          if (dominates(r, b, dims)) out.emplace_back(r, b);
        }
      }
      return;
    }
    // Blue before red on equal coordinates: every lower-half red then sits
    // strictly below every upper-half blue.
    const std::size_t axis = dims - 1;
    struct Item {
      Scalar v;
      std::uint8_t red;
      std::uint32_t id;
    };
    std::vector<Item> items;
    items.reserve(reds.size() + blues.size());
    for (auto r : reds) items.push_back(Item{ps.red[r][axis], 1, r});
    for (auto b : blues) items.push_back(Item{ps.blue[b][axis], 0, b});
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
      if (x.v != y.v) return x.v < y.v;
      if (x.red != y.red) return x.red < y.red;
      return x.id < y.id;
    });
    const std::size_t mid = items.size() / 2;
    std::vector<std::uint32_t> lr, lb, ur, ub;
    for (std::size_t t = 0; t < items.size(); ++t) {
      auto& dst = t < mid ? (items[t].red ? lr : lb) : (items[t].red ? ur : ub);
      dst.push_back(items[t].id);
    }
    run(lr, lb, dims);
    run(ur, ub, dims);
    run(ur, lb, dims - 1);
  }
};

void check_points(const std::vector<std::vector<Scalar>>& pts, std::size_t d) {
  for (const auto& p : pts) {
    if (p.size() != d) throw std::invalid_argument("report_dominances: dimension mismatch");
  }
}

}  // namespace

std::vector<DominancePair> report_dominances(const PointSet& ps) {
  if (ps.d < 1) throw std::invalid_argument("report_dominances: d must be at least 1");
  check_points(ps.red, ps.d);
  check_points(ps.blue, ps.d);
  Reporter rep{ps, {}};
  std::vector<std::uint32_t> reds(ps.red.size()), blues(ps.blue.size());
  std::iota(reds.begin(), reds.end(), 0u);
  std::iota(blues.begin(), blues.end(), 0u);
  rep.run(reds, blues, ps.d);
  std::sort(rep.out.begin(), rep.out.end());
  return rep.out;
}

PointSet rank_compress(std::size_t d, const std::vector<std::vector<__int128>>& red,
                       const std::vector<std::vector<__int128>>& blue) {
  PointSet ps;
  ps.d = d;
  ps.red.assign(red.size(), std::vector<Scalar>(d));
  ps.blue.assign(blue.size(), std::vector<Scalar>(d));
  std::vector<__int128> vals;
  for (std::size_t t = 0; t < d; ++t) {
    vals.clear();
    for (const auto& p : red) vals.push_back(p.at(t));
    for (const auto& q : blue) vals.push_back(q.at(t));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    auto rank = [&](__int128 v) { return static_cast<Scalar>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin()); };
    for (std::size_t r = 0; r < red.size(); ++r) ps.red[r][t] = rank(red[r][t]);
    for (std::size_t b = 0; b < blue.size(); ++b) ps.blue[b][t] = rank(blue[b][t]);
  }
  return ps;
}

TieBrokenValues tie_broken(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  // Sum perturbation row * |B| + column is below the scale, so it only
  // separates equal real sums.
  const __int128 nb = static_cast<__int128>(b.size());
  const __int128 scale = static_cast<__int128>(a.size()) * nb + 1;
  TieBrokenValues out;
  for (std::size_t k = 0; k < a.size(); ++k) out.a.push_back(a[k] * scale + static_cast<__int128>(k) * nb);
  for (std::size_t m = 0; m < b.size(); ++m) out.b.push_back(b[m] * scale + static_cast<__int128>(m));
  return out;
}

A1Result solve_a1(const ThreeSumInstance& inst, std::size_t g) {
  if (g < 1 || g > 2) throw std::invalid_argument("solve_a1: g must be 1 or 2");
  A1Result res;
  res.g = g;
  res.a_part = partition_blocks(inst.a.size(), g);
  res.b_part = partition_blocks(inst.b.size(), g);
  const std::size_t ma = res.a_part.count();
  const std::size_t mb = res.b_part.count();
  res.boxes.resize(ma * mb);
  res.firings.assign(ma * mb, 0);
  res.dimension = g * g - 1;
  const TieBrokenValues tb = tie_broken(inst.a, inst.b);

  // Blocks grouped by size; each (rows, cols) shape is one enumeration.
  for (std::size_t rows = 1; rows <= g; ++rows) {
    for (std::size_t cols = 1; cols <= g; ++cols) {
      std::vector<std::uint32_t> a_ids, b_ids;
      for (std::size_t i = 0; i < ma; ++i) {
        if (res.a_part.size(i) == rows) a_ids.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::size_t j = 0; j < mb; ++j) {
        if (res.b_part.size(j) == cols) b_ids.push_back(static_cast<std::uint32_t>(j));
      }
      if (a_ids.empty() || b_ids.empty()) continue;
      std::vector<Cell> perm;
      for (std::uint32_t p = 0; p < rows; ++p) {
        for (std::uint32_t q = 0; q < cols; ++q) perm.push_back(Cell{p, q});
      }
      const std::size_t d = perm.size() - 1;
      do {
        ++res.orderings;
        if (d == 0) {
          for (auto i : a_ids) {
            for (auto j : b_ids) {
              res.boxes[i * mb + j] = BoxOrder{rows, cols, perm, 0};
              ++res.firings[i * mb + j];
            }
          }
          continue;
        }
        // red_j[t] = B(c_{t+1}) - B(c_t), blue_i[t] = A(r_t) - A(r_{t+1}).
        std::vector<std::vector<__int128>> red(b_ids.size(), std::vector<__int128>(d));
        std::vector<std::vector<__int128>> blue(a_ids.size(), std::vector<__int128>(d));
        for (std::size_t r = 0; r < b_ids.size(); ++r) {
          const std::size_t y0 = res.b_part.begin(b_ids[r]);
          for (std::size_t t = 0; t < d; ++t) red[r][t] = tb.b[y0 + perm[t + 1].q] - tb.b[y0 + perm[t].q];
        }
        for (std::size_t s = 0; s < a_ids.size(); ++s) {
          const std::size_t x0 = res.a_part.begin(a_ids[s]);
          for (std::size_t t = 0; t < d; ++t) blue[s][t] = tb.a[x0 + perm[t].p] - tb.a[x0 + perm[t + 1].p];
        }
        for (const auto& [r, s] : report_dominances(rank_compress(d, red, blue))) {
          const std::size_t box = a_ids[s] * mb + b_ids[r];
          res.boxes[box] = BoxOrder{rows, cols, perm, 0};
          ++res.firings[box];
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return res;
}

}  // namespace sumlab
