#include "sumlab/subq.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "sumlab/dominance.hpp"
#include "sumlab/operands.hpp"

namespace sumlab {

namespace {

// Per-row counts of a staircase, padded to `rows` entries.
using Shape = std::vector<std::uint32_t>;

Shape padded(const PartialContour& pc, std::size_t rows) {
  Shape s(rows, 0);
  std::copy(pc.entries.begin(), pc.entries.end(), s.begin());
  return s;
}

// Cells that can be the smallest cell outside the shape.
std::vector<Cell> corners(const Shape& sh, std::size_t cols) {
  std::vector<Cell> out;
  for (std::size_t a = 0; a < sh.size(); ++a) {
    if (sh[a] < cols && (a == 0 || sh[a - 1] >= sh[a] + 1)) out.push_back(Cell{static_cast<std::uint32_t>(a), sh[a]});
  }
  return out;
}

// Pairs (u, v) meaning value(u) < value(v) that hold exactly when the shape is
// the set of cells below the value at `def`. The test against `def` itself is
// an equality and is skipped.
void shape_tests(const Shape& sh, std::size_t cols, Cell def, std::vector<std::pair<Cell, Cell>>& tests) {
  std::size_t rows_used = 0;
  for (std::size_t a = 0; a < sh.size(); ++a) {
    if (sh[a] == 0) break;
    rows_used = a + 1;
    const auto row = static_cast<std::uint32_t>(a);
    tests.emplace_back(Cell{row, sh[a] - 1}, def);
    const Cell next{row, sh[a]};
    if (sh[a] < cols && next != def) tests.emplace_back(def, next);
  }
  // Closing row: the first row outside the prefix starts at or above the value.
  if (rows_used < sh.size()) {
    const Cell first{static_cast<std::uint32_t>(rows_used), 0};
    if (first != def) tests.emplace_back(def, first);
  }
}

// Orderings of `cells` starting with `first` that respect rows and columns.
void linear_extensions(std::vector<Cell> cells, Cell first, std::vector<std::vector<Cell>>& out) {
  std::sort(cells.begin(), cells.end());
  do {
    if (cells.front() != first) continue;
    bool ok = true;
    for (std::size_t x = 0; x < cells.size() && ok; ++x) {
      for (std::size_t y = 0; y < x && ok; ++y) {
        if (cells[y].p >= cells[x].p && cells[y].q >= cells[x].q) ok = false;
      }
    }
    if (ok) out.push_back(cells);
  } while (std::next_permutation(cells.begin(), cells.end()));
}

void enumerate(std::size_t rows, std::size_t cols, std::size_t remaining, std::uint32_t prev,
               std::vector<std::uint32_t>& cur, std::vector<PartialContour>& out) {
  if (remaining == 0) {
    out.push_back(PartialContour{cur});
    return;
  }
  if (cur.size() == rows) return;
  for (std::uint32_t c = static_cast<std::uint32_t>(std::min<std::size_t>(prev, remaining)); c >= 1; --c) {
    cur.push_back(c);
    enumerate(rows, cols, remaining - c, c, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::size_t PartialContour::column_sum() const {
  std::size_t s = 0;
  for (auto e : entries) s += e;
  return s;
}

std::vector<PartialContour> enumerate_partial_contours(std::size_t rows, std::size_t cols, std::size_t column_sum) {
  std::vector<PartialContour> out;
  if (column_sum > rows * cols) return out;
  std::vector<std::uint32_t> cur;
  enumerate(rows, cols, column_sum, static_cast<std::uint32_t>(cols), cur, out);
  return out;
}

std::vector<PartialContour> enumerate_partial_contours(std::size_t g, std::size_t column_sum) {
  return enumerate_partial_contours(g, g, column_sum);
}

std::pair<std::size_t, std::size_t> subq_group_sizes(std::size_t g) {
  if (g < 2) throw std::invalid_argument("subq: g must be at least 2");
  const auto s = static_cast<std::size_t>(std::ceil(static_cast<double>(g) / std::log2(static_cast<double>(g))));
  return {s, (g * g + s - 1) / s};
}

SubqProfiles build_profiles(const ThreeSumInstance& inst, std::size_t g) {
  if (g < 2 || g > 4) throw std::invalid_argument("subq: g must be 2, 3 or 4");
  SubqProfiles pr;
  pr.g = g;
  std::tie(pr.s, pr.h) = subq_group_sizes(g);
  pr.a_part = partition_blocks(inst.a.size(), g);
  pr.b_part = partition_blocks(inst.b.size(), g);
  const std::size_t ma = pr.a_part.count();
  const std::size_t mb = pr.b_part.count();
  pr.boxes.resize(ma * mb);
  const TieBrokenValues tb = tie_broken(inst.a, inst.b);
  const std::size_t s = pr.s;

  for (std::size_t rows = 1; rows <= g; ++rows) {
    for (std::size_t cols = 1; cols <= g; ++cols) {
      std::vector<std::uint32_t> a_ids, b_ids;
      for (std::size_t i = 0; i < ma; ++i) {
        if (pr.a_part.size(i) == rows) a_ids.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::size_t j = 0; j < mb; ++j) {
        if (pr.b_part.size(j) == cols) b_ids.push_back(static_cast<std::uint32_t>(j));
      }
      if (a_ids.empty() || b_ids.empty()) continue;
      const std::size_t cells = rows * cols;
      const std::size_t groups = (cells + s - 1) / s;
      for (auto i : a_ids) {
        for (auto j : b_ids) {
          BoxProfile& bp = pr.boxes[i * mb + j];
          bp.rows = rows;
          bp.cols = cols;
          bp.first = pr.splits.size();
          bp.groups = groups;
          pr.splits.resize(pr.splits.size() + groups);
        }
      }
      pr.group_perm.resize(pr.splits.size(), 0);
      pr.firings.resize(pr.splits.size(), 0);

      // Rank-compressed coordinate of the test (u, v) for every B block (red)
      // and A block (blue) of this shape.
      std::map<std::array<std::uint32_t, 4>, std::pair<std::vector<Scalar>, std::vector<Scalar>>> rank_cache;
      auto ranks = [&](Cell u, Cell v) -> const std::pair<std::vector<Scalar>, std::vector<Scalar>>& {
        auto [it, fresh] = rank_cache.try_emplace({u.p, u.q, v.p, v.q});
        if (fresh) {
          std::vector<std::vector<__int128>> red(b_ids.size(), std::vector<__int128>(1));
          std::vector<std::vector<__int128>> blue(a_ids.size(), std::vector<__int128>(1));
          for (std::size_t r = 0; r < b_ids.size(); ++r) {
            const std::size_t y0 = pr.b_part.begin(b_ids[r]);
            red[r][0] = tb.b[y0 + v.q] - tb.b[y0 + u.q];
          }
          for (std::size_t q = 0; q < a_ids.size(); ++q) {
            const std::size_t x0 = pr.a_part.begin(a_ids[q]);
            blue[q][0] = tb.a[x0 + u.p] - tb.a[x0 + v.p];
          }
          const PointSet col = rank_compress(1, red, blue);
          for (const auto& p : col.red) it->second.first.push_back(p[0]);
          for (const auto& p : col.blue) it->second.second.push_back(p[0]);
        }
        return it->second;
      };
      std::vector<std::pair<Cell, Cell>> tests;
      PointSet ps;  // reused across tuples
      std::vector<std::vector<Cell>> perms;
      for (std::size_t k = 0; k < groups; ++k) {
        const std::size_t lo = k * s;
        const std::size_t hi = std::min(lo + s, cells);
        const auto lowers = enumerate_partial_contours(rows, cols, lo);
        const auto uppers = enumerate_partial_contours(rows, cols, hi);
        for (const auto& lpc : lowers) {
          const Shape lsh = padded(lpc, rows);
          for (const auto& upc : uppers) {
            const Shape ush = padded(upc, rows);
            bool nested = true;
            for (std::size_t a = 0; a < rows; ++a) nested = nested && ush[a] >= lsh[a];
            if (!nested) continue;
            std::vector<Cell> group;
            for (std::uint32_t a = 0; a < rows; ++a) {
              for (std::uint32_t q = lsh[a]; q < ush[a]; ++q) group.push_back(Cell{a, q});
            }
            std::vector<Cell> upper_defs = hi < cells ? corners(ush, cols) : std::vector<Cell>{Cell{}};
            for (const Cell p1 : corners(lsh, cols)) {
              if (std::find(group.begin(), group.end(), p1) == group.end()) continue;
              perms.clear();
              linear_extensions(group, p1, perms);
              for (const Cell p2 : upper_defs) {
                for (const auto& perm : perms) {
                  tests.clear();
                  shape_tests(lsh, cols, p1, tests);
                  if (hi < cells) shape_tests(ush, cols, p2, tests);
                  for (std::size_t t = 0; t + 1 < perm.size(); ++t) tests.emplace_back(perm[t], perm[t + 1]);
                  ++pr.tuples;
                  const std::size_t d = tests.size();
                  pr.max_dimension = std::max<std::uint64_t>(pr.max_dimension, d);

                  std::vector<DominancePair> fired;
                  if (d == 0) {
                    for (std::size_t r = 0; r < b_ids.size(); ++r) {
                      for (std::size_t q = 0; q < a_ids.size(); ++q) fired.emplace_back(r, q);
                    }
                  } else {
                    // value(u) < value(v)  <=>  B(v.q) - B(u.q) >= A(u.p) - A(v.p) on distinct sums.
                    ps.d = d;
                    ps.red.resize(b_ids.size());
                    ps.blue.resize(a_ids.size());
                    for (auto& p : ps.red) p.resize(d);
                    for (auto& p : ps.blue) p.resize(d);
                    for (std::size_t t = 0; t < d; ++t) {
                      const auto& col = ranks(tests[t].first, tests[t].second);
                      for (std::size_t r = 0; r < b_ids.size(); ++r) ps.red[r][t] = col.first[r];
                      for (std::size_t q = 0; q < a_ids.size(); ++q) ps.blue[q][t] = col.second[q];
                    }
                    fired = report_dominances(ps);
                  }
                  if (fired.empty()) continue;
                  const auto perm_id = static_cast<std::uint32_t>(pr.perms.size());
                  pr.perms.push_back(perm);
                  for (const auto& [r, q] : fired) {
                    const std::size_t at = pr.boxes[a_ids[q] * mb + b_ids[r]].first + k;
                    ++pr.firings[at];
                    ++pr.total_firings;
                    pr.splits[at] = p1;
                    pr.group_perm[at] = perm_id;
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  for (auto f : pr.firings) {
    if (f != 1) throw std::runtime_error("subq: a box group fired " + std::to_string(f) + " times");
  }
  return pr;
}

SubqResult run_subq(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger) {
  SubqResult result;
  SubqStats& st = result.stats;
  if (g < 2 || g > 4) throw std::invalid_argument("subq: g must be 2, 3 or 4");
  st.g = g;
  std::tie(st.s, st.h) = subq_group_sizes(g);
  st.probe_bound = static_cast<std::size_t>(std::bit_width(st.h)) + static_cast<std::size_t>(std::bit_width(st.s - 1));

  OperandSet a = OperandSet::plain(kSetA, inst.a);
  OperandSet b = OperandSet::plain(kSetB, inst.b);
  const OperandSet c = OperandSet::plain(kSetC, inst.c);
  a.sort(ledger);
  b.sort(ledger);
  if (a.size() == 0 || b.size() == 0 || c.size() == 0) return result;
  // Profiles index the instance lists directly, so the counted sort must be the identity.
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.origin(k) != k) throw std::invalid_argument("subq: A is not sorted");
  }
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b.origin(k) != k) throw std::invalid_argument("subq: B is not sorted");
  }
  const SubqProfiles pr = build_profiles(inst, g);
  st.tuples = pr.tuples;
  st.firings = pr.total_firings;
  const std::size_t ma = pr.a_part.count();
  const std::size_t mb = pr.b_part.count();

  for (std::size_t l = 0; l < c.size(); ++l) {
    std::size_t lo = 0, hi = mb;
    while (lo < ma && hi > 0) {
      const std::size_t j = hi - 1;
      const BoxProfile& bp = pr.boxes[lo * mb + j];
      const std::size_t x0 = pr.a_part.begin(lo);
      const std::size_t y0 = pr.b_part.begin(j);
      ++st.boxes_searched;
      std::size_t probes = 0;
      std::optional<Cell> hit;
      auto probe = [&](Cell cell) {
        ++probes;
        const int sg = sign_of_sum(a, x0 + cell.p, b, y0 + cell.q, c, l, ledger, phase::box_search);
        if (sg == 0) hit = cell;
        return sg;
      };
      // Last group whose smallest cell lies below -c, then inside that group.
      std::size_t left = 0, right = bp.groups;
      while (left < right && !hit) {
        const std::size_t mid = left + (right - left) / 2;
        if (probe(pr.split(bp, mid)) < 0) left = mid + 1; else right = mid;
      }
      if (!hit && left > 0) {
        const auto& grp = pr.group(bp, left - 1);
        std::size_t gl = 1, gr = grp.size();
        while (gl < gr && !hit) {
          const std::size_t mid = gl + (gr - gl) / 2;
          if (probe(grp[mid]) < 0) gl = mid + 1; else gr = mid;
        }
      }
      st.max_probes = std::max(st.max_probes, probes);
      if (hit) {
        const std::size_t i = a.origin(x0 + hit->p);
        const std::size_t jj = b.origin(y0 + hit->q);
        result.witness = Witness{{i, jj, l}, {inst.a[i], inst.b[jj], inst.c[l]}};
        return result;
      }
      if (sign_of_sum(a, pr.a_part.end(lo) - 1, b, pr.b_part.begin(j), c, l, ledger, phase::path) > 0) {
        --hi;
      } else {
        ++lo;
      }
    }
  }
  return result;
}

std::optional<Witness> solve_subq(const ThreeSumInstance& inst, std::size_t g, ComparisonLedger& ledger) {
  return run_subq(inst, g, ledger).witness;
}

}  // namespace sumlab
