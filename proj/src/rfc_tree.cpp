#include "sumlab/rfc_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sumlab {

namespace {

bool draw(std::mt19937_64& rng, double p) {
  if (p <= 0.0) return false;
  // Fixed-point threshold keeps the stream identical across standard libraries.
  const auto threshold = static_cast<std::uint64_t>(std::ldexp(p, 64));
  return rng() < threshold;
}

std::vector<std::uint32_t> flatten(const std::vector<AugmentedBlock>& blocks, std::vector<std::size_t>& starts) {
  std::vector<std::uint32_t> positions;
  starts.assign(1, 0);
  for (const auto& blk : blocks) {
    for (const auto& k : blk.keys) positions.push_back(k.element);
    starts.push_back(positions.size());
  }
  return positions;
}

constexpr std::uint8_t kDown = 0;
constexpr std::uint8_t kLeft = 1;

}  // namespace

std::vector<AugmentedBlock> build_augmented_blocks(const BlockPartition& partition, Direction direction, double p,
                                                   std::mt19937_64& rng, bool cascade) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("build_augmented_blocks: p must lie in [0, 1)");
  const std::size_t m = partition.count();
  std::vector<AugmentedBlock> out(m);
  auto originals = [&](std::size_t b) {
    std::vector<AugmentedKey> keys;
    for (std::size_t e = partition.begin(b); e < partition.end(b); ++e) {
      keys.push_back(AugmentedKey{static_cast<std::uint32_t>(e), false, static_cast<std::uint32_t>(b)});
    }
    return keys;
  };
  auto sample = [&](std::size_t from) {
    std::vector<AugmentedKey> picked;
    const auto& pool = cascade ? out[from].keys : originals(from);
    for (const auto& k : pool) {
      if (draw(rng, p)) picked.push_back(AugmentedKey{k.element, true, static_cast<std::uint32_t>(from)});
    }
    return picked;
  };
  if (m == 0) return out;
  if (direction == Direction::row) {
    out[m - 1] = AugmentedBlock{originals(m - 1), direction};
    for (std::size_t i = m - 1; i-- > 0;) {
      // Samples from block i + 1 all sit after block i in sorted order.
      auto keys = originals(i);
      auto extra = sample(i + 1);
      keys.insert(keys.end(), extra.begin(), extra.end());
      out[i] = AugmentedBlock{std::move(keys), direction};
    }
  } else {
    out[0] = AugmentedBlock{originals(0), direction};
    for (std::size_t j = 1; j < m; ++j) {
      auto keys = sample(j - 1);
      auto own = originals(j);
      keys.insert(keys.end(), own.begin(), own.end());
      out[j] = AugmentedBlock{std::move(keys), direction};
    }
  }
  return out;
}

std::vector<AugmentedBlock> build_augmented_blocks(const BlockPartition& partition, Direction direction, double p,
                                                   std::uint64_t seed, bool cascade) {
  std::mt19937_64 rng(mix_seed(seed, 0xa49u));
  return build_augmented_blocks(partition, direction, p, rng, cascade);
}

CatalogGrid::CatalogGrid(const OperandSet& a, const OperandSet& b, const OperandSet& c, std::size_t g, double p,
                         std::uint64_t seed, bool cascade, ComparisonLedger& ledger)
    : g_(g) {
  if (g == 0) throw std::invalid_argument("CatalogGrid: g must be positive");
  if (!a.sorted() || !b.sorted() || !c.sorted()) throw std::invalid_argument("CatalogGrid: sets must be sorted");
  std::mt19937_64 rng(mix_seed(seed, 0xa49u));
  a_blocks_ = build_augmented_blocks(partition_blocks(a.size(), g), Direction::row, p, rng, cascade);
  b_blocks_ = build_augmented_blocks(partition_blocks(b.size(), g), Direction::column, p, rng, cascade);
  std::vector<std::size_t> starts;
  a_aug_ = OperandSet::gather(a, flatten(a_blocks_, starts));
  a_part_ = BlockPartition(starts);
  b_aug_ = OperandSet::gather(b, flatten(b_blocks_, starts));
  b_part_ = BlockPartition(starts);
  c_part_ = partition_blocks(c.size(), g);
  diffs_ = sort_difference_set({BlockFamily{&a_aug_, a_part_}, BlockFamily{&b_aug_, b_part_}, BlockFamily{&c, c_part_}},
                               ledger);
}

BoxCatalog CatalogGrid::box(std::size_t i, std::size_t j, const ComparisonLedger& ledger, BoxAudit* audit) const {
  BoxCatalog out;
  out.i = i;
  out.j = j;
  const BlockRef x{kFamilyA, static_cast<std::uint32_t>(i)};
  const BlockRef y{kFamilyB, static_cast<std::uint32_t>(j)};
  out.order = box_order(diffs_, x, y, ledger);
  if (audit) audit->record(diffs_, x, y, out.order);
  out.inverse = out.order.inverse();
  const auto& rk = a_blocks_[i].keys;
  const auto& ck = b_blocks_[j].keys;
  const auto n = static_cast<std::int32_t>(out.size());
  out.prev_row_syn.resize(out.size());
  out.prev_col_syn.resize(out.size());
  out.next_row_syn.resize(out.size());
  out.next_col_syn.resize(out.size());
  std::int32_t last_row = -1, last_col = -1;
  for (std::int32_t t = 0; t < n; ++t) {
    const Cell cell = out.order.cells[static_cast<std::size_t>(t)];
    if (rk[cell.p].synthetic) last_row = t;
    if (ck[cell.q].synthetic) last_col = t;
    out.prev_row_syn[static_cast<std::size_t>(t)] = last_row;
    out.prev_col_syn[static_cast<std::size_t>(t)] = last_col;
  }
  last_row = n;
  last_col = n;
  for (std::int32_t t = n; t-- > 0;) {
    const Cell cell = out.order.cells[static_cast<std::size_t>(t)];
    if (rk[cell.p].synthetic) last_row = t;
    if (ck[cell.q].synthetic) last_col = t;
    out.next_row_syn[static_cast<std::size_t>(t)] = last_row;
    out.next_col_syn[static_cast<std::size_t>(t)] = last_col;
  }
  return out;
}

BoxOrder CatalogGrid::ac_order(std::size_t i, std::size_t s, const ComparisonLedger& ledger) const {
  return box_order(diffs_, BlockRef{kFamilyA, static_cast<std::uint32_t>(i)},
                   BlockRef{kFamilyC, static_cast<std::uint32_t>(s)}, ledger);
}

BoxOrder CatalogGrid::bc_order(std::size_t j, std::size_t s, const ComparisonLedger& ledger) const {
  return box_order(diffs_, BlockRef{kFamilyB, static_cast<std::uint32_t>(j)},
                   BlockRef{kFamilyC, static_cast<std::uint32_t>(s)}, ledger);
}

GlobalCell CatalogGrid::global(std::size_t i, std::size_t j, Cell cell) const {
  return GlobalCell{a_blocks_[i].keys[cell.p].element, b_blocks_[j].keys[cell.q].element};
}

std::optional<Cell> CatalogGrid::locate(std::size_t i, std::size_t j, GlobalCell cell) const {
  auto find = [](const std::vector<AugmentedKey>& keys, std::uint32_t e) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(keys.begin(), keys.end(), e,
                               [](const AugmentedKey& k, std::uint32_t v) { return k.element < v; });
    if (it == keys.end() || it->element != e) return std::nullopt;
    return static_cast<std::uint32_t>(it - keys.begin());
  };
  const auto p = find(a_blocks_[i].keys, cell.a);
  const auto q = find(b_blocks_[j].keys, cell.b);
  if (!p || !q) return std::nullopt;
  return Cell{*p, *q};
}

std::size_t rfc_auto_block(std::size_t n) {
  if (n <= 1) return 1;
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n)))), 1, n);
}

RfcResult run_rfc(OperandSet a, OperandSet b, OperandSet c, const RfcOptions& options, ComparisonLedger& ledger) {
  RfcResult result;
  RfcStats& st = result.stats;
  const std::size_t n = std::max({a.size(), b.size(), c.size()});
  const std::size_t g = options.g == kAutoBlock ? rfc_auto_block(n) : options.g;
  if (g < 1 || g > std::max<std::size_t>(n, 1)) throw std::invalid_argument("rfc: block size out of range");
  st.g = g;

  a.sort(ledger);
  b.sort(ledger);
  c.sort(ledger);
  if (a.size() == 0 || b.size() == 0 || c.size() == 0) return result;

  auto report = [&](std::size_t pa, std::size_t pb, std::size_t pc) {
    ++st.witnesses;
    if (!result.witness) {
      result.witness = Witness{{a.origin(pa), b.origin(pb), c.origin(pc)}, {a.value(pa), b.value(pb), c.value(pc)}};
    }
    return options.halt_on_witness;
  };

  // Preprocessing: augmented blocks and the sorted difference set.
  const CatalogGrid grid(a, b, c, g, options.p, options.seed, options.cascade, ledger);
  st.blocks_c = grid.c_part().count();
  for (const auto& blk : grid.a_blocks()) st.augmented_a_keys += blk.keys.size();
  for (const auto& blk : grid.b_blocks()) st.augmented_b_keys += blk.keys.size();
  const OperandSet& a2 = grid.a_aug();
  const OperandSet& b2 = grid.b_aug();
  const BlockPartition& cp = grid.c_part();

  // Phase 1: box paths over the original blocks.
  const BlockPartition pa = partition_blocks(a.size(), g);
  const BlockPartition pb = partition_blocks(b.size(), g);
  const std::size_t ma = pa.count();
  const std::size_t mb = pb.count();
  st.blocks_a = ma;
  st.blocks_b = mb;
  st.kappa_bound = 2 * ((n + g - 1) / g) * c.size();

  std::vector<std::vector<std::uint32_t>> visitors(ma * mb);
  std::vector<std::uint8_t> moves;
  std::vector<std::size_t> path_start(c.size() + 1, 0);
  std::vector<std::uint8_t> known(c.size(), 0);
  for (std::size_t l = 0; l < c.size(); ++l) {
    path_start[l] = moves.size();
    std::size_t lo = 0, hi = mb;
    while (lo < ma && hi > 0) {
      const std::size_t j = hi - 1;
      auto& list = visitors[lo * mb + j];
      if (!list.empty() && list.back() + 1 != l) ++st.contiguity_violations;
      list.push_back(static_cast<std::uint32_t>(l));
      const int s = sign_of_sum(a, pa.end(lo) - 1, b, pb.begin(j), c, l, ledger, phase::path);
      if (s == 0 && !known[l]) {
        known[l] = 1;
        if (report(pa.end(lo) - 1, pb.begin(j), l)) return result;
      }
      if (s > 0) {
        --hi;
        if (lo < ma && hi > 0) moves.push_back(kLeft);
      } else {
        ++lo;
        if (lo < ma && hi > 0) moves.push_back(kDown);
      }
    }
  }
  path_start[c.size()] = moves.size();
  for (const auto& list : visitors) {
    st.sum_kappa += list.size();
    if (!list.empty()) st.merge_bound += (list.size() + g - 1) / g + 2;
  }

  std::vector<QueryCursor> cursors(c.size());
  for (std::size_t l = 0; l < c.size(); ++l) {
    cursors[l].c = static_cast<std::uint32_t>(l);
    cursors[l].retired = known[l] != 0;
  }

  struct Pending {
    std::uint32_t line;    // gap row (down) or gap column (left), local to the box
    std::uint32_t cursor;
    std::int32_t pred = -1;  // predecessor column (down) or row (left) of -c on that line
    bool equal = false;
  };
  std::vector<Pending> pending[2];  // by arrival direction, each in cursor order
  std::vector<std::int64_t> best(c.size(), -1);  // per cursor: best predecessor position in the current box
  std::vector<std::size_t> line_stamp;

  // Phase 2: boxes in ascending i - j; both possible predecessors come earlier.
  const auto d_lo = -static_cast<std::int64_t>(mb) + 1;
  const auto d_hi = static_cast<std::int64_t>(ma) - 1;
  std::size_t stamp_clock = 0;
  for (std::int64_t dd = d_lo; dd <= d_hi; ++dd) {
    for (std::size_t i = 0; i < ma; ++i) {
      const std::int64_t jj = static_cast<std::int64_t>(i) - dd;
      if (jj < 0 || jj >= static_cast<std::int64_t>(mb)) continue;
      const auto j = static_cast<std::size_t>(jj);
      const auto& list = visitors[i * mb + j];
      bool any = false;
      for (auto l : list) any = any || !cursors[l].retired;
      if (!any) continue;

      const BoxCatalog cat = grid.box(i, j, ledger, options.audit);
      ++st.box_orders;
      if (cat.order.ledger_delta != 0) ++st.box_nonzero_delta;
      const auto total = static_cast<std::int64_t>(cat.size());
      const std::size_t rows = cat.order.rows;
      const std::size_t cols = cat.order.cols;
      const std::size_t a0 = grid.a_part().begin(i);
      const std::size_t b0 = grid.b_part().begin(j);
      pending[0].clear();
      pending[1].clear();
      line_stamp.assign(std::max(rows, cols), SIZE_MAX);

      // Positions in the sorted a, b of an augmented cell.
      auto sorted_pos = [&](std::size_t row, std::size_t col) -> std::pair<std::size_t, std::size_t> {
        return {grid.a_blocks()[i].keys[row].element, grid.b_blocks()[j].keys[col].element};
      };

      for (auto l : list) {
        QueryCursor& cur = cursors[l];
        if (cur.retired) continue;
        if (cur.step == 0) {
          // Entry box of every path: plain binary search.
          ++st.start_searches;
          std::size_t left = 0, right = cat.size();
          while (left < right) {
            const std::size_t mid = left + (right - left) / 2;
            const Cell cell = cat.order.cells[mid];
            const int s = sign_of_sum(a2, a0 + cell.p, b2, b0 + cell.q, c, l, ledger, phase::box_search);
            if (s == 0) {
              const auto [pa_pos, pb_pos] = sorted_pos(cell.p, cell.q);
              cur.retired = true;
              if (report(pa_pos, pb_pos, l)) return result;
              break;
            }
            if (s < 0) left = mid + 1; else right = mid;
          }
          if (cur.retired) continue;
          best[l] = static_cast<std::int64_t>(left) - 1;
          continue;
        }
        const std::uint8_t arrived = moves[path_start[l] + cur.step - 1];
        std::int64_t lo_pos = -1, hi_pos = total;
        if (cur.lo) {
          const auto cell = grid.locate(i, j, *cur.lo);
          if (!cell) throw std::logic_error("rfc: bracket cell missing from its box");
          lo_pos = cat.inverse[cell->p * cols + cell->q];
        }
        if (cur.hi) {
          const auto cell = grid.locate(i, j, *cur.hi);
          if (!cell) throw std::logic_error("rfc: bracket cell missing from its box");
          hi_pos = cat.inverse[cell->p * cols + cell->q];
        }
        best[l] = lo_pos;
        ++stamp_clock;
        std::size_t lines = 0;
        for (std::int64_t t = lo_pos + 1; t < hi_pos; ++t) {
          const Cell cell = cat.order.cells[static_cast<std::size_t>(t)];
          const std::uint32_t line = arrived == kDown ? cell.p : cell.q;
          if (line_stamp[line] == stamp_clock) continue;
          line_stamp[line] = stamp_clock;
          ++lines;
          pending[arrived].push_back(Pending{line, l});
        }
        ++st.brackets;
        st.gap_lines += lines;
        st.max_gap_lines = std::max(st.max_gap_lines, lines);
      }

      // Group the gap sums by (direction, C block), sort each group for free
      // and merge it with the opposite side of the box.
      for (std::uint8_t dir : {kDown, kLeft}) {
        auto& group = pending[dir];
        for (std::size_t lo_g = 0; lo_g < group.size();) {
          const std::size_t s = group[lo_g].cursor / g;
          std::size_t hi_g = lo_g;
          while (hi_g < group.size() && group[hi_g].cursor / g == s) ++hi_g;
          const auto c0 = static_cast<std::uint32_t>(cp.begin(s));
          const BlockRef line_block = dir == kDown ? BlockRef{CatalogGrid::kFamilyA, static_cast<std::uint32_t>(i)}
                                                   : BlockRef{CatalogGrid::kFamilyB, static_cast<std::uint32_t>(j)};
          const BoxComparator cmp(grid.diffs(), line_block,
                                  BlockRef{CatalogGrid::kFamilyC, static_cast<std::uint32_t>(s)});
          // Ascending -(line + c) is descending (line + c).
          std::sort(group.begin() + static_cast<std::ptrdiff_t>(lo_g), group.begin() + static_cast<std::ptrdiff_t>(hi_g),
                    [&](const Pending& x, const Pending& y) {
                      return cmp.less(Cell{y.line, y.cursor - c0}, Cell{x.line, x.cursor - c0});
                    });
          ++st.merges;
          const std::size_t other = dir == kDown ? cols : rows;
          std::size_t t = 0;
          for (std::size_t e = lo_g; e < hi_g; ++e) {
            Pending& pe = group[e];
            while (t < other) {
              const std::size_t row = dir == kDown ? pe.line : t;
              const std::size_t col = dir == kDown ? t : pe.line;
              const int sg = sign_of_sum(a2, a0 + row, b2, b0 + col, c, pe.cursor, ledger, phase::merge);
              if (sg < 0) {
                ++t;
                continue;
              }
              pe.equal = sg == 0;
              break;
            }
            pe.pred = static_cast<std::int32_t>(t) - 1;
            if (pe.equal) pe.pred = static_cast<std::int32_t>(t);  // the matching cell itself
          }
          lo_g = hi_g;
        }
      }

      for (std::uint8_t arrived : {kDown, kLeft}) {
        for (const Pending& pe : pending[arrived]) {
          QueryCursor& cur = cursors[pe.cursor];
          if (cur.retired) continue;
          if (pe.equal) {
            const std::size_t row = arrived == kDown ? pe.line : static_cast<std::size_t>(pe.pred);
            const std::size_t col = arrived == kDown ? static_cast<std::size_t>(pe.pred) : pe.line;
            const auto [pa_pos, pb_pos] = sorted_pos(row, col);
            cur.retired = true;
            if (report(pa_pos, pb_pos, pe.cursor)) return result;
            continue;
          }
          if (pe.pred < 0) continue;
          const std::size_t row = arrived == kDown ? pe.line : static_cast<std::size_t>(pe.pred);
          const std::size_t col = arrived == kDown ? static_cast<std::size_t>(pe.pred) : pe.line;
          best[pe.cursor] = std::max<std::int64_t>(best[pe.cursor], cat.inverse[row * cols + col]);
        }
      }

      // Hand each bracket to the next box on the path.
      for (auto l : list) {
        QueryCursor& cur = cursors[l];
        if (cur.retired) continue;
        const std::size_t next = path_start[l] + cur.step;
        if (next >= path_start[l + 1]) {
          cur.retired = true;  // path ends here without a witness
          continue;
        }
        const std::int64_t pred = best[l];
        const bool down = moves[next] == kDown;
        const auto& prev_syn = down ? cat.prev_row_syn : cat.prev_col_syn;
        const auto& next_syn = down ? cat.next_row_syn : cat.next_col_syn;
        cur.lo.reset();
        cur.hi.reset();
        if (pred >= 0) {
          const std::int32_t t = prev_syn[static_cast<std::size_t>(pred)];
          if (t >= 0) cur.lo = grid.global(i, j, cat.order.cells[static_cast<std::size_t>(t)]);
        }
        if (pred + 1 < total) {
          const std::int32_t t = next_syn[static_cast<std::size_t>(pred + 1)];
          if (t < total) cur.hi = grid.global(i, j, cat.order.cells[static_cast<std::size_t>(t)]);
        }
        ++cur.step;
      }
    }
  }
  return result;
}

RfcResult run_rfc(const ThreeSumInstance& inst, const RfcOptions& options, ComparisonLedger& ledger) {
  return run_rfc(OperandSet::plain(kSetA, inst.a), OperandSet::plain(kSetB, inst.b), OperandSet::plain(kSetC, inst.c),
                 options, ledger);
}

std::optional<Witness> solve_rfc(const ThreeSumInstance& inst, std::size_t g, std::uint64_t seed,
                                 ComparisonLedger& ledger) {
  RfcOptions options;
  options.g = g;
  options.seed = seed;
  return run_rfc(inst, options, ledger).witness;
}

}  // namespace sumlab
