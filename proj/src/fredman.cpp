#include "sumlab/fredman.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumlab {

namespace {

constexpr std::uint64_t pack(std::uint64_t f, std::uint64_t p, std::uint64_t q) { return f << 48 | p << 24 | q; }
constexpr std::uint32_t fam_of(std::uint64_t k) { return static_cast<std::uint32_t>(k >> 48); }
constexpr std::uint32_t p_of(std::uint64_t k) { return static_cast<std::uint32_t>((k >> 24) & 0xffffff); }
constexpr std::uint32_t q_of(std::uint64_t k) { return static_cast<std::uint32_t>(k & 0xffffff); }

}  // namespace

BlockPartition::BlockPartition(std::vector<std::size_t> starts) : starts_(std::move(starts)) {
  if (!starts_.empty() && starts_.front() != 0) throw std::invalid_argument("BlockPartition must start at 0");
  if (!std::is_sorted(starts_.begin(), starts_.end())) throw std::invalid_argument("BlockPartition: unsorted starts");
}

std::size_t BlockPartition::block_of(std::size_t pos) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), pos);
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

std::size_t BlockPartition::max_size() const {
  std::size_t m = 0;
  for (std::size_t b = 0; b < count(); ++b) m = std::max(m, size(b));
  return m;
}

BlockPartition partition_blocks(std::size_t n, std::size_t g) {
  if (g == 0) throw std::invalid_argument("partition_blocks: g must be positive");
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s < n; s += g) starts.push_back(s);
  starts.push_back(n);
  return BlockPartition(std::move(starts));
}

std::int32_t DifferenceOrder::value_class(std::uint32_t family, std::size_t p, std::size_t q) const {
  const auto& blocks = families_.at(family).blocks;
  const std::size_t b = blocks.block_of(p);
  if (q < blocks.begin(b) || q >= blocks.end(b)) throw std::out_of_range("value_class: pair spans two blocks");
  const std::size_t lp = p - blocks.begin(b);
  const std::size_t lq = q - blocks.begin(b);
  return tables_[family][offsets_[family][b] + lp * blocks.size(b) + lq];
}

const std::int32_t* DifferenceOrder::class_table(BlockRef block) const {
  if (block.family >= families_.size() || block.block >= families_[block.family].blocks.count()) {
    throw std::out_of_range("DifferenceOrder: block has no ranks");
  }
  return tables_[block.family].data() + offsets_[block.family][block.block];
}

int DifferenceOrder::compare(const DiffRef& x, const DiffRef& y) const {
  const auto cx = value_class(x.family, x.p, x.q);
  const auto cy = value_class(y.family, y.p, y.q);
  if (cx != cy) return cx < cy ? -1 : 1;
  const auto kx = std::tie(x.family, x.p, x.q);
  const auto ky = std::tie(y.family, y.p, y.q);
  if (kx == ky) return 0;
  return kx < ky ? -1 : 1;
}

std::vector<DiffRef> DifferenceOrder::entries() const {
  std::vector<DiffRef> out;
  for (std::uint32_t f = 0; f < families_.size(); ++f) {
    const auto& blocks = families_[f].blocks;
    for (std::size_t b = 0; b < blocks.count(); ++b) {
      for (std::size_t p = blocks.begin(b); p < blocks.end(b); ++p) {
        for (std::size_t q = blocks.begin(b); q < blocks.end(b); ++q) {
          out.push_back(DiffRef{f, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const DiffRef& x, const DiffRef& y) { return compare(x, y) < 0; });
  return out;
}

std::size_t DifferenceOrder::rank(const DiffRef& d) const {
  value_class(d.family, d.p, d.q);
  std::size_t r = 0;
  for (std::uint32_t f = 0; f < families_.size(); ++f) {
    const auto& blocks = families_[f].blocks;
    for (std::size_t b = 0; b < blocks.count(); ++b) {
      for (std::size_t p = blocks.begin(b); p < blocks.end(b); ++p) {
        for (std::size_t q = blocks.begin(b); q < blocks.end(b); ++q) {
          if (compare(DiffRef{f, static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q)}, d) < 0) ++r;
        }
      }
    }
  }
  return r;
}

DifferenceOrder sort_difference_set(std::vector<BlockFamily> families, ComparisonLedger& ledger) {
  DifferenceOrder order;
  if (families.size() >= (1u << 16)) throw std::invalid_argument("sort_difference_set: too many families");
  std::vector<std::uint64_t> items;
  std::vector<std::uint8_t> eq;
  std::vector<std::size_t> runs;
  for (std::uint32_t f = 0; f < families.size(); ++f) {
    const auto& fam = families[f];
    if (fam.set == nullptr) throw std::invalid_argument("sort_difference_set: null family");
    if (fam.blocks.total() != fam.set->size()) throw std::invalid_argument("sort_difference_set: partition size");
    if (fam.set->size() >= (1u << 24)) throw std::invalid_argument("sort_difference_set: set too large");
    if (!fam.set->has_tie_flags()) throw std::invalid_argument("sort_difference_set: family not sorted");
    const auto& blocks = fam.blocks;
    for (std::size_t b = 0; b < blocks.count(); ++b) {
      for (std::size_t p = blocks.begin(b) + 1; p < blocks.end(b); ++p) {
        // x[p] - x[q] grows as q walks down towards the block start.
        runs.push_back(items.size());
        for (std::size_t q = p; q-- > blocks.begin(b);) {
          const bool same = q + 1 < p && fam.set->equal_prev(q + 1);
          items.push_back(pack(f, p, q));
          eq.push_back(same ? 1 : 0);
        }
      }
    }
  }

  auto form_of = [&](LinearForm& form, std::uint64_t k, Scalar sign) {
    const OperandSet& s = *families[fam_of(k)].set;
    s.append(form, p_of(k), sign);
    s.append(form, q_of(k), -sign);
  };
  auto cmp = [&](std::uint64_t x, std::uint64_t y) {
    LinearForm form;
    form_of(form, x, 1);
    form_of(form, y, -1);
    return ledger.compare(form, phase::sort_d);
  };
  merge_runs_tracking_ties(items, std::move(runs), eq, cmp, std::less<std::uint64_t>{});

  std::int32_t shift = 1;
  if (!items.empty()) {
    LinearForm smallest;
    form_of(smallest, items.front(), 1);
    if (ledger.compare(smallest, phase::sort_d) == 0) shift = 0;
  }

  order.tables_.resize(families.size());
  order.offsets_.resize(families.size());
  for (std::uint32_t f = 0; f < families.size(); ++f) {
    const auto& blocks = families[f].blocks;
    std::size_t total = 0;
    for (std::size_t b = 0; b < blocks.count(); ++b) {
      order.offsets_[f].push_back(total);
      total += blocks.size(b) * blocks.size(b);
    }
    order.tables_[f].assign(total, 0);
  }
  std::int32_t cls = 0;
  for (std::size_t t = 0; t < items.size(); ++t) {
    if (t == 0 || !eq[t]) ++cls;
    const std::uint64_t k = items[t];
    const std::uint32_t f = fam_of(k);
    const auto& blocks = families[f].blocks;
    const std::size_t p = p_of(k);
    const std::size_t q = q_of(k);
    const std::size_t b = blocks.block_of(p);
    const std::size_t sz = blocks.size(b);
    const std::size_t lp = p - blocks.begin(b);
    const std::size_t lq = q - blocks.begin(b);
    const std::int32_t c = cls - 1 + shift;
    order.tables_[f][order.offsets_[f][b] + lp * sz + lq] = c;
    order.tables_[f][order.offsets_[f][b] + lq * sz + lp] = -c;
  }
  order.sorted_size_ = items.size();
  order.families_ = std::move(families);
  return order;
}

std::vector<std::uint32_t> BoxOrder::inverse() const {
  std::vector<std::uint32_t> inv(rows * cols);
  for (std::size_t i = 0; i < cells.size(); ++i) inv[cells[i].p * cols + cells[i].q] = static_cast<std::uint32_t>(i);
  return inv;
}

BoxComparator::BoxComparator(const DifferenceOrder& d, BlockRef x, BlockRef y)
    : x_(d.class_table(x)),
      y_(d.class_table(y)),
      rows_(d.family(x.family).blocks.size(x.block)),
      cols_(d.family(y.family).blocks.size(y.block)) {}

BoxOrder box_order(const DifferenceOrder& d, BlockRef x, BlockRef y, const ComparisonLedger& ledger) {
  const std::uint64_t before = ledger.total();
  const BoxComparator cmp(d, x, y);
  BoxOrder out;
  out.rows = cmp.rows();
  out.cols = cmp.cols();
  const std::size_t n = out.rows * out.cols;
  out.cells.resize(n);
  for (std::uint32_t p = 0; p < out.rows; ++p) {
    for (std::uint32_t q = 0; q < out.cols; ++q) out.cells[p * out.cols + q] = Cell{p, q};
  }
  // Each row is already ascending; merge groups of rows pairwise. Merged
  // runs never share a row, so a tie between sums is broken by the row.
  std::vector<Cell> buf(n);
  const std::int32_t* xt = cmp.x_table();
  const std::int32_t* yt = cmp.y_table();
  const std::size_t rows = out.rows;
  const std::size_t cols = out.cols;
  for (std::size_t width = cols; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      const Cell* src = out.cells.data();
      Cell* dst = buf.data();
      // v precedes u: smaller class difference, or equal sums and v's row
      // first (merged runs never share a row).
      auto precedes = [&](Cell v, Cell u) {
        return (static_cast<std::int64_t>(xt[v.p * rows + u.p]) - yt[u.q * cols + v.q]) * 2 -
                   static_cast<std::int64_t>(v.p < u.p) <
               0;
      };
      // Merge from both ends: two independent dependency chains.
      std::ptrdiff_t i = static_cast<std::ptrdiff_t>(lo), j = static_cast<std::ptrdiff_t>(mid);
      std::ptrdiff_t ie = j - 1, je = static_cast<std::ptrdiff_t>(hi) - 1;
      std::ptrdiff_t k = i, ke = je;
      while (i <= ie && j <= je && ke - k >= 1) {
        const Cell u = src[i], v = src[j];
        const bool take_v = precedes(v, u);
        dst[k++] = take_v ? v : u;
        j += take_v;
        i += !take_v;
        const Cell ub = src[ie], vb = src[je];
        const bool take_u = precedes(vb, ub);
        dst[ke--] = take_u ? ub : vb;
        ie -= take_u;
        je -= !take_u;
      }
      while (k <= ke) {
        if (i > ie) {
          dst[k++] = src[j++];
        } else if (j > je) {
          dst[k++] = src[i++];
        } else {
          const bool take_v = precedes(src[j], src[i]);
          dst[k++] = take_v ? src[j] : src[i];
          j += take_v;
          i += !take_v;
        }
      }
    }
    out.cells.swap(buf);
  }
  out.ledger_delta = ledger.total() - before;
  return out;
}

BoxOrder direct_box_order(const DifferenceOrder& d, BlockRef x, BlockRef y) {
  const auto& fx = d.family(x.family);
  const auto& fy = d.family(y.family);
  const std::size_t x0 = fx.blocks.begin(x.block);
  const std::size_t y0 = fy.blocks.begin(y.block);
  BoxOrder out;
  out.rows = fx.blocks.size(x.block);
  out.cols = fy.blocks.size(y.block);
  for (std::uint32_t p = 0; p < out.rows; ++p) {
    for (std::uint32_t q = 0; q < out.cols; ++q) out.cells.push_back(Cell{p, q});
  }
  auto sum = [&](Cell c) {
    return static_cast<__int128>(fx.set->value(x0 + c.p)) + fy.set->value(y0 + c.q);
  };
  std::sort(out.cells.begin(), out.cells.end(), [&](Cell u, Cell v) {
    const auto su = sum(u);
    const auto sv = sum(v);
    return su != sv ? su < sv : u < v;
  });
  return out;
}

}  // namespace sumlab
