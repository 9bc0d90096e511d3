#include "sumlab/baseline.hpp"

#include "sumlab/operands.hpp"

namespace sumlab {

std::optional<Witness> solve_brute(const ThreeSumInstance& inst, ComparisonLedger& ledger) {
  const OperandSet a = OperandSet::plain(kSetA, inst.a);
  const OperandSet b = OperandSet::plain(kSetB, inst.b);
  const OperandSet c = OperandSet::plain(kSetC, inst.c);
  const PhaseId scan = ledger.phase_id("scan");
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t l = 0; l < c.size(); ++l) {
        if (sign_of_sum(a, i, b, j, c, l, ledger, scan) == 0) {
          return Witness{{i, j, l}, {inst.a[i], inst.b[j], inst.c[l]}};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> solve_quadratic(const ThreeSumInstance& inst, ComparisonLedger& ledger) {
  OperandSet a = OperandSet::plain(kSetA, inst.a);
  OperandSet b = OperandSet::plain(kSetB, inst.b);
  const OperandSet c = OperandSet::plain(kSetC, inst.c);
  a.sort(ledger);
  b.sort(ledger);

  std::optional<Witness> found;
  if (a.size() == 0 || b.size() == 0) return found;
  for (std::size_t l = 0; l < c.size(); ++l) {
    std::size_t lo = 0;
    std::size_t hi = b.size();  // one past the current column
    while (lo < a.size() && hi > 0) {
      const int s = sign_of_sum(a, lo, b, hi - 1, c, l, ledger, phase::path);
      if (s == 0 && !found) {
        const std::size_t i = a.origin(lo);
        const std::size_t j = b.origin(hi - 1);
        found = Witness{{i, j, l}, {inst.a[i], inst.b[j], inst.c[l]}};
      }
      if (s < 0) {
        ++lo;
      } else {
        --hi;
      }
    }
  }
  return found;
}

Contour contour(Scalar x, const std::vector<Scalar>& a, const std::vector<Scalar>& b, ComparisonLedger& ledger) {
  Contour out;
  std::size_t lo = 0;
  std::size_t hi = b.size();
  while (lo < a.size() && hi > 0) {
    out.positions.emplace_back(lo, hi - 1);
    LinearForm f;
    f.add(1, Operand{kSetA, static_cast<std::uint32_t>(lo)}, a[lo]);
    f.add(1, Operand{kSetB, static_cast<std::uint32_t>(hi - 1)}, b[hi - 1]);
    f.add_constant(-x);
    if (ledger.compare(f, phase::path) < 0) {
      ++lo;
    } else {
      --hi;
    }
  }
  return out;
}

}  // namespace sumlab
