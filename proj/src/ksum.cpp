#include "sumlab/ksum.hpp"

#include <stdexcept>

namespace sumlab {

namespace {

void check_k(int k) {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("k-LDT: k must be odd and at least 3");
}

// All m-tuples over [n] in lexicographic order, weighted by alphas[first..first+m).
std::vector<TupleSum> tuples(const KLdtInstance& inst, std::size_t first, std::size_t m) {
  const std::size_t n = inst.a.size();
  std::size_t count = 1;
  for (std::size_t t = 0; t < m; ++t) {
    if (n != 0 && count > (std::size_t{1} << 26) / n) throw std::length_error("k-LDT: reduced instance too large");
    count *= n;
  }
  std::vector<TupleSum> out;
  if (n == 0) return out;
  out.reserve(count);
  std::vector<std::size_t> digits(m, 0);
  for (std::size_t e = 0; e < count; ++e) {
    TupleSum ts;
    __int128 v = 0;
    for (std::size_t t = 0; t < m; ++t) {
      const Scalar coef = inst.alphas[first + t];
      ts.provenance.emplace_back(digits[t], coef);
      v += static_cast<__int128>(coef) * inst.a[digits[t]];
    }
    ts.value = static_cast<Scalar>(v);
    out.push_back(std::move(ts));
    for (std::size_t t = m; t-- > 0;) {
      if (++digits[t] < n) break;
      digits[t] = 0;
    }
  }
  return out;
}

}  // namespace

ThreeSumInstance ReducedKLdt::values() const {
  ThreeSumInstance inst;
  for (const auto& t : x) inst.a.push_back(t.value);
  for (const auto& t : y) inst.b.push_back(t.value);
  for (const auto& t : z) inst.c.push_back(t.value);
  return inst;
}

OperandSet ReducedKLdt::operands(std::uint32_t side) const {
  const auto& list = side == kSetA ? x : side == kSetB ? y : z;
  const std::size_t width = side == kSetC ? 1 : static_cast<std::size_t>((k - 1) / 2);
  OperandSet out(width);
  std::vector<Term> terms(width);
  for (std::size_t e = 0; e < list.size(); ++e) {
    const auto& prov = list[e].provenance;
    for (std::size_t t = 0; t < width; ++t) {
      const auto [idx, coef] = prov[t];
      terms[t] = Term{coef, Operand{kSetA, static_cast<std::uint32_t>(idx)}, a[idx]};
    }
    const Scalar constant = side == kSetC ? z_constant[e] : 0;
    out.push(constant, terms, static_cast<std::uint32_t>(e));
  }
  return out;
}

std::vector<std::size_t> ReducedKLdt::expand(std::size_t ix, std::size_t iy, std::size_t iz) const {
  std::vector<std::size_t> out;
  for (const auto& [idx, coef] : x.at(ix).provenance) out.push_back(idx);
  for (const auto& [idx, coef] : y.at(iy).provenance) out.push_back(idx);
  for (const auto& [idx, coef] : z.at(iz).provenance) out.push_back(idx);
  return out;
}

ReducedKLdt reduce_kldt(const KLdtInstance& inst) {
  check_k(inst.k);
  if (inst.alphas.size() != static_cast<std::size_t>(inst.k) + 1) {
    throw std::invalid_argument("k-LDT: expected k + 1 coefficients");
  }
  const auto m = static_cast<std::size_t>((inst.k - 1) / 2);
  ReducedKLdt r;
  r.k = inst.k;
  r.a = inst.a;
  r.x = tuples(inst, 1, m);
  r.y = tuples(inst, 1 + m, m);
  const Scalar ak = inst.alphas[static_cast<std::size_t>(inst.k)];
  for (std::size_t l = 0; l < inst.a.size(); ++l) {
    TupleSum ts;
    ts.value = static_cast<Scalar>(static_cast<__int128>(ak) * inst.a[l] + inst.alphas[0]);
    ts.provenance.emplace_back(l, ak);
    r.z.push_back(std::move(ts));
    r.z_constant.push_back(inst.alphas[0]);
  }
  return r;
}

KLdtResult run_kldt(const KLdtInstance& inst, std::size_t g, std::uint64_t seed, ComparisonLedger& ledger) {
  const ReducedKLdt r = reduce_kldt(inst);
  KLdtResult out;
  if (inst.a.empty()) return out;
  RfcOptions options;
  options.g = g == kAutoBlock ? rfc_auto_block(inst.a.size()) : g;
  options.seed = seed;
  const RfcResult res = run_rfc(r.operands(kSetA), r.operands(kSetB), r.operands(kSetC), options, ledger);
  out.stats = res.stats;
  if (res.witness) {
    const auto& w = res.witness->indices;
    Witness kw;
    kw.indices = r.expand(w[0], w[1], w[2]);
    for (auto idx : kw.indices) kw.values.push_back(inst.a[idx]);
    out.witness = std::move(kw);
  }
  return out;
}

std::optional<Witness> solve_kldt(const KLdtInstance& inst, std::size_t g, std::uint64_t seed,
                                  ComparisonLedger& ledger) {
  return run_kldt(inst, g, seed, ledger).witness;
}

}  // namespace sumlab
