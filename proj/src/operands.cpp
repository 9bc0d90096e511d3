#include "sumlab/operands.hpp"

#include <stdexcept>

namespace sumlab {

OperandSet OperandSet::plain(std::uint32_t set_id, const std::vector<Scalar>& values) {
  OperandSet s(1);
  s.values_ = values;
  s.constants_.assign(values.size(), 0);
  s.origin_.resize(values.size());
  s.terms_.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    s.origin_[i] = static_cast<std::uint32_t>(i);
    s.terms_[i] = Term{1, Operand{set_id, static_cast<std::uint32_t>(i)}, values[i]};
  }
  return s;
}

void OperandSet::push(Scalar constant, std::span<const Term> terms, std::uint32_t origin) {
  if (terms.size() != width_) throw std::invalid_argument("OperandSet::push: wrong term count");
  __int128 v = constant;
  for (const Term& t : terms) v += static_cast<__int128>(t.coef) * t.value;
  if (v <= -(static_cast<__int128>(1) << 62) || v >= (static_cast<__int128>(1) << 62)) {
    throw std::overflow_error("OperandSet::push: element value out of range");
  }
  values_.push_back(static_cast<Scalar>(v));
  constants_.push_back(constant);
  origin_.push_back(origin);
  terms_.insert(terms_.end(), terms.begin(), terms.end());
  sorted_ = false;
  equal_prev_.clear();
}

OperandSet OperandSet::gather(const OperandSet& src, const std::vector<std::uint32_t>& positions) {
  if (!src.sorted()) throw std::invalid_argument("OperandSet::gather: source not sorted");
  // distinct_upto[t]: number of value changes among src[1..t].
  std::vector<std::uint32_t> distinct_upto(src.size(), 0);
  for (std::size_t t = 1; t < src.size(); ++t) distinct_upto[t] = distinct_upto[t - 1] + (src.equal_prev(t) ? 0 : 1);
  OperandSet out(src.width_);
  bool ascending = true;
  out.equal_prev_.assign(positions.size(), 0);
  for (std::size_t k = 0; k < positions.size(); ++k) {
    const std::size_t pos = positions[k];
    out.values_.push_back(src.values_[pos]);
    out.constants_.push_back(src.constants_[pos]);
    out.origin_.push_back(src.origin_[pos]);
    for (std::size_t w = 0; w < src.width_; ++w) out.terms_.push_back(src.terms_[pos * src.width_ + w]);
    if (k > 0) {
      const std::size_t prev = positions[k - 1];
      if (prev < pos) {
        out.equal_prev_[k] = distinct_upto[pos] == distinct_upto[prev];
      } else {
        ascending = false;
      }
    }
  }
  out.sorted_ = ascending;
  return out;
}

void OperandSet::sort(ComparisonLedger& ledger, PhaseId phase) {
  std::vector<std::uint32_t> order(size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  auto cmp = [&](std::uint32_t x, std::uint32_t y) {
    LinearForm f;
    append(f, x, 1);
    append(f, y, -1);
    return ledger.compare(f, phase);
  };
  auto key_less = [&](std::uint32_t x, std::uint32_t y) { return origin_[x] < origin_[y]; };
  auto eq = merge_sort_tracking_ties(order, cmp, key_less);

  std::vector<Scalar> values(size()), constants(size());
  std::vector<std::uint32_t> origin(size());
  std::vector<Term> terms(terms_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t src = order[i];
    values[i] = values_[src];
    constants[i] = constants_[src];
    origin[i] = origin_[src];
    for (std::size_t k = 0; k < width_; ++k) terms[i * width_ + k] = terms_[src * width_ + k];
  }
  values_.swap(values);
  constants_.swap(constants);
  origin_.swap(origin);
  terms_.swap(terms);
  equal_prev_ = std::move(eq);
  sorted_ = true;
}

int sign_of_sum(const OperandSet& x, std::size_t px, const OperandSet& y, std::size_t py, const OperandSet& z,
                std::size_t pz, ComparisonLedger& ledger, PhaseId phase) {
  LinearForm f;
  x.append(f, px, 1);
  y.append(f, py, 1);
  z.append(f, pz, 1);
  return ledger.compare(f, phase);
}

}  // namespace sumlab
