#include "sumlab/ledger.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumlab {

LinearForm& LinearForm::add(Scalar coef, Operand operand, Scalar value) {
  if (size_ == kCapacity) throw std::length_error("LinearForm: too many terms");
  terms_[size_++] = Term{coef, operand, value};
  return *this;
}

LinearForm& LinearForm::add_constant(Scalar c) {
  constant_ += c;
  return *this;
}

int LinearForm::arity() const {
  std::array<Operand, kCapacity> ops;
  std::array<Scalar, kCapacity> coefs;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    std::size_t k = 0;
    while (k < distinct && !(ops[k] == terms_[i].operand)) ++k;
    if (k == distinct) {
      ops[distinct] = terms_[i].operand;
      coefs[distinct++] = 0;
    }
    coefs[k] += terms_[i].coef;
  }
  int count = 0;
  for (std::size_t k = 0; k < distinct; ++k) count += coefs[k] != 0;
  return count;
}

__int128 LinearForm::evaluate() const {
  // Below 2^60 per factor and 2^125 for the constant nothing can overflow.
  constexpr Scalar kSmall = Scalar{1} << 60;
  constexpr __int128 kSmallConstant = static_cast<__int128>(1) << 125;
  bool small = constant_ < kSmallConstant && constant_ > -kSmallConstant;
  for (std::size_t i = 0; i < size_ && small; ++i) {
    small = terms_[i].coef < kSmall && terms_[i].coef > -kSmall && terms_[i].value < kSmall && terms_[i].value > -kSmall;
  }
  __int128 acc = constant_;
  if (small) {
    for (std::size_t i = 0; i < size_; ++i) acc += static_cast<__int128>(terms_[i].coef) * terms_[i].value;
    return acc;
  }
  for (std::size_t i = 0; i < size_; ++i) {
    __int128 prod;
    if (__builtin_mul_overflow(static_cast<__int128>(terms_[i].coef), static_cast<__int128>(terms_[i].value), &prod) ||
        __builtin_add_overflow(acc, prod, &acc)) {
      throw std::overflow_error("LinearForm: 128-bit overflow");
    }
  }
  return acc;
}

std::uint64_t LedgerSnapshot::count(std::string_view label) const {
  for (const auto& [name, c] : per_phase) {
    if (name == label) return c;
  }
  return 0;
}

ComparisonLedger::ComparisonLedger()
    : labels_{"sort-input", "sort-D", "path", "box-search", "merge"}, counts_(labels_.size(), 0) {}

PhaseId ComparisonLedger::phase_id(std::string_view label) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return static_cast<PhaseId>(i);
  }
  labels_.emplace_back(label);
  counts_.push_back(0);
  return static_cast<PhaseId>(labels_.size() - 1);
}

int ComparisonLedger::free_sign(const LinearForm& form) {
  const __int128 v = form.evaluate();
  return (v > 0) - (v < 0);
}

int ComparisonLedger::compare(const LinearForm& form, PhaseId phase) {
  if (form.size() == 0) throw std::invalid_argument("compare: form has no variable terms");
  if (phase >= counts_.size()) throw std::out_of_range("compare: unknown phase id");
  const __int128 v = form.evaluate();
  const int sign = (v > 0) - (v < 0);
  const int arity = form.arity();
  // Like terms that cancel leave a constant: its sign is known without a test.
  if (arity == 0) return sign;
  ++total_;
  ++counts_[phase];
  max_arity_ = std::max(max_arity_, arity);
  if (trace_enabled_) trace_.push_back(TraceEntry{phase, arity, sign});
  return sign;
}

LedgerSnapshot ComparisonLedger::snapshot() const {
  LedgerSnapshot s;
  s.total = total_;
  s.max_arity = max_arity_;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (counts_[i] != 0) s.per_phase.emplace_back(labels_[i], counts_[i]);
  }
  return s;
}

}  // namespace sumlab
