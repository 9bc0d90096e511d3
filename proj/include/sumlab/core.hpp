#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sumlab {

// Exact stand-in for a real input. Magnitudes stay below 2^40 so that every
// affine form the algorithms build fits a 128-bit intermediate.
using Scalar = std::int64_t;

inline constexpr Scalar kScalarLimit = Scalar{1} << 40;

// Block size request; `kAutoBlock` lets each algorithm pick its own g.
inline constexpr std::size_t kAutoBlock = 0;

// Three sorted input sets. Duplicates are kept; ties are broken by index.
struct ThreeSumInstance {
  std::vector<Scalar> a;
  std::vector<Scalar> b;
  std::vector<Scalar> c;

  bool balanced() const { return a.size() == b.size() && b.size() == c.size(); }
  std::size_t max_size() const;
};

// k-variate linear degeneracy instance: alpha_0 + sum alpha_i x_i over A^k.
struct KLdtInstance {
  int k = 3;
  std::vector<Scalar> alphas;  // alpha_0 .. alpha_k
  std::vector<Scalar> a;       // sorted
};

// Indices into (A, B, C) for 3SUM, or a k-tuple of indices into A for k-LDT.
struct Witness {
  std::vector<std::size_t> indices;
  std::vector<Scalar> values;

  bool operator==(const Witness&) const = default;
};

enum class Distribution { uniform, planted, no_solution_parity, clustered };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution dist);

// Sorts the three lists and validates the scalar bound.
ThreeSumInstance make_instance(std::vector<Scalar> a, std::vector<Scalar> b, std::vector<Scalar> c);

// Validates k (odd, >= 3), the alpha vector and the scalar bound; sorts A.
KLdtInstance make_kldt_instance(int k, std::vector<Scalar> alphas, std::vector<Scalar> a);

// Deterministic instance generator; |A| = |B| = |C| = n.
ThreeSumInstance generate(Distribution dist, std::size_t n, std::uint64_t seed);
ThreeSumInstance generate(std::string_view kind, std::size_t n, std::uint64_t seed);

// A and B chosen so that every pairwise sum a + b is distinct.
ThreeSumInstance generate_distinct_sums(std::size_t n, std::uint64_t seed);

// Random k-LDT draw. Coefficients are small and nonzero; with
// `no_solution_parity` every alpha_i and input is odd and alpha_0 is even.
KLdtInstance generate_kldt(int k, std::size_t n, std::uint64_t seed,
                           Distribution dist = Distribution::uniform);

// Naive triple loop; first witness in lexicographic (i, j, l) order.
std::optional<Witness> three_sum_oracle(const ThreeSumInstance& inst);

// O(|C| (|A| + |B|)) two-pointer cross-check of `three_sum_oracle`.
std::optional<Witness> two_pointer_oracle(const ThreeSumInstance& inst);

// Exhaustive scan of A^k (with repetition).
std::optional<Witness> k_ldt_oracle(const KLdtInstance& inst);

bool is_witness(const ThreeSumInstance& inst, const Witness& w);
bool is_witness(const KLdtInstance& inst, const Witness& w);

// Instance files: {"A":[...],"B":[...],"C":[...]} or {"k":5,"alphas":[...],"A":[...]},
// integers written as decimal strings.
std::string to_json(const ThreeSumInstance& inst);
std::string to_json(const KLdtInstance& inst);
std::string to_json(const Witness& w);
ThreeSumInstance three_sum_from_json(std::string_view text);
KLdtInstance kldt_from_json(std::string_view text);
bool is_kldt_json(std::string_view text);

// splitmix64 step, used to derive independent seeds from (seed, salt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace sumlab
