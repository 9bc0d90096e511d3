#include "sumlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace sumlab {

namespace {

void check_bound(const std::vector<Scalar>& values, const char* what) {
  for (Scalar v : values) {
    if (v <= -kScalarLimit || v >= kScalarLimit) {
      throw std::out_of_range(std::string(what) + ": value outside the +-2^40 scalar range");
    }
  }
}

// Half-width of the value range used by the generators. Roughly n^3/4 keeps
// uniform instances near the witness/no-witness boundary at small n.
Scalar value_range(std::size_t n) {
  const double cube = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n) / 4.0;
  const double cap = static_cast<double>(Scalar{1} << 38);
  return static_cast<Scalar>(std::clamp(cube, 8.0, cap));
}

std::vector<Scalar> uniform_values(std::mt19937_64& rng, std::size_t n, Scalar range) {
  std::uniform_int_distribution<Scalar> dist(-range, range);
  std::vector<Scalar> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

std::vector<Scalar> odd_values(std::mt19937_64& rng, std::size_t n, Scalar range) {
  std::uniform_int_distribution<Scalar> dist(-range / 2, range / 2 - 1);
  std::vector<Scalar> out(n);
  for (auto& v : out) v = 2 * dist(rng) + 1;
  return out;
}

std::vector<Scalar> clustered_values(std::mt19937_64& rng, std::size_t n, Scalar range) {
  const auto clusters = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
  const Scalar spread = std::max<Scalar>(1, static_cast<Scalar>(n / 8));
  std::uniform_int_distribution<Scalar> center_dist(-range + spread, range - spread);
  std::vector<Scalar> centers(clusters);
  for (auto& c : centers) c = center_dist(rng);
  std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
  std::uniform_int_distribution<Scalar> jitter(-spread, spread);
  std::vector<Scalar> out(n);
  for (auto& v : out) v = centers[pick(rng)] + jitter(rng);
  return out;
}

Scalar parse_scalar(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t used = 0;
    const long long v = std::stoll(s, &used, 10);
    if (used != s.size()) throw std::invalid_argument("malformed integer string: " + s);
    return static_cast<Scalar>(v);
  }
  if (j.is_number_integer()) return j.get<Scalar>();
  throw std::invalid_argument("expected an integer or a decimal string");
}

std::vector<Scalar> parse_list(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw std::invalid_argument(std::string("instance file lacks array \"") + key + "\"");
  }
  std::vector<Scalar> out;
  for (const auto& item : doc.at(key)) out.push_back(parse_scalar(item));
  return out;
}

nlohmann::json string_list(const std::vector<Scalar>& values) {
  auto arr = nlohmann::json::array();
  for (Scalar v : values) arr.push_back(std::to_string(v));
  return arr;
}

}  // namespace

std::size_t ThreeSumInstance::max_size() const { return std::max({a.size(), b.size(), c.size()}); }

Distribution parse_distribution(std::string_view name) {
  if (name == "uniform") return Distribution::uniform;
  if (name == "planted") return Distribution::planted;
  if (name == "no-solution-parity") return Distribution::no_solution_parity;
  if (name == "clustered") return Distribution::clustered;
  throw std::invalid_argument("unknown distribution: " + std::string(name));
}

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::uniform: return "uniform";
    case Distribution::planted: return "planted";
    case Distribution::no_solution_parity: return "no-solution-parity";
    case Distribution::clustered: return "clustered";
  }
  return "uniform";
}

ThreeSumInstance make_instance(std::vector<Scalar> a, std::vector<Scalar> b, std::vector<Scalar> c) {
  check_bound(a, "A");
  check_bound(b, "B");
  check_bound(c, "C");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::sort(c.begin(), c.end());
  return ThreeSumInstance{std::move(a), std::move(b), std::move(c)};
}

KLdtInstance make_kldt_instance(int k, std::vector<Scalar> alphas, std::vector<Scalar> a) {
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("k-LDT requires odd k >= 3");
  if (alphas.size() != static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("k-LDT requires k + 1 coefficients alpha_0..alpha_k");
  }
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (alphas[i] == 0) throw std::invalid_argument("alpha_1..alpha_k must be nonzero");
  }
  check_bound(alphas, "alphas");
  check_bound(a, "A");
  std::sort(a.begin(), a.end());
  return KLdtInstance{k, std::move(alphas), std::move(a)};
}

ThreeSumInstance generate(Distribution dist, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate: n must be positive");
  std::mt19937_64 rng(mix_seed(seed, 0x3c5u));
  const Scalar range = value_range(n);
  std::vector<Scalar> a, b, c;
  switch (dist) {
    case Distribution::uniform:
    case Distribution::planted:
      a = uniform_values(rng, n, range);
      b = uniform_values(rng, n, range);
      c = uniform_values(rng, n, range);
      break;
    case Distribution::no_solution_parity:
      a = odd_values(rng, n, range);
      b = odd_values(rng, n, range);
      c = odd_values(rng, n, range);
      break;
    case Distribution::clustered:
      a = clustered_values(rng, n, range);
      b = clustered_values(rng, n, range);
      c = clustered_values(rng, n, range);
      break;
  }
  if (dist == Distribution::planted) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    const std::size_t l = pick(rng);
    c[l] = -a[i] - b[j];
  }
  return make_instance(std::move(a), std::move(b), std::move(c));
}

ThreeSumInstance generate(std::string_view kind, std::size_t n, std::uint64_t seed) {
  return generate(parse_distribution(kind), n, seed);
}

ThreeSumInstance generate_distinct_sums(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_distinct_sums: n must be positive");
  std::mt19937_64 rng(mix_seed(seed, 0xd15u));
  // a in [0, M) distinct, b = M * t with distinct t: a + b determines (a, t).
  const auto m = static_cast<Scalar>(4 * n);
  auto distinct = [&](Scalar lo, Scalar hi) {
    std::vector<Scalar> pool;
    for (Scalar v = lo; v < hi; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(n);
    return pool;
  };
  std::vector<Scalar> a = distinct(0, m);
  std::vector<Scalar> b = distinct(-2 * static_cast<Scalar>(n), 2 * static_cast<Scalar>(n));
  for (auto& v : b) v *= m;
  std::uniform_int_distribution<Scalar> cd(-m * 2 * static_cast<Scalar>(n), m * 2 * static_cast<Scalar>(n));
  std::vector<Scalar> c(n);
  for (auto& v : c) v = cd(rng);
  return make_instance(std::move(a), std::move(b), std::move(c));
}

KLdtInstance generate_kldt(int k, std::size_t n, std::uint64_t seed, Distribution dist) {
  if (n == 0) throw std::invalid_argument("generate_kldt: n must be positive");
  if (k < 3 || k % 2 == 0) throw std::invalid_argument("k-LDT requires odd k >= 3");
  std::mt19937_64 rng(mix_seed(seed, 0x1d7u));
  const auto range = std::max<Scalar>(4, static_cast<Scalar>(n));
  const bool parity = dist == Distribution::no_solution_parity;
  std::vector<Scalar> alphas(static_cast<std::size_t>(k) + 1);
  std::uniform_int_distribution<Scalar> offset(-range, range);
  alphas[0] = offset(rng);
  if (parity) alphas[0] &= ~Scalar{1};
  static constexpr Scalar kOdd[] = {-3, -1, 1, 3};
  static constexpr Scalar kAny[] = {-3, -2, -1, 1, 2, 3};
  for (int i = 1; i <= k; ++i) {
    if (parity) {
      alphas[static_cast<std::size_t>(i)] = kOdd[std::uniform_int_distribution<int>(0, 3)(rng)];
    } else {
      alphas[static_cast<std::size_t>(i)] = kAny[std::uniform_int_distribution<int>(0, 5)(rng)];
    }
  }
  std::vector<Scalar> a = parity ? odd_values(rng, n, 2 * range) : uniform_values(rng, n, range);
  return make_kldt_instance(k, std::move(alphas), std::move(a));
}

std::optional<Witness> three_sum_oracle(const ThreeSumInstance& inst) {
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    for (std::size_t j = 0; j < inst.b.size(); ++j) {
      const Scalar target = -(inst.a[i] + inst.b[j]);
      bool hit = false;
      for (const Scalar c : inst.c) hit |= c == target;
      if (!hit) continue;
      const auto l = static_cast<std::size_t>(std::find(inst.c.begin(), inst.c.end(), target) - inst.c.begin());
      return Witness{{i, j, l}, {inst.a[i], inst.b[j], inst.c[l]}};
    }
  }
  return std::nullopt;
}

std::optional<Witness> two_pointer_oracle(const ThreeSumInstance& inst) {
  std::vector<std::size_t> order_a(inst.a.size()), order_b(inst.b.size());
  for (std::size_t i = 0; i < order_a.size(); ++i) order_a[i] = i;
  for (std::size_t i = 0; i < order_b.size(); ++i) order_b[i] = i;
  std::stable_sort(order_a.begin(), order_a.end(), [&](auto x, auto y) { return inst.a[x] < inst.a[y]; });
  std::stable_sort(order_b.begin(), order_b.end(), [&](auto x, auto y) { return inst.b[x] < inst.b[y]; });
  if (order_a.empty() || order_b.empty()) return std::nullopt;
  for (std::size_t l = 0; l < inst.c.size(); ++l) {
    const Scalar target = -inst.c[l];
    std::size_t lo = 0;
    std::size_t hi = order_b.size();
    while (lo < order_a.size() && hi > 0) {
      const Scalar s = inst.a[order_a[lo]] + inst.b[order_b[hi - 1]];
      if (s == target) {
        const std::size_t i = order_a[lo];
        const std::size_t j = order_b[hi - 1];
        return Witness{{i, j, l}, {inst.a[i], inst.b[j], inst.c[l]}};
      }
      if (s < target) {
        ++lo;
      } else {
        --hi;
      }
    }
  }
  return std::nullopt;
}

std::optional<Witness> k_ldt_oracle(const KLdtInstance& inst) {
  const std::size_t n = inst.a.size();
  const auto k = static_cast<std::size_t>(inst.k);
  if (n == 0) return std::nullopt;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    __int128 partial = inst.alphas[0];
    for (std::size_t t = 0; t + 1 < k; ++t) partial += static_cast<__int128>(inst.alphas[t + 1]) * inst.a[idx[t]];
    const Scalar last_coef = inst.alphas[k];
    for (std::size_t x = 0; x < n; ++x) {
      if (partial + static_cast<__int128>(last_coef) * inst.a[x] == 0) {
        idx[k - 1] = x;
        Witness w;
        w.indices = idx;
        for (auto i : idx) w.values.push_back(inst.a[i]);
        return w;
      }
    }
    // Advance the first k-1 coordinates as an odometer (last one varies fastest).
    std::size_t pos = k - 1;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < n) break;
      idx[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
    if (k == 1) return std::nullopt;
  }
}

bool is_witness(const ThreeSumInstance& inst, const Witness& w) {
  if (w.indices.size() != 3) return false;
  const auto i = w.indices[0], j = w.indices[1], l = w.indices[2];
  if (i >= inst.a.size() || j >= inst.b.size() || l >= inst.c.size()) return false;
  return inst.a[i] + inst.b[j] + inst.c[l] == 0;
}

bool is_witness(const KLdtInstance& inst, const Witness& w) {
  if (w.indices.size() != static_cast<std::size_t>(inst.k)) return false;
  __int128 sum = inst.alphas[0];
  for (std::size_t t = 0; t < w.indices.size(); ++t) {
    if (w.indices[t] >= inst.a.size()) return false;
    sum += static_cast<__int128>(inst.alphas[t + 1]) * inst.a[w.indices[t]];
  }
  return sum == 0;
}

std::string to_json(const ThreeSumInstance& inst) {
  nlohmann::json doc;
  doc["A"] = string_list(inst.a);
  doc["B"] = string_list(inst.b);
  doc["C"] = string_list(inst.c);
  return doc.dump();
}

std::string to_json(const KLdtInstance& inst) {
  nlohmann::json doc;
  doc["k"] = inst.k;
  doc["alphas"] = string_list(inst.alphas);
  doc["A"] = string_list(inst.a);
  return doc.dump();
}

std::string to_json(const Witness& w) {
  nlohmann::json doc;
  doc["indices"] = w.indices;
  doc["values"] = string_list(w.values);
  return doc.dump();
}

ThreeSumInstance three_sum_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  return make_instance(parse_list(doc, "A"), parse_list(doc, "B"), parse_list(doc, "C"));
}

KLdtInstance kldt_from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  if (!doc.contains("k")) throw std::invalid_argument("k-LDT instance file lacks \"k\"");
  return make_kldt_instance(static_cast<int>(parse_scalar(doc.at("k"))), parse_list(doc, "alphas"),
                            parse_list(doc, "A"));
}

bool is_kldt_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  return doc.contains("k");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace sumlab
