#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>

#include "sboxevo/integer_encoding.hpp"
#include "sboxevo/permutation_encoding.hpp"
#include "sboxevo/rule_tree.hpp"

namespace sboxevo {

enum class Encoding { Integer, Permutation, Ca };

inline const char* to_string(Encoding e) {
  switch (e) {
    case Encoding::Integer: return "int";
    case Encoding::Permutation: return "perm";
    case Encoding::Ca: return "ca";
  }
  return "?";
}

inline Encoding encoding_from_string(const std::string& name) {
  if (name == "int") return Encoding::Integer;
  if (name == "perm") return Encoding::Permutation;
  if (name == "ca") return Encoding::Ca;
  throw std::invalid_argument("unknown encoding \"" + name + "\"");
}

using Genotype = std::variant<IntegerGenotype, PermutationGenotype, RuleTree>;

inline Encoding encoding_of(const Genotype& g) {
  if (std::holds_alternative<IntegerGenotype>(g)) return Encoding::Integer;
  if (std::holds_alternative<PermutationGenotype>(g)) return Encoding::Permutation;
  return Encoding::Ca;
}

inline int bits_of(const Genotype& g) {
  return std::visit([](const auto& v) { return v.n; }, g);
}

inline SBox decode(const Genotype& g) {
  return std::visit(
      [](const auto& v) -> SBox {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RuleTree>) {
          return decode_ca_rule(v);
        } else {
          return decode(v);
        }
      },
      g);
}

inline Genotype random_genotype(Encoding encoding, int n, RandomSource& rng) {
  switch (encoding) {
    case Encoding::Integer: return random_integer_genotype(n, rng);
    case Encoding::Permutation: return random_permutation_genotype(n, rng);
    case Encoding::Ca: return random_rule_tree(n, rng);
  }
  throw std::logic_error("unreachable");
}

// One mutation, operator drawn uniformly from the encoding's suite.
// Draw order: operator pick (encodings with several operators), then the
// operator's own draws.
inline Genotype mutate(const Genotype& g, RandomSource& rng) {
  if (const auto* integer = std::get_if<IntegerGenotype>(&g)) {
    return int_mutate(*integer, rng);
  }
  if (const auto* perm = std::get_if<PermutationGenotype>(&g)) {
    const PermMutation op = kPermMutations[rng.below(3)];
    return perm_mutate(*perm, rng, op);
  }
  return gp_mutate(std::get<RuleTree>(g), rng);
}

// One crossover, operator drawn uniformly from the encoding's suite.
inline Genotype crossover(const Genotype& a, const Genotype& b, RandomSource& rng) {
  if (const auto* p1 = std::get_if<IntegerGenotype>(&a)) {
    const IntCrossover op = kIntCrossovers[rng.below(3)];
    return int_crossover(*p1, std::get<IntegerGenotype>(b), rng, op);
  }
  if (const auto* p1 = std::get_if<PermutationGenotype>(&a)) {
    const PermCrossover op = kPermCrossovers[rng.below(5)];
    return perm_crossover(*p1, std::get<PermutationGenotype>(b), rng, op);
  }
  const GpCrossover op = kGpCrossovers[rng.below(5)];
  return gp_crossover(std::get<RuleTree>(a), std::get<RuleTree>(b), rng, op);
}

// Integer and permutation genotypes serialize as decimal gene lists, CA rules
// as their prefix string.
inline std::string serialize(const Genotype& g) {
  if (const auto* tree = std::get_if<RuleTree>(&g)) {
    return to_prefix_string(*tree);
  }
  const auto& genes = std::holds_alternative<IntegerGenotype>(g)
                          ? std::get<IntegerGenotype>(g).genes
                          : std::get<PermutationGenotype>(g).genes;
  std::ostringstream out;
  for (std::size_t i = 0; i < genes.size(); ++i) {
    if (i) out << ' ';
    out << genes[i];
  }
  return out.str();
}

inline Genotype parse_genotype(Encoding encoding, int n, const std::string& text) {
  if (encoding == Encoding::Ca) return rule_tree_from_string(n, text);
  std::istringstream in(text);
  std::vector<std::uint16_t> genes;
  std::uint32_t value = 0;
  while (in >> value) genes.push_back(static_cast<std::uint16_t>(value));
  if (encoding == Encoding::Integer) return make_integer_genotype(n, std::move(genes));
  return make_permutation_genotype(n, std::move(genes));
}

}  // namespace sboxevo
