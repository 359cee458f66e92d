#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sboxevo/rng.hpp"
#include "sboxevo/sbox.hpp"

namespace sboxevo {

// Boolean expression tree acting as a cellular-automaton local rule.
// Terminal vj of the rule reads input bit (cell + j) mod n, a periodic
// neighborhood, so one tree defines all n coordinate functions.

enum class RuleOp : std::uint8_t { Var, Not, Xor, And, Or, Nand, Xnor, If };

inline constexpr int arity(RuleOp op) {
  switch (op) {
    case RuleOp::Var: return 0;
    case RuleOp::Not: return 1;
    case RuleOp::If: return 3;
    default: return 2;
  }
}

inline constexpr RuleOp kRuleFunctions[] = {RuleOp::Not,  RuleOp::Xor,
                                            RuleOp::And,  RuleOp::Or,
                                            RuleOp::Nand, RuleOp::Xnor,
                                            RuleOp::If};
inline constexpr int kRuleFunctionCount = 7;

struct RuleNode {
  RuleOp op = RuleOp::Var;
  std::uint8_t var = 0;  // terminal index, used when op == Var

  bool operator==(const RuleNode&) const = default;
};

// Nodes stored in prefix order; a subtree is a contiguous range.
struct RuleTree {
  int n = 0;
  std::vector<RuleNode> nodes;

  bool operator==(const RuleTree&) const = default;
};

inline std::size_t subtree_end(const std::vector<RuleNode>& nodes, std::size_t pos) {
  std::size_t end = pos;
  int pending = 1;
  while (pending > 0) {
    pending += arity(nodes[end].op) - 1;
    ++end;
  }
  return end;
}

inline std::size_t assign_depths(const std::vector<RuleNode>& nodes, std::size_t pos,
                                 int depth, std::vector<int>& out) {
  out[pos] = depth;
  std::size_t next = pos + 1;
  for (int k = 0; k < arity(nodes[pos].op); ++k) {
    next = assign_depths(nodes, next, depth + 1, out);
  }
  return next;
}

inline std::vector<int> node_depths(const RuleTree& tree) {
  std::vector<int> depths(tree.nodes.size());
  assign_depths(tree.nodes, 0, 0, depths);
  return depths;
}

// depth of a single leaf is 0
inline int tree_depth(const RuleTree& tree) {
  const auto depths = node_depths(tree);
  return *std::max_element(depths.begin(), depths.end());
}

// subtree sizes for every node, computed right to left in one pass
inline std::vector<std::uint32_t> subtree_sizes(const std::vector<RuleNode>& nodes) {
  std::vector<std::uint32_t> sizes(nodes.size());
  std::vector<std::uint32_t> stack;
  for (std::size_t i = nodes.size(); i-- > 0;) {
    std::uint32_t total = 1;
    for (int k = 0; k < arity(nodes[i].op); ++k) {
      total += stack.back();
      stack.pop_back();
    }
    sizes[i] = total;
    stack.push_back(total);
  }
  return sizes;
}

inline RuleTree make_rule_tree(int n, std::vector<RuleNode> nodes) {
  if (n < kMinBits || n > kMaxBits) {
    throw std::invalid_argument("rule tree bit-width must be in [3,10]");
  }
  if (nodes.empty()) throw std::invalid_argument("rule tree is empty");
  std::size_t end = 0;
  int pending = 1;
  while (pending > 0 && end < nodes.size()) {
    if (nodes[end].op == RuleOp::Var && nodes[end].var >= n) {
      throw std::invalid_argument("rule tree terminal index out of range");
    }
    pending += arity(nodes[end].op) - 1;
    ++end;
  }
  if (pending != 0 || end != nodes.size()) {
    throw std::invalid_argument("rule tree arities do not match node count");
  }
  RuleTree tree{n, std::move(nodes)};
  if (tree_depth(tree) > n) {
    throw std::invalid_argument("rule tree exceeds maximum depth");
  }
  return tree;
}

// --- prefix (Polish) notation -------------------------------------------

inline const char* rule_op_name(RuleOp op) {
  switch (op) {
    case RuleOp::Not: return "NOT";
    case RuleOp::Xor: return "XOR";
    case RuleOp::And: return "AND";
    case RuleOp::Or: return "OR";
    case RuleOp::Nand: return "NAND";
    case RuleOp::Xnor: return "XNOR";
    case RuleOp::If: return "IF";
    case RuleOp::Var: return "v";
  }
  return "?";
}

inline std::string to_prefix_string(const RuleTree& tree) {
  std::ostringstream out;
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (i) out << ' ';
    const RuleNode& node = tree.nodes[i];
    if (node.op == RuleOp::Var) {
      out << 'v' << static_cast<int>(node.var);
    } else {
      out << rule_op_name(node.op);
    }
  }
  return out.str();
}

inline RuleTree rule_tree_from_string(int n, const std::string& text) {
  std::istringstream in(text);
  std::vector<RuleNode> nodes;
  std::string token;
  while (in >> token) {
    RuleNode node;
    if (token == "NOT") node.op = RuleOp::Not;
    else if (token == "XOR") node.op = RuleOp::Xor;
    else if (token == "AND") node.op = RuleOp::And;
    else if (token == "OR") node.op = RuleOp::Or;
    else if (token == "NAND") node.op = RuleOp::Nand;
    else if (token == "XNOR") node.op = RuleOp::Xnor;
    else if (token == "IF") node.op = RuleOp::If;
    else if (token.size() >= 2 && token[0] == 'v') {
      node.op = RuleOp::Var;
      int var = 0;
      try {
        var = std::stoi(token.substr(1));
      } catch (const std::exception&) {
        throw std::invalid_argument("rule tree: bad terminal \"" + token + "\"");
      }
      if (var < 0 || var > 255) throw std::invalid_argument("rule tree: bad terminal index");
      node.var = static_cast<std::uint8_t>(var);
    } else {
      throw std::invalid_argument("rule tree: unknown token \"" + token + "\"");
    }
    nodes.push_back(node);
  }
  return make_rule_tree(n, std::move(nodes));
}

// --- evaluation -----------------------------------------------------------

namespace detail {

// truth table of "bit k of the input state", one 64-bit word at a time
inline std::uint64_t state_bit_word(int k, std::uint32_t word_index) {
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (k < 6) return kPatterns[k];
  return ((word_index >> (k - 6)) & 1u) ? ~0ull : 0ull;
}

inline std::uint64_t truth_tail_mask(int n) {
  const std::uint32_t size = 1u << n;
  return size >= 64 ? ~0ull : (1ull << size) - 1;
}

// Evaluates the rule over all 2^n states at once, 64 states per word.
// Prefix notation is scanned right to left with a value stack; `var_bits`
// maps terminal j to the state bit it reads for the current cell.
inline void eval_rule_words(const std::vector<RuleNode>& nodes, int n,
                            const int* var_bits, std::vector<std::uint64_t>& stack,
                            std::uint64_t* out) {
  const std::uint32_t words = ((1u << n) + 63) / 64;
  const std::uint64_t mask = truth_tail_mask(n);
  stack.resize(nodes.size() * words);
  std::size_t top = 0;  // number of values on the stack
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const RuleNode& node = nodes[i];
    std::uint64_t* dst = nullptr;
    switch (arity(node.op)) {
      case 0: {
        dst = &stack[top * words];
        const int bit = var_bits[node.var];
        for (std::uint32_t w = 0; w < words; ++w) dst[w] = state_bit_word(bit, w) & mask;
        ++top;
        break;
      }
      case 1: {
        dst = &stack[(top - 1) * words];
        for (std::uint32_t w = 0; w < words; ++w) dst[w] = ~dst[w] & mask;
        break;
      }
      case 2: {
        std::uint64_t* a = &stack[(top - 1) * words];
        std::uint64_t* b = &stack[(top - 2) * words];
        switch (node.op) {
          case RuleOp::Xor:
            for (std::uint32_t w = 0; w < words; ++w) b[w] = a[w] ^ b[w];
            break;
          case RuleOp::And:
            for (std::uint32_t w = 0; w < words; ++w) b[w] = a[w] & b[w];
            break;
          case RuleOp::Or:
            for (std::uint32_t w = 0; w < words; ++w) b[w] = a[w] | b[w];
            break;
          case RuleOp::Nand:
            for (std::uint32_t w = 0; w < words; ++w) b[w] = ~(a[w] & b[w]) & mask;
            break;
          default:  // Xnor
            for (std::uint32_t w = 0; w < words; ++w) b[w] = ~(a[w] ^ b[w]) & mask;
            break;
        }
        --top;
        break;
      }
      default: {  // If(c, t, e) = (c & t) | (~c & e)
        std::uint64_t* c = &stack[(top - 1) * words];
        std::uint64_t* t = &stack[(top - 2) * words];
        std::uint64_t* e = &stack[(top - 3) * words];
        for (std::uint32_t w = 0; w < words; ++w) {
          e[w] = (c[w] & t[w]) | (~c[w] & e[w]);
        }
        top -= 2;
        break;
      }
    }
  }
  std::copy(stack.begin(), stack.begin() + words, out);
}

}  // namespace detail

// Applies the rule in parallel to every bit of every input state: output bit
// `cell` of table[s] is the rule evaluated with vj bound to bit (cell+j) mod n
// of s.
inline SBox decode_ca_rule(const RuleTree& tree) {
  const int n = tree.n;
  const std::uint32_t size = 1u << n;
  const std::uint32_t words = (size + 63) / 64;
  std::vector<std::uint16_t> table(size, 0);
  std::vector<std::uint64_t> stack;
  std::vector<std::uint64_t> out(words);
  int var_bits[kMaxBits];
  for (int cell = 0; cell < n; ++cell) {
    for (int j = 0; j < n; ++j) var_bits[j] = (cell + j) % n;
    detail::eval_rule_words(tree.nodes, n, var_bits, stack, out.data());
    for (std::uint32_t w = 0; w < words; ++w) {
      std::uint64_t bits = out[w];
      while (bits) {
        const std::uint32_t s = w * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
        table[s] |= static_cast<std::uint16_t>(1u << cell);
        bits &= bits - 1;
      }
    }
  }
  return SBox{n, std::move(table)};
}

// --- random trees and variation operators ---------------------------------

namespace detail {

// grow: at each node, pick from terminals + functions until the budget runs
// out. Draw order: one below(n + 7) per node, prefix order.
inline void append_grow(std::vector<RuleNode>& out, int n, int depth_left,
                        RandomSource& rng) {
  if (depth_left <= 0) {
    out.push_back(RuleNode{RuleOp::Var, static_cast<std::uint8_t>(rng.below(n))});
    return;
  }
  const std::uint32_t pick = rng.below(static_cast<std::uint32_t>(n + kRuleFunctionCount));
  if (pick < static_cast<std::uint32_t>(n)) {
    out.push_back(RuleNode{RuleOp::Var, static_cast<std::uint8_t>(pick)});
    return;
  }
  const RuleOp op = kRuleFunctions[pick - n];
  out.push_back(RuleNode{op, 0});
  for (int k = 0; k < arity(op); ++k) append_grow(out, n, depth_left - 1, rng);
}

// full: functions down to the budget, then terminals
inline void append_full(std::vector<RuleNode>& out, int n, int depth_left,
                        RandomSource& rng) {
  if (depth_left <= 0) {
    out.push_back(RuleNode{RuleOp::Var, static_cast<std::uint8_t>(rng.below(n))});
    return;
  }
  const RuleOp op = kRuleFunctions[rng.below(kRuleFunctionCount)];
  out.push_back(RuleNode{op, 0});
  for (int k = 0; k < arity(op); ++k) append_full(out, n, depth_left - 1, rng);
}

}  // namespace detail

// ramped half-and-half up to depth n.
// Draw order: target depth below(n)+1, grow/full coin, then nodes in prefix order.
inline RuleTree random_rule_tree(int n, RandomSource& rng) {
  const int depth = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(n)));
  const bool full = rng.coin();
  std::vector<RuleNode> nodes;
  if (full) {
    detail::append_full(nodes, n, depth, rng);
  } else {
    detail::append_grow(nodes, n, depth, rng);
  }
  return RuleTree{n, std::move(nodes)};
}

// replace p1's subtree at pos1 with p2's subtree at pos2
inline RuleTree splice_subtree(const RuleTree& p1, std::size_t pos1,
                               const RuleTree& p2, std::size_t pos2) {
  const std::size_t end1 = subtree_end(p1.nodes, pos1);
  const std::size_t end2 = subtree_end(p2.nodes, pos2);
  std::vector<RuleNode> nodes;
  nodes.reserve(p1.nodes.size() - (end1 - pos1) + (end2 - pos2));
  nodes.insert(nodes.end(), p1.nodes.begin(), p1.nodes.begin() + pos1);
  nodes.insert(nodes.end(), p2.nodes.begin() + pos2, p2.nodes.begin() + end2);
  nodes.insert(nodes.end(), p1.nodes.begin() + end1, p1.nodes.end());
  return RuleTree{p1.n, std::move(nodes)};
}

// Subtree mutation: a uniformly chosen node's subtree is replaced by a fresh
// grown tree that fits the remaining depth budget.
// Draw order: node index, replacement depth below(budget+1), grown nodes.
inline RuleTree gp_mutate(const RuleTree& tree, RandomSource& rng) {
  const std::size_t pos = rng.index(tree.nodes.size());
  const std::vector<int> depths = node_depths(tree);
  const int budget = tree.n - depths[pos];
  const int sub_depth = static_cast<int>(rng.below(static_cast<std::uint32_t>(budget + 1)));
  RuleTree replacement{tree.n, {}};
  detail::append_grow(replacement.nodes, tree.n, sub_depth, rng);
  return splice_subtree(tree, pos, replacement, 0);
}

enum class GpCrossover { Simple, Uniform, SizeFair, OnePoint, ContextPreserving };
inline constexpr GpCrossover kGpCrossovers[] = {
    GpCrossover::Simple, GpCrossover::Uniform, GpCrossover::SizeFair,
    GpCrossover::OnePoint, GpCrossover::ContextPreserving};

namespace detail {

// Uniform crossover over the common region: where arities match, the node
// label is taken from either parent and children are recursed pairwise; where
// they differ, one parent's whole subtree is copied.
// Draw order: one coin per visited node pair, prefix order.
inline void uniform_cross_walk(const std::vector<RuleNode>& t1, std::size_t i,
                               const std::vector<RuleNode>& t2, std::size_t j,
                               RandomSource& rng, std::vector<RuleNode>& out) {
  const int a1 = arity(t1[i].op);
  const int a2 = arity(t2[j].op);
  const bool from_p2 = rng.coin();
  if (a1 == a2) {
    out.push_back(from_p2 ? t2[j] : t1[i]);
    std::size_t ci = i + 1;
    std::size_t cj = j + 1;
    for (int k = 0; k < a1; ++k) {
      uniform_cross_walk(t1, ci, t2, cj, rng, out);
      ci = subtree_end(t1, ci);
      cj = subtree_end(t2, cj);
    }
  } else if (from_p2) {
    const std::size_t end = subtree_end(t2, j);
    out.insert(out.end(), t2.begin() + j, t2.begin() + end);
  } else {
    const std::size_t end = subtree_end(t1, i);
    out.insert(out.end(), t1.begin() + i, t1.begin() + end);
  }
}

// node pairs of the common region (descends only where arities match)
inline void common_region_pairs(const std::vector<RuleNode>& t1, std::size_t i,
                                const std::vector<RuleNode>& t2, std::size_t j,
                                std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(i, j);
  const int a1 = arity(t1[i].op);
  if (a1 != arity(t2[j].op)) return;
  std::size_t ci = i + 1;
  std::size_t cj = j + 1;
  for (int k = 0; k < a1; ++k) {
    common_region_pairs(t1, ci, t2, cj, out);
    ci = subtree_end(t1, ci);
    cj = subtree_end(t2, cj);
  }
}

// node pairs with identical coordinates (child-index paths valid in both)
inline void shared_path_pairs(const std::vector<RuleNode>& t1, std::size_t i,
                              const std::vector<RuleNode>& t2, std::size_t j,
                              std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(i, j);
  const int shared = std::min(arity(t1[i].op), arity(t2[j].op));
  std::size_t ci = i + 1;
  std::size_t cj = j + 1;
  for (int k = 0; k < shared; ++k) {
    shared_path_pairs(t1, ci, t2, cj, out);
    ci = subtree_end(t1, ci);
    cj = subtree_end(t2, cj);
  }
}

inline RuleTree gp_crossover_once(const RuleTree& p1, const RuleTree& p2,
                                  RandomSource& rng, GpCrossover op) {
  switch (op) {
    case GpCrossover::Simple: {
      const std::size_t i = rng.index(p1.nodes.size());
      const std::size_t j = rng.index(p2.nodes.size());
      return splice_subtree(p1, i, p2, j);
    }
    case GpCrossover::Uniform: {
      std::vector<RuleNode> nodes;
      uniform_cross_walk(p1.nodes, 0, p2.nodes, 0, rng, nodes);
      return RuleTree{p1.n, std::move(nodes)};
    }
    case GpCrossover::SizeFair: {
      const std::size_t i = rng.index(p1.nodes.size());
      const std::uint32_t donor_limit =
          2 * static_cast<std::uint32_t>(subtree_end(p1.nodes, i) - i) + 1;
      const auto sizes = subtree_sizes(p2.nodes);
      std::vector<std::size_t> candidates;
      for (std::size_t j = 0; j < sizes.size(); ++j) {
        if (sizes[j] <= donor_limit) candidates.push_back(j);
      }
      const std::size_t j = candidates[rng.index(candidates.size())];
      return splice_subtree(p1, i, p2, j);
    }
    case GpCrossover::OnePoint: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      common_region_pairs(p1.nodes, 0, p2.nodes, 0, pairs);
      const auto [i, j] = pairs[rng.index(pairs.size())];
      return splice_subtree(p1, i, p2, j);
    }
    case GpCrossover::ContextPreserving: {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      shared_path_pairs(p1.nodes, 0, p2.nodes, 0, pairs);
      const auto [i, j] = pairs[rng.index(pairs.size())];
      return splice_subtree(p1, i, p2, j);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// Offspring violating the depth bound are redrawn up to 10 times, then p1 is
// returned unchanged.
inline RuleTree gp_crossover(const RuleTree& p1, const RuleTree& p2,
                             RandomSource& rng, GpCrossover op) {
  if (p1.n != p2.n) throw std::invalid_argument("crossover: bit-width mismatch");
  for (int attempt = 0; attempt < 10; ++attempt) {
    RuleTree child = detail::gp_crossover_once(p1, p2, rng, op);
    if (tree_depth(child) <= p1.n) return child;
  }
  return p1;
}

}  // namespace sboxevo
