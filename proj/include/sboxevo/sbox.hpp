#pragma once

#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sboxevo {

inline constexpr int kMinBits = 3;
inline constexpr int kMaxBits = 10;

// n-bit to n-bit lookup table; table[x] is the output for input x.
struct SBox {
  int n = 0;
  std::vector<std::uint16_t> table;

  std::uint32_t size() const { return 1u << n; }
  bool operator==(const SBox&) const = default;
};

inline SBox make_sbox(int n, std::vector<std::uint16_t> table) {
  if (n < kMinBits || n > kMaxBits) {
    throw std::invalid_argument("sbox bit-width must be in [" +
                                std::to_string(kMinBits) + "," +
                                std::to_string(kMaxBits) + "], got " +
                                std::to_string(n));
  }
  const std::size_t want = std::size_t{1} << n;
  if (table.size() != want) {
    throw std::invalid_argument("sbox table needs " + std::to_string(want) +
                                " entries, got " +
                                std::to_string(table.size()));
  }
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] >= want) {
      throw std::invalid_argument("sbox entry " + std::to_string(table[x]) +
                                  " at index " + std::to_string(x) +
                                  " is out of range for n=" +
                                  std::to_string(n));
    }
  }
  return SBox{n, std::move(table)};
}

inline SBox identity_sbox(int n) {
  std::vector<std::uint16_t> table(std::size_t{1} << n);
  std::iota(table.begin(), table.end(), std::uint16_t{0});
  return make_sbox(n, std::move(table));
}

inline bool is_permutation(const SBox& f) {
  std::vector<bool> seen(f.size(), false);
  for (const auto v : f.table) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

// number of output values that never occur (0 iff the table is a permutation)
inline int missing_outputs(const SBox& f) {
  std::vector<bool> seen(f.size(), false);
  for (const auto v : f.table) seen[v] = true;
  int missing = 0;
  for (const bool s : seen) missing += s ? 0 : 1;
  return missing;
}

inline SBox invert(const SBox& f) {
  if (!is_permutation(f)) {
    throw std::invalid_argument("cannot invert an sbox that is not a permutation");
  }
  std::vector<std::uint16_t> inv(f.size());
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    inv[f.table[x]] = static_cast<std::uint16_t>(x);
  }
  return SBox{f.n, std::move(inv)};
}

// Text format: first line "n=<k>", second line 2^k hex values.
inline std::string to_text(const SBox& f) {
  std::ostringstream out;
  out << "n=" << f.n << '\n' << std::hex;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    if (x) out << ' ';
    out << f.table[x];
  }
  out << '\n';
  return out.str();
}

inline SBox sbox_from_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("sbox text: missing header line");
  }
  if (header.rfind("n=", 0) != 0) {
    throw std::invalid_argument("sbox text: header must start with \"n=\"");
  }
  int n = 0;
  try {
    n = std::stoi(header.substr(2));
  } catch (const std::exception&) {
    throw std::invalid_argument("sbox text: bad bit-width in header");
  }
  if (n < kMinBits || n > kMaxBits) {
    throw std::invalid_argument("sbox text: bit-width out of range");
  }
  const std::size_t want = std::size_t{1} << n;
  std::vector<std::uint16_t> table;
  table.reserve(want);
  in >> std::hex;
  std::uint32_t value = 0;
  while (table.size() < want && (in >> value)) {
    table.push_back(static_cast<std::uint16_t>(value));
    if (value > 0xFFFFu) table.back() = 0xFFFFu;  // forces the range error below
  }
  if (table.size() != want) {
    throw std::invalid_argument("sbox text: expected " + std::to_string(want) +
                                " values");
  }
  return make_sbox(n, std::move(table));
}

inline SBox sbox_from_text(const std::string& text) {
  std::istringstream in(text);
  return sbox_from_text(in);
}

}  // namespace sboxevo
