#pragma once

// Brute-force reference implementations. They share nothing with the library
// beyond the plain table representation, so agreement is real evidence.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Cells = std::vector<std::uint32_t>;  // row-major, cells[i*n+j] = i*j

inline bool is_quandle(std::size_t n, const Cells& c) {
  for (std::size_t i = 0; i < n; ++i)
    if (c[i * n + i] != i) return false;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[c[i * n + j]]) return false;
      seen[c[i * n + j]] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c[c[i * n + j] * n + k] != c[c[i * n + k] * n + c[j * n + k]]) return false;
  return true;
}

// Table after renaming every element x to p[x].
inline Cells relabel(std::size_t n, const Cells& c, const std::vector<std::uint32_t>& p) {
  Cells out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[p[i] * n + p[j]] = p[c[i * n + j]];
  return out;
}

// Minimum over all n! relabelings.
inline Cells canonical_key(std::size_t n, const Cells& c) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Cells best = c;
  do {
    best = std::min(best, relabel(n, c, p));
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Every labeled quandle of order n: all tables with x*x = x, filtered by the
// axioms. Feasible for n <= 4 (4^12 candidates).
inline std::vector<Cells> labeled_quandles(std::size_t n) {
  std::vector<std::size_t> free_cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) free_cells.push_back(i * n + j);
  Cells c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) c[i * n + i] = static_cast<std::uint32_t>(i);
  std::vector<Cells> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == free_cells.size()) {
      if (is_quandle(n, c)) out.push_back(c);
      return;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      c[free_cells[k]] = v;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

inline std::size_t isomorphism_classes(std::size_t n, const std::vector<Cells>& tables) {
  std::set<Cells> keys;
  for (const auto& t : tables) keys.insert(canonical_key(n, t));
  return keys.size();
}

// Every map src -> dst (as image vectors) preserving the operation.
inline std::vector<std::vector<std::uint32_t>> homs(std::size_t n, const Cells& a, std::size_t m,
                                                    const Cells& b) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> f(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) ok = f[a[i * n + j]] == b[f[i] * m + f[j]];
    if (ok) out.push_back(f);
    std::size_t k = 0;
    while (k < n && ++f[k] == m) f[k++] = 0;
    if (k == n) break;
  }
  return out;
}

inline bool bijective(const std::vector<std::uint32_t>& f, std::size_t target_order) {
  std::set<std::uint32_t> s(f.begin(), f.end());
  return f.size() == target_order && s.size() == f.size();
}

// Subgroup of permutations generated by the right translations.
inline std::size_t inner_group_size(std::size_t n, const Cells& c) {
  std::set<std::vector<std::uint32_t>> group;
  std::vector<std::uint32_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::uint32_t>> frontier{id};
  group.insert(id);
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& g : frontier) {
      for (std::size_t y = 0; y < n; ++y) {
        std::vector<std::uint32_t> h(n);
        for (std::size_t x = 0; x < n; ++x) h[x] = c[g[x] * n + y];
        if (group.insert(h).second) next.push_back(h);
      }
    }
    frontier = std::move(next);
  }
  return group.size();
}

// Set partitions as restricted growth strings.
inline std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n; ++b) {
      a[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return out;
  a[0] = 0;
  rec(1, 1);
  return out;
}

// Compatible with x*y and with the dual operation on both sides.
inline bool is_congruence(std::size_t n, const Cells& c, const std::vector<std::size_t>& lab) {
  Cells dual(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dual[c[i * n + j] * n + j] = static_cast<std::uint32_t>(i);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (lab[a] != lab[b]) continue;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (lab[x] != lab[y]) continue;
          if (lab[c[a * n + x]] != lab[c[b * n + y]]) return false;
          if (lab[dual[a * n + x]] != lab[dual[b * n + y]]) return false;
        }
    }
  return true;
}

inline std::vector<std::vector<std::size_t>> congruences(std::size_t n, const Cells& c) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& p : set_partitions(n))
    if (is_congruence(n, c, p)) out.push_back(p);
  return out;
}

// Coherent tuples of a finite system; maps[(i,j)] sends Q_j into Q_i.
inline std::vector<std::vector<std::uint32_t>> threads(
    const std::vector<std::size_t>& orders,
    const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::uint32_t>>& maps) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> t(orders.size(), 0);
  for (;;) {
    bool ok = true;
    for (const auto& [key, f] : maps)
      if (f[t[key.second]] != t[key.first]) ok = false;
    if (ok) out.push_back(t);
    std::size_t k = orders.size();
    while (k > 0) {
      --k;
      if (++t[k] < orders[k]) break;
      t[k] = 0;
      if (k == 0) return out;
    }
    if (orders.empty()) return out;
  }
}

}  // namespace oracle
