#include "quandle/group.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "quandle/errors.hpp"

namespace quandle {

GroupTable GroupTable::from_cells(std::size_t n, std::vector<Element> mul) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "groups are non-empty");
  if (mul.size() != n * n) throw Error(ErrorKind::InvalidArgument, "group table is not n x n");
  for (Element v : mul)
    if (v >= n) throw Error(ErrorKind::InvalidArgument, "group table entry out of range");
  auto m = [&](std::size_t a, std::size_t b) { return mul[a * n + b]; };

  std::optional<Element> id;
  for (Element e = 0; e < n && !id; ++e) {
    bool two_sided = true;
    for (Element x = 0; x < n && two_sided; ++x) two_sided = m(e, x) == x && m(x, e) == x;
    if (two_sided) id = e;
  }
  if (!id) throw Error(ErrorKind::InvalidArgument, "group table has no identity");

  std::vector<Element> inv(n, static_cast<Element>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (m(a, b) == *id && m(b, a) == *id) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] == n) throw Error(ErrorKind::InvalidArgument, "element without inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (m(m(a, b), c) != m(a, m(b, c)))
          throw Error(ErrorKind::InvalidArgument, "group table is not associative");

  GroupTable g;
  g.n_ = n;
  g.mul_ = std::move(mul);
  g.inv_ = std::move(inv);
  g.id_ = *id;
  return g;
}

GroupTable GroupTable::cyclic(std::size_t n) {
  std::vector<Element> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = static_cast<Element>((a + b) % n);
  return from_cells(n, std::move(mul));
}

GroupTable GroupTable::symmetric(std::size_t k) {
  std::vector<Permutation> perms;
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const std::size_t n = perms.size();
  std::vector<Element> mul(n * n);
  Permutation c(k);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];
      auto it = std::lower_bound(perms.begin(), perms.end(), c);
      mul[a * n + b] = static_cast<Element>(it - perms.begin());
    }
  }
  return from_cells(n, std::move(mul));
}

Element GroupTable::power(Element a, std::int64_t e) const {
  Element base = e < 0 ? inv(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Element acc = id_;
  while (k > 0) {
    if (k & 1U) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return acc;
}

bool is_group_homomorphism(const GroupTable& src, const GroupTable& dst,
                           std::span<const Element> images) {
  if (images.size() != src.order()) return false;
  for (Element v : images)
    if (v >= dst.order()) return false;
  for (Element a = 0; a < src.order(); ++a)
    for (Element b = 0; b < src.order(); ++b)
      if (images[src.mul(a, b)] != dst.mul(images[a], images[b])) return false;
  return true;
}

bool is_group_automorphism(const GroupTable& g, std::span<const Element> psi) {
  return is_permutation(psi) && is_group_homomorphism(g, g, psi);
}

std::vector<Element> cyclic_reduction(std::size_t m, std::size_t n) {
  if (n == 0 || m % n != 0) throw Error(ErrorKind::InvalidArgument, "reduction needs n | m");
  std::vector<Element> images(m);
  for (std::size_t x = 0; x < m; ++x) images[x] = static_cast<Element>(x % n);
  return images;
}

}  // namespace quandle
