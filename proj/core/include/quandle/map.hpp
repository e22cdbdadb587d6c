#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "quandle/table.hpp"

namespace quandle {

// A homomorphism between finite quandles. The homomorphism law is checked
// when the map is built; injectivity and surjectivity are always derived
// from the images.
class QuandleMap {
 public:
  // Throws ErrorKind::NotAHomomorphism (with the first failing pair) or
  // ErrorKind::InvalidArgument for a wrong-sized or out-of-range image list.
  static QuandleMap make(QuandleTable src, QuandleTable dst, std::vector<Element> images);
  static QuandleMap identity(const QuandleTable& t);

  const QuandleTable& src() const { return src_; }
  const QuandleTable& dst() const { return dst_; }
  const std::vector<Element>& images() const { return images_; }
  Element operator()(Element x) const { return images_[x]; }

  bool injective() const;
  bool surjective() const;
  bool bijective() const { return injective() && surjective(); }
  bool is_endomorphism() const { return src_ == dst_; }

  // Elements of dst hit by the map, increasing.
  std::vector<Element> image() const;

  friend bool operator==(const QuandleMap& a, const QuandleMap& b) {
    return a.images_ == b.images_ && a.src_ == b.src_ && a.dst_ == b.dst_;
  }
  // Lexicographic on image arrays; only meaningful for maps sharing src/dst.
  friend std::strong_ordering operator<=>(const QuandleMap& a, const QuandleMap& b) {
    return a.images_ <=> b.images_;
  }

 private:
  QuandleMap(QuandleTable src, QuandleTable dst, std::vector<Element> images)
      : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {}

  QuandleTable src_;
  QuandleTable dst_;
  std::vector<Element> images_;
};

// (f o g)(x) = f(g(x)). Requires g.dst() == f.src().
QuandleMap compose(const QuandleMap& f, const QuandleMap& g);

// Image-array composition without table checks: out[x] = f[g[x]].
std::vector<Element> compose_images(std::span<const Element> f, std::span<const Element> g);

// Exhaustive check of images[x*y] == images[x]*images[y].
bool is_homomorphism(const QuandleTable& src, const QuandleTable& dst,
                     std::span<const Element> images);

}  // namespace quandle
