#include "quandle/map.hpp"

#include <string>

#include "quandle/errors.hpp"

namespace quandle {

bool is_homomorphism(const QuandleTable& src, const QuandleTable& dst,
                     std::span<const Element> images) {
  if (images.size() != src.order()) return false;
  for (Element v : images)
    if (v >= dst.order()) return false;
  for (Element x = 0; x < src.order(); ++x)
    for (Element y = 0; y < src.order(); ++y)
      if (images[src.op(x, y)] != dst.op(images[x], images[y])) return false;
  return true;
}

QuandleMap QuandleMap::make(QuandleTable src, QuandleTable dst, std::vector<Element> images) {
  if (images.size() != src.order()) {
    throw Error(ErrorKind::InvalidArgument, "map has " + std::to_string(images.size()) +
                                                " images, source has order " +
                                                std::to_string(src.order()));
  }
  for (Element v : images)
    if (v >= dst.order()) throw Error(ErrorKind::InvalidArgument, "map image out of range");
  for (Element x = 0; x < src.order(); ++x) {
    for (Element y = 0; y < src.order(); ++y) {
      if (images[src.op(x, y)] != dst.op(images[x], images[y])) {
        throw Error(ErrorKind::NotAHomomorphism,
                    "f(" + std::to_string(x) + " * " + std::to_string(y) +
                        ") != f(" + std::to_string(x) + ") * f(" + std::to_string(y) + ")");
      }
    }
  }
  return QuandleMap(std::move(src), std::move(dst), std::move(images));
}

QuandleMap QuandleMap::identity(const QuandleTable& t) {
  std::vector<Element> images(t.order());
  for (Element x = 0; x < t.order(); ++x) images[x] = x;
  return QuandleMap(t, t, std::move(images));
}

bool QuandleMap::injective() const {
  std::vector<bool> seen(dst_.order(), false);
  for (Element v : images_) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool QuandleMap::surjective() const { return image().size() == dst_.order(); }

std::vector<Element> QuandleMap::image() const {
  std::vector<bool> hit(dst_.order(), false);
  for (Element v : images_) hit[v] = true;
  std::vector<Element> out;
  for (Element y = 0; y < dst_.order(); ++y)
    if (hit[y]) out.push_back(y);
  return out;
}

std::vector<Element> compose_images(std::span<const Element> f, std::span<const Element> g) {
  std::vector<Element> out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[g[x]];
  return out;
}

QuandleMap compose(const QuandleMap& f, const QuandleMap& g) {
  if (!(g.dst() == f.src())) {
    throw Error(ErrorKind::InvalidArgument, "composition of non-composable maps");
  }
  // Composites of homomorphisms are homomorphisms; make() re-checks anyway.
  return QuandleMap::make(g.src(), f.dst(), compose_images(f.images(), g.images()));
}

}  // namespace quandle
