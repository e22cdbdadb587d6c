#include "quandle/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "quandle/detail/parallel.hpp"
#include "quandle/errors.hpp"
#include "quandle/io.hpp"

namespace quandle {

namespace {

class Canonicalizer {
 public:
  explicit Canonicalizer(const QuandleTable& t)
      : t_(t), n_(t.order()), pi_(n_), inv_(n_, kFree), best_(n_ * n_), current_(n_ * n_) {}

  CanonicalForm run() {
    dfs(0);
    Permutation relabel(n_);
    for (std::size_t p = 0; p < n_; ++p) relabel[best_pi_[p]] = static_cast<Element>(p);
    return CanonicalForm{QuandleTable::from_cells_unchecked(n_, best_), std::move(relabel)};
  }

 private:
  static constexpr Element kFree = ~Element{0};
  enum class Cmp { Less, Equal, Greater, Unknown };

  // Compares the determined prefix of row 0 (columns < assigned) with the
  // best table. Unassigned values will receive a label >= assigned.
  Cmp row0_prefix(std::size_t assigned) const {
    if (!have_best_) return Cmp::Unknown;
    const Element x = pi_[0];
    for (std::size_t b = 0; b < assigned; ++b) {
      const Element v = inv_[t_.op(x, pi_[b])];
      const Element best = best_[b];
      if (v == kFree) return best < assigned ? Cmp::Greater : Cmp::Unknown;
      if (v < best) return Cmp::Less;
      if (v > best) return Cmp::Greater;
    }
    return Cmp::Equal;
  }

  void dfs(std::size_t m) {
    if (m == n_) {
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          current_[a * n_ + b] = inv_[t_.op(pi_[a], pi_[b])];
      if (!have_best_ || current_ < best_) {
        best_ = current_;
        best_pi_ = pi_;
        have_best_ = true;
      } else if (current_ == best_) {
        // pi_[p] -> best_pi_[p] is an automorphism
        Permutation g(n_);
        for (std::size_t p = 0; p < n_; ++p) g[pi_[p]] = best_pi_[p];
        automorphisms_.push_back(std::move(g));
      }
      return;
    }
    std::vector<Element> explored;
    for (Element x = 0; x < n_; ++x) {
      if (inv_[x] != kFree) continue;
      if (in_orbit(x, explored, m)) continue;
      pi_[m] = x;
      inv_[x] = static_cast<Element>(m);
      if (row0_prefix(m + 1) != Cmp::Greater) dfs(m + 1);
      inv_[x] = kFree;
      explored.push_back(x);
    }
  }

  // Whether x is the image of an explored sibling under the automorphisms
  // found so far that fix pi_[0..m) pointwise; its subtree then repeats one
  // already searched.
  bool in_orbit(Element x, const std::vector<Element>& explored, std::size_t m) const {
    if (explored.empty()) return false;
    std::vector<const Permutation*> fixing;
    for (const auto& g : automorphisms_) {
      bool fixes = true;
      for (std::size_t p = 0; p < m && fixes; ++p) fixes = g[pi_[p]] == pi_[p];
      if (fixes) fixing.push_back(&g);
    }
    if (fixing.empty()) return false;
    std::vector<bool> seen(n_, false);
    std::vector<Element> queue(explored);
    for (Element e : explored) seen[e] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto* g : fixing) {
        const Element y = (*g)[queue[i]];
        if (y == x) return true;
        if (!seen[y]) {
          seen[y] = true;
          queue.push_back(y);
        }
      }
    return false;
  }

  const QuandleTable& t_;
  std::size_t n_;
  Permutation pi_;   // new label -> old element
  Permutation inv_;  // old element -> new label
  std::vector<Element> best_;
  Permutation best_pi_;
  std::vector<Element> current_;
  std::vector<Permutation> automorphisms_;
  bool have_best_ = false;
};

std::vector<Permutation> permutations_fixing(std::size_t n, Element fixed) {
  std::vector<Permutation> out;
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[fixed] == fixed) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

class ColumnSearch {
 public:
  ColumnSearch(std::size_t n, const std::vector<std::vector<Permutation>>& candidates)
      : n_(n), candidates_(candidates), cols_(n), assigned_(n, false) {}

  // Assigns column j and closes the assignment; returns false (and leaves the
  // trail for undo) on a contradiction.
  bool assign(Element j, const Permutation& sigma, std::vector<Element>& trail) {
    std::vector<Element> queue;
    set(j, sigma, trail, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Element x = queue[qi];
      for (Element k = 0; k < n_; ++k) {
        if (!assigned_[k]) continue;
        if (!derive(k, x, trail, queue) || !derive(x, k, trail, queue)) return false;
      }
    }
    return true;
  }

  void undo(std::vector<Element>& trail) {
    for (Element x : trail) assigned_[x] = false;
    trail.clear();
  }

  void search(const std::function<void(const QuandleTable&)>& visit) {
    Element j = 0;
    while (j < n_ && assigned_[j]) ++j;
    if (j == n_) {
      std::vector<Element> cells(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t c = 0; c < n_; ++c) cells[i * n_ + c] = cols_[c][i];
      visit(QuandleTable::from_cells_unchecked(n_, std::move(cells)));
      return;
    }
    for (const auto& sigma : candidates_[j]) {
      std::vector<Element> trail;
      if (assign(j, sigma, trail)) search(visit);
      undo(trail);
    }
  }

 private:
  void set(Element j, const Permutation& sigma, std::vector<Element>& trail,
           std::vector<Element>& queue) {
    cols_[j] = sigma;
    assigned_[j] = true;
    trail.push_back(j);
    queue.push_back(j);
  }

  // sigma_{sigma_k(j)} must equal sigma_k sigma_j sigma_k^-1.
  bool derive(Element k, Element j, std::vector<Element>& trail, std::vector<Element>& queue) {
    const auto& sk = cols_[k];
    const auto& sj = cols_[j];
    Permutation conj(n_);
    for (Element i = 0; i < n_; ++i) conj[sk[i]] = sk[sj[i]];
    const Element target = sk[j];
    if (assigned_[target]) return cols_[target] == conj;
    set(target, conj, trail, queue);
    return true;
  }

  std::size_t n_;
  const std::vector<std::vector<Permutation>>& candidates_;
  std::vector<Permutation> cols_;
  std::vector<bool> assigned_;
};

std::vector<std::vector<Permutation>> column_candidates(std::size_t n) {
  std::vector<std::vector<Permutation>> c(n);
  for (Element j = 0; j < n; ++j) c[j] = permutations_fixing(n, j);
  return c;
}

}  // namespace

CanonicalForm canonical_form(const QuandleTable& t) { return Canonicalizer(t).run(); }

bool is_canonical(const QuandleTable& t) { return canonical_form(t).table == t; }

std::optional<Permutation> find_isomorphism(const QuandleTable& a, const QuandleTable& b) {
  if (a.order() != b.order()) return std::nullopt;
  auto ca = canonical_form(a);
  auto cb = canonical_form(b);
  if (!(ca.table == cb.table)) return std::nullopt;
  auto back = inverse_permutation(cb.relabel);
  Permutation iso(a.order());
  for (Element x = 0; x < a.order(); ++x) iso[x] = back[ca.relabel[x]];
  return iso;
}

void stream_tables(std::size_t n, const std::function<void(const QuandleTable&)>& visit) {
  if (n == 0) throw Error(ErrorKind::EmptyQuandle, "quandles are non-empty");
  auto candidates = column_candidates(n);
  ColumnSearch search(n, candidates);
  search.search(visit);
}

std::vector<QuandleTable> enumerate_tables(std::size_t n, unsigned jobs) {
  if (n == 0) throw Error(ErrorKind::EmptyQuandle, "quandles are non-empty");
  if (n > kCensusCap) {
    throw Error(ErrorKind::CensusCapExceeded,
                "order " + std::to_string(n) + " exceeds the census cap of " +
                    std::to_string(kCensusCap) + "; use streaming mode");
  }
  const auto candidates = column_candidates(n);
  const auto& firsts = candidates[0];
  std::vector<std::vector<QuandleTable>> slots(firsts.size());
  detail::parallel_for(jobs, firsts.size(), [&](std::size_t i) {
    ColumnSearch search(n, candidates);
    std::vector<Element> trail;
    if (search.assign(0, firsts[i], trail)) {
      search.search([&](const QuandleTable& t) { slots[i].push_back(t); });
    }
  });
  std::vector<QuandleTable> out;
  for (auto& s : slots)
    for (auto& t : s) out.push_back(std::move(t));
  return out;
}

CensusFile census(std::size_t n, unsigned jobs) {
  auto labeled = enumerate_tables(n, jobs);
  std::vector<std::optional<QuandleTable>> canon(labeled.size());
  detail::parallel_for(jobs, labeled.size(),
                       [&](std::size_t i) { canon[i] = canonical_form(labeled[i]).table; });
  std::set<QuandleTable> unique;
  for (auto& c : canon) unique.insert(std::move(*c));
  return CensusFile{n, false, {unique.begin(), unique.end()}};
}

CensusFile labeled_census(std::size_t n, unsigned jobs) {
  auto tables = enumerate_tables(n, jobs);
  std::sort(tables.begin(), tables.end());
  return CensusFile{n, true, std::move(tables)};
}

std::string format_census(const CensusFile& c) {
  std::string out = "census " + std::to_string(c.order) + " " + std::to_string(c.count());
  if (c.labeled) out += " labeled";
  out += "\n";
  for (const auto& t : c.tables) out += "\n" + io::format_qnd(t);
  return out;
}

CensusFile parse_census(std::string_view text) {
  auto lines = io::split_lines(text);
  if (lines.empty()) throw ParseError("empty census file", 1);
  auto header = io::split_ws(lines[0]);
  if ((header.size() != 3 && header.size() != 4) || header[0] != "census" ||
      (header.size() == 4 && header[3] != "labeled")) {
    throw ParseError("expected 'census <n> <count>'", 1);
  }
  const auto n = io::parse_int(header[1], 1);
  const auto count = io::parse_int(header[2], 1);
  if (n <= 0 || count < 0) throw ParseError("census order and count must be positive", 1);

  CensusFile c;
  c.order = static_cast<std::size_t>(n);
  c.labeled = header.size() == 4;
  const std::size_t block = c.order + 1;
  std::size_t i = 1;
  while (i < lines.size()) {
    if (io::split_ws(lines[i]).empty()) {
      ++i;
      continue;
    }
    if (i + block > lines.size()) throw ParseError("truncated census entry", i + 1);
    std::string chunk;
    for (std::size_t k = 0; k < block; ++k) chunk += lines[i + k] + "\n";
    QuandleTable t = [&] {
      try {
        return io::parse_qnd(chunk, i + 1);
      } catch (const ParseError& e) {
        throw Error(ErrorKind::CensusFormat, e.what());
      }
    }();
    if (t.order() != c.order) {
      throw Error(ErrorKind::CensusFormat, "line " + std::to_string(i + 1) + ": entry of order " +
                                               std::to_string(t.order()) + " in a census of order " +
                                               std::to_string(c.order));
    }
    if (!c.labeled && !is_canonical(t)) {
      throw Error(ErrorKind::CensusFormat,
                  "line " + std::to_string(i + 1) + ": entry is not in canonical form");
    }
    if (!c.tables.empty() && !(c.tables.back() < t)) {
      throw Error(ErrorKind::CensusFormat,
                  "line " + std::to_string(i + 1) + ": entries out of canonical order");
    }
    c.tables.push_back(std::move(t));
    i += block;
  }
  if (c.tables.size() != static_cast<std::size_t>(count)) {
    throw Error(ErrorKind::CensusFormat, "header announces " + std::to_string(count) +
                                             " entries, file holds " +
                                             std::to_string(c.tables.size()));
  }
  return c;
}

void store(const CensusFile& c, const std::filesystem::path& path) {
  io::write_atomically(path, format_census(c));
}

CensusFile load(const std::filesystem::path& path) { return parse_census(io::slurp(path)); }

CensusSource::CensusSource(std::optional<std::filesystem::path> dir, unsigned jobs)
    : dir_(std::move(dir)), jobs_(jobs) {}

CensusSource CensusSource::from_environment(unsigned jobs) {
  if (const char* env = std::getenv("QUANDLE_CENSUS_DIR"); env && *env) {
    return CensusSource(std::filesystem::path(env), jobs);
  }
  return CensusSource(std::nullopt, jobs);
}

const CensusFile& CensusSource::get(std::size_t n) {
  if (n == 0 || n > kCensusCap) {
    throw Error(ErrorKind::CensusCapExceeded,
                "census of order " + std::to_string(n) + " is unavailable (cap " +
                    std::to_string(kCensusCap) + ")");
  }
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  std::optional<CensusFile> loaded;
  if (dir_) {
    auto path = *dir_ / ("census_" + std::to_string(n) + ".txt");
    if (std::filesystem::exists(path)) {
      loaded = load(path);
      if (loaded->labeled || loaded->order != n) {
        throw Error(ErrorKind::CensusFormat,
                    path.string() + " is not the order " + std::to_string(n) + " census");
      }
    } else {
      loaded = census(n, jobs_);
      std::error_code ec;
      std::filesystem::create_directories(*dir_, ec);
      if (!ec) store(*loaded, path);
    }
  } else {
    loaded = census(n, jobs_);
  }
  return cache_.emplace(n, std::move(*loaded)).first->second;
}

}  // namespace quandle
