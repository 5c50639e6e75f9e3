#include <algorithm>
#include <bit>
#include <numeric>

#include "cfree/errors.hpp"
#include "cfree/indep.hpp"

namespace cfree {

bool is_independent(const Adjacency& graph, std::span<const Vertex> set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || adjacent(graph, set[i], set[j])) return false;
    }
  }
  return true;
}

namespace {

class LocalSearch {
 public:
  LocalSearch(const Adjacency& g, std::span<const std::uint8_t> alive, Seed seed)
      : g_(g), in_(g.size(), 0), tight_(g.size(), 0), rng_(seed) {
    for (Vertex v = 0; v < g.size(); ++v) {
      if (alive.empty() || alive[v]) vertices_.push_back(v);
    }
  }

  std::vector<Vertex> run(std::uint64_t target, std::uint64_t budget) {
    greedy();
    improve();
    std::vector<Vertex> best = solution();
    for (std::uint64_t it = 0; it < budget && best.size() < target; ++it) {
      perturb();
      improve();
      if (size_ >= best.size()) {
        if (size_ > best.size()) best = solution();
      } else if (size_ + 1 < best.size()) {
        restore(best);
      }
    }
    std::sort(best.begin(), best.end());
    if (best.size() > target) best.resize(target);
    return best;
  }

 private:
  void insert(Vertex v) {
    in_[v] = 1;
    ++size_;
    for (Vertex u : g_[v]) ++tight_[u];
  }
  void remove(Vertex v) {
    in_[v] = 0;
    --size_;
    for (Vertex u : g_[v]) --tight_[u];
  }
  bool is_free(Vertex v) const { return !in_[v] && tight_[v] == 0; }

  void greedy() {
    std::vector<Vertex> order = vertices_;
    rng_.shuffle(std::span(order));
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g_[a].size() < g_[b].size(); });
    for (Vertex v : order) {
      if (is_free(v)) insert(v);
    }
  }

  void fill_free() {
    std::vector<Vertex> order = vertices_;
    rng_.shuffle(std::span(order));
    for (Vertex v : order) {
      if (is_free(v)) insert(v);
    }
  }

  // (1,2)-swaps until none applies.
  void improve() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Vertex> sol = solution();
      rng_.shuffle(std::span(sol));
      for (Vertex v : sol) {
        if (!in_[v]) continue;
        std::vector<Vertex> one_tight;
        for (Vertex u : g_[v]) {
          if (!in_[u] && tight_[u] == 1 && is_alive(u)) one_tight.push_back(u);
        }
        bool swapped = false;
        for (std::size_t i = 0; i < one_tight.size() && !swapped; ++i) {
          for (std::size_t j = i + 1; j < one_tight.size() && !swapped; ++j) {
            if (adjacent(g_, one_tight[i], one_tight[j])) continue;
            remove(v);
            insert(one_tight[i]);
            insert(one_tight[j]);
            swapped = true;
          }
        }
        if (swapped) {
          changed = true;
          fill_free();
        }
      }
    }
  }

  void perturb() {
    if (vertices_.empty()) return;
    const Vertex x = vertices_[rng_.below(vertices_.size())];
    if (in_[x]) return;
    for (Vertex u : g_[x]) {
      if (in_[u]) remove(u);
    }
    insert(x);
    fill_free();
  }

  void restore(const std::vector<Vertex>& best) {
    for (Vertex v : vertices_) {
      if (in_[v]) remove(v);
    }
    for (Vertex v : best) insert(v);
  }

  bool is_alive(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

  std::vector<Vertex> solution() const {
    std::vector<Vertex> out;
    for (Vertex v : vertices_) {
      if (in_[v]) out.push_back(v);
    }
    return out;
  }

  const Adjacency& g_;
  std::vector<Vertex> vertices_;
  std::vector<std::uint8_t> in_;
  std::vector<std::uint32_t> tight_;
  std::size_t size_ = 0;
  Rng rng_;
};

}  // namespace

std::vector<Vertex> independent_set_search(const Adjacency& graph, std::span<const std::uint8_t> alive,
                                           std::uint64_t target, std::uint64_t budget, Seed seed) {
  std::vector<Vertex> best = LocalSearch(graph, alive, seed).run(target, budget);
  if (!is_independent(graph, best)) throw std::logic_error("independent_set_search produced a dependent set");
  return best;
}

std::vector<Vertex> independent_set_search(const ColoredGraph& graph, std::uint64_t target, std::uint64_t budget,
                                           Seed seed) {
  return independent_set_search(graph.union_adjacency(), graph.alive_mask(), target, budget, seed);
}

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return words_.size() * 64;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  Bitset minus(const Bitset& o) const {
    Bitset out = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~o.words_[w];
    return out;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class MaxClique {
 public:
  MaxClique(std::vector<Bitset> adj, std::size_t n) : adj_(std::move(adj)), n_(n) {}

  std::uint32_t solve(const Bitset& candidates) {
    expand(candidates, 0);
    return best_;
  }

 private:
  void expand(Bitset p, std::uint32_t size) {
    std::vector<std::size_t> order;
    std::vector<std::uint32_t> color;
    Bitset uncolored = p;
    std::uint32_t c = 0;
    while (uncolored.any()) {
      ++c;
      Bitset q = uncolored;
      while (q.any()) {
        const std::size_t v = q.first();
        q.reset(v);
        q = q.minus(adj_[v]);
        uncolored.reset(v);
        order.push_back(v);
        color.push_back(c);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (size + color[i] <= best_) return;
      const std::size_t v = order[i];
      Bitset next = p;
      next &= adj_[v];
      if (!next.any()) best_ = std::max(best_, size + 1);
      else expand(next, size + 1);
      p.reset(v);
    }
  }

  std::vector<Bitset> adj_;
  std::size_t n_;
  std::uint32_t best_ = 0;
};

}  // namespace

std::uint32_t alpha_exact(const Adjacency& graph, std::span<const std::uint8_t> alive, std::uint32_t cap) {
  const std::size_t n = graph.size();
  if (n > cap) throw ParameterError("alpha_exact: n = " + std::to_string(n) + " exceeds the cap");
  // Complement adjacency.
  std::vector<Bitset> comp(n, Bitset(n));
  Bitset candidates(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive.empty() && !alive[v]) continue;
    candidates.set(v);
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && !adjacent(graph, static_cast<Vertex>(v), static_cast<Vertex>(u))) comp[v].set(u);
    }
  }
  for (std::size_t v = 0; v < n; ++v) comp[v] &= candidates;
  return MaxClique(std::move(comp), n).solve(candidates);
}

std::uint32_t alpha_exact(const ColoredGraph& graph, std::uint32_t cap) {
  return alpha_exact(graph.union_adjacency(), graph.alive_mask(), cap);
}

}  // namespace cfree
