#include "pzeta/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "pzeta/error.hpp"

namespace pzeta {

PosetGraph poset_graph(const Lattice& lattice) {
  PosetGraph g;
  g.n = lattice.size();
  g.up.resize(g.n);
  g.down.resize(g.n);
  g.leq.assign(g.n, std::vector<bool>(g.n, false));
  for (Element x = 0; x < g.n; ++x) {
    auto u = lattice.upper_covers(x);
    auto d = lattice.lower_covers(x);
    g.up[x].assign(u.begin(), u.end());
    g.down[x].assign(d.begin(), d.end());
    for (Element y = 0; y < g.n; ++y) g.leq[x][y] = lattice.leq(x, y);
  }
  return g;
}

PosetGraph poset_graph_from_order(std::size_t n, const std::vector<std::vector<bool>>& leq) {
  PosetGraph g;
  g.n = n;
  g.leq = leq;
  g.up.resize(n);
  g.down.resize(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x == y || !leq[x][y]) continue;
      bool cover = true;
      for (std::uint32_t z = 0; z < n && cover; ++z)
        if (z != x && z != y && leq[x][z] && leq[z][y]) cover = false;
      if (cover) {
        g.up[x].push_back(y);
        g.down[y].push_back(x);
      }
    }
  return g;
}

namespace {

using Colors = std::vector<std::uint32_t>;

// Replaces arbitrary sortable keys by dense ranks 0..k-1, preserving order.
template <typename Key>
std::size_t rerank(const std::vector<Key>& keys, Colors& out) {
  std::vector<std::uint32_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  out.assign(keys.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0 && keys[idx[i - 1]] < keys[idx[i]]) ++next;
    out[idx[i]] = next;
  }
  return keys.empty() ? 0 : next + 1;
}

class Canonizer {
 public:
  Canonizer(const PosetGraph& g, std::span<const std::uint32_t> colors) : g_(g), colors_(colors) {}

  CanonicalLabeling run() {
    const std::size_t n = g_.n;
    std::vector<std::size_t> height(n, 0);
    // Heights via repeated relaxation over covers in a linear extension.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> below(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) below[x] += g_.leq[y][x] ? 1 : 0;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return below[a] < below[b]; });
    for (auto x : order)
      for (auto y : g_.up[x]) height[y] = std::max(height[y], height[x] + 1);

    std::vector<std::pair<std::size_t, std::uint32_t>> keys(n);
    for (std::size_t v = 0; v < n; ++v) keys[v] = {height[v], colors_.empty() ? 0u : colors_[v]};
    Colors start;
    rerank(keys, start);
    refine(start);
    search(start, 0, true);
    CanonicalLabeling out;
    out.label = best_label_;
    out.code = best_code_;
    return out;
  }

 private:
  void refine(Colors& col) const {
    const std::size_t n = g_.n;
    std::size_t count = *std::max_element(col.begin(), col.end()) + 1;
    using Sig = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
    std::vector<Sig> sig(n);
    while (true) {
      for (std::size_t v = 0; v < n; ++v) {
        auto& [c, u, d] = sig[v];
        c = col[v];
        u.clear();
        d.clear();
        for (auto w : g_.up[v]) u.push_back(col[w]);
        for (auto w : g_.down[v]) d.push_back(col[w]);
        std::sort(u.begin(), u.end());
        std::sort(d.begin(), d.end());
      }
      const std::size_t next = rerank(sig, col);
      if (next == count) return;
      count = next;
    }
  }

  Colors individualize(const Colors& col, std::uint32_t v) const {
    std::vector<std::uint64_t> keys(col.size());
    for (std::size_t u = 0; u < col.size(); ++u)
      keys[u] = 2 * static_cast<std::uint64_t>(col[u]) + ((col[u] == col[v] && u != v) ? 1 : 0);
    Colors out;
    rerank(keys, out);
    refine(out);
    return out;
  }

  std::vector<std::uint64_t> encode(const std::vector<std::uint32_t>& label) const {
    const std::size_t n = g_.n;
    std::vector<std::uint32_t> inv(n);
    for (std::size_t v = 0; v < n; ++v) inv[label[v]] = static_cast<std::uint32_t>(v);
    const std::size_t bits = n * (n - 1) / 2;
    std::vector<std::uint64_t> code((bits + 63) / 64, 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j, ++k)
        if (g_.leq[inv[i]][inv[j]]) code[k / 64] |= std::uint64_t{1} << (63 - k % 64);
    if (!colors_.empty())
      for (std::size_t i = 0; i < n; ++i) code.push_back(colors_[inv[i]]);
    return code;
  }

  // Returns the level the caller must resume at, or nullopt to continue.
  std::optional<std::size_t> search(const Colors& col, std::size_t level, bool on_first) {
    const std::size_t n = g_.n;
    std::vector<std::size_t> cell_size(n, 0);
    for (auto c : col) ++cell_size[c];
    std::optional<std::uint32_t> target;
    for (std::uint32_t c = 0; c < n; ++c)
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    if (!target) return leaf(col);

    std::vector<std::uint32_t> members;
    for (std::uint32_t v = 0; v < n; ++v)
      if (col[v] == *target) members.push_back(v);

    std::vector<std::uint32_t> done;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto v = members[i];
      if (on_first && i > 0 && same_orbit_as_any(v, done, level)) continue;
      path_.push_back(v);
      if (on_first && i == 0) first_path_.push_back(v);
      auto jump = search(individualize(col, v), level + 1, on_first && i == 0);
      path_.pop_back();
      done.push_back(v);
      if (jump && *jump < level) return jump;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> leaf(const Colors& col) {
    auto code = encode(col);
    if (!have_first_) {
      have_first_ = true;
      first_label_ = col;
      first_code_ = code;
      best_label_ = col;
      best_code_ = std::move(code);
      return std::nullopt;
    }
    if (code == first_code_) {
      const std::size_t n = g_.n;
      std::vector<std::uint32_t> inv(n), gamma(n);
      for (std::size_t v = 0; v < n; ++v) inv[col[v]] = static_cast<std::uint32_t>(v);
      for (std::size_t v = 0; v < n; ++v) gamma[v] = inv[first_label_[v]];
      automorphisms_.push_back(std::move(gamma));
      std::size_t diverge = 0;
      while (diverge < path_.size() && diverge < first_path_.size() && path_[diverge] == first_path_[diverge])
        ++diverge;
      return diverge;
    }
    if (code > best_code_) {
      best_code_ = std::move(code);
      best_label_ = col;
    }
    return std::nullopt;
  }

  bool same_orbit_as_any(std::uint32_t v, const std::vector<std::uint32_t>& done, std::size_t level) const {
    const std::size_t n = g_.n;
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes = true;
      for (std::size_t i = 0; i < level && fixes; ++i) fixes = gamma[first_path_[i]] == first_path_[i];
      if (!fixes) continue;
      for (std::uint32_t x = 0; x < n; ++x) parent[find(x)] = find(gamma[x]);
    }
    for (auto u : done)
      if (find(u) == find(v)) return true;
    return false;
  }

  const PosetGraph& g_;
  std::span<const std::uint32_t> colors_;
  bool have_first_ = false;
  Colors first_label_, best_label_;
  std::vector<std::uint64_t> first_code_, best_code_;
  std::vector<std::uint32_t> path_, first_path_;
  std::vector<std::vector<std::uint32_t>> automorphisms_;
};

}  // namespace

CanonicalLabeling canonical_labeling(const PosetGraph& poset, std::span<const std::uint32_t> colors) {
  if (poset.n == 0) return {};
  return Canonizer(poset, colors).run();
}

std::string order_bits_hex(std::size_t n, std::span<const std::uint64_t> code) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t bits = n * (n - 1) / 2;
  const std::size_t nibbles = (bits + 3) / 4;
  std::string out;
  out.reserve(nibbles);
  for (std::size_t i = 0; i < nibbles; ++i) {
    const std::size_t bit = i * 4;
    const std::uint64_t word = code[bit / 64];
    out.push_back(kDigits[(word >> (60 - bit % 64)) & 0xF]);
  }
  return out;
}

CanonicalForm canonical_form(const PosetGraph& poset) {
  auto lab = canonical_labeling(poset);
  return {poset.n, order_bits_hex(poset.n, lab.code)};
}

CanonicalForm canonical_form(const Lattice& lattice) { return canonical_form(poset_graph(lattice)); }

bool is_isomorphic(const Lattice& a, const Lattice& b) {
  if (a.size() != b.size() || a.covers().size() != b.covers().size()) return false;
  return canonical_form(a) == canonical_form(b);
}

Lattice lattice_from_canonical(const CanonicalForm& form, const LatticeOptions& options) {
  const std::size_t n = form.n;
  const std::size_t bits = n * (n - 1) / 2;
  if (form.hex.size() != (bits + 3) / 4) fail(ErrorCode::ParseError, "canonical hex has wrong length for n");
  auto bit_at = [&](std::size_t k) {
    const char c = form.hex[k / 4];
    int v = (c >= '0' && c <= '9') ? c - '0' : (c >= 'a' && c <= 'f') ? c - 'a' + 10 : -1;
    if (v < 0) fail(ErrorCode::ParseError, "bad hex digit in canonical form");
    return ((v >> (3 - k % 4)) & 1) != 0;
  };
  std::vector<Cover> relation;
  std::size_t k = 0;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j, ++k)
      if (bit_at(k)) relation.emplace_back(i, j);
  return lattice_from_covers(n, relation, options);
}

}  // namespace pzeta
