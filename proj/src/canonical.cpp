#include "minihyper/canonical.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace minihyper {

namespace {

std::uint32_t hash_sorted(std::vector<Mult>& v) {
  std::sort(v.begin(), v.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Mult x : v) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::uint32_t>(h ^ (h >> 32));
}

// Addition tables of packed vectors, shared per (r,q) for small spaces.
std::shared_ptr<const std::vector<PackedVector>> add_table(const Geometry& g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<PackedVector>>> cache;
  const std::uint32_t nv = g.num_vectors();
  if (nv > 1024) return nullptr;
  std::lock_guard lock(mu);
  auto& slot = cache[{g.r(), g.q()}];
  if (!slot) {
    auto t = std::make_shared<std::vector<PackedVector>>(static_cast<std::size_t>(nv) * nv);
    for (std::uint32_t a = 0; a < nv; ++a)
      for (std::uint32_t b = 0; b < nv; ++b) (*t)[static_cast<std::size_t>(a) * nv + b] = g.vec_add(a, b);
    slot = std::move(t);
  }
  return slot;
}

struct Tally {
  std::int64_t count = 0;
  int version = -1;
  void add(std::int64_t c, int v) {
    if (v > version) {
      version = v;
      count = c;
    } else if (v == version) {
      count += c;
    }
  }
};

struct Generator {
  std::vector<PackedVector> image;  // image of every packed vector
};

class Canon {
 public:
  explicit Canon(const Multiset& k)
      : g_(k.geometry()), q_(g_.q()), r_(g_.r()), nv_(g_.num_vectors()), key_(point_keys(k)), add_(add_table(g_)) {
    cols_.assign(r_ + 1, 0);
    spans_.assign(r_ + 2, {});
    spans_[0] = {0};
    y_.assign(g_.num_points(), 0);
    block_start_.resize(r_ + 2);
    std::int64_t s = 0, b = 1;
    for (int j = 0; j <= r_ + 1; ++j) {
      block_start_[j] = s;
      s += b;
      b *= q_;
    }
  }

  void run() { root_ = node(0, true).tally; }

  std::int64_t order() const { return root_.version == version_ ? root_.count : 0; }
  const std::vector<std::uint64_t>& best() const { return best_; }
  SquareMatrix best_matrix() const { return matrix_of(best_cols_); }

 private:
  struct Outcome {
    Tally tally;
    int abandon_to = -1;
  };
  struct Explored {
    PackedVector u;
    Tally tally;
  };

  PackedVector add(PackedVector a, PackedVector b) const {
    return add_ ? (*add_)[static_cast<std::size_t>(a) * nv_ + b] : g_.vec_add(a, b);
  }

  SquareMatrix matrix_of(const std::vector<PackedVector>& cols) const {
    SquareMatrix m(r_ + 1);
    std::vector<int> c(r_ + 1);
    for (int l = 0; l <= r_; ++l) {
      g_.unpack(cols[l], c);
      for (int i = 0; i <= r_; ++i) m(i, r_ - l) = c[i];
    }
    return m;
  }

  void add_generator() {
    const auto& f = g_.field();
    const SquareMatrix m = multiply(matrix_of(cols_), inverse(matrix_of(best_cols_), f), f);
    Generator gen;
    gen.image.resize(nv_);
    std::vector<int> c(r_ + 1), d(r_ + 1);
    for (std::uint32_t x = 0; x < nv_; ++x) {
      g_.unpack(x, c);
      for (int i = 0; i <= r_; ++i) {
        int s = 0;
        for (int j = 0; j <= r_; ++j) s = f.add(s, f.mul(m(i, j), c[j]));
        d[i] = s;
      }
      gen.image[x] = g_.pack(d);
    }
    gens_.push_back(std::move(gen));
  }

  // Generators fixing cols_[0..j) up to one common scalar, with the inverse
  // of that scalar.
  std::vector<std::pair<int, int>> path_fixers(int j) const {
    std::vector<std::pair<int, int>> out;
    const auto& f = g_.field();
    for (int gi = 0; gi < static_cast<int>(gens_.size()); ++gi) {
      const auto& im = gens_[gi].image;
      if (j == 0) {
        out.emplace_back(gi, 1);
        continue;
      }
      // cols_[0] is normalized, so its image's leading coordinate is the scalar.
      const PackedVector i0 = im[cols_[0]];
      if (g_.point_of(i0) != g_.point_of(cols_[0])) continue;
      const int lam = g_.leading(i0);
      bool ok = true;
      for (int l = 1; l < j && ok; ++l) ok = im[cols_[l]] == g_.vec_scale(lam, cols_[l]);
      if (ok) out.emplace_back(gi, f.inv(lam));
    }
    return out;
  }

  PackedVector image_of(int gi, int inv_lam, PackedVector u, int j) const {
    const PackedVector x = gens_[gi].image[u];
    if (j == 0) return g_.packed(g_.point_of(x));
    return g_.vec_scale(inv_lam, x);
  }

  Outcome node(int j, bool greater) {
    if (j == r_ + 1) return leaf(greater);

    const std::int64_t bs = block_start_[j];
    const std::size_t bl = spans_[j].size();
    const auto& span = spans_[j];

    std::vector<std::uint8_t> in_span;
    if (j > 0) {
      in_span.assign(nv_, 0);
      for (PackedVector x : span) in_span[x] = 1;
    }

    // Candidate columns whose block of y is lexicographically largest.
    std::vector<std::uint64_t> maxblk, cur(bl);
    bool from_best = false;
    if (!greater) {
      maxblk.assign(best_.begin() + bs, best_.begin() + bs + static_cast<std::ptrdiff_t>(bl));
      from_best = true;
    }
    std::vector<PackedVector> ties;
    auto consider = [&](PackedVector u) {
      int state = maxblk.empty() ? 1 : 0;  // 0 equal so far, 1 larger, -1 smaller
      for (std::size_t t = 0; t < bl; ++t) {
        const std::uint64_t val = key_[g_.point_of(add(u, span[t]))];
        cur[t] = val;
        if (state == 0) {
          if (val < maxblk[t]) {
            state = -1;
            break;
          }
          if (val > maxblk[t]) state = 1;
        }
      }
      if (state < 0) return;
      if (state > 0) {
        maxblk = cur;
        from_best = false;
        ties.clear();
      }
      ties.push_back(u);
    };
    if (j == 0) {
      for (int p = 0; p < g_.num_points(); ++p) consider(g_.packed(p));
    } else {
      for (PackedVector u = 1; u < nv_; ++u)
        if (!in_span[u]) consider(u);
    }
    if (ties.empty()) return {};
    greater = !from_best;

    const int entry_version = version_;
    Tally tally;
    std::vector<Explored> explored;
    std::unordered_map<PackedVector, int> rep;
    std::size_t closed_gens = 0, closed_explored = 0;

    for (PackedVector u : ties) {
      if (version_ != entry_version) greater = false;  // the best now lies below this node
      if (!gens_.empty() && !explored.empty()) {
        if (closed_gens != gens_.size() || closed_explored != explored.size()) {
          close_orbits(j, explored, rep);
          closed_gens = gens_.size();
          closed_explored = explored.size();
        }
        auto it = rep.find(u);
        if (it != rep.end()) {
          const Tally& t = explored[it->second].tally;
          tally.add(t.count, t.version);
          continue;
        }
      }

      cols_[j] = u;
      auto& next = spans_[j + 1];
      next.resize(bl * q_);
      for (int a = 0; a < q_; ++a) {
        const PackedVector au = g_.vec_scale(a, u);
        for (std::size_t t = 0; t < bl; ++t) next[a * bl + t] = add(au, span[t]);
      }
      for (std::size_t t = 0; t < bl; ++t) y_[bs + t] = key_[g_.point_of(add(u, span[t]))];

      Outcome o = node(j + 1, greater);
      if (o.abandon_to >= 0 && o.abandon_to < j) return o;
      Explored e{u, o.tally};
      if (o.abandon_to == j) {
        // u is the image of the best path's child under an automorphism
        // fixing the path, so its subtree counts the same.
        for (const auto& x : explored)
          if (x.u == best_cols_[j]) e.tally = x.tally;
      }
      tally.add(e.tally.count, e.tally.version);
      explored.push_back(e);
    }
    return {tally, -1};
  }

  void close_orbits(int j, const std::vector<Explored>& explored, std::unordered_map<PackedVector, int>& rep) const {
    rep.clear();
    const auto fixers = path_fixers(j);
    for (int i = 0; i < static_cast<int>(explored.size()); ++i) {
      if (rep.count(explored[i].u)) continue;
      std::vector<PackedVector> stack{explored[i].u};
      rep[explored[i].u] = i;
      while (!stack.empty()) {
        const PackedVector x = stack.back();
        stack.pop_back();
        for (auto [gi, il] : fixers) {
          const PackedVector y = image_of(gi, il, x, j);
          if (rep.emplace(y, i).second) stack.push_back(y);
        }
      }
    }
  }

  Outcome leaf(bool greater) {
    if (greater) {
      best_ = y_;
      best_cols_ = cols_;
      ++version_;
      return {Tally{1, version_}, -1};
    }
    add_generator();
    int d = 0;
    while (cols_[d] == best_cols_[d]) ++d;
    return {Tally{}, d};
  }

  const Geometry& g_;
  int q_, r_;
  std::uint32_t nv_;
  std::vector<std::uint64_t> key_;
  std::shared_ptr<const std::vector<PackedVector>> add_;

  std::vector<PackedVector> cols_;
  std::vector<std::vector<PackedVector>> spans_;
  std::vector<std::uint64_t> y_;
  std::vector<std::int64_t> block_start_;

  std::vector<std::uint64_t> best_;
  std::vector<PackedVector> best_cols_;
  int version_ = 0;
  Tally root_;
  std::vector<Generator> gens_;
};

}  // namespace

std::vector<std::uint64_t> point_keys(const Multiset& k) {
  const auto& g = k.geometry();
  const auto hm = hyperplane_multiplicities(k);
  std::vector<std::uint64_t> keys(g.num_points());
  std::vector<Mult> through;
  for (int p = 0; p < g.num_points(); ++p) {
    if (k[p] >= (Mult{1} << 31)) throw std::overflow_error("point multiplicity too large for canonical labelling");
    through.clear();
    for (int h : g.hyperplanes_through(p)) through.push_back(hm[h]);
    keys[p] = (static_cast<std::uint64_t>(k[p]) << 32) | hash_sorted(through);
  }
  return keys;
}

std::string make_certificate(int r, int q, std::span<const Mult> canonical) {
  std::string s = std::to_string(r) + "," + std::to_string(q) + ":";
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(canonical[i]);
  }
  return s;
}

CanonicalForm canonical_form(const Multiset& k) {
  const auto& g = k.geometry();
  Canon c(k);
  c.run();
  std::vector<Mult> mult(g.num_points());
  for (int i = 0; i < g.num_points(); ++i) mult[i] = static_cast<Mult>(c.best()[i] >> 32);
  CanonicalForm out{Multiset(k.geometry_ptr(), mult), c.order(), make_certificate(g.r(), g.q(), mult),
                    c.best_matrix()};
  return out;
}

bool equivalent(const Multiset& a, const Multiset& b) {
  if (a.geometry().r() != b.geometry().r() || a.geometry().q() != b.geometry().q()) return false;
  if (a.cardinality() != b.cardinality()) return false;
  return canonical_form(a).certificate == canonical_form(b).certificate;
}

}  // namespace minihyper
