#include "minihyper/classifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "minihyper/theorems.hpp"

namespace minihyper {

namespace {

using json = nlohmann::json;

struct Problem {
  std::shared_ptr<const Geometry> g;
  Mult n, w, cap;
  Mode mode;
  int npts, nhyp;
  // Minihyper mode: flats of dimension < r-1 with a positive lower bound.
  std::vector<Mult> flat_bound;
  std::vector<std::vector<int>> flat_points;
  std::vector<std::vector<int>> flats_through;  // per point
  std::vector<PackedVector> add;                // packed-vector addition table (may be empty)
  std::vector<std::int64_t> block_start;
};

Problem make_problem(int r, int q, Mult n, Mult w, Mode mode, Mult cap) {
  Problem P;
  P.g = Geometry::shared(r, q);
  P.n = n;
  P.w = w;
  P.cap = cap;
  P.mode = mode;
  P.npts = P.g->num_points();
  P.nhyp = P.g->num_hyperplanes();
  P.flats_through.resize(P.npts);
  if (mode == Mode::minihyper) {
    for (int s = 0; s + 1 < r; ++s) {
      const Mult b = eq1_bound(n, w, r, q, s);
      if (b <= 0) continue;
      if (P.g->num_flats(s) > 200000) continue;
      for (const auto& f : P.g->flats(s)) {
        const int id = static_cast<int>(P.flat_bound.size());
        P.flat_bound.push_back(b);
        P.flat_points.push_back(f.points);
        for (int p : f.points) P.flats_through[p].push_back(id);
      }
    }
  }
  const std::uint32_t nv = P.g->num_vectors();
  if (nv <= 4096) {
    P.add.resize(static_cast<std::size_t>(nv) * nv);
    for (std::uint32_t a = 0; a < nv; ++a)
      for (std::uint32_t b = 0; b < nv; ++b) P.add[static_cast<std::size_t>(a) * nv + b] = P.g->vec_add(a, b);
  }
  std::int64_t s = 0, b = 1;
  for (int j = 0; j <= r + 1; ++j) {
    P.block_start.push_back(s);
    s += b;
    b *= q;
  }
  return P;
}

struct Shared {
  std::atomic<std::int64_t> nodes{0};
  std::int64_t budget = 0;
  std::atomic<bool> stop{false};
};

class Searcher {
 public:
  Searcher(const Problem& P, Shared& sh, std::int64_t sym_budget)
      : P_(P), g_(*P.g), sh_(sh), sym_budget_(sym_budget) {
    x_.assign(P.npts, 0);
    A_.assign(P.nhyp, 0);
    U_.assign(P.nhyp, static_cast<int>(v(g_.r(), g_.q())));
    FA_.assign(P.flat_bound.size(), 0);
    FU_.resize(P.flat_bound.size());
    for (std::size_t f = 0; f < FU_.size(); ++f) FU_[f] = static_cast<int>(P.flat_points[f].size());
    rem_ = P.n;
    cols_.assign(g_.r() + 1, 0);
    spans_.assign(g_.r() + 2, {});
    spans_[0] = {0};
  }

  SearchStats stats;
  std::map<std::string, CanonicalForm> found;

  void assign(int p, Mult m) {
    x_[p] = m;
    rem_ -= m;
    for (int h : g_.hyperplanes_through(p)) {
      A_[h] += m;
      --U_[h];
    }
    for (int f : P_.flats_through[p]) {
      FA_[f] += m;
      --FU_[f];
    }
    k_ = p + 1;
  }

  void unassign(int p) {
    const Mult m = x_[p];
    x_[p] = 0;
    rem_ += m;
    for (int h : g_.hyperplanes_through(p)) {
      A_[h] -= m;
      ++U_[h];
    }
    for (int f : P_.flats_through[p]) {
      FA_[f] -= m;
      ++FU_[f];
    }
    k_ = p;
  }

  // Enumerates the prefixes at `depth`, applying the same cuts as the search.
  void prefixes(int depth, std::vector<std::vector<Mult>>& out) {
    if (k_ == depth || rem_ == 0 || k_ == P_.npts) {
      out.emplace_back(x_.begin(), x_.begin() + k_);
      return;
    }
    for_children([&] { prefixes(depth, out); });
  }

  // Runs the subtree below a prefix; false when stopped by the budget.
  bool run(const std::vector<Mult>& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) assign(static_cast<int>(i), prefix[i]);
    dfs();
    for (int i = static_cast<int>(prefix.size()) - 1; i >= 0; --i) unassign(i);
    return !sh_.stop.load(std::memory_order_relaxed);
  }

 private:
  Mult cap_eff() const { return k_ == 0 ? P_.cap : std::min(P_.cap, x_[0]); }

  template <class F>
  void for_children(F&& recurse) {
    const int p = k_;
    const Mult hi = std::min(cap_eff(), rem_);
    for (Mult m = hi; m >= 0; --m) {
      if (sh_.stop.load(std::memory_order_relaxed)) return;
      assign(p, m);
      if (!feasible()) {
        ++stats.prunes;
      } else if (dominated()) {
        ++stats.symmetry_prunes;
      } else {
        recurse();
      }
      unassign(p);
    }
  }

  void dfs() {
    ++stats.nodes;
    const std::int64_t total = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (sh_.budget > 0 && total > sh_.budget) {
      sh_.stop.store(true);
      return;
    }
    if (rem_ == 0 || k_ == P_.npts) {
      leaf();
      return;
    }
    for_children([&] { dfs(); });
  }

  bool feasible() const {
    const Mult ce = cap_eff();
    const Mult free_pts = P_.npts - k_;
    if (rem_ > ce * free_pts) return false;
    if (P_.mode == Mode::arc) {
      for (int h = 0; h < P_.nhyp; ++h) {
        if (A_[h] > P_.w) return false;
        if (rem_ > (P_.w - A_[h]) + ce * (free_pts - U_[h])) return false;
      }
      return true;
    }
    Mult sumd = 0;
    for (int h = 0; h < P_.nhyp; ++h) {
      const Mult d = P_.w - A_[h];
      if (d <= 0) continue;
      if (d > rem_ || d > ce * U_[h]) return false;
      sumd += d;
    }
    for (std::size_t f = 0; f < FA_.size(); ++f) {
      const Mult d = P_.flat_bound[f] - FA_[f];
      if (d > 0 && (d > rem_ || d > ce * FU_[f])) return false;
    }
    if (sumd == 0) return true;
    // Each unit placed at p lowers the total deficit by at most the number of
    // deficient hyperplanes through p.
    Mult cover = 0;
    for (int p = k_; p < P_.npts; ++p) {
      Mult c = 0;
      for (int h : g_.hyperplanes_through(p)) c += A_[h] < P_.w;
      cover = std::max(cover, c);
    }
    return sumd <= rem_ * cover;
  }

  void leaf() {
    // Unassigned points are zero from here on.
    Mult extreme = A_[0];
    for (int h = 1; h < P_.nhyp; ++h) extreme = P_.mode == Mode::arc ? std::max(extreme, A_[h]) : std::min(extreme, A_[h]);
    if (extreme != P_.w) return;
    const int saved_k = k_;
    k_ = P_.npts;
    const bool dom = dominated();
    k_ = saved_k;
    if (dom) {
      ++stats.symmetry_prunes;
      return;
    }
    ++stats.leaves;
    CanonicalForm cf = canonical_form(Multiset(P_.g, x_));
    found.emplace(cf.certificate, std::move(cf));
  }

  PackedVector vadd(PackedVector a, PackedVector b) const {
    return P_.add.empty() ? g_.vec_add(a, b) : P_.add[static_cast<std::size_t>(a) * g_.num_vectors() + b];
  }

  // Whether some collineation A gives x o A lexicographically above x on
  // positions where both sides are already known. A bounded search: "false"
  // may just mean the budget ran out.
  bool dominated() {
    sym_nodes_ = 0;
    return dom_level(0);
  }

  bool dom_level(int j) {
    const int r = g_.r();
    if (j == r + 1) return false;
    const std::int64_t bs = P_.block_start[j];
    if (bs >= k_) return false;
    const auto& span = spans_[j];
    const std::size_t bl = span.size();
    const std::uint32_t nv = g_.num_vectors();

    auto try_candidate = [&](PackedVector u) -> int {  // 1 dominated, 0 descend, -1 skip
      for (std::size_t t = 0; t < bl; ++t) {
        const std::int64_t i = bs + static_cast<std::int64_t>(t);
        if (i >= k_) return -1;
        const int idx = g_.point_of(vadd(u, span[t]));
        if (idx >= k_) return -1;
        if (x_[idx] > x_[i]) return 1;
        if (x_[idx] < x_[i]) return -1;
      }
      return 0;
    };
    auto descend = [&](PackedVector u) {
      cols_[j] = u;
      auto& next = spans_[j + 1];
      next.resize(bl * g_.q());
      for (int a = 0; a < g_.q(); ++a) {
        const PackedVector au = g_.vec_scale(a, u);
        for (std::size_t t = 0; t < bl; ++t) next[a * bl + t] = vadd(au, span[t]);
      }
      return dom_level(j + 1);
    };

    if (j == 0) {
      for (int p = 0; p < k_; ++p) {
        if (++sym_nodes_ > sym_budget_) return false;
        const int res = try_candidate(g_.packed(p));
        if (res == 1) return true;
        if (res == 0 && descend(g_.packed(p))) return true;
      }
      return false;
    }
    std::vector<std::uint8_t>& in_span = in_span_buf(j);
    in_span.assign(nv, 0);
    for (PackedVector s : span) in_span[s] = 1;
    for (PackedVector u = 1; u < nv; ++u) {
      if (in_span[u]) continue;
      if (++sym_nodes_ > sym_budget_) return false;
      const int res = try_candidate(u);
      if (res == 1) return true;
      if (res == 0 && descend(u)) return true;
    }
    return false;
  }

  std::vector<std::uint8_t>& in_span_buf(int j) {
    if (static_cast<int>(in_span_.size()) <= j) in_span_.resize(j + 1);
    return in_span_[j];
  }

  const Problem& P_;
  const Geometry& g_;
  Shared& sh_;
  std::int64_t sym_budget_;
  std::int64_t sym_nodes_ = 0;

  std::vector<Mult> x_;
  std::vector<Mult> A_;
  std::vector<int> U_;
  std::vector<Mult> FA_;
  std::vector<int> FU_;
  Mult rem_ = 0;
  int k_ = 0;

  std::vector<PackedVector> cols_;
  std::vector<std::vector<PackedVector>> spans_;
  std::vector<std::vector<std::uint8_t>> in_span_;
};

struct Frontier {
  std::vector<bool> done;
  std::vector<std::vector<Mult>> reps;
  SearchStats stats;
};

json config_json(const Catalog& c, int split_depth, std::size_t tasks) {
  return json{{"r", c.r},          {"q", c.q},
              {"n", c.n},          {"w", c.w},
              {"mode", to_string(c.mode)},
              {"cap", c.cap},      {"split_depth", split_depth},
              {"tasks", tasks}};
}

std::optional<Frontier> load_frontier(const std::string& path, const json& config, std::size_t tasks) {
  if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("cannot parse frontier file " + path + ": " + e.what());
  }
  if (j.value("schema", 0) != 1) throw std::runtime_error("frontier file " + path + " has an unknown schema");
  if (j.at("config") != config)
    throw std::runtime_error("frontier file " + path + " belongs to a different classification");
  Frontier f;
  f.done.assign(tasks, false);
  for (std::size_t t : j.at("done").get<std::vector<std::size_t>>()) f.done.at(t) = true;
  f.reps = j.at("representatives").get<std::vector<std::vector<Mult>>>();
  const auto& s = j.at("stats");
  f.stats.nodes = s.at("nodes");
  f.stats.prunes = s.at("prunes");
  f.stats.symmetry_prunes = s.at("symmetry_prunes");
  f.stats.leaves = s.at("leaves");
  return f;
}

void save_frontier(const std::string& path, const json& config, const std::vector<bool>& done,
                   const std::map<std::string, CanonicalForm>& found, const SearchStats& st) {
  json j;
  j["schema"] = 1;
  j["config"] = config;
  std::vector<std::size_t> d;
  for (std::size_t t = 0; t < done.size(); ++t)
    if (done[t]) d.push_back(t);
  j["done"] = d;
  json reps = json::array();
  for (const auto& [cert, cf] : found) reps.push_back(std::vector<Mult>(cf.multiset.values().begin(), cf.multiset.values().end()));
  j["representatives"] = reps;
  j["stats"] = {{"nodes", st.nodes}, {"prunes", st.prunes}, {"symmetry_prunes", st.symmetry_prunes}, {"leaves", st.leaves}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write frontier file " + path);
    out << j.dump(1) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

Catalog classify(int r, int q, Mult n, Mult w, Mode mode, Mult cap, const ClassifyOptions& opts) {
  if (cap < 1) throw std::invalid_argument("multiplicity cap must be at least 1");
  if (n < 0 || w < 0) throw std::invalid_argument("n and w must be non-negative");
  if (opts.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  if (opts.node_budget < 0) throw std::invalid_argument("node budget must be non-negative");
  const auto t0 = std::chrono::steady_clock::now();

  Catalog cat;
  cat.r = r;
  cat.q = q;
  cat.n = n;
  cat.w = w;
  cat.mode = mode;
  cat.cap = cap;

  const Problem P = make_problem(r, q, n, w, mode, cap);
  Shared sh;
  sh.budget = opts.node_budget;

  std::vector<std::vector<Mult>> tasks;
  SearchStats head;
  {
    Searcher s(P, sh, opts.symmetry_check_budget);
    s.prefixes(std::max(1, opts.split_depth), tasks);
    head = s.stats;
  }
  const json config = config_json(cat, std::max(1, opts.split_depth), tasks.size());

  std::vector<bool> done(tasks.size(), false);
  std::map<std::string, CanonicalForm> found;
  SearchStats total = head;
  if (auto fr = load_frontier(opts.frontier_path, config, tasks.size())) {
    done = fr->done;
    for (auto& m : fr->reps) {
      CanonicalForm cf = canonical_form(Multiset(P.g, m));
      found.emplace(cf.certificate, std::move(cf));
    }
    total.nodes += fr->stats.nodes;
    total.prunes += fr->stats.prunes;
    total.symmetry_prunes += fr->stats.symmetry_prunes;
    total.leaves += fr->stats.leaves;
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    Searcher s(P, sh, opts.symmetry_check_budget);
    std::vector<std::size_t> finished;
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size() || sh.stop.load()) break;
      if (done[t]) continue;
      if (s.run(tasks[t])) finished.push_back(t);
    }
    std::lock_guard lock(mu);
    for (auto t : finished) done[t] = true;
    for (auto& [cert, cf] : s.found) found.emplace(cert, std::move(cf));
    total.nodes += s.stats.nodes;
    total.prunes += s.stats.prunes;
    total.symmetry_prunes += s.stats.symmetry_prunes;
    total.leaves += s.stats.leaves;
  };
  const int nt = std::max(1, std::min<int>(opts.threads, static_cast<int>(std::max<std::size_t>(1, tasks.size()))));
  std::vector<std::thread> pool;
  for (int i = 1; i < nt; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  cat.complete = std::all_of(done.begin(), done.end(), [](bool b) { return b; });
  total.tasks_total = static_cast<std::int64_t>(tasks.size());
  total.tasks_done = std::count(done.begin(), done.end(), true);
  if (!opts.frontier_path.empty()) {
    if (!cat.complete)
      save_frontier(opts.frontier_path, config, done, found, total);
    else if (std::filesystem::exists(opts.frontier_path))
      std::filesystem::remove(opts.frontier_path);
  }
  for (auto& [cert, cf] : found) cat.representatives.push_back(std::move(cf));
  total.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  cat.stats = total;
  return cat;
}

}  // namespace minihyper
