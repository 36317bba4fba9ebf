#include "minihyper/code_bridge.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace minihyper {

namespace {

int matrix_rank(std::vector<std::vector<int>> m, const PrimeField& f) {
  int rank = 0;
  const int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
    int sel = -1;
    for (std::size_t i = rank; i < m.size(); ++i)
      if (m[i][c] != 0) {
        sel = static_cast<int>(i);
        break;
      }
    if (sel < 0) continue;
    std::swap(m[rank], m[sel]);
    const int inv = f.inv(m[rank][c]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      const int factor = f.mul(m[i][c], inv);
      if (factor == 0) continue;
      for (int j = c; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(int k, int n, int q, std::vector<int> entries)
    : k_(k), n_(n), q_(q), entries_(std::move(entries)) {
  if (k < 1 || n < 1) throw std::invalid_argument("generator matrix needs k >= 1 and n >= 1");
  PrimeField field(q);
  if (static_cast<std::int64_t>(entries_.size()) != static_cast<std::int64_t>(k) * n)
    throw std::invalid_argument("generator matrix has the wrong number of entries");
  for (auto& e : entries_) {
    if (e < 0 || e >= q) throw std::invalid_argument("generator matrix entry outside GF(q)");
  }
  for (int j = 0; j < n; ++j) {
    bool zero = true;
    for (int i = 0; i < k && zero; ++i) zero = (*this)(i, j) == 0;
    if (zero) throw std::invalid_argument("generator matrix has a zero column " + std::to_string(j));
  }
  std::vector<std::vector<int>> rows(k, std::vector<int>(n));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = (*this)(i, j);
  if (matrix_rank(rows, field) != k) throw std::invalid_argument("generator matrix does not have full rank");
}

std::vector<int> GeneratorMatrix::column(int col) const {
  std::vector<int> c(k_);
  for (int i = 0; i < k_; ++i) c[i] = (*this)(i, col);
  return c;
}

std::int64_t griesmer_bound(int q, int k, std::int64_t d) {
  if (k < 1 || d < 1) throw std::invalid_argument("griesmer_bound needs k >= 1 and d >= 1");
  std::int64_t sum = 0, qi = 1;
  for (int i = 0; i < k; ++i) {
    sum += (d + qi - 1) / qi;
    if (qi <= d) qi *= q;  // once q^i exceeds d every further term is 1
  }
  return sum;
}

Multiset arc_from_generator(const GeneratorMatrix& gm) {
  if (gm.k() < 2) throw std::invalid_argument("arc_from_generator needs k >= 2");
  auto g = Geometry::shared(gm.k() - 1, gm.q());
  std::vector<Mult> mult(g->num_points(), 0);
  for (int j = 0; j < gm.n(); ++j) ++mult[g->point_index(gm.column(j))];
  return Multiset(g, std::move(mult));
}

GeneratorMatrix generator_from_arc(const Multiset& k) {
  const auto& g = k.geometry();
  const int rows = g.r() + 1;
  std::vector<std::vector<int>> cols;
  for (int p = 0; p < g.num_points(); ++p)
    for (Mult m = 0; m < k[p]; ++m) {
      auto c = g.coords(p);
      cols.emplace_back(c.begin(), c.end());
    }
  const int n = static_cast<int>(cols.size());
  std::vector<int> entries(static_cast<std::size_t>(rows) * n);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < n; ++j) entries[static_cast<std::size_t>(i) * n + j] = cols[j][i];
  return GeneratorMatrix(rows, n, g.q(), std::move(entries));
}

CodeParams code_parameters(const Multiset& arc) {
  const auto p = parameters(arc, Mode::arc);
  return CodeParams{p.n, arc.geometry().r() + 1, p.n - p.w, arc.geometry().q()};
}

bool meets_griesmer_bound(const CodeParams& c) { return c.d >= 1 && griesmer_bound(c.q, c.k, c.d) == c.n; }

DistanceCheck min_distance_routes(const GeneratorMatrix& gm, std::int64_t max_codewords) {
  std::int64_t total = 1;
  for (int i = 0; i < gm.k(); ++i) {
    total *= gm.q();
    if (total > max_codewords)
      throw std::length_error("codeword enumeration over " + std::to_string(gm.q()) + "^" + std::to_string(gm.k()) +
                              " messages exceeds the budget");
  }
  const PrimeField f(gm.q());
  DistanceCheck out;
  out.by_enumeration = gm.n();
  // One message per projective class: first nonzero coordinate 1.
  std::vector<int> msg(gm.k(), 0);
  for (std::int64_t x = 1; x < total; ++x) {
    std::int64_t t = x;
    for (int i = gm.k() - 1; i >= 0; --i) {
      msg[i] = static_cast<int>(t % gm.q());
      t /= gm.q();
    }
    const auto lead = std::find_if(msg.begin(), msg.end(), [](int c) { return c != 0; });
    if (*lead != 1) continue;
    std::int64_t weight = 0;
    for (int j = 0; j < gm.n(); ++j) {
      int s = 0;
      for (int i = 0; i < gm.k(); ++i) s = f.add(s, f.mul(msg[i], gm(i, j)));
      weight += s != 0;
    }
    out.by_enumeration = std::min(out.by_enumeration, weight);
  }
  if (gm.k() == 1) {
    out.by_arc = gm.n();  // PG(0,q): the only hyperplane is empty
  } else {
    const auto arc = arc_from_generator(gm);
    out.by_arc = gm.n() - parameters(arc, Mode::arc).w;
  }
  return out;
}

std::int64_t min_distance(const GeneratorMatrix& gm, std::int64_t max_codewords) {
  const auto r = min_distance_routes(gm, max_codewords);
  if (r.by_enumeration != r.by_arc)
    throw std::logic_error("minimum distance routes disagree: enumeration " + std::to_string(r.by_enumeration) +
                           " vs arc " + std::to_string(r.by_arc));
  return r.by_enumeration;
}

GeneratorMatrix parse_generator(std::string_view text) {
  std::istringstream in{std::string(text)};
  int k = 0, n = 0, q = 0;
  if (!(in >> k >> n >> q)) throw std::invalid_argument("generator file must start with 'k n q'");
  std::vector<int> entries;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') {
      std::getline(in, tok);
      continue;
    }
    // Either one entry per token or a row of packed digits.
    if (static_cast<int>(tok.size()) > 1 && q <= 10) {
      for (char c : tok) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in generator matrix");
        entries.push_back(c - '0');
      }
    } else {
      entries.push_back(std::stoi(tok));
    }
  }
  return GeneratorMatrix(k, n, q, std::move(entries));
}

std::string to_text(const GeneratorMatrix& g) {
  std::ostringstream os;
  os << g.k() << ' ' << g.n() << ' ' << g.q() << '\n';
  for (int i = 0; i < g.k(); ++i) {
    for (int j = 0; j < g.n(); ++j) os << (j ? " " : "") << g(i, j);
    os << '\n';
  }
  return os.str();
}

GeneratorMatrix read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_generator(ss.str());
}

}  // namespace minihyper
