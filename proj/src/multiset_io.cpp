#include <fstream>
#include <sstream>
#include <stdexcept>

#include "minihyper/multiset.hpp"

namespace minihyper {

std::string to_text(const Multiset& k) {
  const auto& g = k.geometry();
  std::ostringstream os;
  os << "PG " << g.r() << ' ' << g.q() << '\n';
  for (int p = 0; p < g.num_points(); ++p) {
    if (k[p] == 0) continue;
    for (int c : g.coords(p)) os << c << ' ';
    os << k[p] << '\n';
  }
  return os.str();
}

Multiset parse_multiset(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::shared_ptr<const Geometry> g;
  std::vector<Mult> mult;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!g) {
      std::string tag;
      int r = 0, q = 0;
      if (!(ls >> tag >> r >> q) || tag != "PG") throw std::invalid_argument("multiset text must start with 'PG <r> <q>'");
      g = Geometry::shared(r, q);
      mult.assign(g->num_points(), 0);
      continue;
    }
    std::vector<long long> vals;
    long long x = 0;
    while (ls >> x) vals.push_back(x);
    if (!ls.eof()) throw std::invalid_argument("line " + std::to_string(lineno) + ": non-numeric token");
    if (static_cast<int>(vals.size()) != g->r() + 2)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " + std::to_string(g->r() + 2) +
                                  " integers");
    std::vector<int> c(vals.begin(), vals.end() - 1);
    for (int ci : c)
      if (ci < 0 || ci >= g->q()) throw std::invalid_argument("line " + std::to_string(lineno) + ": coordinate out of range");
    if (vals.back() < 0) throw std::invalid_argument("line " + std::to_string(lineno) + ": negative multiplicity");
    mult[g->point_index(c)] += vals.back();
  }
  if (!g) throw std::invalid_argument("empty multiset text");
  return Multiset(g, std::move(mult));
}

Multiset read_multiset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_multiset(ss.str());
}

void write_multiset_file(const Multiset& k, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_text(k);
}

}  // namespace minihyper
