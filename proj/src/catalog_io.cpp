#include <fstream>
#include <sstream>
#include <stdexcept>

#include "minihyper/classifier.hpp"

namespace minihyper {

std::string to_text(const Catalog& c) {
  std::ostringstream os;
  os << "CATALOG " << c.r << ' ' << c.q << ' ' << c.n << ' ' << c.w << ' ' << to_string(c.mode) << ' ' << c.cap << ' '
     << (c.complete ? "complete" : "incomplete") << '\n';
  for (const auto& rep : c.representatives) {
    os << '\n' << "# automorphism_order " << rep.automorphism_order << '\n' << to_text(rep.multiset);
  }
  os << '\n';
  os << "# representatives " << c.representatives.size() << '\n';
  os << "# nodes " << c.stats.nodes << '\n';
  os << "# prunes " << c.stats.prunes << '\n';
  os << "# symmetry_prunes " << c.stats.symmetry_prunes << '\n';
  os << "# leaves " << c.stats.leaves << '\n';
  os << "# tasks " << c.stats.tasks_done << '/' << c.stats.tasks_total << '\n';
  return os.str();
}

Catalog parse_catalog(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty catalog text");
  Catalog c;
  {
    std::istringstream hs(line);
    std::string tag, mode, status;
    if (!(hs >> tag >> c.r >> c.q >> c.n >> c.w >> mode >> c.cap >> status) || tag != "CATALOG")
      throw std::invalid_argument("catalog must start with 'CATALOG r q n w mode cap complete|incomplete'");
    c.mode = parse_mode(mode);
    if (status == "complete")
      c.complete = true;
    else if (status != "incomplete")
      throw std::invalid_argument("catalog status must be complete or incomplete");
  }
  std::string block;
  auto flush = [&] {
    if (block.find("PG") != std::string::npos) {
      Multiset m = parse_multiset(block);
      if (m.geometry().r() != c.r || m.geometry().q() != c.q)
        throw std::invalid_argument("catalog representative lives in a different geometry");
      c.representatives.push_back(canonical_form(m));
    }
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string key;
      ls >> key;
      if (key == "nodes") ls >> c.stats.nodes;
      else if (key == "prunes") ls >> c.stats.prunes;
      else if (key == "symmetry_prunes") ls >> c.stats.symmetry_prunes;
      else if (key == "leaves") ls >> c.stats.leaves;
      else if (key == "tasks") {
        char slash = 0;
        ls >> c.stats.tasks_done >> slash >> c.stats.tasks_total;
      }
      continue;
    }
    block += line;
    block += '\n';
  }
  flush();
  return c;
}

void write_catalog_file(const Catalog& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_text(c);
}

Catalog read_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

}  // namespace minihyper
