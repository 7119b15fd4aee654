#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "pmotif/diagram.hpp"
#include "pmotif/elementary.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(PMOTIF_FIXTURES) + "/" + name; }

inline pmotif::TorusDiagram diagram(const std::string& name) { return pmotif::read_diagram_file(path(name)); }

inline std::vector<pmotif::ElementaryLink> links(const std::string& name) {
  std::ifstream in(path(name));
  std::vector<pmotif::ElementaryLink> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(pmotif::parse_elementary(line));
  }
  return out;
}

// How the chain files relate (see tools/make_fixtures.cpp).
inline const pmotif::Matrix kShear{{1, 0}, {1, 1}};
inline const pmotif::Matrix kShearBack{{1, 1}, {0, 1}};
inline pmotif::Lattice wide() { return pmotif::Lattice::from_basis(pmotif::Matrix{{2, 0}, {0, 1}}); }
inline pmotif::Lattice tall() { return pmotif::Lattice::from_basis(pmotif::Matrix{{1, 0}, {0, 2}}); }

}  // namespace fixtures
