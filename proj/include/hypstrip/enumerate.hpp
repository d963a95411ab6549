#pragma once

// Simple closed curve classes and simple orthogeodesic arc classes of the
// supported topologies, truncated by slope height on the one-holed torus.

#include <vector>

#include "hypstrip/surface.hpp"

namespace hypstrip {

struct EnumerationBound {
  explicit EnumerationBound(int n);
  int n;
};

// Lower Christoffel word of the slope: |p| letters a and q letters b along
// the lattice path just below the line; negative slopes substitute b -> B.
GroupWord christoffel_word(const Slope& s);

// Word of the path that runs alongside the straight corner-to-corner arc of
// the slope in the square model of the one-holed torus; the arc joins the
// boundary lifts stabilized by ABab and its conjugate by this word.
GroupWord arc_translation_word(const Slope& s);

// Slopes with height <= n, ordered by value (1/0 last).
std::vector<Slope> slopes_up_to(int n);

std::vector<CurveClass> enumerate_scc(const Topology& t, EnumerationBound bound);
std::vector<ArcClass> enumerate_arcs(const Topology& t, EnumerationBound bound);
std::vector<ArcClass> filling_arc_family(const Topology& t);

// Arc classes by name: "12", "13", "23", "11", "22", "33" on the pants and a
// slope "p/q" on the torus.
ArcClass pants_arc(int i, int j);
ArcClass torus_arc(const Slope& s);
ArcClass arc_by_name(const Topology& t, const std::string& name);

}  // namespace hypstrip
