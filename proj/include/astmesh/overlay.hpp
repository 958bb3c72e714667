#ifndef ASTMESH_OVERLAY_HPP
#define ASTMESH_OVERLAY_HPP

#include <vector>

#include "astmesh/mesh.hpp"

namespace astmesh {

/// Minimal elements of `s` under set inclusion: members with no strictly
/// smaller member inside them. Sorted by (level, i, j).
std::vector<ElementId> minset(const std::vector<ElementId>& s);

/// Coarsest common refinement of two meshes over the same domain and
/// degrees: the minimal elements of their union.
Mesh overlay(const Mesh& g1, const Mesh& g2);

/// Cardinality bound of the overlay: #(g1 (x) g2) + M*N <= #g1 + #g2.
bool check_overlay_bound(const Mesh& g1, const Mesh& g2);

} // namespace astmesh

#endif
