#ifndef ASTMESH_REFINEMENT_HPP
#define ASTMESH_REFINEMENT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "astmesh/mesh.hpp"

namespace astmesh {

/// The level-dependent patch radius vector D(k) for bi-degree (p,q).
struct PatchRadius {
    Dyadic dx, dy;
};

/// D(k): elements whose midpoint distance to K stays componentwise within
/// this radius form the (p,q)-patch of a level-k element K.
PatchRadius patch_radius(int p, int q, int k);

/// All mesh elements within patch radius of `e` (which need not belong to
/// the mesh itself, only to the index domain). Sorted by (level, i, j).
std::vector<ElementId> patch(const Mesh& mesh, const ElementId& e);

/// All mesh elements whose intersection with the patch rectangle of `e` has
/// positive area. On admissible meshes this is exactly patch(); the two
/// routes serve as mutual cross-checks.
std::vector<ElementId> patch_by_overlap(const Mesh& mesh, const ElementId& e);

/// Smallest superset of `marks` such that every strictly coarser element in
/// the patch of a member is itself a member. Patches are evaluated against
/// the original mesh throughout. Sorted by (level, i, j).
///
/// With `verify_admissible`, the mesh is checked first; otherwise
/// admissibility is trusted.
std::vector<ElementId> closure(const Mesh& mesh, const std::vector<ElementId>& marks,
                               bool verify_admissible = false);

/// Bisect the closure of `marks`, coarsest elements first. Keeps admissible
/// meshes admissible. If `trace` is non-null it receives the bisection order.
Mesh refine(const Mesh& mesh, const std::vector<ElementId>& marks,
            std::vector<ElementId>* trace = nullptr, bool verify_admissible = false);

/// Searches for a pair (K, K') with K' in the patch of K at least two levels
/// coarser. Empty result means the mesh is locally quasi-uniform.
std::optional<std::pair<ElementId, ElementId>> check_quasi_uniformity(const Mesh& mesh);

/// Decides admissibility by replaying all ancestor bisections in ascending
/// level order and checking each one against its patch.
bool check_admissible(const Mesh& mesh);

namespace detail {
/// In-place variant of refine() for tight loops; fills `closure_out` with
/// the bisected elements in bisection order.
void refine_in_place(Mesh& mesh, const std::vector<ElementId>& marks,
                     std::vector<ElementId>& closure_out);
} // namespace detail

} // namespace astmesh

#endif
