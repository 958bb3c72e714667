#ifndef ASTMESH_TESTS_SUPPORT_HPP
#define ASTMESH_TESTS_SUPPORT_HPP

// Brute-force reference implementations used as oracles. These deliberately
// avoid the library's indexed query paths: patches scan every element with
// exact dyadic comparisons, and partition validity is checked by pairwise
// rectangle intersection.

#include <algorithm>
#include <vector>

#include "astmesh/bench.hpp"
#include "astmesh/mesh.hpp"
#include "astmesh/refinement.hpp"

namespace astmesh::testing {

inline std::vector<ElementId> oracle_patch(const Mesh& mesh, const ElementId& e) {
    const PatchRadius d = patch_radius(mesh.p(), mesh.q(), e.level);
    std::vector<ElementId> out;
    for (const ElementId& k : mesh.elements_sorted()) {
        const Point dd = dist(k, e);
        if (dd.x <= d.dx && dd.y <= d.dy) out.push_back(k);
    }
    return out;
}

inline std::vector<ElementId> oracle_patch_by_overlap(const Mesh& mesh, const ElementId& e) {
    const PatchRadius d = patch_radius(mesh.p(), mesh.q(), e.level);
    const Point c = midpoint(e);
    const Rect box{ c.x - d.dx, c.x + d.dx, c.y - d.dy, c.y + d.dy };
    std::vector<ElementId> out;
    for (const ElementId& k : mesh.elements_sorted())
        if (rect_of(k).overlaps_interior(box)) out.push_back(k);
    return out;
}

// Literal repeat-until-stable closure, scanning all members every round.
inline std::vector<ElementId> oracle_closure(const Mesh& mesh,
                                             const std::vector<ElementId>& marks) {
    std::vector<ElementId> grown = marks;
    std::sort(grown.begin(), grown.end());
    grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<ElementId> next = grown;
        for (const ElementId& k : grown)
            for (const ElementId& c : oracle_patch(mesh, k))
                if (c.level < k.level &&
                    !std::binary_search(grown.begin(), grown.end(), c)) {
                    next.push_back(c);
                    changed = true;
                }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        grown = std::move(next);
    }
    return grown;
}

// Pairwise interior-overlap scan plus exact area sum; for small meshes only.
inline bool oracle_partition_ok(const Mesh& mesh) {
    const std::vector<ElementId> elems = mesh.elements_sorted();
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = a + 1; b < elems.size(); ++b)
            if (rect_of(elems[a]).overlaps_interior(rect_of(elems[b]))) return false;
    Dyadic area;
    for (const ElementId& e : elems) area = area + Dyadic::pow2(-e.level);
    return area == Dyadic::from_int(std::int64_t(mesh.M()) * mesh.N());
}

// Random single-mark refinement chain; deterministic in the rng state.
inline Mesh random_admissible(SplitMix64& rng, int p, int q, int M, int N, int steps) {
    Mesh mesh = initial_mesh(p, q, M, N);
    for (int s = 0; s < steps; ++s) {
        const std::vector<ElementId> elems = mesh.elements_sorted();
        mesh = refine(mesh, { elems[rng.below(elems.size())] });
    }
    return mesh;
}

} // namespace astmesh::testing

#endif
