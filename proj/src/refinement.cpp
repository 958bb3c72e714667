#include "astmesh/refinement.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace astmesh {

PatchRadius patch_radius(int p, int q, int k) {
    if (p < 2 || q < 2) throw ParameterError("patch radius requires p,q >= 2");
    if (k < 0) throw ParameterError("patch radius requires level k >= 0");
    if (k % 2 == 0) {
        // 2^{-k/2} * (floor(p/2) + 1/2, ceil(q/2) + 1/2)
        return { Dyadic::from_fraction(2 * (p / 2) + 1, 1).mul_pow2(-k / 2),
                 Dyadic::from_fraction(2 * ((q + 1) / 2) + 1, 1).mul_pow2(-k / 2) };
    }
    // 2^{-(k+1)/2} * (ceil(p/2) + 1/2, 2*floor(q/2) + 1)
    return { Dyadic::from_fraction(2 * ((p + 1) / 2) + 1, 1).mul_pow2(-(k + 1) / 2),
             Dyadic::from_int(2 * (q / 2) + 1).mul_pow2(-(k + 1) / 2) };
}

namespace {

struct IndexRange {
    std::int64_t lo = 0, hi = -1;
    std::int64_t count() const { return hi < lo ? 0 : hi - lo + 1; }
    bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

// Indices i at size exponent `we` whose cell midpoint (2i+1)/2^{we+1} lies
// in the closed interval [a, b].
IndexRange midpoint_range(const Dyadic& a, const Dyadic& b, int we, std::int64_t grid) {
    IndexRange r;
    r.lo = std::max<std::int64_t>(0, (a.mul_pow2(we + 1) - Dyadic::from_int(1)).half().ceil_int());
    r.hi = std::min<std::int64_t>(grid - 1,
                                  (b.mul_pow2(we + 1) - Dyadic::from_int(1)).half().floor_int());
    return r;
}

// Indices i whose cell [i,i+1]*2^-we overlaps the open interval (a, b) with
// positive length.
IndexRange overlap_range(const Dyadic& a, const Dyadic& b, int we, std::int64_t grid) {
    IndexRange r;
    const Dyadic lo = a.mul_pow2(we), hi = b.mul_pow2(we);
    r.lo = std::max<std::int64_t>(0, lo.is_integer() ? lo.to_int() : lo.floor_int());
    r.hi = std::min<std::int64_t>(grid - 1, hi.is_integer() ? hi.to_int() - 1 : hi.floor_int());
    return r;
}

// Gathers mesh elements whose per-level index lies in the ranges produced by
// `make_range`, visiting either the candidate box or the level's element
// set, whichever is smaller. Levels at or above `level_bound` are skipped.
template <typename MakeRange, typename Sink>
void scan_levels(const Mesh& mesh, int level_bound, MakeRange&& make_range, Sink&& sink) {
    for (const auto& [level, set] : mesh.by_level()) {
        if (level >= level_bound) break;
        const auto [ri, rj] = make_range(level);
        const std::int64_t candidates = ri.count() * rj.count();
        if (candidates <= 0) continue;
        if (candidates <= static_cast<std::int64_t>(set.size())) {
            for (std::int64_t i = ri.lo; i <= ri.hi; ++i)
                for (std::int64_t j = rj.lo; j <= rj.hi; ++j)
                    if (set.count(Mesh::IJ{i, j})) sink(ElementId{level, i, j});
        } else {
            for (const Mesh::IJ& v : set)
                if (ri.contains(v.i) && rj.contains(v.j)) sink(ElementId{level, v.i, v.j});
        }
    }
}

struct PatchBox {
    Dyadic x0, x1, y0, y1;
};

PatchBox patch_box(const Mesh& mesh, const ElementId& e) {
    const PatchRadius d = patch_radius(mesh.p(), mesh.q(), e.level);
    const Point c = midpoint(e);
    return { c.x - d.dx, c.x + d.dx, c.y - d.dy, c.y + d.dy };
}

void require_in_domain(const Mesh& mesh, const ElementId& e) {
    if (!mesh.in_bounds(e))
        throw ParameterError("element " + e.to_string() + " lies outside the index domain");
}

template <typename Sink>
void patch_into(const Mesh& mesh, const ElementId& e, int level_bound, Sink&& sink) {
    const PatchBox box = patch_box(mesh, e);
    scan_levels(
        mesh, level_bound,
        [&](int level) {
            const auto [we, he] = size_exponents(level);
            return std::pair{ midpoint_range(box.x0, box.x1, we, mesh.columns(level)),
                              midpoint_range(box.y0, box.y1, he, mesh.rows(level)) };
        },
        sink);
}

bool patch_has_coarser(const Mesh& mesh, const ElementId& e) {
    const PatchBox box = patch_box(mesh, e);
    for (const auto& [level, set] : mesh.by_level()) {
        if (level >= e.level) break;
        const auto [we, he] = size_exponents(level);
        const IndexRange ri = midpoint_range(box.x0, box.x1, we, mesh.columns(level));
        const IndexRange rj = midpoint_range(box.y0, box.y1, he, mesh.rows(level));
        const std::int64_t candidates = ri.count() * rj.count();
        if (candidates <= 0) continue;
        if (candidates <= static_cast<std::int64_t>(set.size())) {
            for (std::int64_t i = ri.lo; i <= ri.hi; ++i)
                for (std::int64_t j = rj.lo; j <= rj.hi; ++j)
                    if (set.count(Mesh::IJ{i, j})) return true;
        } else {
            for (const Mesh::IJ& v : set)
                if (ri.contains(v.i) && rj.contains(v.j)) return true;
        }
    }
    return false;
}

} // namespace

std::vector<ElementId> patch(const Mesh& mesh, const ElementId& e) {
    require_in_domain(mesh, e);
    std::vector<ElementId> out;
    patch_into(mesh, e, std::numeric_limits<int>::max(),
               [&](const ElementId& k) { out.push_back(k); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementId> patch_by_overlap(const Mesh& mesh, const ElementId& e) {
    require_in_domain(mesh, e);
    const PatchBox box = patch_box(mesh, e);
    std::vector<ElementId> out;
    scan_levels(
        mesh, std::numeric_limits<int>::max(),
        [&](int level) {
            const auto [we, he] = size_exponents(level);
            return std::pair{ overlap_range(box.x0, box.x1, we, mesh.columns(level)),
                              overlap_range(box.y0, box.y1, he, mesh.rows(level)) };
        },
        [&](const ElementId& k) { out.push_back(k); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ElementId> closure(const Mesh& mesh, const std::vector<ElementId>& marks,
                               bool verify_admissible) {
    for (const ElementId& e : marks)
        if (!mesh.contains(e))
            throw ElementNotFoundError("marked element " + e.to_string() +
                                       " is not in the mesh");
    if (verify_admissible && !check_admissible(mesh))
        throw ParameterError("closure requires an admissible mesh");

    std::unordered_set<ElementId, ElementIdHash> members(marks.begin(), marks.end());
    std::vector<ElementId> worklist(members.begin(), members.end());
    while (!worklist.empty()) {
        const ElementId e = worklist.back();
        worklist.pop_back();
        patch_into(mesh, e, e.level, [&](const ElementId& coarser) {
            if (members.insert(coarser).second) worklist.push_back(coarser);
        });
    }
    std::vector<ElementId> out(members.begin(), members.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

void refine_in_place(Mesh& mesh, const std::vector<ElementId>& marks,
                     std::vector<ElementId>& closure_out) {
    closure_out = closure(mesh, marks);
    for (const ElementId& e : closure_out) detail::bisect_in_place(mesh, e);
}

} // namespace detail

Mesh refine(const Mesh& mesh, const std::vector<ElementId>& marks,
            std::vector<ElementId>* trace, bool verify_admissible) {
    const std::vector<ElementId> to_bisect = closure(mesh, marks, verify_admissible);
    Mesh out = mesh;
    for (const ElementId& e : to_bisect) detail::bisect_in_place(out, e);
    if (trace) *trace = to_bisect;
    return out;
}

std::optional<std::pair<ElementId, ElementId>> check_quasi_uniformity(const Mesh& mesh) {
    std::optional<std::pair<ElementId, ElementId>> witness;
    for (const ElementId& e : mesh.elements_sorted()) {
        if (e.level < 2) continue;
        patch_into(mesh, e, e.level - 1, [&](const ElementId& coarse) {
            if (!witness) witness = std::pair{e, coarse};
        });
        if (witness) break;
    }
    return witness;
}

bool check_admissible(const Mesh& mesh) {
    if (!validate_partition(mesh).ok) return false;

    // Every element strictly above one of the mesh elements must have been
    // bisected on the way from the initial mesh; replay those bisections in
    // ascending level order and check each one against its patch.
    std::unordered_set<ElementId, ElementIdHash> seen;
    std::vector<ElementId> ancestors;
    mesh.for_each([&](const ElementId& e) {
        ElementId cur = e;
        while (auto up = parent(cur)) {
            cur = *up;
            if (!seen.insert(cur).second) break;
            ancestors.push_back(cur);
        }
    });
    std::sort(ancestors.begin(), ancestors.end());

    Mesh replay = initial_mesh(mesh.p(), mesh.q(), mesh.M(), mesh.N());
    for (const ElementId& e : ancestors) {
        if (!replay.contains(e)) return false;
        if (patch_has_coarser(replay, e)) return false;
        detail::bisect_in_place(replay, e);
    }
    return replay == mesh;
}

} // namespace astmesh
