#include "astmesh/topology.hpp"

#include <algorithm>
#include <set>

namespace astmesh {

void SkeletonLines::normalize() {
    auto merge_lines = [](LineMap& lines) {
        for (auto& [coord, ivs] : lines) {
            std::sort(ivs.begin(), ivs.end(),
                      [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
            std::vector<Interval> merged;
            for (const Interval& iv : ivs) {
                if (!merged.empty() && iv.lo <= merged.back().hi)
                    merged.back().hi = Dyadic::max(merged.back().hi, iv.hi);
                else
                    merged.push_back(iv);
            }
            ivs = std::move(merged);
        }
    };
    merge_lines(horizontal_);
    merge_lines(vertical_);
}

namespace {

// Last interval starting at or before `at`, if any.
const Interval* interval_before(const std::vector<Interval>& ivs, const Dyadic& at) {
    auto it = std::upper_bound(ivs.begin(), ivs.end(), at,
                               [](const Dyadic& v, const Interval& iv) { return v < iv.lo; });
    return it == ivs.begin() ? nullptr : &*std::prev(it);
}

bool line_covers_point(const SkeletonLines::LineMap& lines, const Dyadic& line,
                       const Dyadic& at) {
    auto it = lines.find(line);
    if (it == lines.end()) return false;
    const Interval* iv = interval_before(it->second, at);
    return iv && at <= iv->hi;
}

} // namespace

bool SkeletonLines::covers(const LineMap& lines, const Dyadic& line, const Dyadic& at,
                           bool forward) {
    auto it = lines.find(line);
    if (it == lines.end()) return false;
    if (forward) {
        const Interval* iv = interval_before(it->second, at);
        return iv && at < iv->hi;
    }
    // Backward: an interval must reach `at` from below.
    const Interval* iv = interval_before(it->second, at);
    if (!iv) return false;
    if (iv->lo < at && at <= iv->hi) return true;
    return false;
}

bool SkeletonLines::on_vertical(const Dyadic& x, const Dyadic& y) const {
    return line_covers_point(vertical_, x, y);
}

bool SkeletonLines::on_horizontal(const Dyadic& x, const Dyadic& y) const {
    return line_covers_point(horizontal_, y, x);
}

SkeletonLines skeleton(const Mesh& mesh) {
    SkeletonLines sk;
    mesh.for_each([&](const ElementId& e) {
        const Rect r = rect_of(e);
        sk.add_horizontal(r.y0, {r.x0, r.x1});
        sk.add_horizontal(r.y1, {r.x0, r.x1});
        sk.add_vertical(r.x0, {r.y0, r.y1});
        sk.add_vertical(r.x1, {r.y0, r.y1});
    });
    sk.normalize();
    return sk;
}

bool skeleton_covered_by(const SkeletonLines& a, const SkeletonLines& b) {
    auto lines_covered = [](const SkeletonLines::LineMap& la,
                            const SkeletonLines::LineMap& lb) {
        for (const auto& [coord, ivs] : la) {
            auto it = lb.find(coord);
            if (it == lb.end()) return false;
            for (const Interval& iv : ivs) {
                // Maximal merged intervals: coverage requires a single
                // containing interval on the other side.
                const Interval* cover = interval_before(it->second, iv.lo);
                if (!cover || cover->hi < iv.hi) return false;
            }
        }
        return true;
    };
    return lines_covered(a.horizontal(), b.horizontal()) &&
           lines_covered(a.vertical(), b.vertical());
}

namespace {

std::optional<Rect> active_region_opt(const Mesh& mesh) {
    const std::int64_t px = (mesh.p() + 1) / 2, qy = (mesh.q() + 1) / 2;
    if (mesh.M() < 2 * px || mesh.N() < 2 * qy) return std::nullopt;
    return Rect{ Dyadic::from_int(px), Dyadic::from_int(mesh.M() - px),
                 Dyadic::from_int(qy), Dyadic::from_int(mesh.N() - qy) };
}

} // namespace

Rect active_region(const Mesh& mesh) {
    auto region = active_region_opt(mesh);
    if (!region)
        throw DomainTooSmallError("active region is empty: need M >= 2*ceil(p/2) and "
                                  "N >= 2*ceil(q/2)");
    return *region;
}

std::string tjunction_symbol(TJunctionType t) {
    switch (t) {
        case TJunctionType::missing_left: return "⊢";   // ⊢
        case TJunctionType::missing_right: return "⊣";  // ⊣
        case TJunctionType::missing_below: return "⊥";  // ⊥
        case TJunctionType::missing_above: return "⊤";  // ⊤
    }
    return "?";
}

namespace {

std::vector<TJunction> t_junctions_impl(const Mesh& mesh, const SkeletonLines& sk) {
    const auto region = active_region_opt(mesh);
    if (!region) return {};

    std::set<Point> nodes;
    mesh.for_each([&](const ElementId& e) {
        const Rect r = rect_of(e);
        for (const Dyadic& x : {r.x0, r.x1})
            for (const Dyadic& y : {r.y0, r.y1}) {
                const Point n{x, y};
                if (region->contains(n)) nodes.insert(n);
            }
    });

    std::vector<TJunction> out;
    for (const Point& n : nodes) {
        const bool right = sk.edge_right(n), left = sk.edge_left(n);
        const bool up = sk.edge_up(n), down = sk.edge_down(n);
        if (right + left + up + down != 3) continue;
        TJunctionType type;
        if (!right) type = TJunctionType::missing_right;
        else if (!left) type = TJunctionType::missing_left;
        else if (!up) type = TJunctionType::missing_above;
        else type = TJunctionType::missing_below;
        out.push_back({n, type});
    }
    return out;
}

std::vector<Dyadic> index_set_impl(const SkeletonLines& sk, Axis axis, const Dyadic& coord) {
    const auto& lines = axis == Axis::x ? sk.vertical() : sk.horizontal();
    std::vector<Dyadic> out;
    for (const auto& [line, ivs] : lines) {
        const Interval* iv = interval_before(ivs, coord);
        if (iv && coord <= iv->hi) out.push_back(line);
    }
    return out;  // map iteration is already sorted
}

void require_active_coord(const Mesh& mesh, Axis axis, const Dyadic& coord) {
    // The fixed coordinate is on the axis perpendicular to the index axis.
    const std::int64_t inset = axis == Axis::x ? (mesh.q() + 1) / 2 : (mesh.p() + 1) / 2;
    const std::int64_t extent = axis == Axis::x ? mesh.N() : mesh.M();
    if (coord < Dyadic::from_int(inset) || Dyadic::from_int(extent - inset) < coord)
        throw ParameterError("coordinate " + coord.to_string() +
                             " lies outside the active-region bounds");
}

TJunctionExtension extension_impl(const Mesh& mesh, const SkeletonLines& sk,
                                  const TJunction& tj) {
    const bool horiz = is_horizontal(tj.type);
    const Axis axis = horiz ? Axis::x : Axis::y;
    const Dyadic pos = horiz ? tj.node.x : tj.node.y;
    const Dyadic line = horiz ? tj.node.y : tj.node.x;
    const int degree = horiz ? mesh.p() : mesh.q();
    const bool increasing = tj.type == TJunctionType::missing_right ||
                            tj.type == TJunctionType::missing_above;

    const std::vector<Dyadic> indices = index_set_impl(sk, axis, line);
    const auto it = std::lower_bound(indices.begin(), indices.end(), pos);
    if (it == indices.end() || *it != pos)
        throw IndexExtractionError("T-junction node is not on the global index set");
    const std::ptrdiff_t at = it - indices.begin();

    const std::ptrdiff_t face_steps = (degree + 1) / 2, edge_steps = degree / 2;
    const std::ptrdiff_t face_end = increasing ? at + face_steps : at - face_steps;
    const std::ptrdiff_t edge_end = increasing ? at - edge_steps : at + edge_steps;
    if (std::min(face_end, edge_end) < 0 ||
        std::max(face_end, edge_end) >= std::ssize(indices))
        throw IndexExtractionError("not enough global indices around T-junction at (" +
                                   tj.node.x.to_string() + ", " + tj.node.y.to_string() + ")");

    TJunctionExtension ext{tj, {}, {}};
    if (increasing) {
        ext.face = { axis, line, pos, indices[face_end], false, true };
        ext.edge = { axis, line, indices[edge_end], pos, true, true };
    } else {
        ext.face = { axis, line, indices[face_end], pos, true, false };
        ext.edge = { axis, line, pos, indices[edge_end], true, true };
    }
    return ext;
}

} // namespace

std::vector<TJunction> t_junctions(const Mesh& mesh) {
    return t_junctions_impl(mesh, skeleton(mesh));
}

std::vector<Dyadic> global_index_set(const Mesh& mesh, Axis axis, const Dyadic& coord) {
    require_active_coord(mesh, axis, coord);
    std::vector<Dyadic> out = index_set_impl(skeleton(mesh), axis, coord);
    // The tensor-product lines of the initial grid persist under refinement,
    // so every integer station must be present.
    const std::int64_t extent = axis == Axis::x ? mesh.M() : mesh.N();
    for (std::int64_t v = 0; v <= extent; ++v)
        if (!std::binary_search(out.begin(), out.end(), Dyadic::from_int(v)))
            throw Error("global index set is missing integer station " + std::to_string(v));
    return out;
}

Segment TJunctionExtension::full() const {
    return { edge.along, edge.line, Dyadic::min(edge.lo, face.lo),
             Dyadic::max(edge.hi, face.hi), true, true };
}

bool segments_intersect(const Segment& horizontal, const Segment& vertical) {
    return horizontal.contains(vertical.line) && vertical.contains(horizontal.line);
}

TJunctionExtension extension(const Mesh& mesh, const TJunction& tj) {
    return extension_impl(mesh, skeleton(mesh), tj);
}

std::vector<TJunctionExtension> t_junction_extensions(const Mesh& mesh) {
    const SkeletonLines sk = skeleton(mesh);
    std::vector<TJunctionExtension> out;
    for (const TJunction& tj : t_junctions_impl(mesh, sk))
        out.push_back(extension_impl(mesh, sk, tj));
    return out;
}

std::optional<CrossingWitness> find_extension_crossing(const Mesh& mesh) {
    std::vector<TJunctionExtension> horiz, vert;
    for (TJunctionExtension& e : t_junction_extensions(mesh)) {
        (e.edge.along == Axis::x ? horiz : vert).push_back(std::move(e));
    }
    for (const TJunctionExtension& h : horiz)
        for (const TJunctionExtension& v : vert)
            if (segments_intersect(h.full(), v.full())) return CrossingWitness{h, v};
    return std::nullopt;
}

SkeletonLines extended_skeleton(const Mesh& mesh) {
    SkeletonLines sk = skeleton(mesh);
    const auto region = active_region_opt(mesh);
    for (const TJunctionExtension& e : t_junction_extensions(mesh)) {
        const Segment s = e.full();
        // Extensions are clipped to the active region, which carries the
        // spline space: the part protruding into the boundary strip is not
        // stable under refinement (its T-junction can be absorbed while the
        // replacement node falls outside the active region).
        const Dyadic lo_bound = s.along == Axis::x ? region->x0 : region->y0;
        const Dyadic hi_bound = s.along == Axis::x ? region->x1 : region->y1;
        const Dyadic lo = Dyadic::max(s.lo, lo_bound);
        const Dyadic hi = Dyadic::min(s.hi, hi_bound);
        if (!(lo < hi)) continue;
        if (s.along == Axis::x)
            sk.add_horizontal(s.line, {lo, hi});
        else
            sk.add_vertical(s.line, {lo, hi});
    }
    sk.normalize();
    return sk;
}

bool is_refinement(const Mesh& coarse, const Mesh& fine) {
    if (!coarse.same_parameters(fine))
        throw ParameterError("refinement comparison requires identical (p,q,M,N)");
    bool ok = true;
    fine.for_each([&](const ElementId& e) {
        if (!ok) return;
        ElementId cur = e;
        while (true) {
            if (coarse.contains(cur)) return;
            auto up = parent(cur);
            if (!up) break;
            cur = *up;
        }
        ok = false;
    });
    return ok;
}

} // namespace astmesh
