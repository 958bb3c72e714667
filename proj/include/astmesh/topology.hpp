#ifndef ASTMESH_TOPOLOGY_HPP
#define ASTMESH_TOPOLOGY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "astmesh/mesh.hpp"

namespace astmesh {

/// Closed interval with positive length, the building block of skeletons.
struct Interval {
    Dyadic lo, hi;

    bool operator==(const Interval&) const = default;
};

/// The union of all horizontal and vertical element edges, stored per line
/// as sorted maximal closed intervals (merged, non-abutting).
class SkeletonLines {
public:
    using LineMap = std::map<Dyadic, std::vector<Interval>>;

    void add_horizontal(const Dyadic& y, Interval iv) { horizontal_[y].push_back(iv); }
    void add_vertical(const Dyadic& x, Interval iv) { vertical_[x].push_back(iv); }

    /// Sorts and merges the per-line intervals into maximal form.
    void normalize();

    const LineMap& horizontal() const { return horizontal_; }
    const LineMap& vertical() const { return vertical_; }

    /// Edge incidence tests: is there a positive-length edge leaving (x,y)
    /// in the given axis direction?
    bool edge_right(const Point& n) const { return covers(horizontal_, n.y, n.x, true); }
    bool edge_left(const Point& n) const { return covers(horizontal_, n.y, n.x, false); }
    bool edge_up(const Point& n) const { return covers(vertical_, n.x, n.y, true); }
    bool edge_down(const Point& n) const { return covers(vertical_, n.x, n.y, false); }

    /// True if the vertical skeleton passes through (x, y).
    bool on_vertical(const Dyadic& x, const Dyadic& y) const;
    /// True if the horizontal skeleton passes through (x, y).
    bool on_horizontal(const Dyadic& x, const Dyadic& y) const;

    bool operator==(const SkeletonLines&) const = default;

private:
    static bool covers(const LineMap& lines, const Dyadic& line, const Dyadic& at,
                       bool forward);

    LineMap horizontal_, vertical_;
};

/// Union of all element edges of the mesh.
SkeletonLines skeleton(const Mesh& mesh);

/// Every interval of `a` lies within the interval union of `b`.
bool skeleton_covered_by(const SkeletonLines& a, const SkeletonLines& b);

/// The closed sub-rectangle of the index domain that carries active nodes;
/// may degenerate to a line or point. Throws DomainTooSmallError if empty.
Rect active_region(const Mesh& mesh);

/// T-junction orientation, named by the direction of the missing edge.
enum class TJunctionType { missing_left, missing_right, missing_below, missing_above };

/// Display symbol from the usual T-junction notation.
std::string tjunction_symbol(TJunctionType t);

/// True for types whose extension runs along the x axis.
inline bool is_horizontal(TJunctionType t) {
    return t == TJunctionType::missing_left || t == TJunctionType::missing_right;
}

/// An active valence-3 node.
struct TJunction {
    Point node;
    TJunctionType type;

    bool operator==(const TJunction&) const = default;
};

/// All T-junctions of the mesh: active nodes with exactly three incident
/// edges, in (x, y) order. Empty when the active region is empty.
std::vector<TJunction> t_junctions(const Mesh& mesh);

enum class Axis { x, y };

/// Intersections of the skeleton perpendicular to `axis` with the line at
/// `coord`: for Axis::x, all x with (x, coord) on the vertical skeleton.
/// `coord` must lie within the active-region bounds of the other axis.
std::vector<Dyadic> global_index_set(const Mesh& mesh, Axis axis, const Dyadic& coord);

/// 1D axis-aligned segment with per-endpoint closed/open flags.
struct Segment {
    Axis along;     // the axis the segment runs along
    Dyadic line;    // the fixed coordinate on the other axis
    Dyadic lo, hi;  // span along `along`, lo < hi
    bool lo_closed = true, hi_closed = true;

    bool contains(const Dyadic& v) const {
        return (lo < v || (lo_closed && v == lo)) && (v < hi || (hi_closed && v == hi));
    }

    bool operator==(const Segment&) const = default;
};

/// True if a horizontal and a vertical segment share a point, with endpoint
/// openness respected.
bool segments_intersect(const Segment& horizontal, const Segment& vertical);

/// Edge- and face-extension of one T-junction. The edge part runs along
/// existing edges away from the missing direction; the face part is
/// half-open at the node and points into the missing direction.
struct TJunctionExtension {
    TJunction tj;
    Segment edge, face;

    /// The closed hull of edge and face (they abut at the node).
    Segment full() const;
};

/// Extension of a single T-junction obtained from t_junctions(mesh).
TJunctionExtension extension(const Mesh& mesh, const TJunction& tj);

/// Extensions of all T-junctions of the mesh.
std::vector<TJunctionExtension> t_junction_extensions(const Mesh& mesh);

/// A pair of crossing extensions, the witness for failed suitability.
struct CrossingWitness {
    TJunctionExtension horizontal, vertical;
};

/// Searches for a horizontal T-junction extension intersecting a vertical
/// one. Empty result means the mesh is analysis-suitable.
std::optional<CrossingWitness> find_extension_crossing(const Mesh& mesh);

/// No horizontal T-junction extension meets a vertical one.
inline bool is_analysis_suitable(const Mesh& mesh) {
    return !find_extension_crossing(mesh).has_value();
}

/// Skeleton of the extended mesh: all edges plus all T-junction extensions.
SkeletonLines extended_skeleton(const Mesh& mesh);

/// True iff `fine` refines `coarse`: every fine element is contained in a
/// coarse element. Both meshes must share (p,q,M,N).
bool is_refinement(const Mesh& coarse, const Mesh& fine);

} // namespace astmesh

#endif
