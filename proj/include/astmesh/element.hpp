#ifndef ASTMESH_ELEMENT_HPP
#define ASTMESH_ELEMENT_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "astmesh/dyadic.hpp"
#include "astmesh/error.hpp"

namespace astmesh {

/// Maximum supported element level. Beyond this, index and coordinate
/// arithmetic would lose its integer headroom, so refinement is refused.
inline constexpr int kMaxLevel = 120;

/// Identifies one axis-aligned dyadic cell: level plus (i, j) grid position.
///
/// A cell of level l has width 2^-ceil(l/2) and height 2^-floor(l/2); its
/// lower-left corner sits at (i * width, j * height). Level 0 cells are the
/// unit squares of the initial tensor-product grid. Geometry is always
/// derived from the id, never stored.
struct ElementId {
    int level = 0;
    std::int64_t i = 0;
    std::int64_t j = 0;

    bool operator==(const ElementId&) const = default;
    auto operator<=>(const ElementId&) const = default;

    std::string to_string() const {
        return "(" + std::to_string(level) + "," + std::to_string(i) + "," +
               std::to_string(j) + ")";
    }
};

struct ElementIdHash {
    std::size_t operator()(const ElementId& e) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(e.level + 1);
        h ^= static_cast<std::uint64_t>(e.i) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= static_cast<std::uint64_t>(e.j) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Closed axis-aligned rectangle with exact dyadic corners.
struct Rect {
    Dyadic x0, x1, y0, y1;

    bool operator==(const Rect&) const = default;

    bool contains(const Point& p) const {
        return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
    }

    /// True if the closed intersection with `o` has positive area.
    bool overlaps_interior(const Rect& o) const {
        return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
    }
};

/// Exponents of the level-dependent cell size: width = 2^-first,
/// height = 2^-second.
inline std::pair<int, int> size_exponents(int level) {
    return { (level + 1) / 2, level / 2 };
}

/// (width, height) of a level-`level` element.
inline std::pair<Dyadic, Dyadic> element_size(int level) {
    if (level < 0) throw ParameterError("element level must be non-negative");
    const auto [we, he] = size_exponents(level);
    return { Dyadic::pow2(-we), Dyadic::pow2(-he) };
}

inline Rect rect_of(const ElementId& e) {
    const auto [we, he] = size_exponents(e.level);
    return { Dyadic::from_fraction(e.i, we), Dyadic::from_fraction(e.i + 1, we),
             Dyadic::from_fraction(e.j, he), Dyadic::from_fraction(e.j + 1, he) };
}

inline Point midpoint(const ElementId& e) {
    const auto [we, he] = size_exponents(e.level);
    return { Dyadic::from_fraction(2 * e.i + 1, we + 1),
             Dyadic::from_fraction(2 * e.j + 1, he + 1) };
}

/// Componentwise |midpoint(a) - p|.
inline Point dist(const ElementId& a, const Point& p) {
    const Point m = midpoint(a);
    return { (m.x - p.x).abs(), (m.y - p.y).abs() };
}

/// Componentwise absolute midpoint difference; symmetric.
inline Point dist(const ElementId& a, const ElementId& b) {
    return dist(a, midpoint(b));
}

inline Point dist(const Point& p, const ElementId& b) { return dist(b, p); }

/// The two halves of `e`: split in x on even levels, in y on odd levels.
inline std::pair<ElementId, ElementId> children(const ElementId& e) {
    if (e.level >= kMaxLevel)
        throw LevelOverflowError("element " + e.to_string() + " exceeds max level " +
                                 std::to_string(kMaxLevel));
    if (e.level % 2 == 0)
        return { ElementId{e.level + 1, 2 * e.i, e.j}, ElementId{e.level + 1, 2 * e.i + 1, e.j} };
    return { ElementId{e.level + 1, e.i, 2 * e.j}, ElementId{e.level + 1, e.i, 2 * e.j + 1} };
}

/// Inverse of children(); empty at level 0.
inline std::optional<ElementId> parent(const ElementId& e) {
    if (e.level == 0) return std::nullopt;
    if (e.level % 2 == 1) return ElementId{e.level - 1, e.i / 2, e.j};
    return ElementId{e.level - 1, e.i, e.j / 2};
}

/// The ancestor of `e` at `level` (which must not exceed e.level).
inline ElementId ancestor_at_level(const ElementId& e, int level) {
    const auto [we_hi, he_hi] = size_exponents(e.level);
    const auto [we_lo, he_lo] = size_exponents(level);
    return { level, e.i >> (we_hi - we_lo), e.j >> (he_hi - he_lo) };
}

/// True if inner lies (weakly) inside outer; exact index arithmetic.
inline bool element_contains(const ElementId& outer, const ElementId& inner) {
    return inner.level >= outer.level && ancestor_at_level(inner, outer.level) == outer;
}

} // namespace astmesh

#endif
