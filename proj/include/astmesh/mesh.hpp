#ifndef ASTMESH_MESH_HPP
#define ASTMESH_MESH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "astmesh/element.hpp"

namespace astmesh {

class Mesh;

namespace detail {
void insert_element(Mesh& mesh, const ElementId& e);
void bisect_in_place(Mesh& mesh, const ElementId& e);
} // namespace detail

/// A rectangular T-mesh over the index domain [0,M] x [0,N], carrying the
/// polynomial bi-degree (p,q) used by patch, closure and suitability checks.
///
/// Meshes are immutable values: refinement operations return new meshes.
/// Elements are grouped by level for fast spatial queries; any user-visible
/// ordering is the lexicographic (level, i, j) order of elements_sorted().
class Mesh {
public:
    struct IJ {
        std::int64_t i, j;
        bool operator==(const IJ&) const = default;
    };
    struct IJHash {
        std::size_t operator()(const IJ& v) const {
            std::uint64_t h = static_cast<std::uint64_t>(v.i) * 0x9e3779b97f4a7c15ULL;
            h ^= static_cast<std::uint64_t>(v.j) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
    };
    using LevelSet = std::unordered_set<IJ, IJHash>;

    Mesh(int p, int q, int M, int N);

    int p() const { return p_; }
    int q() const { return q_; }
    int M() const { return M_; }
    int N() const { return N_; }

    std::size_t size() const { return size_; }
    int max_level() const { return max_level_; }

    /// Number of elements of positive level, i.e. |G \ G0| against the
    /// initial mesh with the same parameters.
    std::size_t refined_count() const { return refined_count_; }

    bool contains(const ElementId& e) const {
        auto it = by_level_.find(e.level);
        return it != by_level_.end() && it->second.count(IJ{e.i, e.j}) > 0;
    }

    /// Levels present in the mesh mapped to their (i,j) sets.
    const std::map<int, LevelSet>& by_level() const { return by_level_; }

    /// All elements in lexicographic (level, i, j) order.
    std::vector<ElementId> elements_sorted() const;

    template <typename F>
    void for_each(F&& f) const {
        for (const auto& [level, set] : by_level_)
            for (const IJ& v : set) f(ElementId{level, v.i, v.j});
    }

    bool same_parameters(const Mesh& o) const {
        return p_ == o.p_ && q_ == o.q_ && M_ == o.M_ && N_ == o.N_;
    }

    bool operator==(const Mesh& o) const;

    /// Grid extents at `level`: elements have 0 <= i < columns, 0 <= j < rows.
    std::int64_t columns(int level) const;
    std::int64_t rows(int level) const;
    bool in_bounds(const ElementId& e) const;

private:
    void insert(const ElementId& e);
    void erase(const ElementId& e);

    friend void detail::insert_element(Mesh& mesh, const ElementId& e);
    friend void detail::bisect_in_place(Mesh& mesh, const ElementId& e);

    int p_, q_, M_, N_;
    std::map<int, LevelSet> by_level_;
    std::size_t size_ = 0;
    std::size_t refined_count_ = 0;
    int max_level_ = 0;
};

/// The M x N tensor-product mesh of unit squares.
Mesh initial_mesh(int p, int q, int M, int N);

/// The k-th uniform refinement of the initial mesh: all elements at level k.
Mesh uniform_mesh(int p, int q, int M, int N, int k);

/// Replace `e` by its two children.
Mesh bisect(const Mesh& mesh, const ElementId& e);

/// Bisect every member of `marks` once; the result does not depend on order.
Mesh bisect_set(const Mesh& mesh, const std::vector<ElementId>& marks);

/// Outcome of validate_partition(). `ok` is false iff a violation was found,
/// in which case `message` describes the first one in deterministic order.
struct ValidationReport {
    bool ok = true;
    std::string message;
};

/// Checks the mesh invariants: index bounds, no element nested inside
/// another, and exact total area M*N.
ValidationReport validate_partition(const Mesh& mesh);

} // namespace astmesh

#endif
