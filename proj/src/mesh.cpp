#include "astmesh/mesh.hpp"

#include <algorithm>

namespace astmesh {

Mesh::Mesh(int p, int q, int M, int N) : p_(p), q_(q), M_(M), N_(N) {
    if (p < 2 || q < 2)
        throw ParameterError("degrees must satisfy p,q >= 2 (got p=" + std::to_string(p) +
                             ", q=" + std::to_string(q) + ")");
    if (M <= 0 || N <= 0)
        throw ParameterError("domain extents must be positive (got M=" + std::to_string(M) +
                             ", N=" + std::to_string(N) + ")");
}

std::int64_t Mesh::columns(int level) const {
    return static_cast<std::int64_t>(M_) << size_exponents(level).first;
}

std::int64_t Mesh::rows(int level) const {
    return static_cast<std::int64_t>(N_) << size_exponents(level).second;
}

bool Mesh::in_bounds(const ElementId& e) const {
    return e.level >= 0 && e.level <= kMaxLevel && e.i >= 0 && e.j >= 0 &&
           e.i < columns(e.level) && e.j < rows(e.level);
}

void Mesh::insert(const ElementId& e) {
    if (!by_level_[e.level].insert(IJ{e.i, e.j}).second) return;
    ++size_;
    if (e.level > 0) ++refined_count_;
    max_level_ = std::max(max_level_, e.level);
}

void Mesh::erase(const ElementId& e) {
    auto it = by_level_.find(e.level);
    it->second.erase(IJ{e.i, e.j});
    if (it->second.empty()) by_level_.erase(it);
    --size_;
    if (e.level > 0) --refined_count_;
}

std::vector<ElementId> Mesh::elements_sorted() const {
    std::vector<ElementId> out;
    out.reserve(size_);
    for_each([&](const ElementId& e) { out.push_back(e); });
    std::sort(out.begin(), out.end());
    return out;
}

bool Mesh::operator==(const Mesh& o) const {
    if (!same_parameters(o) || size_ != o.size_) return false;
    for (const auto& [level, set] : by_level_) {
        auto it = o.by_level_.find(level);
        if (it == o.by_level_.end() || it->second != set) return false;
    }
    return true;
}

namespace detail {

void insert_element(Mesh& mesh, const ElementId& e) { mesh.insert(e); }

void bisect_in_place(Mesh& mesh, const ElementId& e) {
    const auto [a, b] = children(e);
    mesh.erase(e);
    mesh.insert(a);
    mesh.insert(b);
}

} // namespace detail

Mesh initial_mesh(int p, int q, int M, int N) {
    Mesh mesh(p, q, M, N);
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n) detail::insert_element(mesh, ElementId{0, m, n});
    return mesh;
}

Mesh uniform_mesh(int p, int q, int M, int N, int k) {
    if (k < 0) throw ParameterError("uniform refinement level must be non-negative");
    if (k > kMaxLevel) throw LevelOverflowError("uniform level exceeds max level");
    Mesh mesh(p, q, M, N);
    const std::int64_t cols = mesh.columns(k), rws = mesh.rows(k);
    for (std::int64_t i = 0; i < cols; ++i)
        for (std::int64_t j = 0; j < rws; ++j) detail::insert_element(mesh, ElementId{k, i, j});
    return mesh;
}

Mesh bisect(const Mesh& mesh, const ElementId& e) {
    if (!mesh.contains(e))
        throw ElementNotFoundError("element " + e.to_string() + " is not in the mesh");
    Mesh out = mesh;
    detail::bisect_in_place(out, e);
    return out;
}

Mesh bisect_set(const Mesh& mesh, const std::vector<ElementId>& marks) {
    for (const ElementId& e : marks)
        if (!mesh.contains(e))
            throw ElementNotFoundError("element " + e.to_string() + " is not in the mesh");
    Mesh out = mesh;
    for (const ElementId& e : marks) detail::bisect_in_place(out, e);
    return out;
}

ValidationReport validate_partition(const Mesh& mesh) {
    for (const ElementId& e : mesh.elements_sorted()) {
        if (!mesh.in_bounds(e))
            return { false, "element " + e.to_string() + " lies outside the index domain" };
        for (int level = e.level - 1; level >= 0; --level) {
            const ElementId anc = ancestor_at_level(e, level);
            if (mesh.contains(anc))
                return { false, "element " + e.to_string() + " overlaps its ancestor " +
                                anc.to_string() };
        }
    }
    // With nesting excluded, interiors are pairwise disjoint; the exact area
    // sum then decides whether the domain is covered.
    Dyadic area;
    mesh.for_each([&](const ElementId& e) { area = area + Dyadic::pow2(-e.level); });
    const Dyadic expected = Dyadic::from_int(std::int64_t(mesh.M()) * mesh.N());
    if (area != expected)
        return { false, "element areas sum to " + area.to_string() + ", expected " +
                        expected.to_string() };
    return {};
}

} // namespace astmesh
