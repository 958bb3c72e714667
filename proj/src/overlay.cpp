#include "astmesh/overlay.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace astmesh {

namespace {

// An element is dominated iff it is a strict ancestor of another member, so
// walking each member's ancestor chain finds all non-minimal elements.
std::vector<ElementId> minset_of(const std::unordered_set<ElementId, ElementIdHash>& members) {
    std::unordered_set<ElementId, ElementIdHash> dominated;
    for (const ElementId& e : members) {
        ElementId cur = e;
        while (auto up = parent(cur)) {
            cur = *up;
            if (members.count(cur)) dominated.insert(cur);
        }
    }
    std::vector<ElementId> out;
    out.reserve(members.size() - dominated.size());
    for (const ElementId& e : members)
        if (!dominated.count(e)) out.push_back(e);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<ElementId> minset(const std::vector<ElementId>& s) {
    return minset_of({ s.begin(), s.end() });
}

Mesh overlay(const Mesh& g1, const Mesh& g2) {
    if (!g1.same_parameters(g2))
        throw ParameterError("overlay requires identical (p,q,M,N) parameters");

    std::unordered_set<ElementId, ElementIdHash> members;
    members.reserve(g1.size() + g2.size());
    g1.for_each([&](const ElementId& e) { members.insert(e); });
    g2.for_each([&](const ElementId& e) { members.insert(e); });

    Mesh out(g1.p(), g1.q(), g1.M(), g1.N());
    for (const ElementId& e : minset_of(members)) detail::insert_element(out, e);
    assert(validate_partition(out).ok);
    return out;
}

bool check_overlay_bound(const Mesh& g1, const Mesh& g2) {
    const Mesh joint = overlay(g1, g2);
    const std::size_t initial = std::size_t(g1.M()) * g1.N();
    return joint.size() + initial <= g1.size() + g2.size();
}

} // namespace astmesh
