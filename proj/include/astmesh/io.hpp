#ifndef ASTMESH_IO_HPP
#define ASTMESH_IO_HPP

#include <string>
#include <vector>

#include "astmesh/mesh.hpp"

namespace astmesh {

/// Canonical JSON document for a mesh:
/// {"format":"astmesh/1","p":..,"q":..,"M":..,"N":..,"elements":[[l,i,j],..]}
/// with elements sorted by (level,i,j). Integer-only, no floating point.
std::string serialize(const Mesh& mesh);

/// Parses and fully validates a mesh document. Throws FormatError for
/// malformed input or unsupported format tags, ParameterError for bad
/// parameters, and FormatError with element coordinates for invariant
/// violations.
Mesh parse(const std::string& text);

struct RenderOptions {
    int scale = 50;                        // pixels per index unit
    std::vector<ElementId> highlight;      // filled in the highlight color
    bool extensions = false;               // draw T-junction extensions
};

/// Deterministic SVG rendering: one rectangle per element, optional
/// highlighted subset and T-junction extension overlay.
std::string render_svg(const Mesh& mesh, const RenderOptions& options = {});

} // namespace astmesh

#endif
