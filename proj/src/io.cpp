#include "astmesh/io.hpp"

#include <charconv>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "astmesh/topology.hpp"

namespace astmesh {

namespace {
constexpr const char* kFormatTag = "astmesh/1";
}

std::string serialize(const Mesh& mesh) {
    nlohmann::ordered_json doc;
    doc["format"] = kFormatTag;
    doc["p"] = mesh.p();
    doc["q"] = mesh.q();
    doc["M"] = mesh.M();
    doc["N"] = mesh.N();
    auto& elems = doc["elements"] = nlohmann::ordered_json::array();
    for (const ElementId& e : mesh.elements_sorted())
        elems.push_back({ e.level, e.i, e.j });
    return doc.dump();
}

Mesh parse(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }

    if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
        throw FormatError("mesh document must be an object with a \"format\" tag");
    if (doc["format"] != kFormatTag)
        throw FormatError("unsupported format tag \"" +
                          doc["format"].get<std::string>() + "\" (expected \"" +
                          kFormatTag + "\")");
    for (const char* key : { "p", "q", "M", "N" })
        if (!doc.contains(key) || !doc[key].is_number_integer())
            throw FormatError(std::string("missing or non-integer field \"") + key + "\"");
    if (!doc.contains("elements") || !doc["elements"].is_array())
        throw FormatError("missing \"elements\" array");

    Mesh mesh = [&]() {
        try {
            return Mesh(doc["p"].get<int>(), doc["q"].get<int>(), doc["M"].get<int>(),
                        doc["N"].get<int>());
        } catch (const ParameterError& e) {
            throw FormatError(e.what());
        }
    }();
    std::unordered_set<ElementId, ElementIdHash> seen;
    for (const auto& entry : doc["elements"]) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer() || !entry[2].is_number_integer())
            throw FormatError("elements must be [level,i,j] integer triples");
        const ElementId e{ entry[0].get<int>(), entry[1].get<std::int64_t>(),
                           entry[2].get<std::int64_t>() };
        if (!mesh.in_bounds(e))
            throw FormatError("element " + e.to_string() + " lies outside the index domain");
        if (!seen.insert(e).second)
            throw FormatError("duplicate element " + e.to_string());
        detail::insert_element(mesh, e);
    }

    const ValidationReport report = validate_partition(mesh);
    if (!report.ok) throw FormatError("invalid partition: " + report.message);
    return mesh;
}

namespace {

std::string num(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

struct SvgMapper {
    double scale;
    double height;

    std::string x(const Dyadic& v) const { return num(v.to_double() * scale); }
    // SVG y grows downward; the index domain grows upward.
    std::string y(const Dyadic& v) const { return num(height - v.to_double() * scale); }
};

} // namespace

std::string render_svg(const Mesh& mesh, const RenderOptions& options) {
    const double w = double(mesh.M()) * options.scale;
    const double h = double(mesh.N()) * options.scale;
    const SvgMapper map{ double(options.scale), h };
    const std::unordered_set<ElementId, ElementIdHash> marked(options.highlight.begin(),
                                                              options.highlight.end());

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\""
        << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
    for (const ElementId& e : mesh.elements_sorted()) {
        const Rect r = rect_of(e);
        svg << "  <rect x=\"" << map.x(r.x0) << "\" y=\"" << map.y(r.y1) << "\" width=\""
            << num((r.x1 - r.x0).to_double() * options.scale) << "\" height=\""
            << num((r.y1 - r.y0).to_double() * options.scale) << "\" fill=\""
            << (marked.count(e) ? "#b3d9f2" : "white")
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    if (options.extensions) {
        for (const TJunctionExtension& ext : t_junction_extensions(mesh)) {
            for (const auto& [seg, dash] : { std::pair{ ext.edge, false },
                                             std::pair{ ext.face, true } }) {
                std::string x1, y1, x2, y2;
                if (seg.along == Axis::x) {
                    x1 = map.x(seg.lo); x2 = map.x(seg.hi);
                    y1 = y2 = map.y(seg.line);
                } else {
                    y1 = map.y(seg.lo); y2 = map.y(seg.hi);
                    x1 = x2 = map.x(seg.line);
                }
                svg << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
                    << "\" y2=\"" << y2 << "\" stroke=\"#c0392b\" stroke-width=\"2\""
                    << (dash ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
            }
            svg << "  <circle cx=\"" << map.x(ext.tj.node.x) << "\" cy=\""
                << map.y(ext.tj.node.y) << "\" r=\"3\" fill=\"#c0392b\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace astmesh
