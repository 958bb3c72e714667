// Command-line driver: create, refine, check, overlay, measure and render
// analysis-suitable T-meshes stored as astmesh/1 JSON documents.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "astmesh/bench.hpp"
#include "astmesh/io.hpp"
#include "astmesh/overlay.hpp"
#include "astmesh/refinement.hpp"
#include "astmesh/topology.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    out << content;
}

astmesh::Mesh load_mesh(const std::string& path) {
    return astmesh::parse(read_file(path));
}

void save_mesh(const std::string& path, const astmesh::Mesh& mesh) {
    write_file(path, astmesh::serialize(mesh) + "\n");
}

// "l,i,j[;l,i,j...]" -> element list
std::vector<astmesh::ElementId> parse_marks(const std::string& text) {
    std::vector<astmesh::ElementId> out;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ';')) {
        astmesh::ElementId e;
        char c1 = 0, c2 = 0;
        std::istringstream fields(item);
        if (!(fields >> e.level >> c1 >> e.i >> c2 >> e.j) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--mark", "expected \"l,i,j\" triples: " + item);
        out.push_back(e);
    }
    if (out.empty()) throw CLI::ValidationError("--mark", "no elements given");
    return out;
}

std::string segment_text(const astmesh::Segment& s) {
    using astmesh::Axis;
    const std::string span = std::string(s.lo_closed ? "[" : "(") + s.lo.to_string() + "," +
                             s.hi.to_string() + (s.hi_closed ? "]" : ")");
    if (s.along == Axis::x) return span + " x {" + s.line.to_string() + "}";
    return "{" + s.line.to_string() + "} x " + span;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Admissibility-preserving refinement of analysis-suitable T-meshes"};
    app.require_subcommand(1);

    int p = 2, q = 2, M = 1, N = 1, level = 0, steps = 1, runs = 1, scale = 50;
    std::uint64_t seed = 0;
    std::string mesh_path, out_path, mark_text, highlight_text, policy_name, csv_path;
    std::string path_a, path_b;
    bool trace = false, with_extensions = false;
    bool check_as = false, check_adm = false, check_qu = false;

    auto add_degrees = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "polynomial degree in x")->required();
        cmd->add_option("--q", q, "polynomial degree in y")->required();
        cmd->add_option("--m", M, "domain extent in x")->required();
        cmd->add_option("--n", N, "domain extent in y")->required();
    };

    CLI::App* cmd_new = app.add_subcommand("new", "write an initial tensor-product mesh");
    add_degrees(cmd_new);
    cmd_new->add_option("-o,--out", out_path, "output mesh file")->required();

    CLI::App* cmd_uniform = app.add_subcommand("uniform", "write a uniformly refined mesh");
    add_degrees(cmd_uniform);
    cmd_uniform->add_option("--level", level, "uniform refinement level")->required();
    cmd_uniform->add_option("-o,--out", out_path, "output mesh file")->required();

    CLI::App* cmd_refine = app.add_subcommand("refine", "refine marked elements with closure");
    cmd_refine->add_option("--mesh", mesh_path, "input mesh file")->required();
    cmd_refine->add_option("--mark", mark_text, "marked elements \"l,i,j[;l,i,j...]\"")
        ->required();
    cmd_refine->add_option("-o,--out", out_path, "output mesh file")->required();
    cmd_refine->add_flag("--trace", trace, "print the bisection order");

    CLI::App* cmd_check = app.add_subcommand("check", "verify mesh properties");
    cmd_check->add_option("--mesh", mesh_path, "input mesh file")->required();
    cmd_check->add_flag("--as", check_as, "analysis-suitability only");
    cmd_check->add_flag("--admissible", check_adm, "admissibility only");
    cmd_check->add_flag("--quasi-uniform", check_qu, "local quasi-uniformity only");

    CLI::App* cmd_overlay = app.add_subcommand("overlay", "coarsest common refinement");
    cmd_overlay->add_option("mesh_a", path_a, "first mesh file")->required();
    cmd_overlay->add_option("mesh_b", path_b, "second mesh file")->required();
    cmd_overlay->add_option("-o,--out", out_path, "output mesh file")->required();

    CLI::App* cmd_ext = app.add_subcommand("extensions", "list T-junctions and extensions");
    cmd_ext->add_option("--mesh", mesh_path, "input mesh file")->required();

    CLI::App* cmd_bench = app.add_subcommand("bench", "run refinement sequences");
    add_degrees(cmd_bench);
    cmd_bench->add_option("--policy", policy_name, "random or corner")
        ->required()
        ->check(CLI::IsMember({"random", "corner"}));
    cmd_bench->add_option("--steps", steps, "refinement steps per run")->required();
    cmd_bench->add_option("--runs", runs, "number of runs (random policy)");
    cmd_bench->add_option("--seed", seed, "base seed (random policy)");
    cmd_bench->add_option("--csv", csv_path, "write per-step statistics CSV")->required();

    CLI::App* cmd_render = app.add_subcommand("render", "render a mesh as SVG");
    cmd_render->add_option("--mesh", mesh_path, "input mesh file")->required();
    cmd_render->add_option("-o,--out", out_path, "output SVG file")->required();
    cmd_render->add_option("--scale", scale, "pixels per index unit");
    cmd_render->add_option("--highlight", highlight_text, "elements to highlight");
    cmd_render->add_flag("--extensions", with_extensions, "draw T-junction extensions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_new->parsed()) {
            save_mesh(out_path, astmesh::initial_mesh(p, q, M, N));
        } else if (cmd_uniform->parsed()) {
            save_mesh(out_path, astmesh::uniform_mesh(p, q, M, N, level));
        } else if (cmd_refine->parsed()) {
            const astmesh::Mesh mesh = load_mesh(mesh_path);
            std::vector<astmesh::ElementId> order;
            const astmesh::Mesh refined =
                astmesh::refine(mesh, parse_marks(mark_text), &order);
            if (trace)
                for (const astmesh::ElementId& e : order)
                    std::cout << "bisect " << e.to_string() << "\n";
            save_mesh(out_path, refined);
        } else if (cmd_check->parsed()) {
            const astmesh::Mesh mesh = load_mesh(mesh_path);
            const bool all = !check_as && !check_adm && !check_qu;
            bool ok = true;
            if (all || check_adm) {
                const bool adm = astmesh::check_admissible(mesh);
                std::cout << "admissible: " << (adm ? "ok" : "FAIL") << "\n";
                ok = ok && adm;
            }
            if (all || check_qu) {
                const auto witness = astmesh::check_quasi_uniformity(mesh);
                std::cout << "quasi-uniform: " << (witness ? "FAIL" : "ok");
                if (witness)
                    std::cout << " (" << witness->first.to_string() << " vs "
                              << witness->second.to_string() << ")";
                std::cout << "\n";
                ok = ok && !witness;
            }
            if (all || check_as) {
                const auto crossing = astmesh::find_extension_crossing(mesh);
                std::cout << "analysis-suitable: " << (crossing ? "FAIL" : "ok");
                if (crossing)
                    std::cout << " (" << segment_text(crossing->horizontal.full()) << " meets "
                              << segment_text(crossing->vertical.full()) << ")";
                std::cout << "\n";
                ok = ok && !crossing;
            }
            return ok ? kExitOk : kExitCheckFailed;
        } else if (cmd_overlay->parsed()) {
            save_mesh(out_path, astmesh::overlay(load_mesh(path_a), load_mesh(path_b)));
        } else if (cmd_ext->parsed()) {
            const astmesh::Mesh mesh = load_mesh(mesh_path);
            for (const astmesh::TJunctionExtension& ext :
                 astmesh::t_junction_extensions(mesh)) {
                std::cout << astmesh::tjunction_symbol(ext.tj.type) << " at ("
                          << ext.tj.node.x.to_string() << ", " << ext.tj.node.y.to_string()
                          << ") edge " << segment_text(ext.edge) << " face "
                          << segment_text(ext.face) << "\n";
            }
        } else if (cmd_bench->parsed()) {
            std::vector<astmesh::RunStats> stats;
            if (policy_name == "corner") {
                stats.push_back(astmesh::experiment_corner(p, q, M, N, steps).stats);
            } else {
                stats = astmesh::experiment_random(p, q, M, N, steps, runs, seed).per_run;
            }
            std::ostringstream csv;
            astmesh::write_csv(csv, stats);
            write_file(csv_path, csv.str());
            for (std::size_t r = 0; r < stats.size(); ++r)
                std::cout << "run " << r << ": elements " << stats[r].final_elements
                          << ", generated " << stats[r].final_refined << ", ratio "
                          << stats[r].final_ratio() << "\n";
        } else if (cmd_render->parsed()) {
            const astmesh::Mesh mesh = load_mesh(mesh_path);
            astmesh::RenderOptions options;
            options.scale = scale;
            options.extensions = with_extensions;
            if (!highlight_text.empty()) options.highlight = parse_marks(highlight_text);
            write_file(out_path, astmesh::render_svg(mesh, options));
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const astmesh::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const astmesh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
