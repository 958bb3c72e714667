#include <doctest.h>

#include "astmesh/io.hpp"
#include "astmesh/topology.hpp"
#include "support.hpp"

using namespace astmesh;

TEST_CASE("canonical serialization") {
    CHECK(serialize(initial_mesh(2, 2, 1, 1)) ==
          "{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
          "\"elements\":[[0,0,0]]}");

    // element order is canonical regardless of construction order
    Mesh a(2, 2, 2, 1), b(2, 2, 2, 1);
    detail::insert_element(a, {0, 0, 0});
    detail::insert_element(a, {0, 1, 0});
    detail::insert_element(b, {0, 1, 0});
    detail::insert_element(b, {0, 0, 0});
    CHECK(serialize(a) == serialize(b));
}

TEST_CASE("round trip on random meshes") {
    SplitMix64 rng(101);
    for (int t = 0; t < 50; ++t) {
        const int p = 2 + int(rng.below(4)), q = 2 + int(rng.below(4));
        const Mesh mesh = testing::random_admissible(rng, p, q, 1 + int(rng.below(5)),
                                                     1 + int(rng.below(5)),
                                                     int(rng.below(10)));
        const Mesh back = parse(serialize(mesh));
        CHECK(back == mesh);
        CHECK(serialize(back) == serialize(mesh));
    }
}

TEST_CASE("parse rejects malformed documents") {
    CHECK_THROWS_AS(parse("not json"), FormatError);
    CHECK_THROWS_AS(parse("[1,2,3]"), FormatError);
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/2\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,0,0]]}"),
                    FormatError);
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,"
                          "\"elements\":[[0,0,0]]}"),
                    FormatError);
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,0]]}"),
                    FormatError);
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":1,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,0,0]]}"),
                    FormatError);

    // overlapping elements: parent and child together
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,0,0],[1,0,0]]}"),
                    FormatError);
    // duplicate element
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,0,0],[0,0,0]]}"),
                    FormatError);
    // out of bounds
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
                          "\"elements\":[[0,1,0]]}"),
                    FormatError);
    // incomplete cover
    CHECK_THROWS_AS(parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":2,\"N\":1,"
                          "\"elements\":[[0,0,0]]}"),
                    FormatError);
}

TEST_CASE("error messages carry element coordinates") {
    try {
        parse("{\"format\":\"astmesh/1\",\"p\":2,\"q\":2,\"M\":1,\"N\":1,"
              "\"elements\":[[0,0,0],[1,0,0]]}");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(std::string(e.what()).find("(1,0,0)") != std::string::npos);
    }
}

TEST_CASE("svg rendering") {
    const Mesh mesh = initial_mesh(2, 2, 2, 2);
    RenderOptions options;
    const std::string svg = render_svg(mesh, options);
    CHECK(svg.find("viewBox=\"0 0 100 100\"") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') == 6);  // svg, 4 rects, closing
    CHECK(svg.find("<rect x=\"0\" y=\"50\" width=\"50\" height=\"50\"") !=
          std::string::npos);

    // deterministic
    CHECK(render_svg(mesh, options) == svg);

    // highlight switches the fill of the listed elements
    options.highlight = { {0, 0, 0} };
    const std::string lit = render_svg(mesh, options);
    CHECK(lit.find("#b3d9f2") != std::string::npos);
    CHECK(lit != svg);

    // extension overlay draws stroked segments
    const Mesh with_tj = bisect(initial_mesh(2, 2, 5, 5), {0, 2, 2});
    RenderOptions with_ext;
    with_ext.scale = 10;
    with_ext.extensions = true;
    const std::string ext = render_svg(with_tj, with_ext);
    CHECK(ext.find("<line") != std::string::npos);
    CHECK(ext.find("stroke-dasharray") != std::string::npos);
    with_ext.extensions = false;
    CHECK(render_svg(with_tj, with_ext).find("<line") == std::string::npos);
}
