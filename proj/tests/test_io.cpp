#include "catch_amalgamated.hpp"

#include <dec/dec.hpp>

#include <sstream>

using namespace dec;

namespace {

std::string data(const std::string& name) { return std::string(DEC_TEST_DATA) + "/" + name; }

ErrorKind kind_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::invalid;
}

bool same_mesh(const SimplicialComplex& a, const SimplicialComplex& b)
{
    if (a.dimension() != b.dimension()) return false;
    for (int k = 0; k <= a.dimension(); ++k)
        if (a.size(k) != b.size(k)) return false;
    for (Index v = 0; v < a.size(0); ++v)
        if (a.point(v) != b.point(v)) return false;
    return cells_of(a) == cells_of(b);
}

} // namespace

TEST_CASE("JSON meshes round-trip")
{
    for (auto name : {"single_tri.json", "two_tri.json", "tet.json"}) {
        auto c = read_mesh(data(name));
        auto again = mesh_from_json(nlohmann::json::parse(mesh_to_json(c).dump()));
        CHECK(same_mesh(c, again));
    }
    auto g = generate_fig8(3.5);
    CHECK(same_mesh(g, mesh_from_json(mesh_to_json(g))));
    CHECK(mesh_to_json(g).dump() == mesh_to_json(mesh_from_json(mesh_to_json(g))).dump());
}

TEST_CASE("OFF input")
{
    auto c = read_mesh(data("square.off"));
    CHECK(c.dimension() == 2);
    CHECK(c.size(0) == 4);
    CHECK(c.size(1) == 5);
    CHECK(c.size(2) == 2);
    std::istringstream lifted("OFF\n3 1 0\n0 0 0\n1 0 1\n0 1 0\n3 0 1 2\n");
    CHECK(kind_of([&] { mesh_from_off(lifted); }) == ErrorKind::parse);
    std::istringstream quad("OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    CHECK(kind_of([&] { mesh_from_off(quad); }) == ErrorKind::parse);
    std::istringstream shortf("OFF\n3 1 0\n0 0 0\n1 0 0\n");
    CHECK(kind_of([&] { mesh_from_off(shortf); }) == ErrorKind::parse);
}

TEST_CASE("mesh input errors")
{
    CHECK(kind_of([] { read_mesh(data("bad_cell.json")); }) == ErrorKind::parse);
    CHECK(kind_of([] { read_mesh(data("degenerate.json")); }) == ErrorKind::degenerate);
    CHECK(kind_of([] { read_mesh(data("missing.json")); }) == ErrorKind::parse);
    CHECK(kind_of([] { mesh_from_json(nlohmann::json::parse(R"({"dimension": 4, "vertices": [], "cells": []})")); }) ==
          ErrorKind::parse);
    CHECK(kind_of([] { mesh_from_json(nlohmann::json::parse(R"({"dimension": 2, "vertices": [[0, "x"]], "cells": []})")); }) ==
          ErrorKind::parse);
    CHECK(kind_of([] { mesh_from_json(nlohmann::json::parse(R"([1, 2])")); }) == ErrorKind::parse);
}

TEST_CASE("Matrix Market round trip and layout")
{
    auto c = generate_fig8(2);
    SparseMatrix m = assemble_whitney(c, 1).matrix;
    std::ostringstream os;
    write_matrix_market(os, m);
    const std::string text = os.str();
    CHECK(text.rfind("%%MatrixMarket matrix coordinate real general\n", 0) == 0);
    std::istringstream is(text);
    SparseMatrix back = read_matrix_market(is);
    CHECK(back.rows() == m.rows());
    CHECK((Eigen::MatrixXd(back) - Eigen::MatrixXd(m)).norm() == 0);

    std::ostringstream again;
    write_matrix_market(again, back);
    CHECK(again.str() == text);

    std::istringstream sym("%%MatrixMarket matrix coordinate real symmetric\n% note\n2 2 2\n1 1 4\n2 1 -1\n");
    Eigen::MatrixXd s(read_matrix_market(sym));
    CHECK(s(0, 1) == -1);
    CHECK(s(1, 0) == -1);
    std::istringstream bad("hello\n");
    CHECK(kind_of([&] { read_matrix_market(bad); }) == ErrorKind::parse);
}

TEST_CASE("cochain CSV round trip")
{
    Eigen::VectorXd w(4);
    w << 0.1, -2.5e-17, 3.0, 1.0 / 3.0;
    std::ostringstream os;
    write_cochain_csv(os, w);
    std::istringstream is(os.str());
    Eigen::VectorXd back = read_cochain_csv(is);
    CHECK(back == w);
    std::istringstream bad("id,value\n0;1\n");
    CHECK(kind_of([&] { read_cochain_csv(bad); }) == ErrorKind::parse);
    std::istringstream gap("id,value\n0,1\n5,2\n");
    CHECK(kind_of([&] { read_cochain_csv(gap); }) == ErrorKind::parse);
    CHECK(format_double(0.1) == "0.10000000000000001");
}
