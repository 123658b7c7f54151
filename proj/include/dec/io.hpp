#pragma once

#include "mesh.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace dec {

/// Mesh document: {"dimension": n, "vertices": [[x, y(, z)], ...], "cells": [[i0, ..., in], ...]}.
inline SimplicialComplex mesh_from_json(const nlohmann::json& j)
{
    try {
        if (!j.is_object()) throw Error(ErrorKind::parse, "mesh document must be a JSON object");
        for (const char* key : {"dimension", "vertices", "cells"})
            if (!j.contains(key)) throw Error(ErrorKind::parse, std::string("mesh document has no \"") + key + "\"");
        const int n = j.at("dimension").get<int>();
        if (n != 2 && n != 3) throw Error(ErrorKind::parse, "dimension must be 2 or 3, got " + std::to_string(n));
        std::vector<Point> pts;
        for (const auto& v : j.at("vertices")) {
            if (!v.is_array() || (v.size() != static_cast<std::size_t>(n) && !(n == 2 && v.size() == 3)))
                throw Error(ErrorKind::parse, "vertex " + std::to_string(pts.size()) + " has the wrong number of coordinates");
            Point p = Point::Zero();
            for (std::size_t i = 0; i < v.size(); ++i) p(static_cast<Eigen::Index>(i)) = v[i].get<double>();
            pts.push_back(p);
        }
        std::vector<std::vector<Index>> cells;
        for (const auto& cell : j.at("cells")) {
            if (!cell.is_array() || cell.size() != static_cast<std::size_t>(n + 1))
                throw Error(ErrorKind::parse, "cell " + std::to_string(cells.size()) + " must list " +
                                                  std::to_string(n + 1) + " vertices");
            std::vector<Index> s;
            for (const auto& i : cell) {
                auto v = i.get<long long>();
                if (v < 0 || v >= static_cast<long long>(pts.size()))
                    throw Error(ErrorKind::parse, "cell " + std::to_string(cells.size()) + " references vertex " +
                                                      std::to_string(v) + " out of range");
                s.push_back(static_cast<Index>(v));
            }
            cells.push_back(std::move(s));
        }
        return build_complex(n, std::move(pts), cells);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("malformed mesh document: ") + e.what());
    }
}

inline SimplicialComplex read_mesh_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, path + ": " + e.what());
    }
    return mesh_from_json(j);
}

inline nlohmann::json mesh_to_json(const SimplicialComplex& c)
{
    const int n = c.dimension();
    nlohmann::json j;
    j["dimension"] = n;
    auto& vs = j["vertices"] = nlohmann::json::array();
    for (Index v = 0; v < c.size(0); ++v) {
        auto row = nlohmann::json::array();
        for (int i = 0; i < n; ++i) row.push_back(c.point(v)(i));
        vs.push_back(row);
    }
    j["cells"] = cells_of(c);
    return j;
}

/// OFF text with triangle faces (z = 0 for every vertex) read as a 2D mesh.
inline SimplicialComplex mesh_from_off(std::istream& in)
{
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::istringstream ls(line);
        std::string t;
        while (ls >> t) tokens.push_back(t);
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) throw Error(ErrorKind::parse, "OFF input ends early");
        return tokens[pos++];
    };
    auto num = [&]() {
        const std::string& t = next();
        try {
            std::size_t used = 0;
            double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse, "OFF: not a number: " + t);
        }
    };
    if (next() != "OFF") throw Error(ErrorKind::parse, "OFF input must start with OFF");
    const auto nv = static_cast<long long>(num()), nf = static_cast<long long>(num());
    num();
    std::vector<Point> pts;
    for (long long i = 0; i < nv; ++i) {
        Point p;
        p << num(), num(), num();
        if (p.z() != 0) throw Error(ErrorKind::parse, "OFF vertex " + std::to_string(i) + " is not in the plane z = 0");
        pts.push_back(p);
    }
    std::vector<std::vector<Index>> cells;
    for (long long f = 0; f < nf; ++f) {
        if (num() != 3) throw Error(ErrorKind::parse, "OFF face " + std::to_string(f) + " is not a triangle");
        std::vector<Index> s;
        for (int i = 0; i < 3; ++i) {
            double v = num();
            if (v < 0 || v >= static_cast<double>(nv))
                throw Error(ErrorKind::parse, "OFF face " + std::to_string(f) + " references a missing vertex");
            s.push_back(static_cast<Index>(v));
        }
        cells.push_back(std::move(s));
    }
    return build_complex(2, std::move(pts), cells);
}

inline SimplicialComplex read_mesh(const std::string& path)
{
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".off") == 0) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
        return mesh_from_off(in);
    }
    return read_mesh_json(path);
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Matrix Market coordinate output, entries sorted by (row, column), 1-based.
inline void write_matrix_market(std::ostream& os, const SparseMatrix& m)
{
    std::vector<std::tuple<Eigen::Index, Eigen::Index, double>> e;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) e.emplace_back(it.row(), it.col(), it.value());
    std::sort(e.begin(), e.end());
    os << "%%MatrixMarket matrix coordinate real general\n";
    os << m.rows() << ' ' << m.cols() << ' ' << e.size() << '\n';
    for (const auto& [r, c, v] : e) os << r + 1 << ' ' << c + 1 << ' ' << format_double(v) << '\n';
}

inline void write_matrix_market(const std::string& path, const SparseMatrix& m)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::invalid, "cannot write " + path);
    write_matrix_market(out, m);
}

inline SparseMatrix read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate real", 0) != 0)
        throw Error(ErrorKind::parse, "not a Matrix Market coordinate real file");
    const bool symmetric = line.find("symmetric") != std::string::npos;
    while (std::getline(in, line) && !line.empty() && line[0] == '%') {}
    std::istringstream hs(line);
    long long r = 0, c = 0, nnz = 0;
    if (!(hs >> r >> c >> nnz)) throw Error(ErrorKind::parse, "bad Matrix Market size line");
    std::vector<Triplet> t;
    for (long long k = 0; k < nnz; ++k) {
        long long i, j;
        double v;
        if (!(in >> i >> j >> v)) throw Error(ErrorKind::parse, "Matrix Market file ends early");
        t.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
        if (symmetric && i != j) t.emplace_back(static_cast<int>(j - 1), static_cast<int>(i - 1), v);
    }
    SparseMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

/// Cochain as CSV with header "id,value".
inline void write_cochain_csv(std::ostream& os, const Eigen::VectorXd& w)
{
    os << "id,value\n";
    for (Eigen::Index i = 0; i < w.size(); ++i) os << i << ',' << format_double(w(i)) << '\n';
}

inline void write_cochain_csv(const std::string& path, const Eigen::VectorXd& w)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::invalid, "cannot write " + path);
    write_cochain_csv(out, w);
}

inline Eigen::VectorXd read_cochain_csv(std::istream& in)
{
    std::string line;
    std::vector<std::pair<long long, double>> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("id", 0) == 0) continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::parse, "cochain CSV row without a comma: " + line);
        try {
            rows.emplace_back(std::stoll(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw Error(ErrorKind::parse, "bad cochain CSV row: " + line);
        }
    }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows.size()));
    for (const auto& [i, v] : rows) {
        if (i < 0 || i >= w.size()) throw Error(ErrorKind::parse, "cochain id " + std::to_string(i) + " out of range");
        w(i) = v;
    }
    return w;
}

inline Eigen::VectorXd read_cochain_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
    return read_cochain_csv(in);
}

} // namespace dec
