#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "leastres/grid_fn.hpp"
#include "leastres/poly_body.hpp"
#include "leastres/verify.hpp"

namespace leastres::io {

using Json = nlohmann::ordered_json;

// 17 significant digits; non-finite values throw IoError.
std::string number(double v);
// Pretty printer with fixed number formatting, so equal documents give equal bytes.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

Json domain_to_json(const Domain& d);
Domain domain_from_json(const Json& j);

// {format, version, domain, M, nodes: [[x, y], ...], values}
Json mesh_to_json(const GridFn& u);
GridFn mesh_from_json(const Json& j);
void save_mesh(const std::string& path, const GridFn& u);
GridFn load_mesh(const std::string& path);
Json parse(const std::string& text);

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

// Lower surface of u, one vertex per node.
std::string obj(const GridFn& u);
std::string obj(const PolyBody& c);

Json report_to_json(const VerificationReport& r);

}  // namespace leastres::io
