#include <cmath>
#include <filesystem>
#include <limits>

#include "doctest.h"
#include "leastres/io.hpp"

using namespace leastres;

namespace {

GridFn sample_mesh() {
  GridPtr g = make_grid(Domain::disk(Vec2(0.1, -0.2), 1.0, 1.0 / 8));
  std::vector<double> v;
  for (int k = 0; k < g->size(); ++k) {
    v.push_back(g->is_boundary(k) ? 1.0 : std::min(1.0, (g->node(k) - Vec2(0.1, -0.2)).squaredNorm() / 3.0));
  }
  return GridFn(g, v, 1.0);
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(io::number(1.0) == "1.0");
  CHECK(io::number(-3.0) == "-3.0");
  CHECK(io::number(0.1) == "0.10000000000000001");
  CHECK(io::number(1e300) == "1.0000000000000001e+300");
  CHECK(std::stod(io::number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK_THROWS_AS(io::number(std::numeric_limits<double>::quiet_NaN()), IoError);
  CHECK_THROWS_AS(io::number(INFINITY), IoError);
  CHECK(io::dump(io::Json{{"a", 2.0}, {"b", {1, 2}}}) == "{\n  \"a\": 2.0,\n  \"b\": [1, 2]\n}\n");
}

TEST_CASE("mesh round trip is byte identical") {
  GridFn u = sample_mesh();
  std::string a = io::dump(io::mesh_to_json(u));
  GridFn back = io::mesh_from_json(io::parse(a));
  CHECK(back.values() == u.values());
  CHECK(back.height_cap() == u.height_cap());
  CHECK(io::dump(io::mesh_to_json(back)) == a);

  auto path = std::filesystem::temp_directory_path() / "leastres_io_roundtrip.json";
  io::save_mesh(path.string(), u);
  CHECK(io::read_file(path.string()) == a);
  CHECK(io::load_mesh(path.string()).values() == u.values());
  std::filesystem::remove(path);
}

TEST_CASE("shipped solution round trips") {
  const std::string path = std::string(LEASTRES_TEST_DATA) + "/newton_disk_96.json";
  std::string text = io::read_file(path);
  GridFn u = io::load_mesh(path);
  CHECK(u.size() > 7000);
  CHECK(io::dump(io::mesh_to_json(u)) == text);
}

TEST_CASE("bad input") {
  CHECK_THROWS_AS(io::read_file("/nonexistent/dir/mesh.json"), IoError);
  CHECK_THROWS_AS(io::write_file("/nonexistent/dir/mesh.json", "x"), IoError);
  CHECK_THROWS_AS(io::parse("{\"format\": "), IoError);

  io::Json good = io::mesh_to_json(sample_mesh());
  SUBCASE("wrong format tag") {
    good["format"] = "other";
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("wrong version") {
    good["version"] = 2;
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("value count") {
    good["values"].erase(0);
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("moved node") {
    good["nodes"][5][0] = 0.5;
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("missing field") {
    good.erase("M");
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("string where a number belongs") {
    good["values"][3] = "x";
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
  SUBCASE("bad domain") {
    good["domain"]["radius"] = -1.0;
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
    good["domain"]["kind"] = "torus";
    CHECK_THROWS_AS(io::mesh_from_json(good), IoError);
  }
}

TEST_CASE("csv and obj") {
  std::string s = io::csv({"iter", "F"}, {{0, 1.5}, {10, 0.25}});
  CHECK(s == "iter,F\n0,1.5\n10,0.25\n");
  CHECK_THROWS_AS(io::csv({"F"}, {{NAN}}), IoError);

  GridFn u = sample_mesh();
  std::string o = io::obj(u);
  std::size_t v = 0, f = 0;
  for (std::size_t p = 0; p < o.size(); p = o.find('\n', p) + 1) {
    v += o.compare(p, 2, "v ") == 0;
    f += o.compare(p, 2, "f ") == 0;
  }
  CHECK(v == static_cast<std::size_t>(u.size()));
  CHECK(f == u.surface().triangles().size());
}
