#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "octplane.h"

using nlohmann::json;

namespace {

struct Ctx {
  octplane_ctx* p = nullptr;
  ~Ctx() { octplane_ctx_destroy(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { octplane_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

json oct_basis(const std::string& alg, int idx) {
  json coords = json::array();
  for (int i = 0; i < 8; ++i) {
    if (alg == "q")
      coords.push_back(i == idx ? "1/1" : "0/1");
    else if (alg == "qsqrt2")
      coords.push_back(json::array({i == idx ? "1/1" : "0/1", "0/1"}));
  }
  return json{{"alg", alg}, {"coords", coords}};
}

}  // namespace

TEST_CASE("version") { CHECK(std::strlen(octplane_version()) > 0); }

TEST_CASE("context creation and config errors") {
  Ctx good;
  CHECK(octplane_ctx_create(R"({"field":"q","polarity":"i","samples":10,"seed":1})", &good.p) ==
        OCTPLANE_OK);
  CHECK(good.p != nullptr);

  Ctx bad;
  CHECK(octplane_ctx_create(R"({"field":"q","polarity":"iv"})", &bad.p) == OCTPLANE_ERR_CONFIG);
  CHECK(bad.p == nullptr);
  CHECK(std::strlen(octplane_last_error(nullptr)) > 0);

  Ctx bad2;
  CHECK(octplane_ctx_create("not json", &bad2.p) == OCTPLANE_ERR_CONFIG);
  Ctx bad3;
  CHECK(octplane_ctx_create(R"({"polarity":"i"})", &bad3.p) == OCTPLANE_ERR_CONFIG);
  Ctx bad4;
  CHECK(octplane_ctx_create(R"({"field":"q","checks":["no-such-check"]})", &bad4.p) ==
        OCTPLANE_ERR_CONFIG);
  CHECK(octplane_ctx_create(nullptr, nullptr) == OCTPLANE_ERR_BAD_INPUT);
}

TEST_CASE("run checks produces a schema-valid deterministic report") {
  const char* cfg = R"({"field":"q","polarity":"i","samples":40,"seed":42})";
  Ctx ctx;
  REQUIRE(octplane_ctx_create(cfg, &ctx.p) == OCTPLANE_OK);
  Str r1;
  CHECK(octplane_run_checks(ctx.p, &r1.p) == OCTPLANE_OK);
  json rep = json::parse(r1.str());
  CHECK(rep.at("version") == 1);
  CHECK(rep.at("config").at("field") == "q");
  CHECK(rep.at("results").is_array());
  for (const auto& res : rep["results"]) {
    CHECK(res.contains("check"));
    CHECK(res.contains("pass"));
    CHECK(res.contains("samples"));
    CHECK(res.contains("seed"));
    CHECK(res.at("pass").get<bool>());
  }
  // identical config, fresh context: byte-identical report
  Ctx ctx2;
  REQUIRE(octplane_ctx_create(cfg, &ctx2.p) == OCTPLANE_OK);
  Str r2;
  CHECK(octplane_run_checks(ctx2.p, &r2.p) == OCTPLANE_OK);
  CHECK(r1.str() == r2.str());
}

TEST_CASE("check failures are reported with counterexamples") {
  Ctx ctx;
  REQUIRE(octplane_ctx_create(
              R"({"field":"q","polarity":"i","samples":40,"seed":42,"fault_adjoint":true})",
              &ctx.p) == OCTPLANE_OK);
  Str rep;
  CHECK(octplane_run_checks(ctx.p, &rep.p) == OCTPLANE_ERR_CHECKS_FAILED);
  json r = json::parse(rep.str());
  bool phi_failed = false;
  for (const auto& res : r["results"])
    if (res["check"] == "phi" && !res["pass"].get<bool>())
      phi_failed = res.contains("counterexample");
  CHECK(phi_failed);
}

TEST_CASE("checks subset selection marks the rest skipped") {
  Ctx ctx;
  REQUIRE(octplane_ctx_create(
              R"({"field":"q","polarity":"i","samples":20,"seed":1,"checks":["phi"]})",
              &ctx.p) == OCTPLANE_OK);
  Str rep;
  CHECK(octplane_run_checks(ctx.p, &rep.p) == OCTPLANE_OK);
  json r = json::parse(rep.str());
  int ran = 0, skipped = 0;
  for (const auto& res : r["results"]) {
    if (res.value("skipped", false))
      ++skipped;
    else
      ++ran;
  }
  CHECK(ran == 1);
  CHECK(skipped > 0);
}

TEST_CASE("absolute points") {
  Ctx ctx;
  REQUIRE(octplane_ctx_create(R"({"field":"q","polarity":"i","seed":7})", &ctx.p) == OCTPLANE_OK);
  Str empty;
  CHECK(octplane_absolute_points(ctx.p, 0, &empty.p) == OCTPLANE_OK);
  CHECK(json::parse(empty.str()).size() == 0);
  Str pts;
  CHECK(octplane_absolute_points(ctx.p, 5, &pts.p) == OCTPLANE_OK);
  json arr = json::parse(pts.str());
  CHECK(arr.size() == 5);
  for (const auto& p : arr) CHECK(p.at("t") == "affine");

  // type iv points all have a = 0
  Ctx ctx4;
  REQUIRE(octplane_ctx_create(R"({"field":"f2t","polarity":"iv","seed":7})", &ctx4.p) ==
          OCTPLANE_OK);
  Str pts4;
  CHECK(octplane_absolute_points(ctx4.p, 4, &pts4.p) == OCTPLANE_OK);
  for (const auto& p : json::parse(pts4.str())) {
    for (const auto& coord : p.at("a").at("coords")) CHECK(coord.at("num").size() == 0);
  }
}

TEST_CASE("octonion multiplication over the wire") {
  Str out;
  json x = oct_basis("q", 1), y = oct_basis("q", 2);
  REQUIRE(octplane_octonion_multiply(x.dump().c_str(), y.dump().c_str(), &out.p) == OCTPLANE_OK);
  CHECK(json::parse(out.str()) == oct_basis("q", 3));  // e1 e2 = e3
  Str bad;
  CHECK(octplane_octonion_multiply("{}", y.dump().c_str(), &bad.p) == OCTPLANE_ERR_BAD_INPUT);
  Str mismatch;
  json z = oct_basis("qsqrt2", 1);
  CHECK(octplane_octonion_multiply(x.dump().c_str(), z.dump().c_str(), &mismatch.p) ==
        OCTPLANE_ERR_DOMAIN);
}

TEST_CASE("polarity application over the wire") {
  Ctx ctx;
  REQUIRE(octplane_ctx_create(R"({"field":"q","polarity":"i"})", &ctx.p) == OCTPLANE_OK);
  json point{{"t", "ideal"}, {"c", oct_basis("q", 1)}};
  Str line;
  REQUIRE(octplane_polarity_apply_point(ctx.p, point.dump().c_str(), &line.p) == OCTPLANE_OK);
  json lj = json::parse(line.str());
  CHECK(lj.at("t") == "vertical");
  Str back;
  REQUIRE(octplane_polarity_apply_line(ctx.p, line.str().c_str(), &back.p) == OCTPLANE_OK);
  CHECK(json::parse(back.str()) == point);  // involution
}

TEST_CASE("structure table csv") {
  Str csv;
  REQUIRE(octplane_structure_table_csv("q", &csv.p) == OCTPLANE_OK);
  CHECK(csv.str().find("e0,1,2,3,4,5,6,7,8") != std::string::npos);
  Str bad;
  CHECK(octplane_structure_table_csv("zz", &bad.p) == OCTPLANE_ERR_CONFIG);
}
