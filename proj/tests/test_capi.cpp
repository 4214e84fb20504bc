// Exercises the shared library strictly through its C surface: every group
// handle, string, and status code crosses the ABI boundary.
#include <cstring>
#include <string>

#include "doctest.h"
#include "groupscope.h"
#include "json.hpp"

namespace {

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { gs_string_free(p); }
  nlohmann::json json() const { return nlohmann::json::parse(p); }
};

struct OwnedGroup {
  gs_group* g = nullptr;
  ~OwnedGroup() { gs_group_free(g); }
};

}  // namespace

TEST_CASE("construction from a spec expression") {
  OwnedGroup q8;
  REQUIRE(gs_group_from_spec("Q(8)", &q8.g) == GS_OK);
  CHECK(gs_group_order(q8.g) == 8);

  OwnedGroup prod;
  REQUIRE(gs_group_from_spec("Q(8) x C(2)", &prod.g) == GS_OK);
  CHECK(gs_group_order(prod.g) == 16);

  gs_group* out = nullptr;
  CHECK(gs_group_from_spec("Frob(20)", &out) == GS_ERR_BAD_PARAMETER);
  CHECK(out == nullptr);
  CHECK(std::strlen(gs_last_error()) > 0);
  CHECK(gs_group_from_spec("C(", &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_group_from_spec("C(0)", &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_group_from_spec("C(100000)", &out) == GS_ERR_ORDER_CAP);
  CHECK(gs_group_from_spec(nullptr, &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_group_from_spec("C(2)", nullptr) == GS_ERR_BAD_PARAMETER);
}

TEST_CASE("construction from a JSON table") {
  OwnedGroup c2;
  REQUIRE(gs_group_from_cayley_json(R"({"order":2,"table":[[0,1],[1,0]]})", &c2.g) == GS_OK);
  CHECK(gs_group_order(c2.g) == 2);

  gs_group* out = nullptr;
  CHECK(gs_group_from_cayley_json("{\"order\": 2}", &out) == GS_ERR_SCHEMA);
  CHECK(gs_group_from_cayley_json("this is not json", &out) == GS_ERR_SCHEMA);
  CHECK(gs_group_from_cayley_json(R"({"order":2,"table":[[0,1],[1,1]]})", &out) ==
        GS_ERR_NOT_A_GROUP);
  CHECK(gs_group_from_cayley_file("/nonexistent/table.json", &out) == GS_ERR_IO);
}

TEST_CASE("info report") {
  OwnedGroup q8;
  REQUIRE(gs_group_from_spec("Q(8)", &q8.g) == GS_OK);
  OwnedString s;
  REQUIRE(gs_group_info_json(q8.g, &s.p) == GS_OK);
  nlohmann::json j = s.json();
  CHECK(j["schema"] == 1);
  CHECK(j["spec"] == "Q(8)");
  CHECK(j["order"] == 8);
  CHECK(j["abelian"] == false);
  CHECK(j["exponent"] == 4);
  CHECK(j["nilpotency_class"] == 2);
  CHECK(j["center"]["order"] == 2);
  CHECK(j["lower_central_series_orders"][0] == 8);
  CHECK(j["lower_central_series_orders"][1] == 2);
  CHECK(j["purely_non_abelian"] == true);

  // a non-nilpotent group reports a null class
  OwnedGroup s3;
  REQUIRE(gs_group_from_spec("D(3)", &s3.g) == GS_OK);
  OwnedString t;
  REQUIRE(gs_group_info_json(s3.g, &t.p) == GS_OK);
  CHECK(t.json()["nilpotency_class"].is_null());
}

TEST_CASE("automorphism listings under each filter") {
  OwnedGroup q8;
  REQUIRE(gs_group_from_spec("Q(8)", &q8.g) == GS_OK);

  OwnedString full;
  REQUIRE(gs_group_aut_json(q8.g, nullptr, &full.p) == GS_OK);
  nlohmann::json jf = full.json();
  CHECK(jf["schema"] == 1);
  CHECK(jf["count"] == 24);
  CHECK(jf["automorphisms"].size() == 24);
  CHECK(jf["automorphisms"][0].size() == 8);

  OwnedString central;
  REQUIRE(gs_group_aut_json(q8.g, "central", &central.p) == GS_OK);
  CHECK(central.json()["count"] == 4);

  OwnedString cls;
  REQUIRE(gs_group_aut_json(q8.g, "class:1", &cls.p) == GS_OK);
  CHECK(cls.json()["count"] == 4);  // class-preserving = inner here

  OwnedString box;
  REQUIRE(gs_group_aut_json(q8.g, "box:gamma2,center", &box.p) == GS_OK);
  CHECK(box.json()["count"] == 4);
  CHECK(box.json()["filter"] == "box:gamma2,center");

  OwnedString boxfull;
  REQUIRE(gs_group_aut_json(q8.g, "box:full,trivial", &boxfull.p) == GS_OK);
  CHECK(boxfull.json()["count"] == 24);  // no constraint beyond Aut itself

  char* out = nullptr;
  CHECK(gs_group_aut_json(q8.g, "bogus", &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_group_aut_json(q8.g, "box:gamma2", &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_group_aut_json(q8.g, "class:x", &out) == GS_ERR_BAD_PARAMETER);
}

TEST_CASE("single-statement checks") {
  OwnedGroup q8;
  REQUIRE(gs_group_from_spec("Q(8)", &q8.g) == GS_OK);

  OwnedString s;
  REQUIRE(gs_check_json(q8.g, "Q(8)", "C4.5", 0, &s.p) == GS_OK);
  nlohmann::json j = s.json();
  CHECK(j["schema"] == 1);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["theorem"] == "C4.5");
  CHECK(j["reports"][0]["group"] == "Q(8)");
  CHECK(j["reports"][0]["status"] == "OK");
  CHECK(j["reports"][0]["conclusion"] == true);

  // series-indexed statement with an explicit n
  OwnedGroup d8;
  REQUIRE(gs_group_from_spec("D(8)", &d8.g) == GS_OK);
  OwnedString t2;
  REQUIRE(gs_check_json(d8.g, nullptr, "T4.4", 3, &t2.p) == GS_OK);
  REQUIRE(t2.json()["reports"].size() == 1);
  CHECK(t2.json()["reports"][0]["witnesses"]["n"] == "3");

  // the default fan-out covers n = 2..class
  OwnedString t3;
  REQUIRE(gs_check_json(d8.g, nullptr, "T4.4", 0, &t3.p) == GS_OK);
  CHECK(t3.json()["reports"].size() == 2);

  // a spec-built product handle supports the product-splitting statements
  OwnedGroup prod;
  REQUIRE(gs_group_from_spec("Q(8) x C(2)", &prod.g) == GS_OK);
  OwnedString t4;
  REQUIRE(gs_check_json(prod.g, nullptr, "T3.1", 0, &t4.p) == GS_OK);
  CHECK(t4.json()["reports"][0]["status"] == "OK");

  // ... a table-built handle cannot know a factorization, so it opts out
  OwnedGroup table;
  REQUIRE(gs_group_from_cayley_json(R"({"order":2,"table":[[0,1],[1,0]]})", &table.g) == GS_OK);
  OwnedString t5;
  REQUIRE(gs_check_json(table.g, "loaded", "L2.5", 0, &t5.p) == GS_OK);
  CHECK(t5.json()["reports"][0]["status"] == "NOT-APPLICABLE");

  char* out = nullptr;
  CHECK(gs_check_json(q8.g, nullptr, "T9.9", 0, &out) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_check_json(q8.g, nullptr, nullptr, 0, &out) == GS_ERR_BAD_PARAMETER);
}

TEST_CASE("corpus sweeps") {
  OwnedString js, csv;
  int failed = 42;
  REQUIRE(gs_corpus_json(16, "T2.4", &js.p, &csv.p, &failed) == GS_OK);
  CHECK(failed == 0);
  nlohmann::json j = js.json();
  CHECK(j["schema"] == 1);
  CHECK(j["reports"].size() > 0);
  std::string head(csv.p, std::strlen(csv.p) > 60 ? 60 : std::strlen(csv.p));
  CHECK(head.rfind("group,theorem,hypotheses-ok,conclusion,wall-time-ms", 0) == 0);

  // "all" expands to every known id; NULL means the same
  OwnedString all_js;
  REQUIRE(gs_corpus_json(8, "all", &all_js.p, nullptr, nullptr) == GS_OK);
  CHECK(all_js.json()["reports"].size() > 50);

  // the empty filter is an empty list of checks
  OwnedString none;
  REQUIRE(gs_corpus_json(8, "", &none.p, nullptr, nullptr) == GS_OK);
  CHECK(none.json()["reports"].empty());

  char* out = nullptr;
  CHECK(gs_corpus_json(16, "T2.4,bogus", &out, nullptr, nullptr) == GS_ERR_BAD_PARAMETER);
  CHECK(gs_corpus_json(0, "T2.4", &out, nullptr, nullptr) == GS_ERR_BAD_PARAMETER);
}

TEST_CASE("utility surface") {
  CHECK(std::strlen(gs_version()) > 0);
  std::string ids = gs_theorem_ids();
  CHECK(ids.find("T2.4") != std::string::npos);
  CHECK(ids.find("T3.4") != std::string::npos);
  CHECK(ids.find("C4.5") != std::string::npos);

  // the deallocators shrug off NULL
  gs_string_free(nullptr);
  gs_group_free(nullptr);

  // order of a NULL group is 0 by contract
  CHECK(gs_group_order(nullptr) == 0);
}
