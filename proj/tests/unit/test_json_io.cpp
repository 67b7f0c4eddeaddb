#include <doctest.h>

#include "strengthlab/error.hpp"
#include "strengthlab/json_io.hpp"

using namespace strengthlab;

TEST_CASE("polynomial JSON") {
  const auto P = parse("3*x1^2*x2 + x3", 5, 3);
  const Json j = poly_to_json(P, 3);
  CHECK(j.dump() == R"({"p":5,"s":1,"n":3,"d":3,"terms":[{"exps":[2,1,0],"coeff":3},{"exps":[0,0,1],"coeff":1}]})");
  const auto back = poly_from_json(j);
  CHECK(back.poly == P);
  CHECK(back.declared_degree == 3u);
  CHECK_FALSE(poly_from_json(poly_to_json(P)).declared_degree.has_value());
}

TEST_CASE("polynomial JSON over an extension") {
  const Field F = Field::of_degree(5, 2);
  const auto P = parse("a*x1 + 2", F, 1);
  const Json j = poly_to_json(P);
  CHECK(j["terms"][0]["coeff"] == Json::array({0, 1}));
  CHECK(poly_from_json(j).poly == P);
}

TEST_CASE("malformed polynomial JSON") {
  for (const char* text : {R"({"p":5,"n":1})", R"({"p":5,"n":2,"terms":[{"exps":[1],"coeff":1}]})",
                           R"({"p":5,"n":1,"terms":[{"exps":[1],"coeff":"x"}]})", R"({"p":6,"n":1,"terms":[]})"}) {
    CHECK_THROWS_AS(poly_from_json(Json::parse(text)), Error);
  }
}

TEST_CASE("norm JSON presents clean values") {
  const auto v = gowers_norm(value_table(parse("x1^2", 5, 1)), 2);
  const Json j = norm_to_json(v);
  CHECK(j["value"].get<double>() == 0.2);
  CHECK(j["total"] == 125);
  CHECK(j["counts"] == Json::array({45, 20, 20, 20, 20}));
}

TEST_CASE("rank JSON") {
  const auto r = rank(parse("x1*x2*x3", 5, 3));
  const Json j = rank_to_json(r);
  CHECK(j["rank"] == 1);
  CHECK(j["field"] == Json({{"p", 5}, {"s", 1}}));
  CHECK(j["certificate"].size() == 1);

  const auto e = exhaustive_rank(parse("x1^2*x2 + x3^3", 5, 3), 1);
  const Json k = rank_to_json(e);
  CHECK(k["rank_gt"] == 1);
  CHECK(k["exhausted"]["patterns"] == Json::parse("[[1,2]]"));
  CHECK(k["exhausted"]["tuples_searched"] == 31);
}

TEST_CASE("records round trip through JSON") {
  ScanParams params;
  params.n = 2;
  params.mode = ScanMode::Sample;
  params.samples = 10;
  params.seed = 9;
  const auto records = scan(params);
  const auto back = records_from_json(Json::parse(dump(records_to_json(records))));
  REQUIRE(back.size() == records.size());
  CHECK(records_to_csv(back) == records_to_csv(records));
  CHECK(dump(table_to_json(empirical_C(back), back)) == dump(table_to_json(empirical_C(records), records)));
}

TEST_CASE("CSV quoting") {
  ScanParams params;
  params.n = 1;
  const auto csv = records_to_csv(scan(params));
  CHECK(csv.rfind("p,n,d,index_or_seed,poly_json,max_deriv_rank,rank,gowers_top_num,gowers_top_den\n", 0) == 0);
  CHECK(csv.find(R"(5,1,3,1,"{""p"":5,""s"":1,""n"":1,""terms"":[{""exps"":[3],""coeff"":1}]}",1,1,9,25)") !=
        std::string::npos);
}
