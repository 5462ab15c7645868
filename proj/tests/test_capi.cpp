#include <cstring>
#include <string>

#include "circw.h"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { cw_string_free(p); }
  json parse() const { return json::parse(std::string(p ? p : "null")); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(cw_version()).size() > 0);
  CHECK(std::string(cw_status_str(CW_OK)) == "ok");
  CHECK(std::string(cw_status_str(CW_ERR_PARSE)) == "parse error");
}

TEST_CASE("word round trip and exponents") {
  cw_word* w = nullptr;
  REQUIRE(cw_word_parse("alfalfa", &w) == CW_OK);
  CHECK(cw_word_length(w) == 7);
  CHECK(cw_word_alphabet_size(w) == 3);
  Str r;
  CHECK(cw_word_render(w, &r.p) == CW_OK);
  CHECK(std::string(r.p) == "alfalfa");

  size_t period = 0;
  CHECK(cw_shortest_period(w, &period) == CW_OK);
  CHECK(period == 3);
  long long num = 0, den = 0;
  CHECK(cw_exponent(w, &num, &den) == CW_OK);
  CHECK(num == 7);
  CHECK(den == 3);
  cw_word_free(w);
}

TEST_CASE("error paths set codes and messages") {
  cw_word* w = nullptr;
  CHECK(cw_word_parse("a1b", &w) == CW_ERR_PARSE);
  CHECK(std::strlen(cw_last_error()) > 0);
  CHECK(cw_word_parse(nullptr, &w) == CW_ERR_ARGUMENT);

  REQUIRE(cw_word_parse("", &w) == CW_OK);
  long long num, den;
  CHECK(cw_exponent(w, &num, &den) == CW_ERR_EMPTY_WORD);
  cw_word_free(w);

  cw_morphism* m = nullptr;
  CHECK(cw_morphism_builtin("nope", &m) == CW_ERR_ARGUMENT);
  CHECK(cw_morphism_load("/does/not/exist", &m) == CW_ERR_IO);
}

TEST_CASE("critical exponents through the api") {
  cw_word* w = nullptr;
  REQUIRE(cw_word_parse("dividing", &w) == CW_OK);
  Str plain, circ;
  CHECK(cw_critical_exponent(w, 0, &plain.p) == CW_OK);
  CHECK(plain.parse()["exponent"] == "3/2");
  CHECK(cw_critical_exponent(w, 1, &circ.p) == CW_OK);
  json c = circ.parse();
  CHECK(c["exponent"] == "5/2");
  CHECK(c["witness"]["string"] == "ididi");
  CHECK(c["witness"]["kind"] == "circular");

  int verdict = -1;
  Str v;
  CHECK(cw_power_free(w, 5, 2, 1, 1, &verdict, &v.p) == CW_OK);
  CHECK(verdict == 1);
  Str v2;
  CHECK(cw_power_free(w, 5, 2, 0, 1, &verdict, &v2.p) == CW_OK);
  CHECK(verdict == 0);
  CHECK(v2.parse()["witness"]["string"] == "ididi");
  cw_word_free(w);
}

TEST_CASE("conjugates and circular factors") {
  cw_word* w = nullptr;
  REQUIRE(cw_word_parse("aba", &w) == CW_OK);
  Str conj, circ;
  CHECK(cw_conjugates(w, &conj.p) == CW_OK);
  CHECK(conj.parse() == json::array({"aba", "baa", "aab"}));
  CHECK(cw_circular_factors(w, 2, &circ.p) == CW_OK);
  CHECK(circ.parse() == json::array({"a", "b", "aa", "ab", "ba"}));
  int holds = 0;
  CHECK(cw_conjugate_characterization(w, 12, &holds) == CW_OK);
  CHECK(holds == 1);
  cw_word_free(w);
}

TEST_CASE("morphisms through the api") {
  cw_morphism* psi = nullptr;
  REQUIRE(cw_morphism_builtin("psi", &psi) == CW_OK);
  Str info;
  CHECK(cw_morphism_info(psi, &info.p) == CW_OK);
  CHECK(info.parse()["q"] == 4);

  cw_word* seed = nullptr;
  REQUIRE(cw_word_parse("0", &seed) == CW_OK);
  cw_word* image = nullptr;
  CHECK(cw_morphism_apply(psi, seed, &image) == CW_OK);
  Str rendered;
  CHECK(cw_word_render(image, &rendered.p) == CW_OK);
  CHECK(std::string(rendered.p) == "0435");
  cw_word_free(image);
  cw_word_free(seed);

  cw_word* fp = nullptr;
  CHECK(cw_morphism_fixed_point(psi, 0, 8, &fp) == CW_OK);
  CHECK(cw_word_length(fp) == 8);
  cw_word_free(fp);
  CHECK(cw_morphism_fixed_point(psi, 1, 8, &fp) == CW_ERR_PRECONDITION);

  Str chk;
  CHECK(cw_morphism_check(psi, &chk.p) == CW_OK);
  json c = chk.parse();
  CHECK(c["synchronizing"] == true);
  CHECK(c["strongly_synchronizing"] == true);

  Str fs;
  CHECK(cw_factor_set(psi, 0, 1, &fs.p) == CW_OK);
  CHECK(fs.parse()["count"] == 6);

  Str lift;
  CHECK(cw_lift_power_freeness(psi, 0, 2, &lift.p) == CW_OK);
  CHECK(lift.parse()["verdict"] == "pass");

  cw_word* tmw = nullptr;
  REQUIRE(cw_word_parse("00", &tmw) == CW_OK);
  int holds = 0;
  CHECK(cw_power_alignment(psi, tmw, 2, &holds) == CW_OK);
  CHECK(holds == 1);
  cw_morphism* tm = nullptr;
  REQUIRE(cw_morphism_builtin("thue-morse", &tm) == CW_OK);
  CHECK(cw_power_alignment(tm, tmw, 2, &holds) == CW_ERR_PRECONDITION);
  cw_morphism_free(tm);
  cw_word_free(tmw);
  cw_morphism_free(psi);
}

TEST_CASE("morphism text parsing") {
  cw_morphism* m = nullptr;
  REQUIRE(cw_morphism_parse("2 2 2\n01\n10\n", &m) == CW_OK);
  Str info;
  CHECK(cw_morphism_info(m, &info.p) == CW_OK);
  CHECK(info.parse()["images"] == json::array({"01", "10"}));
  cw_morphism_free(m);
  CHECK(cw_morphism_parse("garbage", &m) == CW_ERR_PARSE);
}

TEST_CASE("main word generator") {
  cw_word* w = nullptr;
  REQUIRE(cw_main_word_prefix(15, &w) == CW_OK);
  Str r;
  CHECK(cw_word_render(w, &r.p) == CW_OK);
  CHECK(std::string(r.p) == "012102120102012");
  cw_word_free(w);
  Str fs;
  CHECK(cw_main_word_factor_set(5, &fs.p) == CW_OK);
  CHECK(fs.parse()["length"] == 5);
}

TEST_CASE("search through the api") {
  json cfg{{"k", 2}, {"alpha", "4"}, {"circular", true}, {"max_length", 100}};
  Str out;
  REQUIRE(cw_search(cfg.dump().c_str(), nullptr, 0, nullptr, nullptr, &out.p) == CW_OK);
  json r = out.parse();
  CHECK(r["longest_length"] == 11);
  CHECK(r["exhausted"] == true);
  CHECK(r["witness"] == "01001011010");

  Str bad;
  CHECK(cw_search("{\"alpha\":\"3.25\"}", nullptr, 0, nullptr, nullptr, &bad.p) == CW_ERR_PARSE);
}

TEST_CASE("product exponent through the api") {
  cw_word* w = nullptr;
  REQUIRE(cw_word_parse("aba", &w) == CW_OK);
  Str out;
  CHECK(cw_product_exponent(w, 2, 6, &out.p) == CW_OK);
  CHECK(out.parse()["exponent"] == "5/2");
  cw_word_free(w);
}

TEST_CASE("verify single claim through the api") {
  int verdict = 0;
  Str out;
  REQUIRE(cw_verify("rtc-bracket-desk", 0, 1, &verdict, &out.p) == CW_OK);
  CHECK(verdict == 1);
  json arr = out.parse();
  REQUIRE(arr.is_array());
  CHECK(arr[0]["claim"] == "rtc-bracket-desk");
  CHECK(cw_verify("no-such-claim", 0, 1, &verdict, nullptr) == CW_ERR_ARGUMENT);

  Str ids;
  CHECK(cw_claim_ids(&ids.p) == CW_OK);
  CHECK(ids.parse().size() == 8);
}
