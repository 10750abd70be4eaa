#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "blockheight/chartable.hpp"
#include "blockheight/errors.hpp"
#include "blockheight/permgroup.hpp"
#include "support/testgroups.hpp"

using namespace blockheight;
using namespace blockheight::testgroups;

TEST_CASE("enumeration of small groups") {
  CHECK(s3().order() == 6);
  PermGroup trivial = make("triv", 1, {mk({1})});
  CHECK(trivial.order() == 1);
  CHECK(q8().order() == 8);
  CHECK(a5().order() == 60);
}

TEST_CASE("enumeration cap") {
  PermGroup g("S4", 4, {mk({2, 1, 3, 4}), mk({2, 3, 4, 1})});
  CHECK_THROWS_WITH_AS(g.enumerate(10), doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("generators must be bijections") {
  CHECK_THROWS_AS(PermGroup("bad", 3, {Perm{0, 0, 2}}), Error);
  CHECK_THROWS_AS(PermGroup("bad", 3, {Perm{0, 1}}), Error);
}

TEST_CASE("stabilizer chain order matches enumeration") {
  for (PermGroup g : {s3(), s4(), s5(), a4(), a5(), d8(), q8(), sl2_3(), gl2_3(), f20(),
                      d10(), c3wrc3(), s6(), a6_deg6()}) {
    CAPTURE(g.name());
    CHECK(g.stabilizer_chain_order() == static_cast<unsigned long>(g.order()));
  }
}

TEST_CASE("conjugacy classes of S3 and Q8") {
  PermGroup g3 = s3();
  const ConjClasses& c3 = g3.conjugacy_classes();
  CHECK(c3.count() == 3);
  CHECK(std::multiset<uint64_t>(c3.sizes.begin(), c3.sizes.end()) ==
        std::multiset<uint64_t>{1, 3, 2});

  PermGroup gq = q8();
  const ConjClasses& cq = gq.conjugacy_classes();
  CHECK(cq.count() == 5);
  CHECK(std::multiset<uint64_t>(cq.sizes.begin(), cq.sizes.end()) ==
        std::multiset<uint64_t>{1, 1, 2, 2, 2});
}

TEST_CASE("class invariants: sizes sum and divide, power maps respect orders") {
  for (PermGroup g : {s4(), a5(), q8(), f20(), gl2_3()}) {
    CAPTURE(g.name());
    const ConjClasses& cc = g.conjugacy_classes();
    uint64_t sum = std::accumulate(cc.sizes.begin(), cc.sizes.end(), uint64_t(0));
    CHECK(sum == g.order());
    for (uint64_t s : cc.sizes) CHECK(g.order() % s == 0);
    // power_maps[1] identity; power map compatible with element orders
    for (size_t j = 0; j < cc.count(); ++j) {
      CHECK(cc.power_maps[1][j] == int32_t(j));
      uint64_t o = cc.element_orders[j];
      CHECK(cc.power_maps[o % cc.exponent][j] == cc.class_of[0]);
    }
    // spot checks on pseudo-random elements: x in class j => x^k in pm[k][j]
    uint64_t state = 12345;
    for (int trial = 0; trial < 50; ++trial) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      uint32_t x = uint32_t(state % g.order());
      uint64_t k = 1 + (state >> 33) % cc.exponent;
      Perm xk = perm_pow(g.element(x), k);
      CHECK(cc.class_of[*g.element_id(xk)] ==
            cc.power_maps[k % cc.exponent][cc.class_of[x]]);
    }
  }
}

TEST_CASE("sylow subgroup orders and structure") {
  PermGroup syl2s4 = sylow_subgroup(s4(), 2);
  CHECK(syl2s4.order() == 8);
  CHECK(!syl2s4.is_abelian());
  std::vector<uint64_t> degs = dixon_degrees(syl2s4);
  CHECK(degs == std::vector<uint64_t>{1, 1, 1, 1, 2}); // D8

  PermGroup syl2a5 = sylow_subgroup(a5(), 2);
  CHECK(syl2a5.order() == 4);
  CHECK(syl2a5.is_abelian());

  for (PermGroup g : {s4(), a5(), gl2_3(), f20()}) {
    for (uint64_t p : {2, 3, 5}) {
      PermGroup syl = sylow_subgroup(g, p);
      CAPTURE(g.name());
      CAPTURE(p);
      CHECK(syl.order() == p_part(g.order(), p));
      for (uint32_t id = 0; id < syl.order(); ++id) {
        uint64_t o = perm_order(syl.element(id));
        CHECK(o == p_part(o, p));
      }
    }
  }
}

TEST_CASE("class fusion") {
  PermGroup sub = a3(), g = s3();
  std::vector<int32_t> fus = class_fusion(sub, g);
  CHECK(fus.size() == 3);
  CHECK(std::set<int32_t>(fus.begin(), fus.end()).size() == 2); // 3-cycle classes fuse

  // center of Q8 inside Q8
  PermGroup q = q8();
  Perm minus_one = perm_pow(q.generators()[0], 2);
  PermGroup z = make("Z(Q8)", 8, {minus_one});
  std::vector<int32_t> fusz = class_fusion(z, q);
  CHECK(fusz.size() == 2);
  CHECK(fusz[0] != fusz[1]); // identity and -1 stay separate

  // D8 as Sylow 2 of S4: fusion agrees with brute-force element lookup
  PermGroup s = s4();
  PermGroup d = sylow_subgroup(s, 2);
  std::vector<int32_t> fusd = class_fusion(d, s);
  const ConjClasses& dc = d.conjugacy_classes();
  const ConjClasses& sc = s.conjugacy_classes();
  for (uint32_t id = 0; id < d.order(); ++id) {
    Perm x = d.element(id);
    CHECK(fusd[dc.class_of[id]] == sc.class_of[*s.element_id(x)]);
  }
}

TEST_CASE("fusion rejects non-subgroups") {
  PermGroup c4_in_s4("C4", 4, {mk({2, 3, 4, 1})});
  c4_in_s4.enumerate();
  PermGroup a = a4();
  CHECK_THROWS_WITH_AS(class_fusion(c4_in_s4, a), doctest::Contains("NotASubgroup"),
                       Error);
}

TEST_CASE("normality and derived subgroup") {
  CHECK(is_normal_subgroup(a4(), s4()));
  PermGroup d = sylow_subgroup(s4(), 2);
  CHECK(!is_normal_subgroup(d, s4()));
  PermGroup der = derived_subgroup(s4());
  CHECK(der.order() == 12); // A4
  CHECK(derived_subgroup(q8()).order() == 2);
  CHECK(derived_subgroup(a5()).order() == 60); // perfect
}

TEST_CASE("M12 enumerates to 95040 with 15 classes") {
  PermGroup m12 =
      make("M12", 12,
           {mk({2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 1, 12}),
            mk({1, 2, 7, 10, 6, 4, 11, 3, 9, 5, 8, 12}),
            mk({12, 11, 6, 8, 9, 3, 10, 4, 5, 7, 2, 1})});
  CHECK(m12.order() == 95040);
  CHECK(m12.stabilizer_chain_order() == 95040);
  CHECK(m12.conjugacy_classes().count() == 15);
}
