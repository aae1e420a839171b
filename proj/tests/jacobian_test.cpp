#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gencluster/jacobian.hpp"

using namespace gencluster;

namespace {

IntMat imat(std::vector<std::vector<long>> rows) {
  IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Int(rows[i][j]);
  return m;
}

// rank 2, degrees (2,1), one interior coefficient z1_1, principal tracking
PatternConfig example_config() { return principal_config(imat({{0, -1}, {1, 0}}), {2, 1}); }

}  // namespace

TEST_CASE("chain and direct Jacobians agree on the degree-two example") {
  auto cfg = example_config();
  auto cr = h_matrix_chain(cfg, {0, 1});
  CHECK(cr.seed.x[0] == parse_rational(cfg.ctx, "(1 + z1_1*y1*x2 + y1^2*x2^2)/(x1)"));
  CHECK(cr.seed.x[1] ==
        parse_rational(cfg.ctx, "(x1 + y2 + z1_1*y1*y2*x2 + y1^2*y2*x2^2)/(x1*x2)"));
  CHECK(cr.seed.b == cfg.b0);

  CHECK(cr.h(0, 0) == RationalFn::constant(cfg.ctx, Rat(-1)));
  CHECK(cr.h(1, 0) ==
        parse_rational(cfg.ctx, "(z1_1*y1*x2 + 2*y1^2*x2^2)/(1 + z1_1*y1*x2 + y1^2*x2^2)"));
  CHECK(cr.h(0, 1) == parse_rational(cfg.ctx, "(-y2 - z1_1*y1*y2*x2 - y1^2*y2*x2^2)/"
                                              "(x1 + y2 + z1_1*y1*y2*x2 + y1^2*y2*x2^2)"));
  CHECK(cr.h(1, 1) == parse_rational(cfg.ctx, "(y1^2*y2*x2^2 - x1 - y2)/"
                                              "(x1 + y2 + z1_1*y1*y2*x2 + y1^2*y2*x2^2)"));

  CHECK(cr.h == h_matrix_direct(cfg, cr.seed));

  // one-step factorization: the walk product equals the two factors multiplied
  auto s0 = initial_seed(cfg);
  auto s1 = mutate(cfg, s0, 0);
  CHECK(cr.h == one_step_h(cfg, s0, 0) * one_step_h(cfg, s1, 1));
}

TEST_CASE("cluster formula on the degree-two example") {
  auto cfg = example_config();
  auto cr = h_matrix_chain(cfg, {0, 1});
  auto rep = verify_cluster_formula(cfg, cr.h, cr.seed.b, 2);
  CHECK(rep.pass);
  CHECK(rep.detail.empty());
  CHECK(rf_det(cr.h) == RationalFn::constant(cfg.ctx, Rat(1)));

  // odd walk, negative determinant
  auto cr1 = h_matrix_chain(cfg, {0});
  CHECK(verify_cluster_formula(cfg, cr1.h, cr1.seed.b, 1).pass);
  CHECK(rf_det(cr1.h) == RationalFn::constant(cfg.ctx, Rat(-1)));

  // a corrupted two-form assignment is rejected with a located witness
  RatMat omega_t = omega_of(cfg, cr.seed.b);
  omega_t(0, 1) += 1;
  auto bad = verify_two_form_law(cr.h, omega_t, omega_of(cfg, cfg.b0));
  CHECK(!bad.pass);
  CHECK(bad.detail.find("entry") != std::string::npos);

  // the zero assignment passes trivially
  RatMat zero(2, 2, Rat(0));
  CHECK(verify_two_form_law(cr.h, zero, zero).pass);
}

TEST_CASE("walks that return to the initial cluster have identity Jacobian") {
  auto cfg = example_config();
  auto back = h_matrix_chain(cfg, {0, 1, 1, 0});
  CHECK(back.h == rf_identity(cfg.ctx, 2));

  auto a2 = trivial_config(imat({{0, 1}, {-1, 0}}), {1, 1});
  auto cycle = h_matrix_chain(a2, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
  CHECK(cycle.h == rf_identity(a2.ctx, 2));
  auto half = h_matrix_chain(a2, {0, 1, 0, 1, 0});
  CHECK(verify_cluster_formula(a2, half.h, half.seed.b, 5).pass);
  CHECK(half.h == h_matrix_direct(a2, half.seed));
}

TEST_CASE("degree and coefficient matrices with principal tracking") {
  auto cfg = example_config();
  auto cr = h_matrix_chain(cfg, {0, 1});
  IntMat ct = c_matrix_of(cfg, cr.seed);
  CHECK(ct == imat({{-1, 0}, {0, -1}}));
  IntMat gt = g_matrix_from_h(cfg, cr.h);
  CHECK(gt == imat({{-1, 0}, {0, -1}}));
  CHECK(g_duality_holds(cfg, ct, gt));

  // base point: both matrices are the identity
  CHECK(g_matrix_from_h(cfg, rf_identity(cfg.ctx, 2)) == IntMat::identity(2));
  CHECK(g_duality_holds(cfg, c_matrix_of(cfg, initial_seed(cfg)), IntMat::identity(2)));

  auto cr1 = h_matrix_chain(cfg, {1, 0, 0});
  CHECK(g_duality_holds(cfg, c_matrix_of(cfg, cr1.seed), g_matrix_from_h(cfg, cr1.h)));
}

TEST_CASE("signed limit matrices") {
  RatMat b = to_rat(imat({{0, -1}, {1, 0}}));
  std::vector<Int> r{2, 1};
  CHECK(e_matrix(b, r, 0, +1) == imat({{-1, 0}, {2, 1}}));
  CHECK(e_matrix(b, r, 0, -1) == imat({{-1, 0}, {0, 1}}));
  CHECK(e_matrix(b, r, 1, +1) == imat({{1, 0}, {0, -1}}));
  CHECK(e_matrix(b, r, 1, -1) == imat({{1, 1}, {0, -1}}));

  RatMat b3 = to_rat(imat({{0, -1, 2}, {1, 0, -1}, {-2, 2, 0}}));
  std::vector<Int> r3{1, 2, 3};
  for (std::size_t k = 0; k < 3; ++k)
    for (int sign : {+1, -1}) {
      IntMat e = e_matrix(b3, r3, k, sign);
      CHECK(e * e == IntMat::identity(3));
    }

  // conjugating the mutated form by either limit matrix restores the base form
  auto cfg = example_config();
  for (std::size_t k = 0; k < 2; ++k) {
    RatMat mutated = omega_of(cfg, mutate_matrix(cfg.b0, cfg.kit.r, k));
    for (int sign : {+1, -1}) {
      RatMat e = to_rat(e_matrix(cfg.b0, cfg.kit.r, k, sign));
      CHECK(e * mutated * e.transpose() == omega_of(cfg, cfg.b0));
    }
  }
}

TEST_CASE("one-step Jacobian degenerates to the limit matrices") {
  auto cfg = example_config();
  auto s0 = initial_seed(cfg);
  auto rep = verify_e_limits(cfg, s0, 0);
  CHECK(rep.pass);
  CHECK(rep.detail.empty());
  // column 1 has no positive entry at the base point
  CHECK(verify_e_limits(cfg, s0, 1).detail.find("vacuous") != std::string::npos);

  auto s1 = mutate(cfg, s0, 0);
  CHECK(verify_e_limits(cfg, s1, 1).pass);
  CHECK(verify_e_limits(cfg, s1, 1).detail.empty());

  auto b3 = principal_config(imat({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}), {2, 1, 3});
  auto t0 = initial_seed(b3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(verify_e_limits(b3, t0, k).pass);
}

TEST_CASE("exchange matrix recovery from a cluster") {
  auto cfg = example_config();
  auto s0 = initial_seed(cfg);
  CHECK(recover_b_from_cluster(cfg, s0.x) == cfg.b0);

  auto cr = h_matrix_chain(cfg, {0, 1});
  CHECK(recover_b_from_cluster(cfg, cr.seed.x) == cr.seed.b);

  auto s1 = apply_walk(cfg, {0});
  CHECK(recover_b_from_cluster(cfg, s1.x) == s1.b);

  auto deep = apply_walk(cfg, {1, 0, 1, 0, 0});
  CHECK(recover_b_from_cluster(cfg, deep.x) == deep.b);

  CHECK_THROWS_AS(recover_b_from_cluster(cfg, {s0.x[0], s0.x[0]}), ConfigError);
}

TEST_CASE("coefficient matrix recovery from a cluster") {
  auto cfg = example_config();
  auto s0 = initial_seed(cfg);
  CHECK(recover_c_from_cluster(cfg, s0.x) == IntMat::identity(2));

  auto st = apply_walk(cfg, {0, 1});
  CHECK(recover_c_from_cluster(cfg, st.x) == c_matrix_of(cfg, st));

  auto s1 = apply_walk(cfg, {0});
  CHECK(recover_c_from_cluster(cfg, s1.x) == c_matrix_of(cfg, s1));

  auto deep = apply_walk(cfg, {1, 0, 1, 0});
  CHECK(recover_c_from_cluster(cfg, deep.x) == c_matrix_of(cfg, deep));

  // geometric coefficients with a rectangular tracked block
  auto geo = geometric_config(imat({{0, -1}, {1, 0}}), {2, 1}, imat({{1, 0}, {0, 1}, {2, -1}}));
  auto gs = apply_walk(geo, {0, 1, 0});
  CHECK(recover_c_from_cluster(geo, gs.x) == c_matrix_of(geo, gs));
}

TEST_CASE("promoted-variable Jacobian block vanishes at zero") {
  auto cfg = example_config();
  auto ext = extend_weak_geometric(cfg);
  auto st = apply_walk(cfg, {0, 1});
  std::vector<RationalFn> lifted;
  for (const auto& f : st.x) lifted.push_back(remap(f, ext.config.ctx, ext.to_ext_flat));
  auto j = extended_jacobian(ext, lifted);
  REQUIRE(j.ht.rows() == 2);
  std::set<std::size_t> promoted{2, 3};
  for (std::size_t i = 0; i < j.ht.rows(); ++i)
    for (std::size_t l = 0; l < j.ht.cols(); ++l)
      CHECK(specialize_zero(j.ht(i, l), promoted).is_zero());

  // the base block is the remapped base Jacobian
  auto base = h_matrix_chain(cfg, {0, 1});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t l = 0; l < 2; ++l)
      CHECK(j.h(i, l) == remap(base.h(i, l), ext.config.ctx, ext.to_ext_flat));
}

TEST_CASE("determinants and inverses over rational functions") {
  auto cfg = trivial_config(imat({{0, 1}, {-1, 0}}), {1, 1});
  auto x1 = RationalFn::symbol(cfg.ctx, 0), x2 = RationalFn::symbol(cfg.ctx, 1);
  auto one = RationalFn::one(cfg.ctx), zero = RationalFn::zero(cfg.ctx);

  RfMat m(2, 2);
  m(0, 0) = x1;
  m(0, 1) = one;
  m(1, 0) = zero;
  m(1, 1) = x2;
  CHECK(rf_det(m) == x1 * x2);
  auto inv = rf_inverse(m);
  REQUIRE(inv);
  CHECK(*inv * m == rf_identity(cfg.ctx, 2));
  CHECK(m * *inv == rf_identity(cfg.ctx, 2));

  RfMat sw(2, 2);
  sw(0, 0) = zero;
  sw(0, 1) = x1;
  sw(1, 0) = x2;
  sw(1, 1) = zero;
  CHECK(rf_det(sw) == -(x1 * x2));

  RfMat frac(2, 2);
  frac(0, 0) = one / x1;
  frac(0, 1) = one;
  frac(1, 0) = one;
  frac(1, 1) = x2;
  CHECK(rf_det(frac) == parse_rational(cfg.ctx, "(x2 - x1)/(x1)"));

  RfMat sing(2, 2);
  sing(0, 0) = x1;
  sing(0, 1) = x1;
  sing(1, 0) = x1;
  sing(1, 1) = x1;
  CHECK(rf_det(sing).is_zero());
  CHECK(!rf_inverse(sing));
}

TEST_CASE("higher-degree chain with interior coefficients") {
  auto cfg = principal_config(imat({{0, -1}, {1, 0}}), {3, 1});
  auto cr = h_matrix_chain(cfg, {0, 1, 0});
  CHECK(verify_cluster_formula(cfg, cr.h, cr.seed.b, 3).pass);
  CHECK(cr.h == h_matrix_direct(cfg, cr.seed));
  CHECK(g_duality_holds(cfg, c_matrix_of(cfg, cr.seed), g_matrix_from_h(cfg, cr.h)));
  CHECK(recover_b_from_cluster(cfg, cr.seed.x) == cr.seed.b);
  CHECK(recover_c_from_cluster(cfg, cr.seed.x) == c_matrix_of(cfg, cr.seed));
}
