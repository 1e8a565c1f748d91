#include <doctest.h>

#include <random>

#include "hetnet/problem.hpp"
#include "support.hpp"

using namespace hetnet;
using hetnet::testing::fig1_instance;
using hetnet::testing::pico_instance;

TEST_CASE("penalty per violation") {
  CHECK(p_viol(fig1_instance(12)) == 1896.0);
  Config macro_only;
  macro_only.placement.n_pico = 0;
  macro_only.placement.n_receivers = 3;
  CHECK(p_viol(build_instance(macro_only, 12)) == 1500.0);
  const NetworkInstance empty({}, {Point{0.1, 0.0}}, {1e6}, DecodingParams{}, 0.005);
  CHECK(p_viol(empty) == 0.0);
}

TEST_CASE("power terms") {
  const auto inst = fig1_instance(12);
  Assignment none(15, 51);
  CHECK(power_terms(inst, none) == std::pair{0.0, 0.0});

  // A pico on whose only association carries a negligible time share.
  Assignment pico_on(15, 51);
  pico_on.a(3, 0) = 1;
  pico_on.alpha(3, 0) = 1e-300;
  const auto [sf, tx] = power_terms(inst, pico_on);
  CHECK(sf == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(tx == doctest::Approx(4.0).epsilon(1e-15));

  Assignment macro_full(15, 51);
  macro_full.a(0, 0) = 1;
  macro_full.alpha(0, 0) = 1.0;
  const auto [msf, mtx] = power_terms(inst, macro_full);
  CHECK(msf == doctest::Approx(235.0).epsilon(1e-15));
  CHECK(mtx == doctest::Approx(265.0).epsilon(1e-15));
}

TEST_CASE("empty assignment on the reference instance") {
  const auto inst = fig1_instance(12);
  const auto report = evaluate(inst, Assignment(15, 51));
  CHECK(report.violations.demand == 51);
  CHECK(report.violations.surplus_cap == 0);
  CHECK(report.v_total == 51);
  CHECK(report.penalized_power_w == 96696.0);
  CHECK(report.raw_power_w == 0.0);
  CHECK_FALSE(report.feasible);
}

TEST_CASE("associating with a masked station violates decodability") {
  const auto inst = apply_scenario(fig1_instance(12), Scenario::named("0m12p"));
  Assignment a(15, 51);
  a.a(0, 0) = 1;
  const auto report = evaluate(inst, a);
  CHECK(report.violations.decode == 1);
  CHECK(sinr(inst, a, 0, 0) == 0.0);
}

TEST_CASE("single picocell serving a single receiver") {
  const auto inst = pico_instance({Point{0.0, 0.0}}, {Point{0.05, 0.0}}, 12);
  Assignment a(1, 1);
  a.a(0, 0) = 1;
  const double c = capacity(sinr(inst, a, 0, 0), 1e7);
  a.alpha(0, 0) = 12e6 / c * 1.001;
  const auto report = evaluate(inst, a);
  CHECK(report.feasible);
  CHECK(report.v_total == 0);
  CHECK(report.raw_power_w == doctest::Approx(18.0 + 15.0 * a.alpha(0, 0)).epsilon(1e-12));
  CHECK(report.penalized_power_w == report.raw_power_w);

  a.alpha(0, 0) = 0.5 * 12e6 / c;
  CHECK(evaluate(inst, a).violations.demand == 1);
}

TEST_CASE("surplus-cap violations do not affect feasibility") {
  const auto inst = pico_instance({Point{0.0, 0.0}}, {Point{0.05, 0.0}}, 12);
  Assignment a(1, 1);
  a.a(0, 0) = 1;
  a.alpha(0, 0) = 1.0;  // ~120 Mbps supplied for a 12 Mbps demand
  const auto report = evaluate(inst, a);
  CHECK(report.violations.surplus_cap == 1);
  CHECK(report.violations.hard() == 0);
  CHECK(report.feasible);
  CHECK(report.penalized_power_w == report.raw_power_w + inst.p_viol_w());
}

TEST_CASE("association cap uses linear beta by default") {
  std::vector<Point> stations;
  for (int i = 0; i < 41; ++i) {
    const double t = 2.0 * kPi * i / 41.0;
    stations.push_back({0.2 * std::cos(t), 0.2 * std::sin(t)});
  }
  const auto inst = pico_instance(stations, {Point{0.0, 0.0}}, 1);
  Assignment a(41, 1);
  for (int b = 0; b < 41; ++b) a.a(b, 0) = 1;
  CHECK(evaluate(inst, a).violations.assoc_cap == 0);

  stations.push_back({0.25, 0.0});
  const auto inst42 = pico_instance(stations, {Point{0.0, 0.0}}, 1);
  Assignment a42(42, 1);
  for (int b = 0; b < 42; ++b) a42.a(b, 0) = 1;
  CHECK(evaluate(inst42, a42).violations.assoc_cap == 1);

  std::vector<StationSite> sites = inst.stations();
  DecodingParams db;
  db.cap_beta = CapBeta::decibel;
  const NetworkInstance inst_db(sites, inst.receivers(), inst.demands_bps(), db, 0.005);
  CHECK(evaluate(inst_db, a).violations.assoc_cap == 1);  // 41 >= 1 + 128/5
}

TEST_CASE("time budget is per station") {
  const auto inst = pico_instance({Point{0.0, 0.0}}, {Point{0.05, 0.0}, Point{-0.05, 0.0}}, 1);
  Assignment a(1, 2);
  a.a(0, 0) = a.a(0, 1) = 1;
  a.alpha(0, 0) = 0.6;
  a.alpha(0, 1) = 0.6;
  CHECK(evaluate(inst, a).violations.time_budget == 1);
  a.alpha(0, 1) = 0.4;
  CHECK(evaluate(inst, a).violations.time_budget == 0);
}

namespace {

Assignment random_assignment(std::mt19937_64& rng, std::size_t nb, std::size_t nk) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Assignment a(nb, nk);
  for (auto& v : a.a.data()) v = u(rng) < 0.3 ? 1 : 0;
  for (auto& v : a.alpha.data()) v = 1.0 - u(rng);
  return a;
}

}  // namespace

TEST_CASE("penalized objective dominates the raw objective") {
  std::mt19937_64 rng(11);
  const auto inst = fig1_instance(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_assignment(rng, 15, 51);
    const auto r = evaluate(inst, a);
    CHECK(r.penalized_power_w >= r.raw_power_w);
    CHECK((r.penalized_power_w == r.raw_power_w) == (r.v_total == 0));
    CHECK(r.feasible == (r.violations.hard() == 0));
    CHECK(r.v_total == r.violations.total());
    if (r.violations.time_budget == 0) CHECK(r.raw_power_w <= inst.p_viol_w() + 1e-9);
  }
}

TEST_CASE("feasibility is monotone in demand") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-0.3, 0.3);
  int feasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto base = pico_instance({Point{pos(rng), pos(rng)}, Point{pos(rng), pos(rng)}},
                                    {Point{pos(rng), pos(rng)}, Point{pos(rng), pos(rng)}}, 20);
    Assignment a(2, 2);
    for (auto& v : a.a.data()) v = 1;
    for (auto& v : a.alpha.data()) v = 0.5;
    if (!evaluate(base, a).feasible) continue;
    ++feasible_seen;
    for (double d : {0.0, 1.0, 5.0, 19.9}) CHECK(evaluate(base.with_uniform_demand(d * 1e6), a).feasible);
  }
  CHECK(feasible_seen > 0);
}

TEST_CASE("raising alpha never lowers supply or load") {
  std::mt19937_64 rng(3);
  const auto inst = pico_instance({Point{0.0, 0.0}, Point{0.1, 0.1}}, {Point{0.05, 0.0}, Point{0.1, 0.0}}, 5);
  for (int i = 0; i < 100; ++i) {
    auto a = random_assignment(rng, 2, 2);
    a.a(0, 0) = 1;
    const auto on = a.station_on();
    const auto sinrs = sinr_matrix(inst, on);
    auto supply = [&](const Assignment& x) {
      double s = 0.0;
      for (std::size_t b = 0; b < 2; ++b) s += x.a(b, 0) * x.alpha(b, 0) * capacity(sinrs(b, 0), 1e7);
      return s;
    };
    auto lifted = a;
    lifted.alpha(0, 0) = std::min(1.0, a.alpha(0, 0) * 1.5);
    CHECK(supply(lifted) >= supply(a));
    CHECK(lifted.load()[0] >= a.load()[0]);
  }
}

TEST_CASE("evaluation is pure") {
  std::mt19937_64 rng(9);
  const auto inst = fig1_instance(6);
  const auto a = random_assignment(rng, 15, 51);
  CHECK(evaluate(inst, a) == evaluate(inst, a));
}

TEST_CASE("sinr matrix agrees with the direct SINR sum") {
  std::mt19937_64 rng(21);
  const auto inst = fig1_instance(6);
  const auto a = random_assignment(rng, 15, 51);
  const auto on = a.station_on();
  const auto m = sinr_matrix(inst, on);
  for (std::size_t b = 0; b < 15; ++b) {
    for (std::size_t k = 0; k < 51; ++k) {
      CHECK(m(b, k) == doctest::Approx(sinr(inst.gains(), inst.decoding(), on, b, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("scenario masks") {
  const auto inst = fig1_instance(12);
  auto zero_rows = [](const NetworkInstance& x) {
    std::vector<std::size_t> rows;
    for (std::size_t b = 0; b < x.n_stations(); ++b) {
      bool zero = true;
      for (std::size_t k = 0; k < x.n_receivers(); ++k) zero = zero && x.gains()(b, k) == 0.0;
      if (zero) rows.push_back(b);
    }
    return rows;
  };
  CHECK(zero_rows(apply_scenario(inst, Scenario::named("3m0p"))) ==
        std::vector<std::size_t>{3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
  CHECK(zero_rows(apply_scenario(inst, Scenario::named("0m12p"))) == std::vector<std::size_t>{0, 1, 2});
  CHECK(zero_rows(apply_scenario(inst, Scenario::named("1m12p"))) == std::vector<std::size_t>{1, 2});
  CHECK(zero_rows(apply_scenario(inst, Scenario::named("2m12p"))) == std::vector<std::size_t>{2});
  const auto same = apply_scenario(inst, Scenario::named("3m12p"));
  CHECK(same.gains() == inst.gains());
  CHECK(same.p_viol_w() == inst.p_viol_w());
  CHECK(zero_rows(apply_scenario(inst, Scenario::forbid({5, 7}))) == std::vector<std::size_t>{5, 7});

  try {
    apply_scenario(inst, Scenario::named("4m12p"));
    FAIL("unknown scenario accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
  CHECK_THROWS_AS(apply_scenario(inst, Scenario::forbid({15})), Error);
}

TEST_CASE("sector 0 macrocell is the one kept by 1m12p") {
  const auto inst = apply_scenario(fig1_instance(12), Scenario::named("1m12p"));
  const auto& sector = inst.stations()[0].sector;
  REQUIRE(sector.has_value());
  CHECK(sector->contains(45.0));  // upper right
}

TEST_CASE("assignment validation") {
  Assignment a(2, 2);
  CHECK_NOTHROW(a.validate(2, 2));
  CHECK_THROWS_AS(a.validate(3, 2), Error);
  a.alpha(0, 0) = 0.0;
  CHECK_THROWS_AS(a.validate(2, 2), Error);
  a.alpha(0, 0) = 1.0;
  a.a(1, 1) = 2;
  CHECK_THROWS_AS(a.validate(2, 2), Error);
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(NetworkInstance({}, {Point{0.1, 0}}, {}, DecodingParams{}, 0.005), Error);
  CHECK_THROWS_AS(NetworkInstance({}, {Point{0.1, 0}}, {-1.0}, DecodingParams{}, 0.005), Error);
  CHECK_THROWS_AS(NetworkInstance({}, {Point{0.1, 0}}, {1.0}, DecodingParams{}, 1.0), Error);
}
