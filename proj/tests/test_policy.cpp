#include <doctest.h>

#include <cmath>

#include "hhsim/policy.hpp"

using namespace hhsim;

TEST_CASE("weekly UI benefit rules") {
  CHECK(ui_weekly_benefit(11676.0) == 450.0);  // cap point
  CHECK(ui_weekly_benefit(20000.0) == 450.0);
  CHECK(ui_weekly_benefit(899.0) == 0.0);      // below the eligibility floor
  CHECK(ui_weekly_benefit(900.0) == 40.0);     // floor binds: 900/26 = 34.6 -> 40
  CHECK(ui_weekly_benefit(5200.0) == 200.0);   // inside the band
  CHECK(ui_weekly_benefit(0.0) == 0.0);
  // next-dollar rounding inside the band
  CHECK(ui_weekly_benefit(5201.0) == 201.0);
}

TEST_CASE("stimulus check phase-out") {
  CHECK(stimulus_check(75000.0) == 1200.0);
  CHECK(stimulus_check(40000.0) == 1200.0);
  CHECK(stimulus_check(99000.0) == 0.0);
  CHECK(stimulus_check(99001.0) == 0.0);
  CHECK(stimulus_check(120000.0) == 0.0);
  CHECK(stimulus_check(85000.0) == 700.0);
  // phase-out oracle: $5 per $100 above the threshold, consistent with both endpoints
  for (double income : {76000.0, 80000.0, 90000.0, 98000.0}) {
    double expect = 1200.0 - 5.0 * (income - 75000.0) / 100.0;
    CHECK(stimulus_check(income) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("delay sampler matches the published moments") {
  RngStream rng(123, Draw::test_stream);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double d = sample_delay(rng, 6.0, 3.0);
    CHECK(d > 0.0);
    sum += d;
    sum2 += d * d;
  }
  double mean = sum / n;
  double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean - 6.0) < 0.2);
  CHECK(std::abs(sd - 3.0) < 0.2);
}

TEST_CASE("exclusion sampling") {
  Worker documented;
  documented.documented = true;
  Worker undocumented;
  undocumented.documented = false;

  RngStream rng(5, Draw::test_stream);
  for (int i = 0; i < 1000; ++i) CHECK(sample_exclusion(rng, undocumented, 0.0));

  int excluded = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    RngStream r(5, Draw::exclusion, i, 0);
    if (sample_exclusion(r, documented, 0.40)) excluded += 1;
  }
  CHECK(std::abs(excluded / static_cast<double>(n) - 0.40) < 0.01);

  RngStream r2(5, Draw::test_stream);
  for (int i = 0; i < 1000; ++i) CHECK(!sample_exclusion(r2, documented, 0.0));
}

namespace {

Worker affected_worker(double monthly_income, bool documented = true) {
  Worker w;
  w.labor_income = monthly_income;
  w.documented = documented;
  w.affected = true;
  w.sector = Sector::ART;
  return w;
}

PolicyCase make_case(PolicyCaseId id) {
  PolicyCase pc;
  pc.id = id;
  return pc;
}

}  // namespace

TEST_CASE("benefit schedule: base case and gates") {
  auto w = affected_worker(3892.0);
  CHECK(benefit_schedule(w, make_case(PolicyCaseId::A_base), 3.0, 6.5, false).empty());
  CHECK(benefit_schedule(w, make_case(PolicyCaseId::B_ui), 3.0, 6.5, true).empty());
  Worker unaffected = w;
  unaffected.affected = false;
  CHECK(benefit_schedule(unaffected, make_case(PolicyCaseId::B_ui), 3.0, 6.5, false).empty());
}

TEST_CASE("benefit schedule: UI case at the cap") {
  // $3,892/month -> $11,676/quarter -> $450/week; delay 6.5 weeks = 1.5 months
  auto w = affected_worker(3892.0);
  auto s = benefit_schedule(w, make_case(PolicyCaseId::B_ui), 3.0, 6.5, false);
  REQUIRE(s.segments.size() == 1);
  CHECK(s.segments[0].start == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.segments[0].end == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(s.segments[0].amount == doctest::Approx(1950.0).epsilon(1e-12));  // 450*52/12
}

TEST_CASE("benefit schedule: CARES adds the flat supplement") {
  auto w = affected_worker(3892.0);
  auto s = benefit_schedule(w, make_case(PolicyCaseId::C_cares), 3.0, 6.5, false);
  REQUIRE(s.segments.size() == 2);
  CHECK(s.segments[0].amount == doctest::Approx(1950.0));
  CHECK(s.segments[1].start == doctest::Approx(1.5));
  CHECK(s.segments[1].end == doctest::Approx(3.0));
  CHECK(s.segments[1].amount == doctest::Approx(2600.0).epsilon(1e-12));  // 600*52/12
  CHECK(s.rate_at(2.0) == doctest::Approx(4550.0));
  CHECK(s.rate_at(1.0) == 0.0);  // before the delay
}

TEST_CASE("benefit schedule: supplement expiry before a long crisis ends") {
  // T_C = 6, delay 1 month: supplement ends at its 4.5-month expiry, base UI
  // continues to the end of the crisis.
  auto w = affected_worker(3892.0);
  auto s = benefit_schedule(w, make_case(PolicyCaseId::C_cares), 6.0, 13.0 / 3.0, false);
  REQUIRE(s.segments.size() == 2);
  CHECK(s.segments[0].start == doctest::Approx(1.0));
  CHECK(s.segments[0].end == doctest::Approx(6.0));
  CHECK(s.segments[1].end == doctest::Approx(4.5));
  CHECK(s.rate_at(5.0) == doctest::Approx(1950.0));
  CHECK(s.rate_at(4.0) == doctest::Approx(4550.0));
}

TEST_CASE("benefit schedule: UI duration limit binds for long crises") {
  auto w = affected_worker(2000.0);
  auto pc = make_case(PolicyCaseId::B_ui);
  auto s = benefit_schedule(w, pc, 9.0, 6.5, false);
  REQUIRE(s.segments.size() == 1);
  CHECK(s.segments[0].end == doctest::Approx(1.5 + pc.ui_b_duration_months));
  // the CARES extension pushes the limit out
  auto sc = benefit_schedule(w, make_case(PolicyCaseId::C_cares), 12.0, 6.5, false);
  CHECK(sc.segments[0].end == doctest::Approx(1.5 + 9.0));
}

TEST_CASE("benefit schedule: delay beyond the crisis yields nothing") {
  auto w = affected_worker(3000.0);
  auto s = benefit_schedule(w, make_case(PolicyCaseId::C_cares), 3.0, 26.0, false);
  CHECK(s.empty());
}

TEST_CASE("ineligible income yields only the supplement in the CARES case") {
  auto w = affected_worker(250.0);  // $750/quarter, below the floor
  auto s = benefit_schedule(w, make_case(PolicyCaseId::C_cares), 3.0, 6.5, false);
  REQUIRE(s.segments.size() == 1);
  CHECK(s.segments[0].amount == doctest::Approx(2600.0));
}

TEST_CASE("supplement is income-flat") {
  auto lo = affected_worker(1500.0);
  auto hi = affected_worker(9000.0);
  auto slo = benefit_schedule(lo, make_case(PolicyCaseId::C_cares), 3.0, 5.0, false);
  auto shi = benefit_schedule(hi, make_case(PolicyCaseId::C_cares), 3.0, 5.0, false);
  REQUIRE(slo.segments.size() == 2);
  REQUIRE(shi.segments.size() == 2);
  CHECK(slo.segments[1].start == shi.segments[1].start);
  CHECK(slo.segments[1].end == shi.segments[1].end);
  CHECK(slo.segments[1].amount == shi.segments[1].amount);
}

TEST_CASE("schedule invariants and case dominance over random draws") {
  RngStream rng(77, Draw::test_stream);
  for (int trial = 0; trial < 500; ++trial) {
    auto w = affected_worker(rng.uniform(200.0, 12000.0));
    double tc = rng.uniform(1.0, 9.0);
    double delay = rng.uniform(0.1, 20.0);
    double a = benefit_schedule(w, make_case(PolicyCaseId::A_base), tc, delay, false).total();
    auto sb = benefit_schedule(w, make_case(PolicyCaseId::B_ui), tc, delay, false);
    auto sc = benefit_schedule(w, make_case(PolicyCaseId::C_cares), tc, delay, false);
    for (const auto& schedule : {sb, sc}) {
      for (const auto& seg : schedule.segments) {
        CHECK(seg.amount >= 0.0);
        CHECK(seg.start >= 0.0);
        CHECK(seg.end <= tc + 1e-12);
        CHECK(seg.start <= seg.end);
      }
    }
    CHECK(a == 0.0);
    CHECK(sb.total() >= a);
    CHECK(sc.total() >= sb.total());
  }
}

TEST_CASE("full exclusion reproduces the base case") {
  PolicyCase pc = make_case(PolicyCaseId::C_cares);
  pc.exclusion_rate = 1.0;
  for (int i = 0; i < 200; ++i) {
    auto w = affected_worker(500.0 + 40.0 * i);
    auto b = resolve_worker_benefits(w, pc, 3.0, 99, i, 0);
    CHECK(b.excluded);
    CHECK(b.schedule.empty());
    CHECK(b.stimulus == 0.0);
  }
}

TEST_CASE("resolved benefits share randomness across cases") {
  // Same seed/household/worker: the exclusion and delay draws must not depend
  // on the policy case, so A/B/C runs are comparable household by household.
  auto w = affected_worker(4000.0);
  auto a = resolve_worker_benefits(w, make_case(PolicyCaseId::A_base), 3.0, 42, 17, 0);
  auto b = resolve_worker_benefits(w, make_case(PolicyCaseId::B_ui), 3.0, 42, 17, 0);
  auto c = resolve_worker_benefits(w, make_case(PolicyCaseId::C_cares), 3.0, 42, 17, 0);
  CHECK(a.excluded == b.excluded);
  CHECK(b.excluded == c.excluded);
  CHECK(a.benefit_delay_weeks == b.benefit_delay_weeks);
  CHECK(b.benefit_delay_weeks == c.benefit_delay_weeks);
  CHECK(b.stimulus_delay_weeks == c.stimulus_delay_weeks);
}
