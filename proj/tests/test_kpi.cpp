// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "aghetnet/kpi.hpp"

using namespace aghetnet;

namespace
{
UeAssignment assigned(Tier t, std::size_t cell, Subframe sf, double sir)
{
    UeAssignment a;
    a.serving_tier = t;
    a.serving_cell = cell;
    a.subframe = sf;
    a.sir.mbs_usf = a.sir.mbs_csf = a.sir.pbs_usf = a.sir.pbs_csf = a.sir.uabs_usf
        = a.sir.uabs_csf = sir;
    return a;
}

double sort_oracle(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const auto k = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(v.size())));
    return v[k == 0 ? 0 : k - 1];
}
}  // namespace

TEST_CASE("duty weights")
{
    IcicState s;
    s.beta_mbs = 0.3;
    s.beta_pbs = 0.7;
    const auto half = UabsDutyNormalization::Half;
    CHECK(duty_weight(Tier::Mbs, Subframe::Usf, s, half) == doctest::Approx(0.3));
    CHECK(duty_weight(Tier::Mbs, Subframe::Csf, s, half) == doctest::Approx(0.7));
    CHECK(duty_weight(Tier::Pbs, Subframe::Usf, s, half) == doctest::Approx(0.7));
    CHECK(duty_weight(Tier::Pbs, Subframe::Csf, s, half) == doctest::Approx(0.3));
    CHECK(duty_weight(Tier::Uabs, Subframe::Usf, s, half) == doctest::Approx(0.5));
    CHECK(duty_weight(Tier::Uabs, Subframe::Csf, s, half) == doctest::Approx(0.5));
    const auto raw = UabsDutyNormalization::AsWritten;
    CHECK(duty_weight(Tier::Uabs, Subframe::Usf, s, raw) == doctest::Approx(1.0));
    CHECK(duty_weight(Tier::Uabs, Subframe::Csf, s, raw) == doctest::Approx(1.0));
    CHECK_THROWS_AS(duty_weight(Tier::Gue, Subframe::Usf, s, half), ParameterError);
}

TEST_CASE("per-UE spectral efficiency")
{
    IcicState s;
    s.beta_mbs = 0.5;
    CellLoads loads(1, 1, 1);
    const auto a = assigned(Tier::Mbs, 0, Subframe::Usf, 3.0);
    loads.add(Tier::Mbs, 0, Subframe::Usf);
    loads.add(Tier::Mbs, 0, Subframe::Usf);
    // 0.5 * log2(4) / 2
    CHECK(ue_spectral_efficiency(a, loads, s, UabsDutyNormalization::Half) == doctest::Approx(0.5));
    CHECK(spectral_efficiency(1.0, 0.0, 1) == 0.0);
    const auto empty = assigned(Tier::Pbs, 0, Subframe::Csf, 1.0);
    CHECK_THROWS(ue_spectral_efficiency(empty, loads, s, UabsDutyNormalization::Half));
}

TEST_CASE("fifth percentile by nearest rank")
{
    CHECK(fifth_percentile(std::vector<double>{7.0}) == 7.0);
    std::vector<double> v(100);
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        v[i] = static_cast<double>(100 - i);
    }
    CHECK(fifth_percentile(v) == 5.0);
    v.push_back(0.5);
    // 101 values: rank ceil(5.05) = 6.
    CHECK(fifth_percentile(v) == 5.0);
    CHECK_THROWS_AS(fifth_percentile(std::vector<double>{}), ParameterError);
}

TEST_CASE("fifth percentile equals a sort oracle on random vectors")
{
    for (std::uint64_t k = 0; k < 10000; ++k)
    {
        auto rng = substream(17, StreamTag::Test, k);
        const auto n = 1 + static_cast<std::size_t>(rng() % 300);
        std::vector<double> v(n);
        for (auto& x : v)
        {
            // Coarse values so ties are common.
            x = static_cast<double>(rng() % 50) / 7.0;
        }
        REQUIRE(fifth_percentile(v) == sort_oracle(v));
    }
}

TEST_CASE("probe grid")
{
    const auto g = probe_grid(SimArea{1000, 600}, 200, 1.5);
    REQUIRE(g.size() == 15);
    CHECK(g.front().x == doctest::Approx(100));
    CHECK(g.front().y == doctest::Approx(100));
    CHECK(g.back().x == doctest::Approx(900));
    CHECK(g.back().y == doctest::Approx(500));
    CHECK(g.front().z == 1.5);
    CHECK(probe_grid(SimArea{100, 100}, 200, 1.5).size() == 1);
    CHECK_THROWS_AS(probe_grid(SimArea{100, 100}, 0, 1.5), ParameterError);
}

TEST_CASE("coverage counts a probe as one extra user")
{
    IcicState s;
    s.beta_mbs = 0.5;
    CellLoads loads(1, 1, 1);
    loads.add(Tier::Mbs, 0, Subframe::Usf);
    const auto probe = assigned(Tier::Mbs, 0, Subframe::Usf, 3.0);
    const double se = probe_spectral_efficiency(probe, loads, s, UabsDutyNormalization::Half);
    CHECK(se == doctest::Approx(0.5));
    const std::vector<UeAssignment> probes{probe, assigned(Tier::Pbs, 0, Subframe::Usf, 0.0)};
    CHECK(coverage_probability(probes, loads, s, UabsDutyNormalization::Half, 0.4) == 0.5);
    CHECK(coverage_probability(probes, loads, s, UabsDutyNormalization::Half, 0.5) == 0.0);
    CHECK(coverage_probability({}, loads, s, UabsDutyNormalization::Half, 0.1) == 0.0);
}

TEST_CASE("coverage is non-increasing in the threshold")
{
    IcicState s;
    CellLoads loads(1, 1, 1);
    std::vector<UeAssignment> probes;
    for (int i = 0; i < 200; ++i)
    {
        probes.push_back(assigned(i % 2 ? Tier::Mbs : Tier::Uabs, 0,
                                  i % 3 ? Subframe::Usf : Subframe::Csf, 0.01 * i));
    }
    double prev = 1.0;
    for (double t = 0; t < 2; t += 0.01)
    {
        const double c = coverage_probability(probes, loads, s, UabsDutyNormalization::Half, t);
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("trial aggregation")
{
    std::vector<TrialRecord> recs{{0, 0.1, 0.5, {}}, {1, 0.3, 0.7, {}}};
    const auto r = aggregate(recs, IcicState{}, 0.01, 9);
    CHECK(r.trials == 2);
    CHECK(r.fifth_percentile_se == doctest::Approx(0.2));
    CHECK(r.coverage_probability == doctest::Approx(0.6));
    CHECK(r.seed == 9);
    CHECK(r.records.size() == 2);
}
