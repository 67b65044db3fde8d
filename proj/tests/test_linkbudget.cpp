// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>

#include "aghetnet/linkbudget.hpp"
#include "aghetnet/scenario.hpp"

using namespace aghetnet;

namespace
{
NetworkLayout one_per_tier()
{
    NetworkLayout l;
    l.mbs = {{0, 0, 36}};
    l.pbs = {{600, 0, 15}};
    l.uabs = {{300, 300, 36}};
    l.gue = {{200, 100, 1.5}};
    l.aue = {{400, 200, 22.5}};
    return l;
}

ServingPowers powers(double rm, double rp, double ru, double mbs = 0, double pbs = 0, double uabs = 0)
{
    ServingPowers p;
    p.r_mbs = rm;
    p.r_pbs = rp;
    p.r_uabs = ru;
    p.interference = {mbs, pbs, uabs};
    return p;
}

IcicState alphas(double am, double ap)
{
    IcicState s;
    s.alpha_mbs = am;
    s.alpha_pbs = ap;
    return s;
}

const SirOptions kNearest{kDefaultSirFloorMw, CsfAlignment::NearestCells};
const SirOptions kNetwork{kDefaultSirFloorMw, CsfAlignment::Network};
}  // namespace

TEST_CASE("received power at 1 km from an MBS without fading")
{
    ChannelParams c;
    c.fading = false;
    Xoshiro256 rng{1};
    const auto lb = received_power({Tier::Mbs, 0, {0, 0, 36}}, {Tier::Gue, 0, {1000, 0, 1.5}}, 46, c, rng);
    // Hata 123.449660 dB, element gain 7.954007 dBi at 1.976 deg depression.
    CHECK(lb.rx_power_mw == doctest::Approx(1.123142092906847e-07).epsilon(1e-9));
    CHECK(lb.link_class == LinkClass::Gtg);
    CHECK_FALSE(lb.los);
}

TEST_CASE("received power identity holds link by link")
{
    const ChannelParams c;
    const auto l = one_per_tier();
    for (Tier bs : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
    {
        for (Tier ue : {Tier::Gue, Tier::Aue})
        {
            for (std::uint64_t k = 0; k < 50; ++k)
            {
                auto rng = substream(8, StreamTag::Test, k);
                const auto lb = received_power({bs, 0, l.nodes(bs)[0]}, {ue, 0, l.nodes(ue)[0]},
                                               l.tx_power(bs), c, rng);
                const double expect = std::pow(10.0, (l.tx_power(bs) + lb.antenna_db - lb.pl_db) / 10) * lb.fading;
                CHECK(lb.rx_power_mw == doctest::Approx(expect).epsilon(1e-9));
                CHECK(lb.rx_power_mw >= 0);
            }
        }
    }
}

TEST_CASE("100 dB loss at 46 dBm")
{
    CHECK(db_to_linear(46.0 + 0.0 - 100.0) == doctest::Approx(std::pow(10.0, -5.4)).epsilon(1e-12));
}

TEST_CASE("nearest cells")
{
    const auto l = one_per_tier();
    const auto n = nearest_cells(l.gue[0], l);
    CHECK(n.moi == 0);
    CHECK(n.poi == 0);
    CHECK(n.uoi == 0);

    NetworkLayout tie = l;
    tie.mbs = {{100, 0, 36}, {-100, 0, 36}};
    CHECK(nearest_cells({0, 0, 1.5}, tie).moi == 0);

    NetworkLayout empty = l;
    empty.pbs.clear();
    CHECK_THROWS_AS(nearest_cells({0, 0, 1.5}, empty), ConfigError);
}

TEST_CASE("nearest cells match an exhaustive scan")
{
    const Scenario s = Scenario::desk(4, 4);
    auto rng = substream(3, StreamTag::Layout, 0);
    const auto l = build_layout(s.tiers, s.area, rng);
    for (const auto& ue : l.gue)
    {
        const auto n = nearest_cells(ue, l);
        for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
        {
            const auto& bss = l.nodes(t);
            std::size_t best = 0;
            for (std::size_t i = 1; i < bss.size(); ++i)
            {
                auto d = [&](const Position& p) {
                    return std::pow(p.x - ue.x, 2) + std::pow(p.y - ue.y, 2) + std::pow(p.z - ue.z, 2);
                };
                if (d(bss[i]) < d(bss[best]))
                {
                    best = i;
                }
            }
            CHECK(n.of(t) == best);
        }
    }
}

TEST_CASE("aggregate interference")
{
    const ChannelParams c;
    const LinkStreams streams{1, StreamTag::Test, 0, 0};
    auto l = one_per_tier();
    const Node ue{Tier::Gue, 0, l.gue[0]};
    CHECK(aggregate_interference(ue, l, nearest_cells(ue.pos, l), c, streams) == 0);

    // A second MBS is the only interferer.
    l.mbs.push_back({2000, 0, 36});
    const auto n = nearest_cells(ue.pos, l);
    auto rng = streams.for_bs(Tier::Mbs, 1);
    const double second = received_power({Tier::Mbs, 1, l.mbs[1]}, ue, 46, c, rng).rx_power_mw;
    CHECK(aggregate_interference(ue, l, n, c, streams) == second);
    const auto split = interference_by_tier(ue, l, n, c, streams);
    CHECK(split.mbs == second);
    CHECK(split.pbs == 0);
    CHECK(split.uabs == 0);
}

TEST_CASE("aggregate interference equals a brute-force sum over the exclusion set")
{
    const Scenario s = Scenario::desk(4, 4);
    auto lrng = substream(3, StreamTag::Layout, 0);
    const auto l = build_layout(s.tiers, s.area, lrng);
    for (std::size_t u = 0; u < 20 && u < l.gue.size(); ++u)
    {
        const Node ue{Tier::Gue, u, l.gue[u]};
        const LinkStreams streams{3, StreamTag::UeLinks, 0, u};
        const auto n = nearest_cells(ue.pos, l);
        double sum = 0;
        for (Tier t : {Tier::Mbs, Tier::Pbs, Tier::Uabs})
        {
            for (std::size_t i = 0; i < l.nodes(t).size(); ++i)
            {
                if (i != n.of(t))
                {
                    auto rng = streams.for_bs(t, i);
                    sum += received_power({t, i, l.nodes(t)[i]}, ue, l.tx_power(t), s.channel, rng).rx_power_mw;
                }
            }
        }
        CHECK(aggregate_interference(ue, l, n, s.channel, streams) == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("serving powers share the interference link draws")
{
    const Scenario s = Scenario::desk(4, 4);
    auto lrng = substream(3, StreamTag::Layout, 0);
    const auto l = build_layout(s.tiers, s.area, lrng);
    const Node ue{Tier::Aue, 0, l.aue.at(0)};
    const LinkStreams streams{3, StreamTag::UeLinks, 0, 7};
    const auto n = nearest_cells(ue.pos, l);
    const auto p = serving_powers(ue, l, n, s.channel, streams);
    auto rng = streams.for_bs(Tier::Pbs, n.poi);
    CHECK(p.r_pbs == received_power({Tier::Pbs, n.poi, l.pbs[n.poi]}, ue, 30, s.channel, rng).rx_power_mw);
    CHECK(p.i_agg() == doctest::Approx(aggregate_interference(ue, l, n, s.channel, streams)).epsilon(1e-12));
}

TEST_CASE("sextet closed forms with unit powers")
{
    const auto g = sir_sextet(powers(1, 1, 1), alphas(0.5, 0.5), kNearest);
    CHECK(g.mbs_usf == doctest::Approx(0.5));
    CHECK(g.mbs_csf == doctest::Approx(1.0 / 3.0));
    CHECK(g.pbs_usf == doctest::Approx(0.5));
    CHECK(g.pbs_csf == doctest::Approx(1.0 / 3.0));
    CHECK(g.uabs_usf == doctest::Approx(0.5));
    CHECK(g.uabs_csf == doctest::Approx(1.0));
}

TEST_CASE("sextet closed forms with interference")
{
    const double rm = 3e-7, rp = 2e-8, ru = 5e-9, im = 4e-8, ip = 1e-8, iu = 2e-9;
    const double ia = im + ip + iu;
    const double am = 0.25, ap = 0.75;
    const auto p = powers(rm, rp, ru, im, ip, iu);

    const auto n = sir_sextet(p, alphas(am, ap), kNearest);
    CHECK(n.mbs_usf == doctest::Approx(rm / (rp + ru + ia)).epsilon(1e-12));
    CHECK(n.mbs_csf == doctest::Approx(am * rm / (ap * rp + ru + ia)).epsilon(1e-12));
    CHECK(n.pbs_usf == doctest::Approx(rp / (rm + ru + ia)).epsilon(1e-12));
    CHECK(n.pbs_csf == doctest::Approx(ap * rp / (am * rm + ru + ia)).epsilon(1e-12));
    CHECK(n.uabs_usf == doctest::Approx(ru / (rm + rp + ia)).epsilon(1e-12));
    CHECK(n.uabs_csf == doctest::Approx(ru / (am * rm + ap * rp + ia)).epsilon(1e-12));

    const double ic = am * im + ap * ip + iu;
    const auto w = sir_sextet(p, alphas(am, ap), kNetwork);
    CHECK(w.mbs_usf == n.mbs_usf);
    CHECK(w.pbs_usf == n.pbs_usf);
    CHECK(w.uabs_usf == n.uabs_usf);
    CHECK(w.mbs_csf == doctest::Approx(am * rm / (ap * rp + ru + ic)).epsilon(1e-12));
    CHECK(w.pbs_csf == doctest::Approx(ap * rp / (am * rm + ru + ic)).epsilon(1e-12));
    CHECK(w.uabs_csf == doctest::Approx(ru / (am * rm + ap * rp + ic)).epsilon(1e-12));
}

TEST_CASE("no ICIC makes CSF equal USF")
{
    const auto p = powers(3e-7, 2e-8, 5e-9, 4e-8, 1e-8, 2e-9);
    for (const auto& o : {kNearest, kNetwork})
    {
        const auto g = sir_sextet(p, alphas(1, 1), o);
        CHECK(g.mbs_csf == g.mbs_usf);
        CHECK(g.pbs_csf == g.pbs_usf);
        CHECK(g.uabs_csf == g.uabs_usf);
    }
}

TEST_CASE("almost blank subframes")
{
    const auto p = powers(3e-7, 2e-8, 5e-9, 4e-8, 1e-8, 2e-9);
    const auto g = sir_sextet(p, alphas(0, 0), kNearest);
    CHECK(g.mbs_csf == 0);
    CHECK(g.pbs_csf == 0);
    CHECK(g.uabs_csf == doctest::Approx(5e-9 / 5.2e-8).epsilon(1e-12));
    const auto w = sir_sextet(p, alphas(0, 0), kNetwork);
    CHECK(w.uabs_csf == doctest::Approx(5e-9 / 2e-9).epsilon(1e-12));
}

TEST_CASE("zero numerator and zero denominator")
{
    const auto z = sir_sextet(powers(0, 1e-9, 1e-9), alphas(1, 1), kNearest);
    CHECK(z.mbs_usf == 0);
    CHECK(z.mbs_csf == 0);
    const auto f = sir_sextet(powers(0, 0, 1e-9), alphas(0, 0), kNearest);
    CHECK(f.uabs_csf == doctest::Approx(1e-9 / kDefaultSirFloorMw));
    CHECK(std::isfinite(f.uabs_csf));
}

TEST_CASE("sextet monotonicity in the reduction factors")
{
    for (const auto& o : {kNearest, kNetwork})
    {
        const auto p = powers(3e-7, 2e-8, 5e-9, 4e-8, 1e-8, 2e-9);
        const double usf = sir_sextet(p, alphas(1, 1), o).uabs_usf;
        double prev_p = -1;
        for (double a = 0.05; a <= 1.0; a += 0.05)
        {
            for (double b = 0.0; b <= 1.0; b += 0.25)
            {
                const auto g = sir_sextet(p, alphas(b, a), o);
                CHECK(g.uabs_csf >= usf);
                if (a < 1 || b < 1)
                {
                    CHECK(g.uabs_csf > usf);
                }
            }
            const double pbs = sir_sextet(p, alphas(0.5, a), o).pbs_csf;
            CHECK(pbs > prev_p);
            prev_p = pbs;
        }
        double prev_m = std::numeric_limits<double>::infinity();
        for (double b = 0.0; b <= 1.0; b += 0.1)
        {
            const double pbs = sir_sextet(p, alphas(b, 0.5), o).pbs_csf;
            CHECK(pbs < prev_m);
            prev_m = pbs;
        }
    }
}

TEST_CASE("SIR is scale invariant")
{
    const auto p = powers(3e-7, 2e-8, 5e-9, 4e-8, 1e-8, 2e-9);
    const auto q = powers(3e-4, 2e-5, 5e-6, 4e-5, 1e-5, 2e-6);
    for (const auto& o : {kNearest, kNetwork})
    {
        const auto a = sir_sextet(p, alphas(0.3, 0.6), o);
        const auto b = sir_sextet(q, alphas(0.3, 0.6), o);
        CHECK(a.mbs_usf == doctest::Approx(b.mbs_usf).epsilon(1e-12));
        CHECK(a.mbs_csf == doctest::Approx(b.mbs_csf).epsilon(1e-12));
        CHECK(a.pbs_csf == doctest::Approx(b.pbs_csf).epsilon(1e-12));
        CHECK(a.uabs_csf == doctest::Approx(b.uabs_csf).epsilon(1e-12));
    }
}

TEST_CASE("ICIC state validation")
{
    IcicState s;
    CHECK_NOTHROW(s.validate());
    s.alpha_mbs = 1.5;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    s = {};
    s.tau_uabs_db = -1;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    CHECK(IcicState{}.rho_db(Tier::Mbs) == 30);
    CHECK_THROWS_AS(IcicState{}.rho_db(Tier::Gue), ParameterError);
}

TEST_CASE("CSF alignment names")
{
    CHECK(csf_alignment_from_string("network") == CsfAlignment::Network);
    CHECK(csf_alignment_from_string("nearest") == CsfAlignment::NearestCells);
    CHECK(std::string(to_string(CsfAlignment::Network)) == "network");
    CHECK_THROWS_AS(csf_alignment_from_string("all"), ParameterError);
}
