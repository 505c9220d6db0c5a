#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "lll/events.hpp"

using namespace lll;

namespace {

DiscreteEventSystem fair_bits(int n) {
    DiscreteEventSystem sys;
    for (int i = 0; i < n; ++i)
        sys.vars.push_back({2, {Rational(1, 2), Rational(1, 2)}});
    return sys;
}

EventDef on(std::vector<int> vbl, std::set<std::vector<int>> assigns) {
    EventDef e;
    e.vbl = std::move(vbl);
    e.assignments = std::move(assigns);
    return e;
}

// monotone event over two binary variables: increasing in the first coordinate,
// decreasing in the second, built from a random up-closed family
EventDef monotone_pair_event(int va, int vb, std::mt19937_64& rng) {
    static const std::vector<std::set<std::vector<int>>> upsets = {
        {},
        {{1, 1}},
        {{1, 1}, {0, 1}},
        {{1, 1}, {1, 0}},
        {{1, 1}, {0, 1}, {1, 0}},
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}},
    };
    const auto& up = upsets[rng() % upsets.size()];
    EventDef e;
    e.vbl = {va, vb};
    for (const auto& a : up) e.assignments.insert({a[0], 1 - a[1]});  // flip second coord
    return e;
}

bool direction_same(Monotone a, Monotone b) {
    if (a == Monotone::neither || b == Monotone::neither) return false;
    if (a == Monotone::both || b == Monotone::both) return true;
    return a == b;
}

bool direction_opposite(Monotone a, Monotone b) {
    if (a == Monotone::neither || b == Monotone::neither) return false;
    if (a == Monotone::both || b == Monotone::both) return true;
    return (a == Monotone::up && b == Monotone::down) ||
           (a == Monotone::down && b == Monotone::up);
}

}  // namespace

TEST_CASE("exact probabilities") {
    auto sys = fair_bits(2);
    sys.events.push_back(on({1}, {{1}}));
    sys.events.push_back(on({2}, {{1}}));
    sys.events.push_back(on({1}, {{0}}));
    sys.validate();
    CHECK(event_prob(sys, 1) == Rational(1, 2));
    // disjoint events on the same variable add up
    CHECK(union_prob(sys, {1, 3}) == 1);
    // independence across disjoint variable sets
    CHECK(conditional_prob(sys, 1, {2}) == event_prob(sys, 1));
    CHECK_THROWS_AS(conditional_prob(sys, 1, {}), domain_error);
}

TEST_CASE("validation rejects bad systems") {
    DiscreteEventSystem sys;
    sys.vars.push_back({2, {Rational(1, 2), Rational(1, 3)}});
    CHECK_THROWS_AS(sys.validate(), domain_error);
    auto ok = fair_bits(1);
    ok.events.push_back(on({1}, {{2}}));
    CHECK_THROWS_AS(ok.validate(), domain_error);
    auto unsorted = fair_bits(2);
    unsorted.events.push_back(on({2, 1}, {{0, 0}}));
    CHECK_THROWS_AS(unsorted.validate(), domain_error);
}

TEST_CASE("cross sections and monotonicity") {
    auto sys = fair_bits(2);
    sys.events.push_back(on({2}, {{1}}));                      // independent of var 1
    sys.events.push_back(on({1}, {{1}}));                      // up in var 1
    sys.events.push_back(on({1, 2}, {{0, 1}, {1, 0}, {1, 1}}));  // up in var 1
    sys.events.push_back(on({1, 2}, {{0, 1}, {1, 0}}));        // neither in var 1
    CHECK(cross_section_monotone(sys, 1, 1).kind == Monotone::both);
    CHECK(cross_section_monotone(sys, 2, 1).kind == Monotone::up);
    CHECK(cross_section_monotone(sys, 3, 1).kind == Monotone::up);
    CHECK(cross_section_monotone(sys, 4, 1).kind == Monotone::neither);
    CHECK(cross_section_monotone(sys, 2, 2).kind == Monotone::both);
}

TEST_CASE("cutting: golden example and degenerate plans") {
    auto sys = fair_bits(2);
    sys.events.push_back(on({1}, {{1}}));          // A_k = {X=1}
    sys.events.push_back(on({1, 2}, {{1, 1}}));    // A_i = {X=1, Y=1}
    sys.validate();
    auto cut = cut_events(sys, {{1, 2}});
    CHECK(event_prob(sys, 1) == Rational(1, 2));
    CHECK(event_prob(cut, 1) == Rational(1, 4));
    CHECK(cut.events[0].vbl == std::vector<int>{1, 2});
    CHECK(cut.events[0].assignments == std::set<std::vector<int>>{{1, 0}});

    auto idcut = cut_events(sys, {});
    CHECK(idcut.events[0].assignments == sys.events[0].assignments);

    // disjoint events sharing a variable: nothing is removed
    auto sys2 = fair_bits(2);
    sys2.events.push_back(on({1}, {{1}}));
    sys2.events.push_back(on({1, 2}, {{0, 1}}));
    auto cut2 = cut_events(sys2, {{1, 2}});
    CHECK(event_prob(cut2, 1) == Rational(1, 2));
}

TEST_CASE("cutting plan validation") {
    auto sys = fair_bits(3);
    sys.events.push_back(on({1}, {{1}}));
    sys.events.push_back(on({2}, {{1}}));
    // events 1 and 2 share no variable: not neighbors
    CHECK_THROWS_AS(validate_plan(sys, {{1, 2}}), domain_error);

    // a cutter touching a degree-3 variable is not 2-discrete
    auto sys3 = fair_bits(1);
    sys3.events.push_back(on({1}, {{1}}));
    sys3.events.push_back(on({1}, {{0}}));
    sys3.events.push_back(on({1}, {{1}}));
    CHECK_THROWS_AS(validate_plan(sys3, {{1, 2}}), domain_error);

    // overlapping cutter variable sets are incompatible
    auto sys4 = fair_bits(2);
    sys4.events.push_back(on({1}, {{1}}));
    sys4.events.push_back(on({1, 2}, {{1, 1}}));
    sys4.events.push_back(on({2}, {{1}}));
    CHECK_THROWS_AS(validate_plan(sys4, {{1, 2}, {3, 2}}), domain_error);
}

TEST_CASE("lopsidependency verdicts") {
    auto indep = fair_bits(2);
    indep.events.push_back(on({1}, {{1}}));
    indep.events.push_back(on({2}, {{1}}));
    DepGraph edgeless(2, {});
    CHECK(lopsidependency_check(indep, edgeless).holds);

    auto conflict = fair_bits(1);
    conflict.events.push_back(on({1}, {{1}}));
    conflict.events.push_back(on({1}, {{0}}));
    auto v = lopsidependency_check(conflict, edgeless);
    CHECK_FALSE(v.holds);
    CHECK(v.failing_event == 1);
    CHECK(v.failing_K == std::vector<int>{2});
    // under the complete graph there is no admissible K
    DepGraph complete(2, {{1, 2}});
    CHECK(lopsidependency_check(conflict, complete).holds);
}

TEST_CASE("monotone union/intersection/difference and correlation, exhaustively") {
    // all events over three biased binary variables
    DiscreteEventSystem sys;
    sys.vars.push_back({2, {Rational(1, 3), Rational(2, 3)}});
    sys.vars.push_back({2, {Rational(1, 2), Rational(1, 2)}});
    sys.vars.push_back({2, {Rational(2, 5), Rational(3, 5)}});
    std::vector<int> all_vbl{1, 2, 3};
    std::vector<std::vector<int>> states;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) states.push_back({a, b, c});
    // build every subset of the 8 states as an event
    for (uint32_t s = 0; s < 256; ++s) {
        EventDef e;
        e.vbl = all_vbl;
        for (int k = 0; k < 8; ++k)
            if (s & (1u << k)) e.assignments.insert(states[k]);
        sys.events.push_back(std::move(e));
    }
    sys.validate();

    auto kind = [&](int ev, int var) { return cross_section_monotone(sys, ev, var).kind; };
    std::vector<std::array<Monotone, 3>> kinds(257);
    for (int ev = 1; ev <= 256; ++ev)
        for (int var = 1; var <= 3; ++var) kinds[ev][static_cast<size_t>(var - 1)] = kind(ev, var);

    auto combine = [&](uint32_t sa, uint32_t sb, bool inter) {
        return inter ? (sa & sb) : (sa | sb);
    };
    int fkg_checked = 0;
    for (uint32_t sa = 0; sa < 256; ++sa)
        for (uint32_t sb = sa; sb < 256; ++sb) {
            int ea = static_cast<int>(sa) + 1, eb = static_cast<int>(sb) + 1;
            for (int var = 1; var <= 3; ++var) {
                Monotone ma = kinds[ea][static_cast<size_t>(var - 1)];
                Monotone mb = kinds[eb][static_cast<size_t>(var - 1)];
                if (direction_same(ma, mb)) {
                    for (bool inter : {false, true}) {
                        int ec = static_cast<int>(combine(sa, sb, inter)) + 1;
                        Monotone mc = kinds[ec][static_cast<size_t>(var - 1)];
                        CHECK(direction_same(mc, ma));
                        CHECK(direction_same(mc, mb));
                    }
                }
                if (direction_opposite(ma, mb)) {
                    int ed = static_cast<int>(sa & ~sb) + 1;  // A1 \ A2
                    CHECK(direction_opposite(kinds[ed][static_cast<size_t>(var - 1)], mb));
                }
            }
            bool aligned = true;
            for (int var = 1; var <= 3 && aligned; ++var)
                aligned = direction_same(kinds[ea][static_cast<size_t>(var - 1)],
                                         kinds[eb][static_cast<size_t>(var - 1)]);
            if (aligned && (sa % 7 == 0 || sb % 5 == 0)) {  // sampled: full set is slow
                Rational pa = event_prob(sys, ea), pb = event_prob(sys, eb);
                Rational pinter = event_prob(sys, static_cast<int>(sa & sb) + 1);
                CHECK(pinter >= pa * pb);
                ++fkg_checked;
            }
        }
    CHECK(fkg_checked > 100);
}

TEST_CASE("cutting theorem on fuzzed standard systems") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(rng() % 2);  // 3 or 4 binary variables
        auto sys = fair_bits(n);
        // path of events: event i on vars {i, i+1}, up in i, down in i+1;
        // interior variables carry opposite-direction monotone pairs
        for (int i = 1; i < n; ++i) sys.events.push_back(monotone_pair_event(i, i + 1, rng));
        sys.validate();
        // one cut with a 2-discrete cutter; cutters in a plan stay variable-disjoint
        CuttingPlan plan;
        if (n >= 3) plan.push_back({1, 2});
        DepGraph base = base_graph(sys.declared_graph());
        if (!base.adjacent(1, 2)) continue;
        auto rep = verify_cutting_properties(sys, plan);
        CHECK(rep.standard);
        CHECK(rep.union_preserved);
        CHECK(rep.lopsidependency_ok);
        CHECK(rep.positive_correlation_ok);
    }
}

TEST_CASE("system JSON round trip") {
    auto sys = fair_bits(2);
    sys.events.push_back(on({1, 2}, {{1, 0}, {1, 1}}));
    sys.validate();
    auto j = system_to_json(sys);
    auto back = system_from_json(j);
    CHECK(back.num_vars() == 2);
    CHECK(back.events[0].assignments == sys.events[0].assignments);
    CHECK(system_to_json(back) == j);
}
