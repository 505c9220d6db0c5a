#include "lll/events.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace lll {

void DiscreteEventSystem::validate() const {
    double log_states = 0;
    for (const auto& v : vars) {
        if (v.domain < 1) throw domain_error("bad_system", "variable domain must be >= 1");
        if (static_cast<int>(v.masses.size()) != v.domain)
            throw domain_error("bad_system", "masses count != domain size");
        Rational sum = 0;
        for (const auto& m : v.masses) {
            if (m < 0) throw domain_error("bad_system", "negative mass");
            sum += m;
        }
        if (sum != 1) throw domain_error("bad_system", "variable masses must sum to 1");
        log_states += std::log2(static_cast<double>(v.domain));
    }
    if (log_states > 20)
        throw domain_error("cap_exceeded", "state space exceeds 2^20 points");
    for (const auto& e : events) {
        if (!std::is_sorted(e.vbl.begin(), e.vbl.end()))
            throw domain_error("bad_system", "event variable list must be sorted");
        for (int v : e.vbl)
            if (v < 1 || v > num_vars())
                throw domain_error("bad_system", "event references unknown variable");
        for (const auto& a : e.assignments) {
            if (a.size() != e.vbl.size())
                throw domain_error("bad_system", "assignment arity mismatch");
            for (size_t k = 0; k < a.size(); ++k)
                if (a[k] < 0 || a[k] >= vars[e.vbl[k] - 1].domain)
                    throw domain_error("bad_system", "assignment value out of domain");
        }
    }
}

BipartiteGraph DiscreteEventSystem::declared_graph() const {
    std::set<std::pair<int, int>> e;
    for (int i = 0; i < num_events(); ++i)
        for (int j : events[i].vbl) e.insert({i + 1, j});
    return BipartiteGraph(num_events(), num_vars(), std::move(e));
}

bool DiscreteEventSystem::event_holds(int idx, const std::vector<int>& state) const {
    const auto& e = events.at(idx - 1);
    std::vector<int> restricted;
    restricted.reserve(e.vbl.size());
    for (int v : e.vbl) restricted.push_back(state.at(v - 1));
    return e.assignments.count(restricted) > 0;
}

Rational DiscreteEventSystem::state_mass(const std::vector<int>& state) const {
    Rational m = 1;
    for (int v = 0; v < num_vars(); ++v) m *= vars[v].masses.at(state[v]);
    return m;
}

Rational event_prob(const DiscreteEventSystem& sys, int event) {
    Rational p = 0;
    sys.for_each_state([&](const std::vector<int>& s) {
        if (sys.event_holds(event, s)) p += sys.state_mass(s);
    });
    return p;
}

Rational union_prob(const DiscreteEventSystem& sys, const std::vector<int>& events) {
    Rational p = 0;
    sys.for_each_state([&](const std::vector<int>& s) {
        for (int e : events)
            if (sys.event_holds(e, s)) {
                p += sys.state_mass(s);
                break;
            }
    });
    return p;
}

Rational conditional_prob(const DiscreteEventSystem& sys, int event,
                          const std::vector<int>& K) {
    Rational pu = 0, pboth = 0;
    sys.for_each_state([&](const std::vector<int>& s) {
        bool in_union = false;
        for (int e : K)
            if (sys.event_holds(e, s)) { in_union = true; break; }
        if (!in_union) return;
        Rational m = sys.state_mass(s);
        pu += m;
        if (sys.event_holds(event, s)) pboth += m;
    });
    if (pu == 0) throw domain_error("zero_mass", "conditioning union has zero probability");
    return pboth / pu;
}

CrossSections cross_section_monotone(const DiscreteEventSystem& sys, int event, int var) {
    if (var < 1 || var > sys.num_vars())
        throw domain_error("bad_vertex", "variable index out of range");
    if (sys.vars[var - 1].domain != 2)
        throw domain_error("bad_argument", "cross sections need a binary variable");
    const auto& e = sys.events.at(event - 1);
    auto pos_it = std::find(e.vbl.begin(), e.vbl.end(), var);
    CrossSections cs;
    if (pos_it == e.vbl.end()) {
        // event does not mention the variable: sections coincide
        for (const auto& a : e.assignments) {
            cs.low.insert(a);
            cs.high.insert(a);
        }
        cs.kind = Monotone::both;
        return cs;
    }
    size_t pos = static_cast<size_t>(pos_it - e.vbl.begin());
    for (const auto& a : e.assignments) {
        std::vector<int> rest;
        rest.reserve(a.size() - 1);
        for (size_t k = 0; k < a.size(); ++k)
            if (k != pos) rest.push_back(a[k]);
        (a[pos] == 0 ? cs.low : cs.high).insert(rest);
    }
    bool low_in_high = std::includes(cs.high.begin(), cs.high.end(), cs.low.begin(), cs.low.end());
    bool high_in_low = std::includes(cs.low.begin(), cs.low.end(), cs.high.begin(), cs.high.end());
    if (low_in_high && high_in_low)
        cs.kind = Monotone::both;
    else if (low_in_high)
        cs.kind = Monotone::up;
    else if (high_in_low)
        cs.kind = Monotone::down;
    else
        cs.kind = Monotone::neither;
    return cs;
}

void validate_plan(const DiscreteEventSystem& sys, const CuttingPlan& plan) {
    BipartiteGraph g = sys.declared_graph();
    DepGraph base = base_graph(g);
    for (auto& [k, i] : plan) {
        if (k < 1 || k > sys.num_events() || i < 1 || i > sys.num_events())
            throw domain_error("bad_vertex", "cut references unknown event");
        if (!base.adjacent(k, i))
            throw domain_error("bad_plan", "cut target must neighbor the cut event");
        // the cutting analysis assumes the cutter is 2-discrete
        for (int j : sys.events[i - 1].vbl)
            if (g.right_degree(j) > 2)
                throw domain_error("bad_plan", "cut event " + std::to_string(i) +
                                                   " is not 2-discrete");
    }
    for (size_t a = 0; a < plan.size(); ++a)
        for (size_t b = a + 1; b < plan.size(); ++b) {
            const auto& va = sys.events[plan[a].second - 1].vbl;
            const auto& vb = sys.events[plan[b].second - 1].vbl;
            for (int x : va)
                if (std::binary_search(vb.begin(), vb.end(), x))
                    throw domain_error("bad_plan",
                                       "incompatible cuts (" + std::to_string(plan[a].first) +
                                           "," + std::to_string(plan[a].second) + ") and (" +
                                           std::to_string(plan[b].first) + "," +
                                           std::to_string(plan[b].second) + ")");
        }
}

DiscreteEventSystem cut_events(const DiscreteEventSystem& sys, const CuttingPlan& plan) {
    validate_plan(sys, plan);
    DiscreteEventSystem out = sys;
    for (int k = 1; k <= sys.num_events(); ++k) {
        std::vector<int> cutters;
        for (auto& [ck, ci] : plan)
            if (ck == k) cutters.push_back(ci);
        if (cutters.empty()) continue;
        std::vector<int> vbl = sys.events[k - 1].vbl;
        for (int i : cutters)
            for (int v : sys.events[i - 1].vbl) vbl.push_back(v);
        std::sort(vbl.begin(), vbl.end());
        vbl.erase(std::unique(vbl.begin(), vbl.end()), vbl.end());
        // enumerate assignments over the grown variable set
        EventDef grown;
        grown.vbl = vbl;
        std::vector<int> a(vbl.size(), 0);
        auto restricted_in = [&](const EventDef& e) {
            std::vector<int> r;
            r.reserve(e.vbl.size());
            for (int v : e.vbl) {
                auto it = std::lower_bound(vbl.begin(), vbl.end(), v);
                r.push_back(a[it - vbl.begin()]);
            }
            return e.assignments.count(r) > 0;
        };
        for (;;) {
            if (restricted_in(sys.events[k - 1])) {
                bool removed = false;
                for (int i : cutters)
                    if (restricted_in(sys.events[i - 1])) { removed = true; break; }
                if (!removed) grown.assignments.insert(a);
            }
            size_t v = 0;
            while (v < vbl.size()) {
                if (++a[v] < sys.vars[vbl[v] - 1].domain) break;
                a[v] = 0;
                ++v;
            }
            if (v == vbl.size()) break;
        }
        out.events[k - 1] = std::move(grown);
    }
    return out;
}

LopsiVerdict lopsidependency_check(const DiscreteEventSystem& sys, const DepGraph& g) {
    if (g.m != sys.num_events())
        throw domain_error("dimension_mismatch", "graph size != event count");
    for (int i = 1; i <= sys.num_events(); ++i) {
        std::vector<int> allowed;
        for (int k = 1; k <= sys.num_events(); ++k)
            if (k != i && !g.adjacent(i, k)) allowed.push_back(k);
        Rational pi = event_prob(sys, i);
        for (uint32_t sub = 1; sub < (1u << allowed.size()); ++sub) {
            std::vector<int> K;
            for (size_t b = 0; b < allowed.size(); ++b)
                if (sub & (1u << b)) K.push_back(allowed[b]);
            Rational pu = union_prob(sys, K);
            if (pu == 0) continue;
            if (conditional_prob(sys, i, K) < pi) {
                return {false, i, K};
            }
        }
    }
    return {};
}

namespace {

// direction compatibility for the standard-system and FKG checks
bool same_direction(Monotone a, Monotone b) {
    if (a == Monotone::neither || b == Monotone::neither) return false;
    if (a == Monotone::both || b == Monotone::both) return true;
    return a == b;
}

bool opposite_direction(Monotone a, Monotone b) {
    if (a == Monotone::neither || b == Monotone::neither) return false;
    if (a == Monotone::both || b == Monotone::both) return true;
    return (a == Monotone::up && b == Monotone::down) ||
           (a == Monotone::down && b == Monotone::up);
}

}  // namespace

CuttingReport verify_cutting_properties(const DiscreteEventSystem& sys,
                                        const CuttingPlan& plan) {
    sys.validate();
    CuttingReport rep;
    BipartiteGraph g = sys.declared_graph();
    // standard: shared degree-2 binary variables carry opposite-direction monotone pairs
    rep.standard = true;
    for (int j = 1; j <= g.n; ++j) {
        if (g.right_degree(j) != 2 || sys.vars[j - 1].domain != 2) continue;
        int a = g.right_nbrs(j)[0], b = g.right_nbrs(j)[1];
        Monotone ma = cross_section_monotone(sys, a, j).kind;
        Monotone mb = cross_section_monotone(sys, b, j).kind;
        if (!opposite_direction(ma, mb)) {
            rep.standard = false;
            rep.standard_violation =
                "variable " + std::to_string(j) + " lacks opposite-direction monotone events";
            return rep;
        }
    }

    DiscreteEventSystem cut = cut_events(sys, plan);

    // union preservation, pointwise over the whole product space
    rep.union_preserved = true;
    std::vector<int> all_events(sys.num_events());
    for (int i = 0; i < sys.num_events(); ++i) all_events[i] = i + 1;
    sys.for_each_state([&](const std::vector<int>& s) {
        bool before = false, after = false;
        for (int e : all_events) {
            before = before || sys.event_holds(e, s);
            after = after || cut.event_holds(e, s);
        }
        if (before != after) rep.union_preserved = false;
    });

    rep.lopsi = lopsidependency_check(cut, base_graph(g));
    rep.lopsidependency_ok = rep.lopsi.holds;

    // FKG-style positive correlation for monotone-aligned pairs in the original system
    rep.positive_correlation_ok = true;
    for (int a = 1; a <= sys.num_events(); ++a)
        for (int b = a + 1; b <= sys.num_events(); ++b) {
            bool aligned = true;
            for (int j = 1; j <= g.n; ++j) {
                if (sys.vars[j - 1].domain != 2) { aligned = false; break; }
                if (!same_direction(cross_section_monotone(sys, a, j).kind,
                                    cross_section_monotone(sys, b, j).kind)) {
                    aligned = false;
                    break;
                }
            }
            if (!aligned) continue;
            Rational pa = event_prob(sys, a), pb = event_prob(sys, b);
            Rational pinter = 0;
            sys.for_each_state([&](const std::vector<int>& s) {
                if (sys.event_holds(a, s) && sys.event_holds(b, s))
                    pinter += sys.state_mass(s);
            });
            if (pinter < pa * pb) rep.positive_correlation_ok = false;
        }
    return rep;
}

nlohmann::json system_to_json(const DiscreteEventSystem& sys) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : sys.vars) {
        nlohmann::json masses = nlohmann::json::array();
        for (const auto& m : v.masses) masses.push_back(to_fraction_string(m));
        vars.push_back({{"domain", v.domain}, {"masses", masses}});
    }
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : sys.events) {
        nlohmann::json assigns = nlohmann::json::array();
        for (const auto& a : e.assignments) assigns.push_back(a);
        events.push_back({{"vbl", e.vbl}, {"assignments", assigns}});
    }
    return {{"variables", vars}, {"events", events}};
}

DiscreteEventSystem system_from_json(const nlohmann::json& j) {
    DiscreteEventSystem sys;
    for (const auto& v : j.at("variables")) {
        EventVariable var;
        var.domain = v.at("domain").get<int>();
        for (const auto& m : v.at("masses"))
            var.masses.push_back(parse_rational(m.get<std::string>()));
        sys.vars.push_back(std::move(var));
    }
    for (const auto& e : j.at("events")) {
        EventDef ev;
        ev.vbl = e.at("vbl").get<std::vector<int>>();
        for (const auto& a : e.at("assignments"))
            ev.assignments.insert(a.get<std::vector<int>>());
        sys.events.push_back(std::move(ev));
    }
    sys.validate();
    return sys;
}

}  // namespace lll
