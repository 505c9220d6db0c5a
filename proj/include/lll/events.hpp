#ifndef LLL_EVENTS_HPP
#define LLL_EVENTS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lll/graph.hpp"
#include "lll/rational.hpp"
#include <nlohmann/json_fwd.hpp>

namespace lll {

struct EventVariable {
    int domain = 2;
    std::vector<Rational> masses;  // per value, sums to 1
};

struct EventDef {
    std::vector<int> vbl;                   // declared variables, 1-indexed, sorted
    std::set<std::vector<int>> assignments; // accepted tuples over vbl, values 0-based
};

struct DiscreteEventSystem {
    std::vector<EventVariable> vars;  // vars[0] <-> variable 1
    std::vector<EventDef> events;     // events[0] <-> event 1

    int num_vars() const { return static_cast<int>(vars.size()); }
    int num_events() const { return static_cast<int>(events.size()); }
    void validate() const;  // mass sums, ranges, state-space cap 2^20
    BipartiteGraph declared_graph() const;

    bool event_holds(int idx, const std::vector<int>& state) const;  // idx 1-based
    Rational state_mass(const std::vector<int>& state) const;
    // iterate the full product space
    template <typename F>
    void for_each_state(F&& f) const {
        std::vector<int> state(num_vars(), 0);
        for (;;) {
            f(state);
            int v = 0;
            while (v < num_vars()) {
                if (++state[v] < vars[v].domain) break;
                state[v] = 0;
                ++v;
            }
            if (v == num_vars()) break;
        }
    }
};

Rational event_prob(const DiscreteEventSystem& sys, int event);
Rational union_prob(const DiscreteEventSystem& sys, const std::vector<int>& events);
// Pr(A_i | union of K); throws on zero conditioning mass
Rational conditional_prob(const DiscreteEventSystem& sys, int event, const std::vector<int>& K);

enum class Monotone { up, down, both, neither };

struct CrossSections {
    Monotone kind;
    std::set<std::vector<int>> low, high;  // sections over vbl(A) minus X
};

CrossSections cross_section_monotone(const DiscreteEventSystem& sys, int event, int var);

using CuttingPlan = std::vector<std::pair<int, int>>;  // (k, i) pairs

void validate_plan(const DiscreteEventSystem& sys, const CuttingPlan& plan);
DiscreteEventSystem cut_events(const DiscreteEventSystem& sys, const CuttingPlan& plan);

struct LopsiVerdict {
    bool holds = true;
    int failing_event = 0;
    std::vector<int> failing_K;
};

LopsiVerdict lopsidependency_check(const DiscreteEventSystem& sys, const DepGraph& g);

struct CuttingReport {
    bool standard = false;
    std::string standard_violation;
    bool union_preserved = false;
    bool lopsidependency_ok = false;
    LopsiVerdict lopsi;
    bool positive_correlation_ok = false;
    bool ok() const { return standard && union_preserved && lopsidependency_ok &&
                             positive_correlation_ok; }
};

CuttingReport verify_cutting_properties(const DiscreteEventSystem& sys, const CuttingPlan& plan);

nlohmann::json system_to_json(const DiscreteEventSystem& sys);
DiscreteEventSystem system_from_json(const nlohmann::json& j);

}  // namespace lll

#endif
