// command-line front end: every subcommand reads JSON/flags, writes JSON to stdout.
// exit codes: 0 success, 1 domain error, 2 usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lll/construct.hpp"
#include "lll/events.hpp"
#include "lll/gap.hpp"
#include "lll/graph.hpp"
#include "lll/shearer.hpp"
#include "lll/tree.hpp"

using nlohmann::json;
using namespace lll;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("file_not_found", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw domain_error("malformed_file", path + ": " + e.what());
    }
}

std::vector<Rational> parse_rat_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

void put_rat(json& o, const std::string& key, const Rational& v) {
    o[key] = to_fraction_string(v);
    o[key + "_decimal"] = to_decimal_string(v);
}

void emit(const json& o) { std::cout << o.dump() << "\n"; }

ProbabilityVector pv_for(const BipartiteGraph& g, const std::string& rlist) {
    ProbabilityVector r{parse_rat_list(rlist)};
    r.validate(g.m);
    return r;
}

// tree file: graph fields plus optional "root", "root_is_left", "dims"
struct TreeInput {
    BipartiteGraph graph;
    int root = 0;
    bool root_is_left = false;
    std::map<int, Int> dims;
};

TreeInput read_tree(const std::string& path) {
    json j = read_json_file(path);
    TreeInput t;
    t.graph = graph_from_json(j);
    if (j.contains("root")) t.root = j.at("root").get<int>();
    if (j.contains("root_is_left")) t.root_is_left = j.at("root_is_left").get<bool>();
    if (t.root == 0) t.root = 1;
    if (j.contains("dims"))
        for (auto& [k, v] : j.at("dims").items())
            t.dims[std::stoi(k)] = Int(v.get<long>());
    return t;
}

json verdict_json(const ShearerVerdict& v) {
    json o;
    o["in_bound"] = v.in_bound;
    if (v.witness)
        o["witness"] = *v.witness;
    else
        o["witness"] = nullptr;
    put_rat(o, "value", v.in_bound ? v.full_value : v.value_at_witness);
    put_rat(o, "full_value", v.full_value);
    return o;
}

json span_json(const SpanReport& rep) {
    json o;
    o["total_dim"] = rep.total_dim;
    o["span_dim"] = rep.span_dim;
    put_rat(o, "kernel_relative_dim", rep.kernel_relative_dim);
    o["method"] = rep.method;
    o["primes"] = rep.primes;
    return o;
}

json solution_json(const TreeBoundSolution& sol, bool integer_variant) {
    json o;
    o["feasible"] = sol.feasible;
    o["failing_vertex"] = sol.failing_vertex;
    if (integer_variant) {
        json q = json::array();
        for (const auto& v : sol.q_int) q.push_back(v.convert_to<long>());
        o["q"] = q;
    } else {
        json q = json::array();
        for (const auto& v : sol.q) q.push_back(to_fraction_string(v));
        o["q"] = q;
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Lovasz-local-lemma workbench"};
    app.require_subcommand(1);

    std::string graph_path, tree_path, instance_path, system_path, out_path;
    std::string rlist, subset_list, args_list, layers_list, dims_list, plan_str, given_list;
    std::string mode = "span", verify_mode = "auto", transfer_mode = "layers";
    std::string op_name, variant = "theorem18", check = "summary", format = "json";
    std::string p_str, q_str, q1_str, tol_str = "1e-12", P_str;
    int d = 2, l = 0, tt = 2, kk = 2, vi = 0, vj = 0, event = 1, var = 1;
    uint64_t seed = 0;
    long cap = default_total_dim_cap();
    bool root_left = false;

    auto* c_indpoly = app.add_subcommand("indpoly", "independence polynomial value");
    c_indpoly->add_option("--graph", graph_path)->required();
    c_indpoly->add_option("--r", rlist)->required();
    c_indpoly->add_option("--subset", subset_list);

    auto* c_shearer = app.add_subcommand("shearer", "Shearer-bound membership with witness");
    c_shearer->add_option("--graph", graph_path)->required();
    c_shearer->add_option("--r", rlist)->required();

    auto* c_threshold = app.add_subcommand("threshold", "symmetric critical threshold");
    c_threshold->add_option("--graph", graph_path)->required();
    c_threshold->add_option("--tol", tol_str);

    auto* c_scale = app.add_subcommand("scale", "boundary scale along a ray");
    c_scale->add_option("--graph", graph_path)->required();
    c_scale->add_option("--r", rlist)->required();
    c_scale->add_option("--tol", tol_str);

    auto* c_tbound = app.add_subcommand("tree-bound", "tree fixed-point recursion");
    c_tbound->add_option("--tree", tree_path)->required();
    c_tbound->add_option("--r", rlist)->required();

    auto* c_tdim = app.add_subcommand("tree-dim", "tree integer dimension recursion");
    c_tdim->add_option("--tree", tree_path)->required();
    c_tdim->add_option("--r", rlist)->required();

    auto* c_rtree = app.add_subcommand("regular-tree", "regular-tree critical threshold");
    c_rtree->add_option("--t", tt)->required();
    c_rtree->add_option("--k", kk)->required();

    auto* c_construct = app.add_subcommand("construct", "build a subspace instance");
    c_construct->add_option("--graph", graph_path)->required();
    c_construct->add_option("--r", rlist)->required();
    c_construct->add_option("--seed", seed)->required();
    c_construct->add_option("--mode", mode)->check(CLI::IsMember({"span", "boundary"}));
    c_construct->add_option("--cap", cap);
    c_construct->add_option("--out", out_path);

    auto* c_verify = app.add_subcommand("verify", "rank-verify an instance");
    c_verify->add_option("--instance", instance_path)->required();
    c_verify->add_option("--mode", verify_mode)
        ->check(CLI::IsMember({"exact", "modular", "auto"}));

    auto* c_pad = app.add_subcommand("pad", "pad qudit dimensions");
    c_pad->add_option("--instance", instance_path)->required();
    c_pad->add_option("--dims", dims_list)->required();
    c_pad->add_option("--out", out_path);

    auto* c_tau = app.add_subcommand("tau", "closed-form transfer bound");
    c_tau->add_option("--d", d)->required();
    c_tau->add_option("--l", l)->required();
    c_tau->add_option("--p", p_str)->required();
    c_tau->add_option("--q", q_str)->required();

    auto* c_transfer = app.add_subcommand("transfer", "layered / element / path transfer");
    c_transfer->add_option("--p", p_str);
    c_transfer->add_option("--q1", q1_str);
    c_transfer->add_option("--layers", layers_list);
    c_transfer->add_option("--graph", graph_path);
    c_transfer->add_option("--r", rlist);
    c_transfer->add_option("--i", vi);
    c_transfer->add_option("--j", vj);
    c_transfer->add_option("--q", q_str);
    c_transfer->add_option("--mode", transfer_mode)
        ->check(CLI::IsMember({"layers", "element", "path"}));

    auto* c_gapf = app.add_subcommand("gap-formula", "generic gap lower bound");
    c_gapf->add_option("--variant", variant)->check(CLI::IsMember({"theorem18", "corollary19"}));
    c_gapf->add_option("--delta", d)->required();
    c_gapf->add_option("--l", l)->required();
    c_gapf->add_option("--P", P_str)->required();

    auto* c_table = app.add_subcommand("lattice-table", "lattice gap lower bounds");
    c_table->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    auto* c_reduce = app.add_subcommand("reduce", "apply a reduction rule");
    c_reduce->add_option("--graph", graph_path)->required();
    c_reduce->add_option("--op", op_name)->required();
    c_reduce->add_option("--args", args_list);

    auto* c_gapd = app.add_subcommand("gap-decision", "gapless / gapful / unknown");
    c_gapd->add_option("--graph", graph_path)->required();

    auto* c_extremal = app.add_subcommand("extremal", "extremal exclusive distribution");
    c_extremal->add_option("--graph", graph_path)->required();
    c_extremal->add_option("--r", rlist)->required();

    auto* c_events = app.add_subcommand("events-check", "discrete event-system oracle");
    c_events->add_option("--system", system_path)->required();
    c_events->add_option("--check", check)
        ->check(CLI::IsMember({"summary", "prob", "union", "conditional", "monotone", "lopsi",
                               "cutting"}));
    c_events->add_option("--event", event);
    c_events->add_option("--events", args_list);
    c_events->add_option("--given", given_list);
    c_events->add_option("--var", var);
    c_events->add_option("--plan", plan_str);
    c_events->add_option("--graph", graph_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*c_indpoly) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            ProbabilityVector r = pv_for(g, rlist);
            DepGraph base = base_graph(g);
            json o;
            if (subset_list.empty())
                put_rat(o, "value", ind_poly(base, r));
            else
                put_rat(o, "value", ind_poly(base, r, parse_int_list(subset_list)));
            emit(o);
        } else if (*c_shearer) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            emit(verdict_json(shearer_check(base_graph(g), pv_for(g, rlist))));
        } else if (*c_threshold) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            json o;
            put_rat(o, "value", symmetric_threshold(base_graph(g), parse_rational(tol_str)));
            emit(o);
        } else if (*c_scale) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            json o;
            put_rat(o, "value",
                    boundary_scale(base_graph(g), pv_for(g, rlist), parse_rational(tol_str)));
            emit(o);
        } else if (*c_tbound) {
            TreeInput t = read_tree(tree_path);
            auto view = RootedTreeView::make(t.graph, t.root, t.root_is_left);
            auto sol = tree_fixed_point(view, pv_for(view.graph, rlist));
            emit(solution_json(sol, false));
        } else if (*c_tdim) {
            TreeInput t = read_tree(tree_path);
            auto view = RootedTreeView::make(t.graph, t.root, t.root_is_left);
            auto sol = tree_dim_recursion(view, pv_for(view.graph, rlist), t.dims);
            emit(solution_json(sol, true));
        } else if (*c_rtree) {
            json o;
            put_rat(o, "value", regular_tree_threshold(tt, kk));
            emit(o);
        } else if (*c_construct) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            ProbabilityVector r = pv_for(g, rlist);
            SubspaceInstance inst = mode == "boundary"
                                        ? construct_boundary_instance(g, r, seed, cap)
                                        : construct_spanning_instance(g, r, seed, cap);
            json o = instance_to_json(inst);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << o.dump() << "\n";
            }
            emit(o);
        } else if (*c_verify) {
            SubspaceInstance inst = instance_from_json(read_json_file(instance_path));
            RankMode rm = verify_mode == "exact"     ? RankMode::exact
                          : verify_mode == "modular" ? RankMode::modular
                                                     : RankMode::automatic;
            emit(span_json(verify_span(inst, rm)));
        } else if (*c_pad) {
            SubspaceInstance inst = instance_from_json(read_json_file(instance_path));
            json o = instance_to_json(pad_dims(inst, parse_long_list(dims_list)));
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                out << o.dump() << "\n";
            }
            emit(o);
        } else if (*c_tau) {
            json o;
            put_rat(o, "value", tau(d, l, parse_rational(p_str), parse_rational(q_str)));
            emit(o);
        } else if (*c_transfer) {
            json o;
            if (transfer_mode == "layers") {
                put_rat(o, "q2_bound", transfer_bound(parse_rational(p_str),
                                                      parse_rational(q1_str),
                                                      parse_long_list(layers_list)));
            } else {
                BipartiteGraph g = graph_from_json(read_json_file(graph_path));
                DepGraph base = base_graph(g);
                ProbabilityVector p = pv_for(g, rlist);
                ProbabilityVector out =
                    transfer_mode == "element"
                        ? element_transfer(base, p, vi, vj, parse_rational(q_str))
                        : path_transfer(base, p, vi, vj, parse_rational(q_str));
                json arr = json::array();
                for (const auto& v : out.entries) arr.push_back(to_fraction_string(v));
                o["p"] = arr;
            }
            emit(o);
        } else if (*c_gapf) {
            GapVariant gv = variant == "corollary19" ? GapVariant::corollary19
                                                     : GapVariant::theorem18;
            json o;
            put_rat(o, "value", generic_gap_bound(d, l, parse_rational(P_str), gv));
            emit(o);
        } else if (*c_table) {
            auto rows = lattice_gap_table();
            if (format == "text") {
                std::printf("%-12s %-14s %-8s %-14s %s\n", "lattice", "P_A", "q1", "layers",
                            "gap_lower_bound");
                for (const auto& r : rows) {
                    std::string layers;
                    for (size_t k = 0; k < r.layers.size(); ++k)
                        layers += (k ? "," : "") + std::to_string(r.layers[k]);
                    std::printf("%-12s %-14s %-8s %-14s %s\n", r.lattice.c_str(),
                                to_decimal_string(r.P_A, 10).c_str(), r.q1_rule.c_str(),
                                layers.c_str(),
                                to_decimal_string(r.lower_bound_on_gap, 4).c_str());
                }
            } else {
                json arr = json::array();
                for (const auto& r : rows) {
                    json o;
                    o["lattice"] = r.lattice;
                    put_rat(o, "P_A", r.P_A);
                    o["q1_rule"] = r.q1_rule;
                    o["layers"] = r.layers;
                    o["gap_lower_bound"] = to_decimal_string(r.lower_bound_on_gap, 4);
                    arr.push_back(std::move(o));
                }
                emit(json{{"rows", arr}});
            }
        } else if (*c_reduce) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            auto res = apply_reduction(g, parse_reduction_op(op_name), parse_int_list(args_list));
            json o;
            o["graph"] = graph_to_json(res.graph);
            o["left_map"] = res.left_map;
            o["right_map"] = res.right_map;
            emit(o);
        } else if (*c_gapd) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            GapDecision dcsn = gap_decision(g);
            json o;
            o["verdict"] = dcsn.verdict == GapVerdict::gapless   ? "gapless"
                           : dcsn.verdict == GapVerdict::gapful ? "gapful"
                                                                : "unknown";
            o["reason"] = dcsn.reason;
            json cyc = json::array();
            for (const auto& c : find_cyclic_subgraphs(g)) {
                cyc.push_back(json{{"left", c.left},
                                   {"length", c.length},
                                   {"two_discrete", c.two_discrete}});
            }
            o["cyclic_subgraphs"] = cyc;
            emit(o);
        } else if (*c_extremal) {
            BipartiteGraph g = graph_from_json(read_json_file(graph_path));
            auto dist = extremal_distribution(base_graph(g), pv_for(g, rlist));
            json arr = json::array();
            for (const auto& m : dist)
                arr.push_back(json{{"set", m.set}, {"mass", to_fraction_string(m.mass)}});
            emit(json{{"masses", arr}});
        } else if (*c_events) {
            DiscreteEventSystem sys = system_from_json(read_json_file(system_path));
            json o;
            if (check == "summary") {
                sys.validate();
                o["valid"] = true;
                o["num_vars"] = sys.num_vars();
                o["num_events"] = sys.num_events();
                json probs = json::array();
                for (int e = 1; e <= sys.num_events(); ++e)
                    probs.push_back(to_fraction_string(event_prob(sys, e)));
                o["event_probs"] = probs;
            } else if (check == "prob") {
                put_rat(o, "value", event_prob(sys, event));
            } else if (check == "union") {
                put_rat(o, "value", union_prob(sys, parse_int_list(args_list)));
            } else if (check == "conditional") {
                put_rat(o, "value", conditional_prob(sys, event, parse_int_list(given_list)));
            } else if (check == "monotone") {
                auto cs = cross_section_monotone(sys, event, var);
                o["kind"] = cs.kind == Monotone::up     ? "up"
                            : cs.kind == Monotone::down ? "down"
                            : cs.kind == Monotone::both ? "both"
                                                        : "neither";
            } else if (check == "lopsi") {
                DepGraph dg = graph_path.empty()
                                  ? base_graph(sys.declared_graph())
                                  : base_graph(graph_from_json(read_json_file(graph_path)));
                auto v = lopsidependency_check(sys, dg);
                o["holds"] = v.holds;
                o["failing_event"] = v.failing_event;
                o["failing_K"] = v.failing_K;
            } else if (check == "cutting") {
                // plan format: "k:i,k:i"
                CuttingPlan plan;
                std::stringstream ss(plan_str);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    auto pos = tok.find(':');
                    if (pos == std::string::npos)
                        throw domain_error("bad_plan", "plan entries are k:i pairs");
                    plan.push_back({std::stoi(tok.substr(0, pos)),
                                    std::stoi(tok.substr(pos + 1))});
                }
                auto rep = verify_cutting_properties(sys, plan);
                o["standard"] = rep.standard;
                o["standard_violation"] = rep.standard_violation;
                o["union_preserved"] = rep.union_preserved;
                o["lopsidependency_ok"] = rep.lopsidependency_ok;
                o["positive_correlation_ok"] = rep.positive_correlation_ok;
                o["ok"] = rep.ok();
            }
            emit(o);
        }
    } catch (const domain_error& e) {
        emit(json{{"error", e.code}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit(json{{"error", "internal"}, {"message", e.what()}});
        return 1;
    }
    return 0;
}
