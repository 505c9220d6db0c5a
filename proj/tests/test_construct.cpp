#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include <nlohmann/json.hpp>

#include "lll/construct.hpp"

using namespace lll;

namespace {

BipartiteGraph c4() {
    return BipartiteGraph(4, 4, {{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}, {4, 1}});
}

const ProbabilityVector c4_boundary{{Rational(1, 3), Rational(1, 3), Rational(1, 4),
                                     Rational(1, 4)}};

}  // namespace

TEST_CASE("random subspace sampling") {
    auto b0 = sample_random_subspace(4, 0, 1);
    CHECK(b0.empty());
    auto full = sample_random_subspace(3, 3, 2);
    CHECK(full.size() == 3);
    std::vector<SparseRow> rows;
    for (const auto& r : full) {
        SparseRow row;
        for (size_t c = 0; c < r.size(); ++c)
            if (r[c] != 0) row.push_back({static_cast<long>(c), r[c]});
        rows.push_back(std::move(row));
    }
    CHECK(exact_rank(rows, 3) == 3);
    auto half = sample_random_subspace(4, 2, 1);
    CHECK(half.size() == 2);
    CHECK(half[0].size() == 4);
    // deterministic for a fixed seed
    CHECK(sample_random_subspace(4, 2, 1) == half);
    CHECK_THROWS_AS(sample_random_subspace(2, 3, 1), domain_error);
}

TEST_CASE("single vertex spans trivially") {
    BipartiteGraph g(1, 2, {{1, 1}, {1, 2}});
    auto inst = construct_spanning_instance(g, ProbabilityVector{{Rational(1)}}, 5);
    auto rep = verify_span(inst, RankMode::exact);
    CHECK(rep.kernel_relative_dim == 0);
    CHECK(rep.span_dim == rep.total_dim);
}

TEST_CASE("two vertices sharing a qudit split it in half") {
    BipartiteGraph g(2, 1, {{1, 1}, {2, 1}});
    ProbabilityVector r{{Rational(1, 2), Rational(1, 2)}};
    auto inst = construct_spanning_instance(g, r, 7);
    CHECK(inst.dims[0] % 2 == 0);
    auto rep = verify_span(inst, RankMode::exact);
    CHECK(rep.kernel_relative_dim == 0);
}

TEST_CASE("spanning construction on the 4-cyclic boundary vector") {
    auto inst = construct_spanning_instance(c4(), c4_boundary, 11);
    CHECK(inst.total_dim() <= (1L << 12));
    // row counts realize the relative dimensions exactly
    for (int i = 1; i <= 4; ++i) {
        Rational rel(static_cast<long>(inst.hams[i - 1].basis.size()), inst.local_dim(i));
        CHECK(rel == c4_boundary.at(i));
    }
    auto rep = verify_span(inst, RankMode::exact);
    CHECK(rep.kernel_relative_dim == 0);
}

TEST_CASE("boundary construction reaches the independence polynomial kernel") {
    ProbabilityVector r{{Rational(3, 10), Rational(3, 10), Rational(1, 5), Rational(1, 5)}};
    auto inst = construct_boundary_instance(c4(), r, 13);
    auto rep = verify_span(inst);
    CHECK(rep.kernel_relative_dim == Rational(3, 25));
}

TEST_CASE("boundary construction degenerates to spanning beyond the bound") {
    BipartiteGraph g(1, 1, {{1, 1}});
    auto inst = construct_boundary_instance(g, ProbabilityVector{{Rational(1)}}, 3);
    CHECK(verify_span(inst, RankMode::exact).kernel_relative_dim == 0);
    // strictly in bound: extra dimension is the polynomial value
    auto half = construct_boundary_instance(g, ProbabilityVector{{Rational(1, 2)}}, 3);
    CHECK(verify_span(half, RankMode::exact).kernel_relative_dim == Rational(1, 2));
}

TEST_CASE("kernel of random instances is at least the polynomial value") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        BipartiteGraph g(3, 2, {{1, 1}, {2, 1}, {2, 2}, {3, 2}});
        std::vector<Rational> e;
        for (int i = 0; i < 3; ++i) e.push_back(Rational(1, 2 + static_cast<long>(rng() % 3)));
        ProbabilityVector p(std::move(e));
        auto v = shearer_check(base_graph(g), p);
        if (!v.in_bound) continue;
        // dims divisible enough for exact row counts, small enough for exact rank
        Int l = 1;
        for (const auto& x : p.entries) l = lcm(l, denominator(x));
        std::vector<long> dims(2, l.convert_to<long>());
        SubspaceInstance inst;
        inst.graph = g;
        inst.dims = dims;
        inst.seed = rng();
        for (int i = 1; i <= 3; ++i) {
            SubspaceInstance::Local loc;
            loc.acts_on = g.left_nbrs(i);
            std::sort(loc.acts_on.begin(), loc.acts_on.end());
            long ambient = 1;
            for (int j : loc.acts_on) ambient *= dims[j - 1];
            Rational count = p.at(i) * ambient;
            loc.basis = sample_random_subspace(ambient, numerator(count).convert_to<long>(),
                                               inst.seed + i);
            inst.hams.push_back(std::move(loc));
        }
        auto rep = verify_span(inst, RankMode::exact);
        CHECK(rep.kernel_relative_dim >= v.full_value);
    }
}

TEST_CASE("padding preserves relative dimensions and spanning") {
    BipartiteGraph g(2, 1, {{1, 1}, {2, 1}});
    ProbabilityVector r{{Rational(1, 2), Rational(1, 2)}};
    auto inst = construct_spanning_instance(g, r, 17);
    auto same = pad_dims(inst, inst.dims);
    CHECK(instance_to_json(same) == instance_to_json(inst));
    std::vector<long> doubled = inst.dims;
    for (auto& d : doubled) d *= 2;
    auto big = pad_dims(inst, doubled);
    CHECK(big.total_dim() == 2 * inst.total_dim());
    for (int i = 1; i <= 2; ++i) {
        Rational before(static_cast<long>(inst.hams[i - 1].basis.size()), inst.local_dim(i));
        Rational after(static_cast<long>(big.hams[i - 1].basis.size()), big.local_dim(i));
        CHECK(before == after);
    }
    CHECK(verify_span(big, RankMode::exact).kernel_relative_dim == 0);
    CHECK_THROWS_AS(pad_dims(inst, std::vector<long>{3}), domain_error);
}

TEST_CASE("instance JSON round trip") {
    BipartiteGraph g(2, 1, {{1, 1}, {2, 1}});
    ProbabilityVector r{{Rational(1, 2), Rational(1, 2)}};
    auto inst = construct_spanning_instance(g, r, 19);
    auto j = instance_to_json(inst);
    auto back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);
    CHECK(back.total_dim() == inst.total_dim());
}

TEST_CASE("construct rejects vectors on the wrong side of the bound") {
    ProbabilityVector in_bound{{Rational(1, 10), Rational(1, 10), Rational(1, 10),
                                Rational(1, 10)}};
    CHECK_THROWS_AS(construct_spanning_instance(c4(), in_bound, 1), domain_error);
}
