#include "lll/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include <nlohmann/json.hpp>

namespace lll {

long SubspaceInstance::total_dim() const {
    long d = 1;
    for (long x : dims) d *= x;
    return d;
}

long SubspaceInstance::local_dim(int i) const {
    long d = 1;
    for (int j : hams.at(i - 1).acts_on) d *= dims.at(j - 1);
    return d;
}

void SubspaceInstance::validate() const {
    if (static_cast<int>(dims.size()) != graph.n)
        throw domain_error("bad_instance", "dims length != n");
    for (long d : dims)
        if (d < 1) throw domain_error("bad_instance", "dimensions must be >= 1");
    if (static_cast<int>(hams.size()) != graph.m)
        throw domain_error("bad_instance", "one local basis per left vertex required");
    for (int i = 1; i <= graph.m; ++i) {
        const auto& h = hams[i - 1];
        std::vector<int> nb = graph.left_nbrs(i);
        std::sort(nb.begin(), nb.end());
        std::vector<int> acts = h.acts_on;
        std::sort(acts.begin(), acts.end());
        if (acts != nb)
            throw domain_error("bad_instance", "acts_on does not match the graph");
        long width = local_dim(i);
        for (const auto& row : h.basis)
            if (static_cast<long>(row.size()) != width)
                throw domain_error("bad_instance", "basis row width mismatch");
        if (static_cast<long>(h.basis.size()) > width)
            throw domain_error("bad_instance", "more basis rows than the local dimension");
    }
}

long default_total_dim_cap() { return 1L << 16; }

std::vector<SparseRow> lifted_rows(const SubspaceInstance& inst) {
    int n = inst.graph.n;
    std::vector<long> stride(n + 1, 1);
    for (int j = n - 1; j >= 1; --j) stride[j] = stride[j + 1] * inst.dims[j];
    std::vector<SparseRow> rows;
    for (int i = 1; i <= inst.graph.m; ++i) {
        const auto& h = inst.hams[i - 1];
        std::vector<int> acts = h.acts_on;
        std::sort(acts.begin(), acts.end());
        std::vector<int> comp;
        for (int j = 1; j <= n; ++j)
            if (!std::binary_search(acts.begin(), acts.end(), j)) comp.push_back(j);
        long loc = inst.local_dim(i);
        // global offset of every local column (digits over acts_on, first qudit most significant)
        std::vector<long> loc_offset(loc, 0);
        for (long l = 0; l < loc; ++l) {
            long rem = l;
            for (auto it = acts.rbegin(); it != acts.rend(); ++it) {
                long d = inst.dims[*it - 1];
                loc_offset[l] += (rem % d) * stride[*it];
                rem /= d;
            }
        }
        long comp_count = 1;
        for (int j : comp) comp_count *= inst.dims[j - 1];
        std::vector<int> cdig(comp.size(), 0);
        for (long c = 0; c < comp_count; ++c) {
            long offset = 0;
            for (size_t k = 0; k < comp.size(); ++k) offset += cdig[k] * stride[comp[k]];
            for (const auto& brow : h.basis) {
                SparseRow row;
                for (long l = 0; l < loc; ++l)
                    if (brow[l] != 0) row.push_back({offset + loc_offset[l], brow[l]});
                rows.push_back(std::move(row));
            }
            for (size_t k = comp.size(); k-- > 0;) {
                if (++cdig[k] < inst.dims[comp[k] - 1]) break;
                cdig[k] = 0;
            }
        }
    }
    return rows;
}

SpanReport verify_span(const SubspaceInstance& inst, RankMode mode) {
    inst.validate();
    long D = inst.total_dim();
    auto rows = lifted_rows(inst);
    SpanReport rep;
    rep.total_dim = D;
    if (mode == RankMode::automatic) mode = D <= 256 ? RankMode::exact : RankMode::modular;
    if (mode == RankMode::exact) {
        if (D > 256)
            throw domain_error("cap_exceeded", "exact rank limited to total dimension 256");
        rep.span_dim = exact_rank(rows, D);
        rep.method = "exact";
    } else {
        uint64_t p1 = random_prime(inst.seed + 1, 0);
        uint64_t p2 = random_prime(inst.seed + 1, 1);
        long r1 = rank_mod_prime(rows, D, p1);
        long r2 = rank_mod_prime(rows, D, p2);
        if (r1 != r2) {
            if (D <= 256) {
                rep.span_dim = exact_rank(rows, D);
                rep.method = "exact";
            } else {
                throw domain_error("rank_disagreement",
                                   "modular ranks disagree and exact fallback exceeds the cap");
            }
        } else {
            rep.span_dim = r1;
            rep.method = "modular";
            rep.primes = {p1, p2};
        }
    }
    rep.kernel_relative_dim = 1 - Rational(rep.span_dim, D);
    return rep;
}

namespace {

long rand_entry(std::mt19937_64& rng) {
    const long width = (1L << 21) + 1;  // [-2^20, 2^20]
    return static_cast<long>(rng() % width) - (1L << 20);
}

std::vector<std::vector<Rational>> sample_rows(long ambient, long sub, std::mt19937_64& rng) {
    std::vector<std::vector<Rational>> basis(sub, std::vector<Rational>(ambient));
    for (auto& row : basis)
        for (auto& v : row) v = rand_entry(rng);
    return basis;
}

bool full_row_rank(const std::vector<std::vector<Rational>>& basis, long ambient) {
    static const uint64_t p = random_prime(0x5eedbeef, 0);
    std::vector<SparseRow> rows;
    for (const auto& b : basis) {
        SparseRow r;
        for (long c = 0; c < ambient; ++c)
            if (b[c] != 0) r.push_back({c, b[c]});
        rows.push_back(std::move(r));
    }
    return rank_mod_prime(rows, ambient, p) == static_cast<long>(basis.size());
}

}  // namespace

std::vector<std::vector<Rational>> sample_random_subspace(long ambient_dim, long sub_dim,
                                                          uint64_t seed) {
    if (sub_dim < 0 || sub_dim > ambient_dim)
        throw domain_error("bad_argument", "need 0 <= sub_dim <= ambient_dim");
    if (sub_dim == 0) return {};
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 16; ++attempt) {
        auto basis = sample_rows(ambient_dim, sub_dim, rng);
        if (full_row_rank(basis, ambient_dim)) return basis;
    }
    throw domain_error("sampling_failed", "no full-rank sample in 16 attempts");
}

namespace {

long lcm_long(long a, long b) {
    long g = std::gcd(a, b);
    long v = a / g * b;
    if (v <= 0 || v > (1L << 40))
        throw domain_error("dimension_explosion", "dimension lcm overflow");
    return v;
}

long to_long(const Int& v) {
    if (v > (1L << 40)) throw domain_error("dimension_explosion", "dimension out of range");
    return v.convert_to<long>();
}

// multiply qudit dims until every r_i * prod_{j in N(i)} d_j is an integer
void ensure_integral(const BipartiteGraph& g, const std::vector<Rational>& r,
                     std::vector<long>& d) {
    for (int rounds = 0; rounds < 64; ++rounds) {
        bool changed = false;
        for (int i = 1; i <= g.m; ++i) {
            Rational v = r[i - 1];
            for (int j : g.left_nbrs(i)) v *= d[j - 1];
            Int t = denominator(v);
            if (t == 1) continue;
            const auto& nb = g.left_nbrs(i);
            if (nb.empty())
                throw domain_error("bad_argument",
                                   "left vertex " + std::to_string(i) +
                                       " acts on no qudit but has fractional dimension");
            int j0 = *std::min_element(nb.begin(), nb.end());
            d[j0 - 1] = lcm_long(d[j0 - 1] * to_long(t), d[j0 - 1]);
            changed = true;
        }
        if (!changed) return;
    }
    throw domain_error("dimension_explosion", "integrality patching did not converge");
}

std::vector<Rational> scaled_r(const ProbabilityVector& r) { return r.entries; }

std::vector<long> span_dims_impl(const BipartiteGraph& g, const std::vector<Rational>& r,
                                 long cap, int depth) {
    if (depth > 64) throw domain_error("dimension_explosion", "recursion too deep");
    std::vector<long> ones(g.n, 1);
    if (g.m == 0) return ones;
    DepGraph base = base_graph(g);
    ProbabilityVector pv{std::vector<Rational>(r)};
    ShearerVerdict v = shearer_check(base, pv);
    if (v.in_bound)
        throw domain_error("in_bound", "r must be beyond Shearer's bound");
    const std::vector<int>& S = *v.witness;
    if (static_cast<int>(S.size()) < g.m) {
        BipartiteGraph sub = induced_subgraph(g, S);
        std::vector<Rational> rsub;
        for (int x : S) rsub.push_back(r[x - 1]);
        std::vector<long> d = span_dims_impl(sub, rsub, cap, depth + 1);
        ensure_integral(g, r, d);
        return d;
    }
    if (g.m == 1) {
        // I = 1 - r_1 <= 0 forces r_1 = 1
        std::vector<long> d = ones;
        ensure_integral(g, r, d);
        return d;
    }
    IndPoly poly(base, pv);
    uint32_t full = base.full_mask();
    std::vector<long> best;
    long best_prod = 0;
    for (int jstar = 1; jstar <= g.n; ++jstar) {
        const auto& T = g.right_nbrs(jstar);
        if (static_cast<int>(T.size()) < 2) continue;
        try {
            std::vector<Rational> w;
            Rational W = 0;
            for (int l : T) {
                Rational wl = r[l - 1] * poly.eval(full & ~base.adj_plus_mask(l));
                w.push_back(wl);
                W += wl;
            }
            long d0 = 1;
            std::vector<Rational> f;
            for (auto& wl : w) {
                Rational fl = wl / W;
                f.push_back(fl);
                d0 = lcm_long(d0, to_long(denominator(fl)));
            }
            std::vector<long> d(g.n, 1);
            long k = 1;
            struct Overflow { int l; Rational sigma; };
            std::vector<Overflow> overflows;
            for (size_t idx = 0; idx < T.size(); ++idx) {
                int l = T[idx];
                long a_l = to_long(numerator(Rational(f[idx] * d0)));
                Rational rho = r[l - 1] * Rational(d0, a_l);
                long b_l = 1;
                if (rho <= 1) {
                    std::vector<int> lset{l};
                    for (int i = 1; i <= g.m; ++i)
                        if (std::find(T.begin(), T.end(), i) == T.end()) lset.push_back(i);
                    std::sort(lset.begin(), lset.end());
                    BipartiteGraph sub = induced_subgraph(g, lset);
                    std::vector<Rational> rsub;
                    for (int x : lset) rsub.push_back(x == l ? rho : r[x - 1]);
                    std::vector<long> dsub = span_dims_impl(sub, rsub, cap, depth + 1);
                    for (int j = 1; j <= g.n; ++j)
                        if (j != jstar) d[j - 1] = lcm_long(d[j - 1], dsub[j - 1]);
                    b_l = dsub[jstar - 1];
                } else {
                    // slice fully covered; the surplus lives on the other slices
                    overflows.push_back({l, (rho - 1) * Rational(d0, d0 - a_l)});
                }
                k = lcm_long(k, b_l / std::gcd(a_l, b_l));
            }
            d[jstar - 1] = d0 * k;
            for (auto& of : overflows) {
                Rational vdim = of.sigma;
                std::vector<int> others;
                for (int j : g.left_nbrs(of.l))
                    if (j != jstar) others.push_back(j);
                for (int j : others) vdim *= d[j - 1];
                Int t = denominator(vdim);
                if (t != 1) {
                    if (others.empty())
                        throw domain_error("dimension_explosion",
                                           "overflow surplus cannot be made integral");
                    d[others[0] - 1] *= to_long(t);
                }
            }
            ensure_integral(g, r, d);
            long prod = 1;
            for (long x : d) {
                prod *= x;
                if (prod > cap) throw domain_error("dimension_explosion", "cap exceeded");
            }
            if (best.empty() || prod < best_prod) {
                best = d;
                best_prod = prod;
            }
        } catch (const domain_error& e) {
            if (e.code != "dimension_explosion") throw;
            // candidate split too large; try the next right vertex
        }
    }
    if (best.empty())
        throw domain_error("dimension_explosion",
                           "every splitting choice exceeds the total-dimension cap");
    return best;
}

// small dimension vectors satisfying all row-count integrality constraints
std::vector<std::vector<long>> small_dim_candidates(const BipartiteGraph& g,
                                                    const std::vector<Rational>& r,
                                                    long prod_cap, size_t max_count) {
    std::vector<std::vector<long>> all;
    std::vector<long> cur(g.n, 1);
    auto integral = [&]() {
        for (int i = 1; i <= g.m; ++i) {
            Rational v = r[i - 1];
            for (int j : g.left_nbrs(i)) v *= cur[j - 1];
            if (denominator(v) != 1) return false;
        }
        return true;
    };
    std::function<void(int, long)> rec = [&](int j, long prod) {
        if (j > g.n) {
            if (integral()) all.push_back(cur);
            return;
        }
        for (long dj = 1; dj * prod <= prod_cap; ++dj) {
            cur[j - 1] = dj;
            rec(j + 1, prod * dj);
        }
        cur[j - 1] = 1;
    };
    rec(1, 1);
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        long pa = 1, pb = 1;
        for (long x : a) pa *= x;
        for (long x : b) pb *= x;
        if (pa != pb) return pa < pb;
        return a < b;
    });
    if (all.size() > max_count) all.resize(max_count);
    return all;
}

SubspaceInstance sample_instance(const BipartiteGraph& g, const std::vector<Rational>& r,
                                 const std::vector<long>& d, uint64_t seed, uint64_t salt) {
    SubspaceInstance inst;
    inst.graph = g;
    inst.dims = d;
    inst.seed = seed;
    std::mt19937_64 mix(seed ^ (0x9e3779b97f4a7c15ull * (salt + 1)));
    for (int i = 1; i <= g.m; ++i) {
        SubspaceInstance::Local loc;
        loc.acts_on = g.left_nbrs(i);
        std::sort(loc.acts_on.begin(), loc.acts_on.end());
        long ambient = 1;
        for (int j : loc.acts_on) ambient *= d[j - 1];
        Rational count = r[i - 1] * ambient;
        if (denominator(count) != 1)
            throw domain_error("bad_argument", "relative dimension not exactly representable");
        loc.basis = sample_random_subspace(ambient, to_long(numerator(count)), mix());
        inst.hams.push_back(std::move(loc));
    }
    return inst;
}

long modular_rank_agree(const SubspaceInstance& inst, uint64_t seed) {
    auto rows = lifted_rows(inst);
    long D = inst.total_dim();
    if (D <= 128) return exact_rank(rows, D);
    uint64_t p1 = random_prime(seed + 1, 0), p2 = random_prime(seed + 1, 1);
    long r1 = rank_mod_prime(rows, D, p1);
    long r2 = rank_mod_prime(rows, D, p2);
    if (r1 != r2) {
        if (D <= 256) return exact_rank(rows, D);
        throw domain_error("rank_disagreement", "modular ranks disagree");
    }
    return r1;
}

std::vector<std::vector<long>> candidate_dims(const BipartiteGraph& g,
                                              const std::vector<Rational>& r, long cap) {
    long small_cap = std::min(cap, 512L);
    auto cands = small_dim_candidates(g, r, small_cap, 12);
    try {
        std::vector<long> rec = span_dims_impl(g, r, cap, 0);
        if (std::find(cands.begin(), cands.end(), rec) == cands.end()) cands.push_back(rec);
    } catch (const domain_error& e) {
        if (e.code != "dimension_explosion" || cands.empty()) throw;
    }
    return cands;
}

}  // namespace

std::vector<long> recursion_dims(const BipartiteGraph& g, const ProbabilityVector& r,
                                 long total_dim_cap) {
    r.validate(g.m);
    return span_dims_impl(g, scaled_r(r), total_dim_cap, 0);
}

SubspaceInstance construct_spanning_instance(const BipartiteGraph& g,
                                             const ProbabilityVector& r, uint64_t seed,
                                             long total_dim_cap) {
    r.validate(g.m);
    DepGraph base = base_graph(g);
    ShearerVerdict v = shearer_check(base, r);
    if (v.in_bound)
        throw domain_error("in_bound", "spanning construction needs r beyond Shearer's bound");
    auto cands = candidate_dims(g, r.entries, total_dim_cap);
    for (size_t ci = 0; ci < cands.size(); ++ci) {
        long D = 1;
        bool over = false;
        for (long x : cands[ci]) {
            D *= x;
            if (D > total_dim_cap) { over = true; break; }
        }
        if (over) continue;
        for (uint64_t attempt = 0; attempt < 2; ++attempt) {
            SubspaceInstance inst = sample_instance(g, r.entries, cands[ci], seed,
                                                    ci * 2 + attempt);
            if (modular_rank_agree(inst, seed + ci) == D) return inst;
        }
    }
    throw domain_error("construction_failed",
                       "no sampled instance spans at any admissible dimension vector");
}

SubspaceInstance construct_boundary_instance(const BipartiteGraph& g,
                                             const ProbabilityVector& r, uint64_t seed,
                                             long total_dim_cap) {
    r.validate(g.m);
    DepGraph base = base_graph(g);
    ShearerVerdict v = shearer_check(base, r);
    if (!v.in_bound) {
        // extra vertex would get relative dimension max(I,0) = 0; plain spanning run
        return construct_spanning_instance(g, r, seed, total_dim_cap);
    }
    Rational I = v.full_value;
    // G': one more left vertex acting on every qudit, relative dimension I
    auto e = g.edges;
    for (int j = 1; j <= g.n; ++j) e.insert({g.m + 1, j});
    BipartiteGraph gp(g.m + 1, g.n, std::move(e));
    std::vector<Rational> rp = r.entries;
    rp.push_back(I);
    auto cands = candidate_dims(gp, rp, total_dim_cap);
    for (size_t ci = 0; ci < cands.size(); ++ci) {
        long D = 1;
        bool over = false;
        for (long x : cands[ci]) {
            D *= x;
            if (D > total_dim_cap) { over = true; break; }
        }
        if (over) continue;
        Rational target_r = (1 - I) * D;
        long target = to_long(numerator(target_r));  // integral by the m+1 constraint
        for (uint64_t attempt = 0; attempt < 2; ++attempt) {
            SubspaceInstance inst = sample_instance(g, r.entries, cands[ci], seed,
                                                    0x8000 + ci * 2 + attempt);
            if (modular_rank_agree(inst, seed + ci) == target) return inst;
        }
    }
    throw domain_error("construction_failed",
                       "no sampled instance reaches the boundary kernel dimension");
}

SubspaceInstance pad_dims(const SubspaceInstance& inst, const std::vector<long>& new_dims) {
    inst.validate();
    if (static_cast<int>(new_dims.size()) != inst.graph.n)
        throw domain_error("bad_argument", "new dims length != n");
    for (int j = 1; j <= inst.graph.n; ++j) {
        if (new_dims[j - 1] < inst.dims[j - 1] || new_dims[j - 1] % inst.dims[j - 1] != 0)
            throw domain_error("not_a_multiple",
                               "d'_" + std::to_string(j) + " must be a positive multiple");
    }
    SubspaceInstance out;
    out.graph = inst.graph;
    out.dims = new_dims;
    out.seed = inst.seed;
    for (int i = 1; i <= inst.graph.m; ++i) {
        const auto& h = inst.hams[i - 1];
        SubspaceInstance::Local loc;
        loc.acts_on = h.acts_on;
        std::vector<long> od, nd, kf;
        for (int j : h.acts_on) {
            od.push_back(inst.dims[j - 1]);
            nd.push_back(new_dims[j - 1]);
            kf.push_back(new_dims[j - 1] / inst.dims[j - 1]);
        }
        size_t q = od.size();
        long old_loc = 1, copies = 1;
        for (long x : od) old_loc *= x;
        for (long x : kf) copies *= x;
        // strides in the enlarged local space (first acting qudit most significant)
        std::vector<long> nstride(q, 1);
        for (size_t a = q; a-- > 1;) nstride[a - 1] = nstride[a] * nd[a];
        std::vector<int> block(q, 0);
        for (long c = 0; c < copies; ++c) {
            // column offset of this block combination
            long new_loc = 1;
            for (long x : nd) new_loc *= x;
            for (const auto& brow : h.basis) {
                std::vector<Rational> row(new_loc, 0);
                for (long l = 0; l < old_loc; ++l) {
                    if (brow[l] == 0) continue;
                    long rem = l, col = 0;
                    for (size_t a = q; a-- > 0;) {
                        long w = rem % od[a];
                        rem /= od[a];
                        col += (static_cast<long>(block[a]) * od[a] + w) * nstride[a];
                    }
                    row[col] = brow[l];
                }
                loc.basis.push_back(std::move(row));
            }
            for (size_t a = q; a-- > 0;) {
                if (++block[a] < kf[a]) break;
                block[a] = 0;
            }
        }
        out.hams.push_back(std::move(loc));
    }
    out.validate();
    return out;
}

nlohmann::json instance_to_json(const SubspaceInstance& inst) {
    nlohmann::json hams = nlohmann::json::array();
    for (const auto& h : inst.hams) {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& row : h.basis) {
            nlohmann::json jr = nlohmann::json::array();
            for (const auto& v : row) jr.push_back(to_fraction_string(v));
            basis.push_back(std::move(jr));
        }
        hams.push_back({{"acts_on", h.acts_on}, {"basis", std::move(basis)}});
    }
    return {{"graph", graph_to_json(inst.graph)},
            {"dims", inst.dims},
            {"seed", inst.seed},
            {"hamiltonians", std::move(hams)}};
}

SubspaceInstance instance_from_json(const nlohmann::json& j) {
    SubspaceInstance inst;
    inst.graph = graph_from_json(j.at("graph"));
    inst.dims = j.at("dims").get<std::vector<long>>();
    inst.seed = j.at("seed").get<uint64_t>();
    for (const auto& h : j.at("hamiltonians")) {
        SubspaceInstance::Local loc;
        loc.acts_on = h.at("acts_on").get<std::vector<int>>();
        for (const auto& row : h.at("basis")) {
            std::vector<Rational> r;
            for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
            loc.basis.push_back(std::move(r));
        }
        inst.hams.push_back(std::move(loc));
    }
    inst.validate();
    return inst;
}

}  // namespace lll
