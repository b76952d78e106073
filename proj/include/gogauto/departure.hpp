// departure.hpp -- departure tables: D(r) such that any subword of length
// >= D(r) of an accepted word moves d_A-distance at least r.
//
// The exact method searches the configuration graph (automaton state,
// element of the subword read so far): a path between configurations
// whose element stays in the r-ball is a witness, and D(r) exceeds the
// longest witness.  The graph restricted to configurations that can still
// reach the r-ball must be acyclic -- a repeated configuration pumps an
// infinite witness family, contradicting finiteness of fibers -- so the
// longest path is found by memoized DFS with an on-stack repeat check.
// The search is bounded by a forward horizon and an element-ball radius;
// the table records how often those bounds were touched, and the
// empirical scan (a direct sweep over enumerated words) cross-checks it.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/language.hpp"
#include "gogauto/normal_form.hpp"

namespace gogauto {

struct DepartureViolation : std::runtime_error {
    explicit DepartureViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DepartureTable {
    enum class Method { Exact, Empirical };
    Method method = Method::Empirical;
    int r_max = 0;
    std::vector<int> table; // table[r-1] = D(r)
    int horizon = 0;        // exact: forward horizon; empirical: scan length
    std::uint64_t configs = 0;
    std::uint64_t boundary_prunes = 0; // exact: element-ball exits (diagnostic)

    int value(int r) const {
        if (r < 1 || r > r_max) throw InputError("departure table: r out of range");
        return table[static_cast<std::size_t>(r) - 1];
    }

    // non-decreasing in r by construction; exposed for property checks
    bool monotone() const {
        for (std::size_t i = 1; i < table.size(); ++i)
            if (table[i] < table[i - 1]) return false;
        return true;
    }
};

// Direct scan: D(r) = 1 + max{ t : some accepted word of length <= N has a
// subword of length t moving distance < r }.
inline DepartureTable departure_empirical(NfContext& nf, const LanguageFsa& m, int r_max, int N,
                                          const Caps& caps = {}) {
    if (r_max < 1) throw InputError("departure: r_max must be >= 1");
    if (N < 1) throw InputError("departure: scan length must be >= 1");
    DepartureTable out;
    out.method = DepartureTable::Method::Empirical;
    out.r_max = r_max;
    out.horizon = N;
    auto ball = nf.ball(r_max, caps);
    std::vector<int> max_t(static_cast<std::size_t>(r_max) + 1, 0); // index d: longest t with witness of distance exactly d
    enumerate_language(m, N, [&](const Word& w, std::int32_t) {
        for (std::size_t s = 0; s < w.size(); ++s) {
            NfId cur = nf.identity_id();
            for (std::size_t t = 1; s + t <= w.size(); ++t) {
                cur = nf.append(cur, w[s + t - 1]);
                int d = ball->dist_or(cur, r_max + 1);
                if (d <= r_max && max_t[static_cast<std::size_t>(d)] < static_cast<int>(t))
                    max_t[static_cast<std::size_t>(d)] = static_cast<int>(t);
            }
        }
    }, caps);
    out.table.resize(static_cast<std::size_t>(r_max));
    for (int r = 1; r <= r_max; ++r) {
        int best = 0; // t = 0 always witnesses distance 0 < r
        for (int d = 0; d < r; ++d) best = std::max(best, max_t[static_cast<std::size_t>(d)]);
        out.table[static_cast<std::size_t>(r) - 1] = 1 + best;
    }
    return out;
}

namespace detail {

struct DepartureGraph {
    std::vector<std::pair<std::int32_t, NfId>> nodes; // (trimmed state, element)
    std::vector<std::vector<std::int32_t>> succ;
    std::vector<std::int32_t> starts; // node ids with element = identity
    std::uint64_t boundary_prunes = 0;
};

inline DepartureGraph build_departure_graph(NfContext& nf, const LanguageFsa& m, int horizon,
                                            const std::shared_ptr<const NfContext::BallA>& ball,
                                            const Caps& caps) {
    DepartureGraph g;
    std::unordered_map<std::uint64_t, std::int32_t> index;
    auto key = [](std::int32_t q, NfId d) {
        return (static_cast<std::uint64_t>(q) << 32) | static_cast<std::uint32_t>(d);
    };
    auto intern = [&](std::int32_t q, NfId d) {
        auto [it, fresh] = index.emplace(key(q, d), static_cast<std::int32_t>(g.nodes.size()));
        if (fresh) {
            if (g.nodes.size() >= caps.departure_configs)
                throw CapacityError("departure_exact exceeded configuration cap");
            g.nodes.emplace_back(q, d);
            g.succ.emplace_back();
        }
        return it->second;
    };
    std::vector<std::int32_t> frontier;
    for (std::size_t q = 0; q < m.trimmed.num_states(); ++q) {
        std::int32_t id = intern(static_cast<std::int32_t>(q), nf.identity_id());
        g.starts.push_back(id);
        frontier.push_back(id);
    }
    std::vector<char> expanded(g.nodes.size(), 0);
    for (int depth = 0; depth < horizon && !frontier.empty(); ++depth) {
        std::vector<std::int32_t> next_frontier;
        for (std::int32_t id : frontier) {
            if (expanded.size() < g.nodes.size()) expanded.resize(g.nodes.size(), 0);
            if (expanded[static_cast<std::size_t>(id)]) continue;
            expanded[static_cast<std::size_t>(id)] = 1;
            auto [q, delta] = g.nodes[static_cast<std::size_t>(id)];
            for (LetterId a = 0; static_cast<std::size_t>(a) < m.trimmed.alphabet_size; ++a) {
                std::int32_t q2 = m.step(q, a);
                if (q2 < 0) continue;
                NfId d2 = nf.append(delta, a);
                if (!ball->dist.count(d2)) {
                    ++g.boundary_prunes;
                    continue;
                }
                std::size_t before = g.nodes.size();
                std::int32_t id2 = intern(q2, d2);
                g.succ[static_cast<std::size_t>(id)].push_back(id2);
                if (g.nodes.size() > before) next_frontier.push_back(id2);
            }
        }
        frontier = std::move(next_frontier);
    }
    return g;
}

} // namespace detail

// Exact method via the configuration graph.  A configuration repeat on an
// active search path is a hard error: for a trimmed normal-form automaton
// it contradicts finiteness of fibers; for a user-supplied automaton it
// may instead signal that some element has infinitely many accepted words.
inline DepartureTable departure_exact(NfContext& nf, const LanguageFsa& m, int r_max,
                                      const Caps& caps = {}) {
    if (r_max < 1) throw InputError("departure: r_max must be >= 1");
    DepartureTable out;
    out.method = DepartureTable::Method::Exact;
    out.r_max = r_max;
    int horizon = caps.departure_horizon > 0 ? caps.departure_horizon : std::max(r_max + 6, 13);
    int ball_radius = r_max + 4;

    for (;;) {
        auto ball = nf.ball(ball_radius, caps);
        detail::DepartureGraph g = detail::build_departure_graph(nf, m, horizon, ball, caps);
        out.configs = g.nodes.size();
        out.boundary_prunes = g.boundary_prunes;
        out.horizon = horizon;
        out.table.assign(static_cast<std::size_t>(r_max), 0);

        std::vector<std::vector<std::int32_t>> pred(g.nodes.size());
        for (std::size_t v = 0; v < g.nodes.size(); ++v)
            for (std::int32_t w : g.succ[v]) pred[static_cast<std::size_t>(w)].push_back(static_cast<std::int32_t>(v));

        int longest_witness = 0;
        for (int r = 1; r <= r_max; ++r) {
            // co-reachability to the (r-1)-ball
            std::vector<char> target(g.nodes.size(), 0), cozy(g.nodes.size(), 0);
            std::vector<std::int32_t> stack;
            for (std::size_t v = 0; v < g.nodes.size(); ++v) {
                int d = ball->dist.at(g.nodes[v].second);
                if (d <= r - 1) {
                    target[v] = 1;
                    if (!cozy[v]) {
                        cozy[v] = 1;
                        stack.push_back(static_cast<std::int32_t>(v));
                    }
                }
            }
            while (!stack.empty()) {
                std::int32_t v = stack.back();
                stack.pop_back();
                for (std::int32_t p : pred[static_cast<std::size_t>(v)])
                    if (!cozy[static_cast<std::size_t>(p)]) {
                        cozy[static_cast<std::size_t>(p)] = 1;
                        stack.push_back(p);
                    }
            }
            // longest path to a target over co-reachable nodes; colored DFS
            constexpr std::int32_t kUnvisited = -2, kOnStack = -3;
            std::vector<std::int32_t> f(g.nodes.size(), kUnvisited);
            struct Frame {
                std::int32_t v;
                std::size_t next_child;
            };
            for (std::int32_t root : g.starts) {
                if (!cozy[static_cast<std::size_t>(root)] || f[static_cast<std::size_t>(root)] != kUnvisited)
                    continue;
                std::vector<Frame> dfs{{root, 0}};
                f[static_cast<std::size_t>(root)] = kOnStack;
                while (!dfs.empty()) {
                    Frame& fr = dfs.back();
                    const auto& children = g.succ[static_cast<std::size_t>(fr.v)];
                    bool descended = false;
                    while (fr.next_child < children.size()) {
                        std::int32_t ch = children[fr.next_child++];
                        if (!cozy[static_cast<std::size_t>(ch)]) continue;
                        if (f[static_cast<std::size_t>(ch)] == kOnStack) {
                            const auto& [q, delta] = g.nodes[static_cast<std::size_t>(ch)];
                            throw DepartureViolation(
                                "departure property violated: configuration (state '" +
                                m.trimmed.state_names[static_cast<std::size_t>(q)] +
                                "') repeats on a path returning to the " + std::to_string(r) +
                                "-ball; with an automaton not built by build_language_fsa this "
                                "can also mean infinite fibers");
                        }
                        if (f[static_cast<std::size_t>(ch)] == kUnvisited) {
                            f[static_cast<std::size_t>(ch)] = kOnStack;
                            dfs.push_back({ch, 0});
                            descended = true;
                            break;
                        }
                    }
                    if (descended) continue;
                    // post-order: combine children
                    std::int32_t best = target[static_cast<std::size_t>(fr.v)] ? 0 : kUnvisited;
                    for (std::int32_t ch : children) {
                        if (!cozy[static_cast<std::size_t>(ch)]) continue;
                        std::int32_t fc = f[static_cast<std::size_t>(ch)];
                        if (fc >= 0 && fc + 1 > best) best = fc + 1;
                    }
                    f[static_cast<std::size_t>(fr.v)] = best;
                    dfs.pop_back();
                }
            }
            int longest = 0;
            for (std::int32_t root : g.starts)
                if (cozy[static_cast<std::size_t>(root)] && f[static_cast<std::size_t>(root)] >= 0)
                    longest = std::max(longest, f[static_cast<std::size_t>(root)]);
            out.table[static_cast<std::size_t>(r) - 1] = 1 + longest;
            longest_witness = std::max(longest_witness, longest);
        }
        if (longest_witness + 4 <= horizon) break;
        horizon = longest_witness + 8; // saturated: widen and redo
        if (caps.departure_horizon > 0)
            throw CapacityError("departure_exact: configured horizon saturated");
    }
    return out;
}

} // namespace gogauto
