// language.hpp -- the normal-form language L = { U_T U_B } and its
// recognizing automaton.
//
// States: o (initial, final); heads (o,s,e) entered from o by a
// transversal letter of an edge starting at the base; Q-states (s,e)
// after the edge letter, final when the edge ends at the base; mid states
// (e,s',e') continuing the walk, with (s',e') = (1,e~) excluded so walks
// never backtrack with the identity representative; and cone-type states
// carrying the geodesic tail.  Tail entry from a Q-state exists exactly
// when its edge ends at the base vertex.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "gogauto/alphabet.hpp"
#include "gogauto/caps.hpp"
#include "gogauto/cone_types.hpp"
#include "gogauto/fsa.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/normal_form.hpp"

namespace gogauto {

struct LanguageOptions {
    // test hook: drop the (s',e') != (1,e~) restriction (breaks uniqueness)
    bool allow_trivial_backtrack = false;
};

struct LanguageFsa {
    Fsa fsa;     // full Figure-1 state set
    Fsa trimmed; // accessible and live part, used for all sweeps
    std::vector<std::int32_t> dense; // trimmed: state * |A| + letter -> state
    std::size_t n_head = 0, n_q = 0, n_mid = 0, n_cone = 0;

    std::int32_t step(std::int32_t state, LetterId a) const {
        return dense[static_cast<std::size_t>(state) * trimmed.alphabet_size +
                     static_cast<std::size_t>(a)];
    }

    bool accepts(const Word& w) const {
        if (trimmed.initial < 0) return false;
        std::int32_t s = trimmed.initial;
        for (LetterId a : w) {
            s = step(s, a);
            if (s < 0) return false;
        }
        return trimmed.final_state[static_cast<std::size_t>(s)] != 0;
    }
};

inline LanguageFsa build_language_fsa(const GraphOfGroups& g, const StructureAlphabet& a,
                                      const ConeTypeTable& cones,
                                      const LanguageOptions& opts = {}) {
    g.require_valid();
    LanguageFsa out;
    Fsa& m = out.fsa;
    m.alphabet_size = a.size();
    int c = g.base_vertex();

    int o = m.add_state("o", true);
    m.initial = o;

    // Q-states (s,e), final when the edge ends at the base
    std::vector<std::vector<int>> q_state(g.num_directed_edges());
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        std::size_t nk = g.edge_subgroup(static_cast<int>(f)).transversal_elems().size();
        q_state[f].resize(nk);
        for (std::size_t k = 0; k < nk; ++k) {
            q_state[f][k] = m.add_state("(" + a.name(a.transversal_letter(static_cast<int>(f),
                                                                          static_cast<std::int32_t>(k))) +
                                            "," + g.edge_name(static_cast<int>(f)) + ")",
                                        g.edge_end(static_cast<int>(f)) == c);
            ++out.n_q;
        }
    }
    // heads (o,s,e) for edges starting at the base
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        if (g.edge_start(static_cast<int>(f)) != c) continue;
        for (std::size_t k = 0; k < q_state[f].size(); ++k) {
            LetterId s_letter = a.transversal_letter(static_cast<int>(f), static_cast<std::int32_t>(k));
            int head = m.add_state("(o," + a.name(s_letter) + "," + g.edge_name(static_cast<int>(f)) + ")",
                                   false);
            ++out.n_head;
            m.add_edge(o, s_letter, head);
            m.add_edge(head, a.edge_letter(static_cast<int>(f)), q_state[f][k]);
        }
    }
    // mid states (e,s',e') with iota(e') = iota(e~), (s',e') != (1,e~)
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        int w = g.edge_end(static_cast<int>(f));
        for (std::size_t f2 = 0; f2 < g.num_directed_edges(); ++f2) {
            if (g.edge_start(static_cast<int>(f2)) != w) continue;
            for (std::size_t k2 = 0; k2 < q_state[f2].size(); ++k2) {
                if (!opts.allow_trivial_backtrack && k2 == 0 &&
                    static_cast<int>(f2) == GraphOfGroups::reverse_edge(static_cast<int>(f)))
                    continue;
                LetterId s_letter = a.transversal_letter(static_cast<int>(f2), static_cast<std::int32_t>(k2));
                int mid = m.add_state("(" + g.edge_name(static_cast<int>(f)) + "," + a.name(s_letter) +
                                          "," + g.edge_name(static_cast<int>(f2)) + ")",
                                      false);
                ++out.n_mid;
                for (std::size_t k = 0; k < q_state[f].size(); ++k)
                    m.add_edge(q_state[f][k], s_letter, mid);
                m.add_edge(mid, a.edge_letter(static_cast<int>(f2)), q_state[f2][k2]);
            }
        }
    }
    // cone-type states for the geodesic tail
    const GeneratorSet& bgens = g.vertex_group(c).generators();
    std::vector<int> ct_state(static_cast<std::size_t>(cones.num_classes), -1);
    std::function<int(std::int32_t)> ensure_ct = [&](std::int32_t cls) {
        int& s = ct_state[static_cast<std::size_t>(cls)];
        if (s < 0) {
            s = m.add_state("CT" + std::to_string(cls), true);
            ++out.n_cone;
        }
        return s;
    };
    // first create reachable cone states, then their internal edges
    for (std::size_t bl = 0; bl < bgens.size(); ++bl) {
        std::int32_t cls = cones.next[static_cast<std::size_t>(cones.empty_class)][bl];
        if (cls < 0) continue;
        int ct = ensure_ct(cls);
        LetterId letter = a.base_letter(static_cast<LetterId>(bl));
        m.add_edge(o, letter, ct);
        // the red arrow: tail entry from Q-states whose edge ends at c
        for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
            if (g.edge_end(static_cast<int>(f)) != c) continue;
            for (std::size_t k = 0; k < q_state[f].size(); ++k)
                m.add_edge(q_state[f][k], letter, ct);
        }
    }
    for (bool grew = true; grew;) {
        grew = false;
        for (std::int32_t cls = 0; cls < cones.num_classes; ++cls) {
            if (ct_state[static_cast<std::size_t>(cls)] < 0) continue;
            for (std::size_t bl = 0; bl < bgens.size(); ++bl) {
                std::int32_t nxt = cones.next[static_cast<std::size_t>(cls)][bl];
                if (nxt < 0) continue;
                if (ct_state[static_cast<std::size_t>(nxt)] < 0) {
                    ensure_ct(nxt);
                    grew = true;
                }
            }
        }
    }
    for (std::int32_t cls = 0; cls < cones.num_classes; ++cls) {
        if (ct_state[static_cast<std::size_t>(cls)] < 0) continue;
        for (std::size_t bl = 0; bl < bgens.size(); ++bl) {
            std::int32_t nxt = cones.next[static_cast<std::size_t>(cls)][bl];
            if (nxt < 0) continue;
            m.add_edge(ct_state[static_cast<std::size_t>(cls)],
                       a.base_letter(static_cast<LetterId>(bl)),
                       ct_state[static_cast<std::size_t>(nxt)]);
        }
    }

    out.trimmed = fsa_trim(m);
    if (!out.trimmed.deterministic())
        throw InternalError("language automaton is not deterministic");
    out.dense.assign(out.trimmed.num_states() * a.size(), -1);
    for (std::size_t s = 0; s < out.trimmed.num_states(); ++s)
        for (const auto& [l, t] : out.trimmed.edges[s])
            out.dense[s * a.size() + static_cast<std::size_t>(l)] = t;
    return out;
}

// Streams every accepted word of length <= max_len in shortlex order.
inline void enumerate_language(const LanguageFsa& m, int max_len,
                               const std::function<void(const Word&, std::int32_t)>& visit,
                               const Caps& caps = {}) {
    if (m.trimmed.initial < 0) return;
    struct Node {
        Word w;
        std::int32_t s;
    };
    std::size_t emitted = 0;
    std::vector<Node> layer{{Word{}, m.trimmed.initial}};
    auto emit = [&](const Node& n) {
        if (m.trimmed.final_state[static_cast<std::size_t>(n.s)]) {
            if (++emitted > caps.enum_words) throw CapacityError("language enumeration exceeded cap");
            visit(n.w, n.s);
        }
    };
    emit(layer[0]);
    for (int len = 0; len < max_len && !layer.empty(); ++len) {
        std::vector<Node> next_layer;
        for (const Node& node : layer) {
            for (LetterId a = 0; static_cast<std::size_t>(a) < m.trimmed.alphabet_size; ++a) {
                std::int32_t t = m.step(node.s, a);
                if (t < 0) continue;
                Node child{node.w, t};
                child.w.push_back(a);
                emit(child);
                next_layer.push_back(std::move(child));
            }
        }
        layer = std::move(next_layer);
    }
}

// Independently enumerated tree words (loops at the base, 2 letters per
// syllable) of serialized length <= max_len, straight from the
// transversal tables -- no automaton involved.
inline std::vector<Word> enumerate_tree_words(const GraphOfGroups& g, const StructureAlphabet& a,
                                              int max_len, const Caps& caps = {}) {
    std::vector<Word> out;
    struct Frame {
        Word w;
        int vertex;
        int last_edge;
    };
    std::vector<Frame> stack{{Word{}, g.base_vertex(), -1}};
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        if (fr.vertex == g.base_vertex()) {
            if (out.size() >= caps.enum_words) throw CapacityError("tree enumeration exceeded cap");
            out.push_back(fr.w);
        }
        if (static_cast<int>(fr.w.size()) + 2 > max_len) continue;
        for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
            if (g.edge_start(static_cast<int>(f)) != fr.vertex) continue;
            std::size_t nk = g.edge_subgroup(static_cast<int>(f)).transversal_elems().size();
            for (std::size_t k = 0; k < nk; ++k) {
                if (k == 0 && fr.last_edge >= 0 &&
                    static_cast<int>(f) == GraphOfGroups::reverse_edge(fr.last_edge))
                    continue;
                Frame child = fr;
                child.w.push_back(a.transversal_letter(static_cast<int>(f), static_cast<std::int32_t>(k)));
                child.w.push_back(a.edge_letter(static_cast<int>(f)));
                child.vertex = g.edge_end(static_cast<int>(f));
                child.last_edge = static_cast<int>(f);
                stack.push_back(std::move(child));
            }
        }
    }
    return out;
}

struct LanguageReport {
    bool ok = true;
    std::uint64_t accepted_words = 0;
    std::uint64_t independent_words = 0;
    std::vector<std::uint64_t> words_per_length;
    int coverage_radius = 0;
    std::uint64_t covered_elements = 0;
    std::uint64_t distinct_elements = 0;
    std::vector<std::string> failures; // counterexamples, at most a handful

    void fail(std::string s) {
        ok = false;
        if (failures.size() < 8) failures.push_back(std::move(s));
    }
};

// Checks, up to length N: (i) the accepted set equals the independently
// generated { tree word + geodesic tail }; (ii) every element of a ball
// whose canonical representatives fit in N has an accepted representative;
// (iii) the fiber over each accepted element has exactly as many words as
// the tail has geodesic representatives.
inline LanguageReport verify_language(const GraphOfGroups& g, const StructureAlphabet& a,
                                      NfContext& nf, const LanguageFsa& m, int N,
                                      const Caps& caps = {}) {
    LanguageReport rep;
    const VertexGroupOracle& base = g.vertex_group(g.base_vertex());

    // (i) two independent routes to the language
    std::unordered_set<Word, WordHash> independent;
    {
        std::vector<Word> tails_letters;
        for (const Word& t : enumerate_geodesic_words(base, N, caps)) {
            Word w;
            w.reserve(t.size());
            for (LetterId b : t) w.push_back(a.base_letter(b));
            tails_letters.push_back(std::move(w));
        }
        for (const Word& u : enumerate_tree_words(g, a, N, caps)) {
            for (const Word& t : tails_letters) {
                if (u.size() + t.size() > static_cast<std::size_t>(N)) continue;
                Word w = u;
                w.insert(w.end(), t.begin(), t.end());
                if (independent.size() >= caps.enum_words)
                    throw CapacityError("verify_language: independent enumeration exceeded cap");
                independent.insert(std::move(w));
            }
        }
    }
    rep.independent_words = independent.size();

    std::unordered_map<NfId, std::uint64_t> fiber;
    rep.words_per_length.assign(static_cast<std::size_t>(N) + 1, 0);
    std::uint64_t matched = 0;
    enumerate_language(m, N, [&](const Word& w, std::int32_t) {
        ++rep.accepted_words;
        ++rep.words_per_length[w.size()];
        if (!independent.count(w))
            rep.fail("accepted word not in independent language: '" + a.format_word(w) + "'");
        else
            ++matched;
        ++fiber[nf.normalize(w)];
    }, caps);
    if (matched != rep.independent_words) {
        std::string example;
        for (const Word& w : independent)
            if (!m.accepts(w)) {
                example = a.format_word(w);
                break;
            }
        rep.fail("independent language has words the automaton rejects (" +
                 std::to_string(rep.independent_words - matched) + " of " +
                 std::to_string(rep.independent_words) + "), e.g. '" + example + "'");
    }
    rep.distinct_elements = fiber.size();

    // (ii) ball coverage: grow the radius while canonical representatives
    // still fit in N, then insist each ball element was accepted
    {
        int r = 0;
        std::size_t prev_size = 0;
        for (;;) {
            auto ball = nf.ball(r + 1, caps);
            bool fits = true;
            for (NfId id : ball->order)
                if (nf.serialize(id).size() > static_cast<std::size_t>(N)) fits = false;
            if (!fits) break;
            r = r + 1;
            if (ball->order.size() == prev_size) break; // group exhausted
            prev_size = ball->order.size();
        }
        rep.coverage_radius = r;
        auto ball = nf.ball(r, caps);
        for (NfId id : ball->order) {
            if (ball->dist.at(id) > r) continue;
            ++rep.covered_elements;
            if (!fiber.count(id))
                rep.fail("ball element without accepted representative: '" +
                         a.format_word(nf.serialize(id)) + "'");
        }
    }

    // (iii) fibers match geodesic multiplicity of the tail
    {
        CayleyBall bball = cayley_ball(base, N, caps);
        std::vector<std::uint64_t> geo_count = count_geodesic_words(base, bball);
        for (const auto& [id, count] : fiber) {
            NormalForm form = nf.form(id);
            std::int32_t bidx = bball.find(form.tail);
            if (bidx < 0) throw InternalError("verify_language: tail escaped the base ball");
            std::uint64_t expect = geo_count[static_cast<std::size_t>(bidx)];
            if (count != expect)
                rep.fail("fiber mismatch over '" + a.format_word(nf.serialize(id)) + "': " +
                         std::to_string(count) + " words, expected " + std::to_string(expect));
        }
    }
    return rep;
}

} // namespace gogauto
