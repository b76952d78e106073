// subgroup.hpp -- finitely generated subgroups of vertex groups:
// membership, left-coset transversals and constructive expression of
// subgroup elements in the given generators.
//
// Finite ambient groups use explicit element/coset tables.  Free ambient
// groups use the folded subgroup graph; for finite-index subgroups the
// folded core graph is complete and doubles as the coset graph, and a
// Schreier basis (spanning tree + one generator per extra edge) gives
// constructive membership.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/group_oracle.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

// Word over abstract subgroup generators; entry +(i+1) is generator i,
// -(i+1) its inverse.
using GenWord = std::vector<std::int32_t>;

inline GenWord invert_gen_word(const GenWord& w) {
    GenWord r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
    return r;
}

class SubgroupHandle {
public:
    static SubgroupHandle build(const VertexGroupOracle& ambient, std::vector<Word> generator_words,
                                const Caps& caps = {}) {
        SubgroupHandle h;
        h.ambient_ = &ambient;
        h.gen_words_ = std::move(generator_words);
        h.gen_elems_.reserve(h.gen_words_.size());
        for (const Word& w : h.gen_words_) h.gen_elems_.push_back(ambient.canonical_of_word(w));
        if (ambient.kind() == GroupKind::FiniteTable)
            h.build_finite(caps);
        else
            h.build_free(caps);
        return h;
    }

    const VertexGroupOracle& ambient() const { return *ambient_; }
    std::size_t num_generators() const { return gen_words_.size(); }
    const std::vector<Word>& generator_words() const { return gen_words_; }

    bool contains(const CanonElem& g) const {
        if (ambient_->kind() == GroupKind::FiniteTable)
            return member_[static_cast<std::size_t>(g.v[0])] != 0;
        std::int32_t v = walk(g, 0);
        return v == 0;
    }

    bool membership_word(const Word& w) const { return contains(ambient_->canonical_of_word(w)); }

    bool index_established() const { return index_.has_value(); }
    std::size_t index() const {
        if (!index_) throw InputError("subgroup index not established (tree not locally finite)");
        return *index_;
    }

    // Left-coset representatives, identity first, each the shortlex-least
    // word in its coset g*H.
    const std::vector<CanonElem>& transversal_elems() const { return transversal_; }
    const std::vector<Word>& transversal_words() const { return transversal_words_; }

    std::int32_t coset_of(const CanonElem& g) const {
        if (ambient_->kind() == GroupKind::FiniteTable)
            return coset_of_elem_[static_cast<std::size_t>(g.v[0])];
        if (!index_) throw InputError("coset_of: subgroup index not established");
        std::int32_t v = walk(g, 0);
        return vertex_coset_[static_cast<std::size_t>(v)];
    }

    // h must lie in the subgroup; returns a GenWord evaluating to h.
    GenWord express(const CanonElem& h) const {
        if (ambient_->kind() == GroupKind::FiniteTable) {
            auto it = expr_.find(h.v[0]);
            if (it == expr_.end()) throw InternalError("express: element not in subgroup");
            return it->second;
        }
        // walk h through the folded graph, emitting a Schreier letter per
        // non-tree edge, then substitute the given-generator expressions
        if (!index_) throw InputError("express: subgroup index not established");
        GenWord out;
        std::int32_t v = 0;
        for (auto raw : h.v) {
            auto l = static_cast<LetterId>(raw);
            std::int32_t w = edge(v, l);
            if (w < 0) throw InternalError("express: element not in subgroup");
            std::int32_t sch = schreier_of_edge(v, l);
            if (sch != 0) {
                const GenWord& e = sch > 0 ? schreier_expr_[static_cast<std::size_t>(sch - 1)]
                                           : invert_gen_word(schreier_expr_[static_cast<std::size_t>(-sch - 1)]);
                out.insert(out.end(), e.begin(), e.end());
            }
            v = w;
        }
        if (v != 0) throw InternalError("express: element not in subgroup");
        return out;
    }

    // Evaluates a GenWord through an arbitrary generator image list (one
    // ambient word per abstract generator) in the given oracle.
    static CanonElem evaluate_gen_word(const VertexGroupOracle& target,
                                       const std::vector<Word>& images, const GenWord& w) {
        CanonElem r = target.identity_elem();
        for (auto x : w) {
            std::size_t i = static_cast<std::size_t>(x > 0 ? x : -x) - 1;
            if (i >= images.size()) throw InternalError("gen word references unknown generator");
            Word im = x > 0 ? images[i] : target.generators().invert_word(images[i]);
            r = target.multiply(r, im);
        }
        return r;
    }

private:
    void build_finite(const Caps& caps) {
        std::size_t n = ambient_->order();
        member_.assign(n, 0);
        member_[0] = 1;
        expr_[0] = {};
        std::deque<std::int32_t> queue{0};
        std::size_t count = 1;
        while (!queue.empty()) {
            std::int32_t g = queue.front();
            queue.pop_front();
            CanonElem ge{{g}};
            for (std::size_t i = 0; i < gen_elems_.size(); ++i) {
                for (int sign : {+1, -1}) {
                    CanonElem t = sign > 0
                                      ? ambient_->multiply_elem(ge, gen_elems_[i])
                                      : ambient_->multiply_elem(ge, ambient_->inverse_elem(gen_elems_[i]));
                    if (!member_[static_cast<std::size_t>(t.v[0])]) {
                        member_[static_cast<std::size_t>(t.v[0])] = 1;
                        if (++count > caps.coset_rows)
                            throw CapacityError("subgroup closure exceeded cap");
                        GenWord e = expr_[g];
                        e.push_back(sign * static_cast<std::int32_t>(i + 1));
                        expr_[t.v[0]] = std::move(e);
                        queue.push_back(t.v[0]);
                    }
                }
            }
        }
        // element indices run in shortlex order of canonical words, so a
        // linear scan makes every representative shortlex-least in its coset
        coset_of_elem_.assign(n, -1);
        for (std::size_t g = 0; g < n; ++g) {
            if (coset_of_elem_[g] >= 0) continue;
            std::int32_t id = static_cast<std::int32_t>(transversal_.size());
            CanonElem rep{{static_cast<std::int32_t>(g)}};
            transversal_.push_back(rep);
            transversal_words_.push_back(ambient_->canonical_word(rep));
            CanonElem rep_inv = ambient_->inverse_elem(rep);
            for (std::size_t x = g; x < n; ++x) {
                if (coset_of_elem_[x] >= 0) continue;
                CanonElem d = ambient_->multiply_elem(rep_inv, CanonElem{{static_cast<std::int32_t>(x)}});
                if (member_[static_cast<std::size_t>(d.v[0])]) coset_of_elem_[x] = id;
            }
        }
        index_ = transversal_.size();
    }

    void build_free(const Caps& caps) {
        // wedge of generator loops, then fold
        std::size_t nl = ambient_->generators().size();
        auto add_vertex = [&]() {
            edges_.emplace_back(nl, -1);
            return static_cast<std::int32_t>(edges_.size()) - 1;
        };
        add_vertex(); // base = 0
        std::vector<std::vector<std::int32_t>> loop_edges; // per generator: vertex sequence
        for (const Word& gw : gen_words_) {
            Word w = free_reduce(ambient_->generators(), gw);
            std::int32_t cur = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                std::int32_t nxt = (i + 1 == w.size()) ? 0 : add_vertex();
                set_edge(cur, w[i], nxt);
                cur = nxt;
            }
        }
        fold(caps);
        // completeness <=> finite index; vertices of the folded graph are
        // then exactly the left cosets
        bool complete = true;
        for (std::size_t v = 0; v < edges_.size(); ++v) {
            if (dead_[v]) continue;
            for (std::size_t l = 0; l < nl; ++l) {
                if (static_cast<LetterId>(l) == ambient_->generators().identity()) continue;
                if (edges_[v][l] < 0) complete = false;
            }
        }
        compact();
        if (!complete) return; // index not established (infinite)

        // BFS in letter order: shortlex-least word per coset vertex
        std::size_t nv = edges_.size();
        vertex_coset_.assign(nv, -1);
        std::vector<Word> vertex_word(nv);
        parent_edge_.assign(nv, {-1, -1});
        vertex_coset_[0] = 0;
        std::deque<std::int32_t> queue{0};
        std::vector<std::int32_t> order{0};
        while (!queue.empty()) {
            std::int32_t v = queue.front();
            queue.pop_front();
            for (std::size_t l = 0; l < nl; ++l) {
                std::int32_t w = edges_[static_cast<std::size_t>(v)][l];
                if (w < 0 || vertex_coset_[static_cast<std::size_t>(w)] >= 0) continue;
                vertex_coset_[static_cast<std::size_t>(w)] = static_cast<std::int32_t>(order.size());
                vertex_word[static_cast<std::size_t>(w)] = vertex_word[static_cast<std::size_t>(v)];
                vertex_word[static_cast<std::size_t>(w)].push_back(static_cast<LetterId>(l));
                parent_edge_[static_cast<std::size_t>(w)] = {v, static_cast<LetterId>(l)};
                order.push_back(w);
                queue.push_back(w);
            }
        }
        for (std::int32_t v : order) {
            transversal_.push_back(ambient_->canonical_of_word(vertex_word[static_cast<std::size_t>(v)]));
        }
        for (const CanonElem& e : transversal_) transversal_words_.push_back(ambient_->canonical_word(e));
        // reindex vertex -> coset so BFS discovery order matches 0..k-1
        std::vector<std::int32_t> coset_of_vertex(nv, -1);
        for (std::size_t i = 0; i < order.size(); ++i)
            coset_of_vertex[static_cast<std::size_t>(order[i])] = static_cast<std::int32_t>(i);
        vertex_coset_ = std::move(coset_of_vertex);
        index_ = transversal_.size();

        build_schreier(vertex_word, caps);
    }

    void build_schreier(const std::vector<Word>& vertex_word, const Caps& caps) {
        // Schreier generators: one per non-tree edge, in a fixed scan order.
        std::size_t nl = ambient_->generators().size();
        schreier_index_.assign(edges_.size() * nl, 0);
        std::vector<CanonElem> schreier_elems;
        for (std::size_t v = 0; v < edges_.size(); ++v) {
            for (std::size_t l = 0; l < nl; ++l) {
                std::int32_t w = edges_[v][l];
                if (w < 0) continue;
                if (static_cast<LetterId>(l) == ambient_->generators().identity()) continue;
                // skip tree edges (either direction) and already-oriented partners
                auto [pv, pl] = parent_edge_[static_cast<std::size_t>(w)];
                if (pv == static_cast<std::int32_t>(v) && pl == static_cast<LetterId>(l)) continue;
                auto [qv, ql] = parent_edge_[v];
                if (qv == w && ambient_->generators().inverse(ql) == static_cast<LetterId>(l)) continue;
                if (schreier_index_[v * nl + l] != 0) continue;
                // new Schreier generator: word(v) . l . word(w)^-1
                Word g = vertex_word[v];
                g.push_back(static_cast<LetterId>(l));
                Word back = ambient_->generators().invert_word(vertex_word[static_cast<std::size_t>(w)]);
                g.insert(g.end(), back.begin(), back.end());
                schreier_elems.push_back(ambient_->canonical_of_word(g));
                std::int32_t id = static_cast<std::int32_t>(schreier_elems.size());
                schreier_index_[v * nl + l] = id;
                std::size_t wl = static_cast<std::size_t>(ambient_->generators().inverse(static_cast<LetterId>(l)));
                schreier_index_[static_cast<std::size_t>(w) * nl + wl] = -id;
            }
        }
        // express each Schreier generator in the *given* generators by a
        // breadth-first search over products; desk-scale subgroups resolve
        // at depth 1 or 2
        schreier_expr_.assign(schreier_elems.size(), {});
        std::vector<char> found(schreier_elems.size(), 0);
        std::size_t remaining = schreier_elems.size();
        std::unordered_map<CanonElem, GenWord, CanonElemHash> seen;
        std::deque<CanonElem> queue;
        CanonElem id_elem = ambient_->identity_elem();
        seen.emplace(id_elem, GenWord{});
        queue.push_back(id_elem);
        auto check = [&](const CanonElem& e, const GenWord& w) {
            for (std::size_t i = 0; i < schreier_elems.size(); ++i) {
                if (!found[i] && schreier_elems[i] == e) {
                    schreier_expr_[i] = w;
                    found[i] = 1;
                    --remaining;
                }
            }
        };
        check(id_elem, {});
        while (remaining > 0 && !queue.empty()) {
            CanonElem cur = queue.front();
            queue.pop_front();
            const GenWord& cw = seen.at(cur);
            for (std::size_t i = 0; i < gen_elems_.size(); ++i) {
                for (int sign : {+1, -1}) {
                    CanonElem t = sign > 0
                                      ? ambient_->multiply_elem(cur, gen_elems_[i])
                                      : ambient_->multiply_elem(cur, ambient_->inverse_elem(gen_elems_[i]));
                    if (seen.count(t)) continue;
                    if (seen.size() >= caps.coset_rows)
                        throw CapacityError("Schreier-to-given-generator search exceeded cap");
                    GenWord w = cw;
                    w.push_back(sign * static_cast<std::int32_t>(i + 1));
                    check(t, w);
                    seen.emplace(t, std::move(w));
                    queue.push_back(t);
                }
            }
        }
        if (remaining > 0)
            throw CapacityError("could not express subgroup basis in the given generators");
    }

    void set_edge(std::int32_t v, LetterId l, std::int32_t w) {
        edges_[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)] = w;
        edges_[static_cast<std::size_t>(w)][static_cast<std::size_t>(ambient_->generators().inverse(l))] = v;
    }

    void fold(const Caps& caps) {
        std::size_t nl = ambient_->generators().size();
        std::vector<std::int32_t> uf(edges_.size());
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](std::int32_t x) {
            while (uf[static_cast<std::size_t>(x)] != x) {
                uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
                x = uf[static_cast<std::size_t>(x)];
            }
            return x;
        };
        bool changed = true;
        std::size_t rounds = 0;
        while (changed) {
            if (++rounds > caps.coset_rows) throw CapacityError("folding exceeded cap");
            changed = false;
            for (std::size_t v = 0; v < edges_.size(); ++v) {
                if (find(static_cast<std::int32_t>(v)) != static_cast<std::int32_t>(v)) continue;
                for (std::size_t l = 0; l < nl; ++l) {
                    // collect representatives of all targets under letter l
                    std::int32_t target = -1;
                    for (std::size_t u = 0; u < edges_.size(); ++u) {
                        if (find(static_cast<std::int32_t>(u)) != static_cast<std::int32_t>(v)) continue;
                        std::int32_t t = edges_[u][l];
                        if (t < 0) continue;
                        t = find(t);
                        if (target < 0) {
                            target = t;
                        } else if (target != t) {
                            // union: prefer keeping the base vertex id 0
                            std::int32_t a = std::min(target, t), b = std::max(target, t);
                            uf[static_cast<std::size_t>(b)] = a;
                            target = a;
                            changed = true;
                        }
                    }
                }
            }
        }
        // rebuild edges on representatives
        std::vector<std::vector<std::int32_t>> folded(edges_.size(), std::vector<std::int32_t>(nl, -1));
        for (std::size_t v = 0; v < edges_.size(); ++v) {
            std::int32_t rv = find(static_cast<std::int32_t>(v));
            for (std::size_t l = 0; l < nl; ++l) {
                if (edges_[v][l] < 0) continue;
                std::int32_t rt = find(edges_[v][l]);
                if (folded[static_cast<std::size_t>(rv)][l] >= 0 &&
                    folded[static_cast<std::size_t>(rv)][l] != rt)
                    throw InternalError("folding left a nondeterministic edge");
                folded[static_cast<std::size_t>(rv)][l] = rt;
            }
        }
        edges_ = std::move(folded);
        dead_.assign(edges_.size(), 0);
        for (std::size_t v = 0; v < edges_.size(); ++v)
            if (find(static_cast<std::int32_t>(v)) != static_cast<std::int32_t>(v)) dead_[v] = 1;
    }

    void compact() {
        // drop dead vertices, keep 0 = base
        std::vector<std::int32_t> remap(edges_.size(), -1);
        std::int32_t next = 0;
        for (std::size_t v = 0; v < edges_.size(); ++v)
            if (!dead_[v]) remap[v] = next++;
        std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(next));
        for (std::size_t v = 0; v < edges_.size(); ++v) {
            if (dead_[v]) continue;
            auto row = edges_[v];
            for (auto& t : row)
                if (t >= 0) t = remap[static_cast<std::size_t>(t)];
            out[static_cast<std::size_t>(remap[v])] = std::move(row);
        }
        edges_ = std::move(out);
        dead_.assign(edges_.size(), 0);
    }

    std::int32_t edge(std::int32_t v, LetterId l) const {
        return edges_[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
    }

    std::int32_t walk(const CanonElem& g, std::int32_t from) const {
        std::int32_t v = from;
        for (auto raw : g.v) {
            if (v < 0) return -1;
            v = edge(v, static_cast<LetterId>(raw));
        }
        return v;
    }

    std::int32_t schreier_of_edge(std::int32_t v, LetterId l) const {
        return schreier_index_[static_cast<std::size_t>(v) * ambient_->generators().size() +
                               static_cast<std::size_t>(l)];
    }

    const VertexGroupOracle* ambient_ = nullptr;
    std::vector<Word> gen_words_;
    std::vector<CanonElem> gen_elems_;
    std::optional<std::size_t> index_;
    std::vector<CanonElem> transversal_;
    std::vector<Word> transversal_words_;

    // finite kind
    std::vector<char> member_;
    std::vector<std::int32_t> coset_of_elem_;
    std::unordered_map<std::int32_t, GenWord> expr_;

    // free kind
    std::vector<std::vector<std::int32_t>> edges_; // folded graph, vertex 0 = base
    std::vector<char> dead_;
    std::vector<std::int32_t> vertex_coset_;
    std::vector<std::pair<std::int32_t, LetterId>> parent_edge_;
    std::vector<std::int32_t> schreier_index_; // vertex*nl+letter -> +-(k+1), 0 = tree/none
    std::vector<GenWord> schreier_expr_;
};

} // namespace gogauto
