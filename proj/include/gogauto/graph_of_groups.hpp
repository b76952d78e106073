// graph_of_groups.hpp -- the graph-of-groups data model.
//
// Directed edges come in involutive pairs: pair i contributes directed ids
// 2i (forward, named "e") and 2i+1 (reversed, named "e~"), so reversal is
// id^1 and is fixed-point-free by construction.  Each directed edge f
// carries the embedded image of the edge group inside the vertex group at
// iota(f) as a SubgroupHandle; pushing an edge-group element through the
// edge ("transport") realizes the relation tying the two embeddings
// together, with the reversed edge conjugating forward images to backward
// images.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/group_oracle.hpp"
#include "gogauto/subgroup.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

struct EdgePairData {
    std::string name;
    int u = 0, v = 0;                    // iota(fwd) = u, iota(bwd) = v
    std::vector<std::string> gen_names;  // abstract edge-group generators
    std::vector<Word> fwd_words;         // images in the group at u
    std::vector<Word> bwd_words;         // images in the group at v
};

struct GogValidationReport {
    bool ok = true;
    std::vector<std::string> lines;
    std::vector<std::string> errors;

    void note(std::string s) { lines.push_back(std::move(s)); }
    void fail(std::string s) {
        ok = false;
        errors.push_back(s);
        lines.push_back("ERROR: " + std::move(s));
    }
};

class GraphOfGroups {
public:
    GraphOfGroups() = default;
    GraphOfGroups(const GraphOfGroups&) = delete;
    GraphOfGroups& operator=(const GraphOfGroups&) = delete;
    GraphOfGroups(GraphOfGroups&&) = default;
    GraphOfGroups& operator=(GraphOfGroups&&) = default;

    int add_vertex(std::string name, VertexGroupOracle oracle) {
        vertex_names_.push_back(std::move(name));
        vertex_groups_.push_back(std::move(oracle));
        return static_cast<int>(vertex_names_.size()) - 1;
    }

    int add_edge_pair(EdgePairData data) {
        edge_pairs_.push_back(std::move(data));
        return static_cast<int>(edge_pairs_.size()) - 1;
    }

    void set_base(int v) { base_ = v; }

    std::size_t num_vertices() const { return vertex_names_.size(); }
    std::size_t num_edge_pairs() const { return edge_pairs_.size(); }
    std::size_t num_directed_edges() const { return edge_pairs_.size() * 2; }
    int base_vertex() const { return base_; }
    const std::string& vertex_name(int v) const { return vertex_names_[static_cast<std::size_t>(v)]; }
    const VertexGroupOracle& vertex_group(int v) const { return vertex_groups_[static_cast<std::size_t>(v)]; }
    const EdgePairData& edge_pair(int p) const { return edge_pairs_[static_cast<std::size_t>(p)]; }

    static int reverse_edge(int f) { return f ^ 1; }
    int edge_start(int f) const {
        const EdgePairData& p = edge_pairs_[static_cast<std::size_t>(f / 2)];
        return (f & 1) == 0 ? p.u : p.v;
    }
    int edge_end(int f) const { return edge_start(reverse_edge(f)); }
    std::string edge_name(int f) const {
        const EdgePairData& p = edge_pairs_[static_cast<std::size_t>(f / 2)];
        return (f & 1) == 0 ? p.name : p.name + "~";
    }
    const std::vector<Word>& embedding_words(int f) const {
        const EdgePairData& p = edge_pairs_[static_cast<std::size_t>(f / 2)];
        return (f & 1) == 0 ? p.fwd_words : p.bwd_words;
    }

    bool prepared() const { return prepared_; }
    bool pair_in_tree(int p) const { return tree_pair_[static_cast<std::size_t>(p)] != 0; }
    bool edge_in_tree(int f) const { return pair_in_tree(f / 2); }
    const SubgroupHandle& edge_subgroup(int f) const { return edge_sub_[static_cast<std::size_t>(f)]; }

    // Builds the spanning tree, edge subgroups and transversals.  Failures
    // (disconnectedness, infinite edge-group index) are collected so that
    // validate() can report them; operations needing a valid model call
    // require_valid().
    void prepare(const Caps& caps = {}) {
        if (vertex_names_.empty()) throw InputError("graph of groups has no vertices");
        if (base_ < 0 || static_cast<std::size_t>(base_) >= vertex_names_.size())
            throw InputError("base vertex out of range");
        for (const EdgePairData& p : edge_pairs_) {
            if (p.u < 0 || static_cast<std::size_t>(p.u) >= vertex_names_.size() ||
                p.v < 0 || static_cast<std::size_t>(p.v) >= vertex_names_.size())
                throw InputError("edge endpoint out of range");
            if (p.fwd_words.size() != p.gen_names.size() || p.bwd_words.size() != p.gen_names.size())
                throw InputError("edge '" + p.name + "': embedding word count mismatch");
        }
        prepare_errors_.clear();
        build_spanning_tree();
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (tree_depth_[v] < 0)
                prepare_errors_.push_back("graph is not connected (vertex '" + vertex_names_[v] +
                                          "' unreachable)");
        edge_sub_.clear();
        edge_sub_.reserve(num_directed_edges());
        for (std::size_t f = 0; f < num_directed_edges(); ++f) {
            const VertexGroupOracle& amb = vertex_group(edge_start(static_cast<int>(f)));
            edge_sub_.push_back(SubgroupHandle::build(amb, embedding_words(static_cast<int>(f)), caps));
            if (!edge_sub_.back().index_established())
                prepare_errors_.push_back("edge '" + edge_name(static_cast<int>(f)) +
                                          "': edge subgroup has infinite index (tree not locally finite)");
        }
        prepared_ = true;
    }

    void require_valid() const {
        if (!prepared_) throw InternalError("graph of groups not prepared");
        if (!prepare_errors_.empty()) throw InputError(prepare_errors_.front());
    }

    // Factors g in the group at iota(f) as s_k * i_f(gamma) and returns k
    // together with i_{f~}(gamma), the element pushed through the edge.
    struct EdgeFactorization {
        std::int32_t coset;
        CanonElem transported;
    };
    EdgeFactorization factor_through(int f, const CanonElem& g) const {
        const SubgroupHandle& sub = edge_sub_[static_cast<std::size_t>(f)];
        std::int32_t k = sub.coset_of(g);
        const VertexGroupOracle& amb = vertex_group(edge_start(f));
        CanonElem h = amb.multiply_elem(amb.inverse_elem(sub.transversal_elems()[static_cast<std::size_t>(k)]), g);
        GenWord gamma = sub.express(h);
        int rf = reverse_edge(f);
        CanonElem img = SubgroupHandle::evaluate_gen_word(vertex_group(edge_start(rf)),
                                                          embedding_words(rf), gamma);
        return {k, img};
    }

    // Directed tree edges from vertex a to vertex b.
    std::vector<int> tree_route(int a, int b) const {
        std::vector<int> up, down;
        int x = a, y = b;
        while (tree_depth_[static_cast<std::size_t>(x)] > tree_depth_[static_cast<std::size_t>(y)]) {
            up.push_back(reverse_edge(tree_parent_edge_[static_cast<std::size_t>(x)]));
            x = edge_start(tree_parent_edge_[static_cast<std::size_t>(x)]);
        }
        while (tree_depth_[static_cast<std::size_t>(y)] > tree_depth_[static_cast<std::size_t>(x)]) {
            down.push_back(tree_parent_edge_[static_cast<std::size_t>(y)]);
            y = edge_start(tree_parent_edge_[static_cast<std::size_t>(y)]);
        }
        while (x != y) {
            up.push_back(reverse_edge(tree_parent_edge_[static_cast<std::size_t>(x)]));
            x = edge_start(tree_parent_edge_[static_cast<std::size_t>(x)]);
            down.push_back(tree_parent_edge_[static_cast<std::size_t>(y)]);
            y = edge_start(tree_parent_edge_[static_cast<std::size_t>(y)]);
        }
        up.insert(up.end(), down.rbegin(), down.rend());
        return up;
    }

    GogValidationReport validate(int radius, const Caps& caps = {}) const {
        if (!prepared_) throw InternalError("validate: graph of groups not prepared");
        GogValidationReport rep;
        rep.note("vertices: " + std::to_string(num_vertices()) +
                 ", edge pairs: " + std::to_string(num_edge_pairs()) +
                 ", base: " + vertex_name(base_));
        bool connected = true;
        for (std::size_t v = 0; v < vertex_names_.size(); ++v)
            if (tree_depth_[v] < 0) connected = false;
        if (connected)
            rep.note("connectivity: ok");
        else
            rep.fail("graph is not connected");
        rep.note("edge reversal: involutive and fixed-point-free by construction");

        std::string tree = "spanning tree:";
        for (std::size_t p = 0; p < edge_pairs_.size(); ++p)
            if (tree_pair_[p]) tree += " " + edge_pairs_[p].name;
        rep.note(tree);

        for (std::size_t f = 0; f < num_directed_edges(); ++f) {
            const SubgroupHandle& sub = edge_sub_[f];
            if (!sub.index_established()) {
                rep.fail("edge '" + edge_name(static_cast<int>(f)) + "': index not established");
                continue;
            }
            rep.note("edge '" + edge_name(static_cast<int>(f)) + "': index " +
                     std::to_string(sub.index()) + " in vertex group '" +
                     vertex_name(edge_start(static_cast<int>(f))) + "'");
        }

        // embedding compatibility: the two substitution maps must have the
        // same kernel on the edge-group ball of the given radius
        for (std::size_t p = 0; p < edge_pairs_.size(); ++p) {
            const EdgePairData& pair = edge_pairs_[p];
            const VertexGroupOracle& gu = vertex_group(pair.u);
            const VertexGroupOracle& gv = vertex_group(pair.v);
            std::vector<GenWord> layer{{}};
            std::size_t checked = 0;
            bool bad = false;
            for (int len = 0; len < radius && !bad; ++len) {
                std::vector<GenWord> next;
                for (const GenWord& w : layer) {
                    for (std::size_t i = 0; i < pair.gen_names.size() && !bad; ++i) {
                        for (int sign : {+1, -1}) {
                            if (!w.empty() && w.back() == -sign * static_cast<std::int32_t>(i + 1))
                                continue; // freely reduced words suffice
                            GenWord e = w;
                            e.push_back(sign * static_cast<std::int32_t>(i + 1));
                            if (++checked > caps.coset_rows)
                                throw CapacityError("embedding validation exceeded cap");
                            CanonElem a = SubgroupHandle::evaluate_gen_word(gu, pair.fwd_words, e);
                            CanonElem b = SubgroupHandle::evaluate_gen_word(gv, pair.bwd_words, e);
                            if (gu.is_identity(a) != gv.is_identity(b)) {
                                rep.fail("edge '" + pair.name +
                                         "': embeddings disagree on the kernel (counterexample of length " +
                                         std::to_string(e.size()) + ")");
                                bad = true;
                                break;
                            }
                            next.push_back(std::move(e));
                        }
                    }
                }
                layer = std::move(next);
            }
            if (!bad)
                rep.note("edge '" + pair.name + "': embedding kernels agree to radius " +
                         std::to_string(radius));
        }
        return rep;
    }

private:
    // BFS from the base vertex, pairs tried in declaration order.
    void build_spanning_tree() {
        tree_pair_.assign(edge_pairs_.size(), 0);
        tree_parent_edge_.assign(vertex_names_.size(), -1);
        tree_depth_.assign(vertex_names_.size(), -1);
        tree_depth_[static_cast<std::size_t>(base_)] = 0;
        std::vector<int> queue{base_};
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            for (std::size_t f = 0; f < num_directed_edges(); ++f) {
                if (edge_start(static_cast<int>(f)) != v) continue;
                int w = edge_end(static_cast<int>(f));
                if (tree_depth_[static_cast<std::size_t>(w)] >= 0) continue;
                tree_depth_[static_cast<std::size_t>(w)] = tree_depth_[static_cast<std::size_t>(v)] + 1;
                tree_parent_edge_[static_cast<std::size_t>(w)] = static_cast<int>(f);
                tree_pair_[static_cast<std::size_t>(f / 2)] = 1;
                queue.push_back(w);
            }
        }
    }

    std::vector<std::string> vertex_names_;
    std::vector<VertexGroupOracle> vertex_groups_;
    std::vector<EdgePairData> edge_pairs_;
    int base_ = 0;

    std::vector<char> tree_pair_;
    std::vector<int> tree_parent_edge_; // directed edge into v from its parent
    std::vector<int> tree_depth_;
    std::vector<SubgroupHandle> edge_sub_;
    std::vector<std::string> prepare_errors_;
    bool prepared_ = false;
};

} // namespace gogauto
