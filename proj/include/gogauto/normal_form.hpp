// normal_form.hpp -- the Bass-Serre normal form g = s_1 e_1 ... s_n e_n h
// and the rewriting engine computing it.
//
// Internally a word is folded letter by letter into a path form: a reduced
// edge path from the base vertex whose syllables carry transversal
// representatives (never the identity representative straight back along
// the previous edge) and whose tail is a vertex-group element at the path
// end.  Appending an edge either pinches the path (when the tail lies in
// the edge subgroup and the edge backtracks) or factors the tail through
// the edge subgroup and pushes the subgroup part across.  Letters whose
// vertex group lives elsewhere are routed through spanning-tree edges,
// which evaluate to the identity.  The resulting loop expression at the
// base is the unique normal form of the represented element, so normal
// forms double as exact group elements; the context interns them and
// memoizes single-letter products.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "gogauto/alphabet.hpp"
#include "gogauto/caps.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/group_oracle.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

struct NormalForm {
    std::vector<std::pair<std::int32_t, std::int32_t>> syllables; // (directed edge, transversal k)
    CanonElem tail;                                               // element of the base group

    bool operator==(const NormalForm& o) const { return syllables == o.syllables && tail == o.tail; }
    bool operator!=(const NormalForm& o) const { return !(*this == o); }
};

struct NormalFormHash {
    std::size_t operator()(const NormalForm& n) const {
        std::size_t h = 0xcbf29ce4;
        for (const auto& [e, k] : n.syllables) {
            h = hash_combine(h, static_cast<std::size_t>(e) + 3);
            h = hash_combine(h, static_cast<std::size_t>(k) + 5);
        }
        return hash_combine(h, CanonElemHash{}(n.tail));
    }
};

using NfId = std::int32_t;

class NfContext {
public:
    NfContext(const GraphOfGroups& g, const StructureAlphabet& a) : g_(&g), a_(&a) {
        g.require_valid();
        NormalForm id;
        id.tail = base_oracle().identity_elem();
        intern(std::move(id));
    }

    NfContext(const NfContext&) = delete;
    NfContext& operator=(const NfContext&) = delete;

    const GraphOfGroups& gog() const { return *g_; }
    const StructureAlphabet& alphabet() const { return *a_; }

    NfId identity_id() const { return 0; }

    std::size_t interned() const {
        std::lock_guard<std::mutex> lock(mu_);
        return forms_.size();
    }

    NormalForm form(NfId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return forms_[static_cast<std::size_t>(id)];
    }

    int tree_level(NfId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return static_cast<int>(forms_[static_cast<std::size_t>(id)].syllables.size());
    }

    // nf_append: normal form of (the element of id) * pi_A(letter)
    NfId append(NfId id, LetterId letter) {
        std::lock_guard<std::mutex> lock(mu_);
        return append_impl(id, letter);
    }

    NfId normalize(const Word& w) {
        std::lock_guard<std::mutex> lock(mu_);
        NfId id = 0;
        for (LetterId l : w) id = append_impl(id, l);
        return id;
    }

    NfId evaluate_letter(LetterId l) {
        std::lock_guard<std::mutex> lock(mu_);
        return append_impl(0, l);
    }

    Word serialize(NfId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return serialize_impl(id);
    }

    NfId invert(NfId id) {
        std::lock_guard<std::mutex> lock(mu_);
        return invert_impl(id);
    }

    NfId multiply(NfId x, NfId y) {
        std::lock_guard<std::mutex> lock(mu_);
        Word w = serialize_impl(y);
        NfId id = x;
        for (LetterId l : w) id = append_impl(id, l);
        return id;
    }

    // x^-1 * y, the word difference between two prefixes
    NfId difference(NfId x, NfId y) {
        std::lock_guard<std::mutex> lock(mu_);
        NfId id = invert_impl(x);
        for (LetterId l : serialize_impl(y)) id = append_impl(id, l);
        return id;
    }

    // The d_A-ball around the identity.  Snapshots are immutable; the
    // cached ball is extended copy-on-write when a larger radius is asked.
    struct BallA {
        std::unordered_map<NfId, int> dist;
        std::vector<NfId> order; // BFS order, distance-sorted
        int radius = -1;

        int dist_or(NfId id, int fallback) const {
            auto it = dist.find(id);
            return it == dist.end() ? fallback : it->second;
        }
    };

    std::shared_ptr<const BallA> ball(int radius, const Caps& caps = {}) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!ball_ || ball_->radius < radius) {
            auto next = ball_ ? std::make_shared<BallA>(*ball_) : std::make_shared<BallA>();
            if (next->radius < 0) {
                next->dist.emplace(0, 0);
                next->order.push_back(0);
                next->radius = 0;
            }
            std::size_t frontier_begin = 0;
            while (next->radius < radius) {
                // locate current outermost layer
                while (frontier_begin < next->order.size() &&
                       next->dist.at(next->order[frontier_begin]) < next->radius)
                    ++frontier_begin;
                std::size_t layer_end = next->order.size();
                for (std::size_t i = frontier_begin; i < layer_end; ++i) {
                    NfId cur = next->order[i];
                    for (std::size_t l = 0; l < a_->size(); ++l) {
                        NfId t = append_impl(cur, static_cast<LetterId>(l));
                        if (next->dist.emplace(t, next->radius + 1).second) {
                            if (next->order.size() >= caps.ball_elements)
                                throw CapacityError("d_A ball exceeded element cap");
                            next->order.push_back(t);
                        }
                    }
                }
                frontier_begin = layer_end;
                ++next->radius;
            }
            ball_ = std::move(next);
        }
        return ball_;
    }

private:
    const VertexGroupOracle& base_oracle() const { return g_->vertex_group(g_->base_vertex()); }
    const VertexGroupOracle& oracle(int v) const { return g_->vertex_group(v); }

    struct PathForm {
        std::vector<std::pair<std::int32_t, std::int32_t>> syllables;
        CanonElem tail;
        int end;
    };

    void apply_edge(PathForm& p, int f) const {
        GraphOfGroups::EdgeFactorization fac = g_->factor_through(f, p.tail);
        if (!p.syllables.empty() && p.syllables.back().first == GraphOfGroups::reverse_edge(f) &&
            fac.coset == 0) {
            // pinch: f_m . i_{f_m~}(gamma) . f_m~  collapses to i_{f_m}(gamma)
            int fm = p.syllables.back().first;
            std::int32_t km = p.syllables.back().second;
            p.syllables.pop_back();
            int v = g_->edge_start(fm);
            const CanonElem& s_m =
                g_->edge_subgroup(fm).transversal_elems()[static_cast<std::size_t>(km)];
            p.tail = oracle(v).multiply_elem(s_m, fac.transported);
            p.end = v;
        } else {
            p.syllables.emplace_back(f, fac.coset);
            p.tail = fac.transported;
            p.end = g_->edge_end(f);
        }
    }

    void route(PathForm& p, int target) const {
        if (p.end == target) return;
        for (int f : g_->tree_route(p.end, target)) apply_edge(p, f);
    }

    NfId append_impl(NfId id, LetterId letter) {
        if (letter < 0 || static_cast<std::size_t>(letter) >= a_->size())
            throw InputError("normalize: letter not in alphabet");
        std::size_t slot = static_cast<std::size_t>(id) * a_->size() + static_cast<std::size_t>(letter);
        if (append_memo_[slot] >= 0) return append_memo_[slot];

        const NormalForm& nf = forms_[static_cast<std::size_t>(id)];
        PathForm p{nf.syllables, nf.tail, g_->base_vertex()};
        const StructureLetter& L = a_->info(letter);
        switch (L.kind) {
        case LetterKind::Base:
            p.tail = base_oracle().multiply_letter(p.tail, L.base_letter);
            break;
        case LetterKind::Transversal:
        case LetterKind::TransversalInv: {
            int v = g_->edge_start(L.edge);
            route(p, v);
            CanonElem s =
                g_->edge_subgroup(L.edge).transversal_elems()[static_cast<std::size_t>(L.k)];
            if (L.kind == LetterKind::TransversalInv) s = oracle(v).inverse_elem(s);
            p.tail = oracle(v).multiply_elem(p.tail, s);
            break;
        }
        case LetterKind::Edge:
            route(p, g_->edge_start(L.edge));
            apply_edge(p, L.edge);
            break;
        }
        route(p, g_->base_vertex());
        NfId result = intern(NormalForm{std::move(p.syllables), std::move(p.tail)});
        append_memo_[slot] = result;
        return result;
    }

    Word serialize_impl(NfId id) const {
        const NormalForm& nf = forms_[static_cast<std::size_t>(id)];
        Word w;
        for (const auto& [f, k] : nf.syllables) {
            w.push_back(a_->transversal_letter(f, k));
            w.push_back(a_->edge_letter(f));
        }
        for (LetterId b : base_oracle().canonical_word(nf.tail))
            w.push_back(a_->base_letter(b));
        return w;
    }

    NfId invert_impl(NfId id) {
        if (invert_memo_.size() > static_cast<std::size_t>(id) && invert_memo_[static_cast<std::size_t>(id)] >= 0)
            return invert_memo_[static_cast<std::size_t>(id)];
        Word w = a_->invert_word(serialize_impl(id));
        NfId r = 0;
        for (LetterId l : w) r = append_impl(r, l);
        if (invert_memo_.size() < forms_.size()) invert_memo_.resize(forms_.size(), -1);
        invert_memo_[static_cast<std::size_t>(id)] = r;
        return r;
    }

    NfId intern(NormalForm&& nf) {
        auto it = ids_.find(nf);
        if (it != ids_.end()) return it->second;
        NfId id = static_cast<NfId>(forms_.size());
        forms_.push_back(nf);
        ids_.emplace(std::move(nf), id);
        append_memo_.resize(forms_.size() * a_->size(), -1);
        return id;
    }

    const GraphOfGroups* g_;
    const StructureAlphabet* a_;

    mutable std::mutex mu_;
    std::vector<NormalForm> forms_;
    std::unordered_map<NormalForm, NfId, NormalFormHash> ids_;
    std::vector<NfId> append_memo_; // id * |A| + letter
    std::vector<NfId> invert_memo_;
    std::shared_ptr<const BallA> ball_;
};

} // namespace gogauto
