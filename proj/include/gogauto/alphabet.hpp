// alphabet.hpp -- the generating set A of the whole group.
//
// A is the symmetric closure of E+ ⊔ B ⊔ ⨆S(e): edge letters (one per
// directed edge; the inverse of an edge letter is the reversed edge's
// letter), the base vertex group's own symmetric letter set B, and one
// letter per transversal representative together with a formal inverse.
// Letter names are stable across runs: edges print as "e"/"e~", base
// letters by their generator names, transversal letters as "<edge>.<k>"
// with k the shortlex enumeration index (k = 0 the identity
// representative), and inverses with a trailing apostrophe.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

enum class LetterKind { Edge, Base, Transversal, TransversalInv };

struct StructureLetter {
    LetterKind kind;
    int edge = -1;         // directed edge id (Edge/Transversal kinds)
    std::int32_t k = -1;   // transversal index
    LetterId base_letter = -1;
};

class StructureAlphabet {
public:
    std::size_t size() const { return table_.size(); }
    const GeneratorSet& letters() const { return table_; }
    const StructureLetter& info(LetterId a) const { return info_[static_cast<std::size_t>(a)]; }
    LetterId inverse(LetterId a) const { return table_.inverse(a); }
    LetterId identity_letter() const { return table_.identity(); }
    const std::string& name(LetterId a) const { return table_.name(a); }

    LetterId edge_letter(int f) const { return edge_letter_[static_cast<std::size_t>(f)]; }
    LetterId base_letter(LetterId b) const { return base_letter_[static_cast<std::size_t>(b)]; }
    LetterId transversal_letter(int f, std::int32_t k) const {
        return trans_letter_[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)];
    }

    Word parse_word(const std::string& text) const { return table_.parse_word(text); }
    LetterId parse_letter(const std::string& token) const { return table_.parse_letter(token); }
    std::string format_word(const Word& w) const { return table_.format_word(w); }
    Word invert_word(const Word& w) const { return table_.invert_word(w); }

    friend StructureAlphabet build_alphabet(const GraphOfGroups& g);

private:
    GeneratorSet table_;
    std::vector<StructureLetter> info_;
    std::vector<LetterId> edge_letter_;              // directed edge -> letter
    std::vector<LetterId> base_letter_;              // base-group letter -> letter
    std::vector<std::vector<LetterId>> trans_letter_; // directed edge, k -> letter
};

inline StructureAlphabet build_alphabet(const GraphOfGroups& g) {
    g.require_valid();
    StructureAlphabet a;
    // edge letters; reversal is the inverse pairing
    a.edge_letter_.resize(g.num_directed_edges());
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        a.edge_letter_[f] = a.table_.add_letter(g.edge_name(static_cast<int>(f)));
        a.info_.push_back({LetterKind::Edge, static_cast<int>(f), -1, -1});
    }
    for (std::size_t p = 0; p < g.num_edge_pairs(); ++p)
        a.table_.pair_letters(a.edge_letter_[2 * p], a.edge_letter_[2 * p + 1]);

    // base letters reuse B's names and involution
    const GeneratorSet& b = g.vertex_group(g.base_vertex()).generators();
    a.base_letter_.resize(b.size());
    for (std::size_t l = 0; l < b.size(); ++l) {
        a.base_letter_[l] = a.table_.add_letter(b.name(static_cast<LetterId>(l)));
        a.info_.push_back({LetterKind::Base, -1, -1, static_cast<LetterId>(l)});
    }
    for (std::size_t l = 0; l < b.size(); ++l)
        a.table_.pair_letters(a.base_letter_[l],
                              a.base_letter_[static_cast<std::size_t>(b.inverse(static_cast<LetterId>(l)))]);
    a.table_.set_identity(a.base_letter_[static_cast<std::size_t>(b.identity())]);

    // transversal letters, then their formal inverses
    a.trans_letter_.resize(g.num_directed_edges());
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        std::size_t n = g.edge_subgroup(static_cast<int>(f)).transversal_elems().size();
        a.trans_letter_[f].resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            a.trans_letter_[f][k] =
                a.table_.add_letter(g.edge_name(static_cast<int>(f)) + "." + std::to_string(k));
            a.info_.push_back({LetterKind::Transversal, static_cast<int>(f),
                               static_cast<std::int32_t>(k), -1});
        }
    }
    for (std::size_t f = 0; f < g.num_directed_edges(); ++f) {
        for (std::size_t k = 0; k < a.trans_letter_[f].size(); ++k) {
            LetterId fwd = a.trans_letter_[f][k];
            LetterId inv = a.table_.add_letter(a.table_.name(fwd) + "'");
            a.info_.push_back({LetterKind::TransversalInv, static_cast<int>(f),
                               static_cast<std::int32_t>(k), -1});
            a.table_.pair_letters(fwd, inv);
        }
    }
    a.table_.validate();
    return a;
}

} // namespace gogauto
