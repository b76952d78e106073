// cone_types.hpp -- geodesic recognizers for vertex groups.
//
// The cone type of a geodesic word U is the set of words V with UV still
// geodesic.  Both shipped group kinds have finitely many cone types; the
// recognizer below is a total automaton over those classes whose accepted
// language is exactly the geodesic words, verified against BFS distances
// up to a configurable probe length.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/group_oracle.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

struct ConeTypeTable {
    int num_classes = 0;
    int empty_class = 0;
    std::vector<std::vector<std::int32_t>> next; // [class][letter] -> class, -1 = reject
    int check_length = 0;

    // -1 once the word stops being geodesic
    int class_of(const Word& w) const {
        int c = empty_class;
        for (LetterId a : w) {
            if (c < 0) return -1;
            c = next[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
        }
        return c;
    }

    bool accepts(const Word& w) const { return class_of(w) >= 0; }
};

namespace detail {

// Moore partition refinement on the element automaton g --b--> gb
// (defined iff d(gb) = d(g)+1, every state accepting).  Two elements get
// the same class exactly when their cone languages coincide.
inline std::vector<std::int32_t> minimize_cone_classes(const CayleyBall& ball, std::size_t num_letters) {
    std::size_t n = ball.elems.size();
    std::vector<std::int32_t> block(n, 0);
    std::int32_t num_blocks = 1;
    for (;;) {
        std::unordered_map<std::string, std::int32_t> sig_block;
        std::vector<std::int32_t> next_block(n);
        std::int32_t next_count = 0;
        for (std::size_t g = 0; g < n; ++g) {
            std::string sig = std::to_string(block[g]);
            for (std::size_t l = 0; l < num_letters; ++l) {
                std::int32_t t = ball.step[g][l];
                bool geo = t >= 0 && ball.dist[static_cast<std::size_t>(t)] == ball.dist[g] + 1;
                sig.push_back('|');
                sig += geo ? std::to_string(block[static_cast<std::size_t>(t)]) : "x";
            }
            auto it = sig_block.find(sig);
            if (it == sig_block.end()) {
                sig_block.emplace(std::move(sig), next_count);
                next_block[g] = next_count++;
            } else {
                next_block[g] = it->second;
            }
        }
        if (next_count == num_blocks) return block;
        block = std::move(next_block);
        num_blocks = next_count;
    }
}

} // namespace detail

// Builds the cone-type automaton and verifies it against BFS distances up
// to `check_length`; a mismatch raises InputError with the counterexample.
inline ConeTypeTable build_geodesic_recognizer(const VertexGroupOracle& oracle, int check_length,
                                               const Caps& caps = {}) {
    const GeneratorSet& gens = oracle.generators();
    std::size_t nl = gens.size();
    ConeTypeTable table;
    table.check_length = check_length;

    if (oracle.kind() == GroupKind::FreeOfRank) {
        // closed form: the cone type of a nonempty reduced word is
        // determined by its last letter
        std::vector<std::int32_t> class_of_letter(nl, -1);
        table.empty_class = 0;
        int c = 1;
        for (std::size_t l = 0; l < nl; ++l)
            if (static_cast<LetterId>(l) != gens.identity()) class_of_letter[l] = c++;
        table.num_classes = c;
        table.next.assign(static_cast<std::size_t>(c), std::vector<std::int32_t>(nl, -1));
        for (std::size_t l = 0; l < nl; ++l) {
            if (static_cast<LetterId>(l) == gens.identity()) continue;
            table.next[0][l] = class_of_letter[l];
            for (std::size_t k = 0; k < nl; ++k) {
                if (static_cast<LetterId>(k) == gens.identity()) continue;
                if (gens.inverse(static_cast<LetterId>(k)) == static_cast<LetterId>(l)) continue;
                table.next[static_cast<std::size_t>(class_of_letter[k])][l] = class_of_letter[l];
            }
        }
    } else {
        // whole group; diameter < order
        CayleyBall ball = cayley_ball(oracle, static_cast<int>(oracle.order()), caps);
        std::vector<std::int32_t> block = detail::minimize_cone_classes(ball, nl);
        std::int32_t num = 0;
        for (auto b : block) num = std::max(num, b + 1);
        table.num_classes = num;
        table.empty_class = block[0];
        table.next.assign(static_cast<std::size_t>(num), std::vector<std::int32_t>(nl, -1));
        for (std::size_t g = 0; g < ball.elems.size(); ++g) {
            for (std::size_t l = 0; l < nl; ++l) {
                std::int32_t t = ball.step[g][l];
                if (t < 0 || ball.dist[static_cast<std::size_t>(t)] != ball.dist[g] + 1) continue;
                std::int32_t target = block[static_cast<std::size_t>(t)];
                std::int32_t& slot = table.next[static_cast<std::size_t>(block[g])][l];
                if (slot >= 0 && slot != target)
                    throw InternalError("cone-type classes are not transition-consistent");
                slot = target;
            }
        }
    }

    // verification sweep: accepted <=> |w| = d_B(1, pi(w)), up to check_length
    if (check_length > 0) {
        CayleyBall ball = cayley_ball(
            oracle,
            oracle.kind() == GroupKind::FiniteTable ? static_cast<int>(oracle.order()) : check_length,
            caps);
        struct Frame {
            int cls;
            std::int32_t elem;
            Word word;
        };
        std::vector<Frame> stack{{table.empty_class, 0, Word{}}};
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            if (static_cast<int>(f.word.size()) >= check_length) continue;
            for (std::size_t l = 0; l < nl; ++l) {
                std::int32_t t = ball.step[static_cast<std::size_t>(f.elem)][l];
                bool geo = t >= 0 && ball.dist[static_cast<std::size_t>(t)] ==
                                         ball.dist[static_cast<std::size_t>(f.elem)] + 1;
                std::int32_t c = table.next[static_cast<std::size_t>(f.cls)][l];
                if (geo != (c >= 0)) {
                    Word bad = f.word;
                    bad.push_back(static_cast<LetterId>(l));
                    throw InputError("geodesic recognizer mismatch at word '" +
                                     gens.format_word(bad) + "'");
                }
                if (geo) {
                    Word w = f.word;
                    w.push_back(static_cast<LetterId>(l));
                    stack.push_back({c, t, std::move(w)});
                }
            }
        }
    }
    return table;
}

} // namespace gogauto
