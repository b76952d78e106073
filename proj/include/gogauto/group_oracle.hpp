// group_oracle.hpp -- computable vertex groups: finite groups given by a
// multiplication table or permutation generators, and free groups of
// finite rank.  Both kinds expose exact multiplication, canonical forms,
// the word metric d_B and geodesic enumeration on balls.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

enum class GroupKind { FiniteTable, FreeOfRank };

// Canonical element representation: a single table index for finite
// groups, a reduced generator word for free groups.
struct CanonElem {
    std::vector<std::int32_t> v;

    bool operator==(const CanonElem& o) const { return v == o.v; }
    bool operator!=(const CanonElem& o) const { return v != o.v; }
};

struct CanonElemHash {
    std::size_t operator()(const CanonElem& e) const {
        std::size_t h = 0x9747b28c;
        for (auto x : e.v) h = hash_combine(h, static_cast<std::size_t>(x) + 2);
        return h;
    }
};

// Frees a word over free-group letters of adjacent inverse pairs.  Letters
// evaluating to the identity are dropped first.  The result is the unique
// reduced word; reducing twice is a fixpoint.
inline Word free_reduce(const GeneratorSet& gens, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (LetterId a : w) {
        if (a < 0 || static_cast<std::size_t>(a) >= gens.size())
            throw InputError("free_reduce: unknown letter id " + std::to_string(a));
        if (a == gens.identity()) continue;
        if (!out.empty() && gens.inverse(out.back()) == a)
            out.pop_back();
        else
            out.push_back(a);
    }
    return out;
}

using Permutation = std::vector<std::int32_t>;

inline Permutation perm_compose(const Permutation& a, const Permutation& b) {
    // apply a, then b
    Permutation c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[static_cast<std::size_t>(a[i])];
    return c;
}

inline Permutation perm_inverse(const Permutation& a) {
    Permutation c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[static_cast<std::size_t>(a[i])] = static_cast<std::int32_t>(i);
    return c;
}

class VertexGroupOracle {
public:
    // Finite group generated by permutations.  `gen_names[i]` acts as
    // `perms[i]`; inverse letters and the identity letter are added
    // automatically.  The element table is built by closure.
    static VertexGroupOracle finite_from_perms(const std::vector<std::string>& gen_names,
                                               const std::vector<Permutation>& perms,
                                               const Caps& caps = {}) {
        if (gen_names.size() != perms.size())
            throw InputError("finite_from_perms: generator/permutation count mismatch");
        VertexGroupOracle o;
        o.kind_ = GroupKind::FiniteTable;
        LetterId id = o.gens_.add_letter("1");
        o.gens_.set_identity(id);
        std::size_t points = perms.empty() ? 1 : perms[0].size();
        std::vector<Permutation> letter_perm;
        letter_perm.resize(1);
        letter_perm[0].resize(points);
        for (std::size_t i = 0; i < points; ++i) letter_perm[0][i] = static_cast<std::int32_t>(i);
        for (std::size_t i = 0; i < perms.size(); ++i) {
            if (perms[i].size() != points)
                throw InputError("finite_from_perms: permutation degree mismatch");
            o.gens_.add_generator_pair(gen_names[i]);
            letter_perm.push_back(perms[i]);
            letter_perm.push_back(perm_inverse(perms[i]));
        }
        o.build_finite_by_closure(letter_perm, caps);
        return o;
    }

    // Finite group from an explicit multiplication table.  Row g, column h
    // holds the index of g*h; element 0 must be the identity.  `gen_elems`
    // maps generator names to element indices.
    static VertexGroupOracle finite_from_table(const std::vector<std::vector<std::int32_t>>& table,
                                               const std::vector<std::string>& gen_names,
                                               const std::vector<std::int32_t>& gen_elems,
                                               const Caps& caps = {}) {
        std::size_t n = table.size();
        if (n == 0) throw InputError("finite_from_table: empty table");
        for (const auto& row : table) {
            if (row.size() != n) throw InputError("finite_from_table: table is not square");
            for (auto x : row)
                if (x < 0 || static_cast<std::size_t>(x) >= n)
                    throw InputError("finite_from_table: entry out of range");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (table[0][i] != static_cast<std::int32_t>(i) || table[i][0] != static_cast<std::int32_t>(i))
                throw InputError("finite_from_table: element 0 is not an identity");
        }
        // Latin-square check: rows and columns are permutations.
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<char> seen_row(n, 0), seen_col(n, 0);
            for (std::size_t j = 0; j < n; ++j) {
                if (seen_row[static_cast<std::size_t>(table[i][j])]++)
                    throw InputError("finite_from_table: row " + std::to_string(i) + " repeats an entry");
                if (seen_col[static_cast<std::size_t>(table[j][i])]++)
                    throw InputError("finite_from_table: column " + std::to_string(i) + " repeats an entry");
            }
        }
        // exhaustive associativity check (finite kind contract)
        std::size_t assoc_budget = caps.coset_rows;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) {
                    if (assoc_budget-- == 0)
                        throw CapacityError("finite_from_table: associativity check exceeded cap");
                    auto ab = static_cast<std::size_t>(table[a][b]);
                    auto bc = static_cast<std::size_t>(table[b][c]);
                    if (table[ab][c] != table[a][bc])
                        throw InputError("finite_from_table: table is not associative at (" +
                                         std::to_string(a) + "," + std::to_string(b) + "," +
                                         std::to_string(c) + ")");
                }

        if (gen_names.size() != gen_elems.size())
            throw InputError("finite_from_table: generator name/element count mismatch");
        VertexGroupOracle o;
        o.kind_ = GroupKind::FiniteTable;
        LetterId id = o.gens_.add_letter("1");
        o.gens_.set_identity(id);
        o.order_ = n;

        std::vector<std::int32_t> inv(n, -1);
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t h = 0; h < n; ++h)
                if (table[g][h] == 0) inv[g] = static_cast<std::int32_t>(h);
        for (std::size_t g = 0; g < n; ++g)
            if (inv[g] < 0) throw InputError("finite_from_table: element without inverse");

        std::vector<std::int32_t> letter_elem;
        letter_elem.push_back(0);
        for (std::size_t i = 0; i < gen_names.size(); ++i) {
            std::int32_t e = gen_elems[i];
            if (e < 0 || static_cast<std::size_t>(e) >= n)
                throw InputError("finite_from_table: generator element index out of range");
            o.gens_.add_generator_pair(gen_names[i]);
            letter_elem.push_back(e);
            letter_elem.push_back(inv[static_cast<std::size_t>(e)]);
        }
        o.act_.assign(o.gens_.size(), std::vector<std::int32_t>(n));
        for (std::size_t l = 0; l < o.gens_.size(); ++l)
            for (std::size_t g = 0; g < n; ++g)
                o.act_[l][g] = table[g][static_cast<std::size_t>(letter_elem[l])];
        o.check_generation();
        o.build_canonical_words();
        return o;
    }

    // Free group with the given basis letter names (rank = count).
    static VertexGroupOracle free_group(const std::vector<std::string>& letter_names) {
        if (letter_names.empty()) throw InputError("free_group: rank must be positive");
        VertexGroupOracle o;
        o.kind_ = GroupKind::FreeOfRank;
        LetterId id = o.gens_.add_letter("1");
        o.gens_.set_identity(id);
        for (const auto& n : letter_names) o.gens_.add_generator_pair(n);
        o.rank_ = letter_names.size();
        return o;
    }

    GroupKind kind() const { return kind_; }
    const GeneratorSet& generators() const { return gens_; }
    std::size_t rank() const { return rank_; }
    std::size_t order() const { return order_; } // 0 for free kind

    CanonElem identity_elem() const {
        if (kind_ == GroupKind::FiniteTable) return CanonElem{{0}};
        return CanonElem{{}};
    }

    bool is_identity(const CanonElem& e) const {
        if (kind_ == GroupKind::FiniteTable) return e.v[0] == 0;
        return e.v.empty();
    }

    CanonElem multiply_letter(const CanonElem& g, LetterId a) const {
        if (a < 0 || static_cast<std::size_t>(a) >= gens_.size())
            throw InputError("oracle: unknown letter id " + std::to_string(a));
        if (kind_ == GroupKind::FiniteTable)
            return CanonElem{{act_[static_cast<std::size_t>(a)][static_cast<std::size_t>(g.v[0])]}};
        CanonElem r = g;
        if (a == gens_.identity()) return r;
        if (!r.v.empty() && gens_.inverse(static_cast<LetterId>(r.v.back())) == a)
            r.v.pop_back();
        else
            r.v.push_back(a);
        return r;
    }

    // oracle_multiply: canonical form of g * pi(w)
    CanonElem multiply(const CanonElem& g, const Word& w) const {
        CanonElem r = g;
        for (LetterId a : w) r = multiply_letter(r, a);
        return r;
    }

    CanonElem canonical_of_word(const Word& w) const { return multiply(identity_elem(), w); }

    CanonElem multiply_elem(const CanonElem& g, const CanonElem& h) const {
        return multiply(g, canonical_word(h));
    }

    CanonElem inverse_elem(const CanonElem& g) const {
        if (kind_ == GroupKind::FiniteTable) {
            return CanonElem{{inverse_[static_cast<std::size_t>(g.v[0])]}};
        }
        CanonElem r;
        r.v.reserve(g.v.size());
        for (auto it = g.v.rbegin(); it != g.v.rend(); ++it)
            r.v.push_back(gens_.inverse(static_cast<LetterId>(*it)));
        return r;
    }

    // The canonical word: shortlex-least (finite) resp. reduced (free).
    Word canonical_word(const CanonElem& g) const {
        if (kind_ == GroupKind::FiniteTable) return canon_word_[static_cast<std::size_t>(g.v[0])];
        Word w;
        w.reserve(g.v.size());
        for (auto x : g.v) w.push_back(static_cast<LetterId>(x));
        return w;
    }

    // d_B(1, g); canonical words are shortest, so this is their length.
    int metric_length(const CanonElem& g) const {
        if (kind_ == GroupKind::FiniteTable)
            return static_cast<int>(canon_word_[static_cast<std::size_t>(g.v[0])].size());
        return static_cast<int>(g.v.size());
    }

private:
    void build_finite_by_closure(const std::vector<Permutation>& letter_perm, const Caps& caps) {
        auto key = [](const Permutation& p) {
            std::string k;
            for (auto x : p) {
                k += std::to_string(x);
                k.push_back(',');
            }
            return k;
        };
        std::vector<Permutation> elems{letter_perm[0]};
        std::unordered_map<std::string, std::int32_t> index{{key(letter_perm[0]), 0}};
        act_.assign(letter_perm.size(), {});
        for (std::size_t g = 0; g < elems.size(); ++g) {
            for (std::size_t l = 0; l < letter_perm.size(); ++l) {
                Permutation p = perm_compose(elems[g], letter_perm[l]);
                auto k = key(p);
                auto it = index.find(k);
                std::int32_t idx;
                if (it == index.end()) {
                    idx = static_cast<std::int32_t>(elems.size());
                    if (elems.size() >= caps.coset_rows)
                        throw CapacityError("finite group closure exceeded element cap");
                    elems.push_back(std::move(p));
                    index.emplace(std::move(k), idx);
                } else {
                    idx = it->second;
                }
                act_[l].push_back(idx);
            }
        }
        order_ = elems.size();
        build_canonical_words();
    }

    void check_generation() {
        std::vector<char> seen(order_, 0);
        seen[0] = 1;
        std::deque<std::int32_t> queue{0};
        std::size_t count = 1;
        while (!queue.empty()) {
            std::int32_t g = queue.front();
            queue.pop_front();
            for (std::size_t l = 0; l < gens_.size(); ++l) {
                std::int32_t h = act_[l][static_cast<std::size_t>(g)];
                if (!seen[static_cast<std::size_t>(h)]) {
                    seen[static_cast<std::size_t>(h)] = 1;
                    ++count;
                    queue.push_back(h);
                }
            }
        }
        if (count != order_)
            throw InputError("finite group table: listed generators do not generate the group");
    }

    // BFS from the identity in letter order: first visit gives the
    // shortlex-least word for each element.
    void build_canonical_words() {
        canon_word_.assign(order_, Word{});
        inverse_.assign(order_, -1);
        std::vector<char> seen(order_, 0);
        seen[0] = 1;
        std::deque<std::int32_t> queue{0};
        while (!queue.empty()) {
            std::int32_t g = queue.front();
            queue.pop_front();
            for (std::size_t l = 0; l < gens_.size(); ++l) {
                std::int32_t h = act_[l][static_cast<std::size_t>(g)];
                if (!seen[static_cast<std::size_t>(h)]) {
                    seen[static_cast<std::size_t>(h)] = 1;
                    canon_word_[static_cast<std::size_t>(h)] = canon_word_[static_cast<std::size_t>(g)];
                    canon_word_[static_cast<std::size_t>(h)].push_back(static_cast<LetterId>(l));
                    queue.push_back(h);
                }
            }
        }
        for (std::size_t g = 0; g < order_; ++g) {
            CanonElem inv = canonical_of_word(gens_.invert_word(canon_word_[g]));
            inverse_[g] = inv.v[0];
            if (multiply(CanonElem{{static_cast<std::int32_t>(g)}}, canon_word_[static_cast<std::size_t>(inv.v[0])]).v[0] != 0)
                throw InternalError("finite oracle: inverse computation failed");
        }
    }

    GroupKind kind_ = GroupKind::FreeOfRank;
    GeneratorSet gens_;
    std::size_t rank_ = 0;
    std::size_t order_ = 0;
    std::vector<std::vector<std::int32_t>> act_; // [letter][elem] -> elem
    std::vector<Word> canon_word_;
    std::vector<std::int32_t> inverse_;
};

// A radius-bounded piece of the Cayley graph cay(G, B) with exact BFS
// distances and the letter-labelled edge structure.
struct CayleyBall {
    std::vector<CanonElem> elems; // BFS order; elems[0] = identity
    std::unordered_map<CanonElem, std::int32_t, CanonElemHash> index;
    std::vector<int> dist;
    std::vector<std::vector<std::int32_t>> step; // [elem][letter] -> index, -1 = outside
    int radius = 0;

    std::int32_t find(const CanonElem& e) const {
        auto it = index.find(e);
        return it == index.end() ? -1 : it->second;
    }
};

inline CayleyBall cayley_ball(const VertexGroupOracle& oracle, int radius, const Caps& caps = {}) {
    if (radius < 0) throw InputError("cayley_ball: negative radius");
    CayleyBall ball;
    ball.radius = radius;
    ball.elems.push_back(oracle.identity_elem());
    ball.index.emplace(ball.elems[0], 0);
    ball.dist.push_back(0);
    std::size_t nl = oracle.generators().size();
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
        ball.step.emplace_back(nl, -1);
        if (ball.dist[i] == radius) continue;
        for (std::size_t l = 0; l < nl; ++l) {
            CanonElem next = oracle.multiply_letter(ball.elems[i], static_cast<LetterId>(l));
            auto it = ball.index.find(next);
            std::int32_t idx;
            if (it == ball.index.end()) {
                idx = static_cast<std::int32_t>(ball.elems.size());
                if (ball.elems.size() >= caps.ball_elements)
                    throw CapacityError("cayley_ball exceeded element cap");
                ball.index.emplace(next, idx);
                ball.elems.push_back(std::move(next));
                ball.dist.push_back(ball.dist[i] + 1);
            } else {
                idx = it->second;
            }
            ball.step[i][l] = idx;
        }
    }
    // interior edges only were filled for non-frontier elements; fill the
    // frontier rows where the neighbour happens to lie inside the ball
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
        if (ball.dist[i] != radius) continue;
        for (std::size_t l = 0; l < nl; ++l) {
            CanonElem next = oracle.multiply_letter(ball.elems[i], static_cast<LetterId>(l));
            ball.step[i][l] = ball.find(next);
        }
    }
    return ball;
}

// All geodesic words of length <= max_len, in shortlex order.
inline std::vector<Word> enumerate_geodesic_words(const VertexGroupOracle& oracle, int max_len,
                                                  const Caps& caps = {}) {
    CayleyBall ball = cayley_ball(oracle, max_len, caps);
    std::vector<Word> out;
    std::vector<std::pair<Word, std::int32_t>> layer{{Word{}, 0}};
    out.push_back(Word{});
    for (int len = 0; len < max_len; ++len) {
        std::vector<std::pair<Word, std::int32_t>> next_layer;
        for (const auto& [w, e] : layer) {
            for (std::size_t l = 0; l < oracle.generators().size(); ++l) {
                std::int32_t n = ball.step[static_cast<std::size_t>(e)][l];
                if (n < 0 || ball.dist[static_cast<std::size_t>(n)] != len + 1) continue;
                Word nw = w;
                nw.push_back(static_cast<LetterId>(l));
                if (out.size() >= caps.enum_words)
                    throw CapacityError("geodesic enumeration exceeded word cap");
                out.push_back(nw);
                next_layer.emplace_back(std::move(nw), n);
            }
        }
        layer = std::move(next_layer);
        if (layer.empty()) break;
    }
    return out;
}

// Number of geodesic words representing each ball element.
inline std::vector<std::uint64_t> count_geodesic_words(const VertexGroupOracle& oracle,
                                                       const CayleyBall& ball) {
    std::vector<std::uint64_t> count(ball.elems.size(), 0);
    count[0] = 1;
    // BFS order is sorted by distance, so a forward sweep is a valid DP
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
        for (std::size_t l = 0; l < oracle.generators().size(); ++l) {
            std::int32_t n = ball.step[i][l];
            if (n < 0 || ball.dist[static_cast<std::size_t>(n)] != ball.dist[i] + 1) continue;
            count[static_cast<std::size_t>(n)] += count[i];
        }
    }
    return count;
}

} // namespace gogauto
