// Independent semantic models of the fixture groups, used as oracles by
// the tests.  None of them touch the normal-form engine: the free product
// works with alternating syllable strings, BS(1,2) with exact affine maps
// on dyadic rationals, and F2 x Z with a reduced word plus an integer.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gogauto/alphabet.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/system.hpp"

namespace oracles {

using gogauto::LetterId;
using gogauto::LetterKind;
using gogauto::Word;

// ---------------------------------------------------------------- Z/2 * Z/3
// Elements are alternating strings over {a} and {b, b^2}: entry -1 is a,
// entries 1/2 are powers of b.
struct ModularElem {
    std::vector<int> syl;

    bool operator==(const ModularElem& o) const { return syl == o.syl; }
    std::string key() const {
        std::string k;
        for (int s : syl) k += std::to_string(s + 1) + ".";
        return k;
    }
};

struct ModularOracle {
    using Elem = ModularElem;

    static Elem identity() { return {}; }

    static void mul_a(Elem& e) {
        if (!e.syl.empty() && e.syl.back() == -1)
            e.syl.pop_back();
        else
            e.syl.push_back(-1);
    }

    static void mul_b(Elem& e, int k) {
        k %= 3;
        if (k == 0) return;
        if (!e.syl.empty() && e.syl.back() > 0) {
            int m = (e.syl.back() + k) % 3;
            e.syl.pop_back();
            if (m != 0) e.syl.push_back(m);
        } else {
            e.syl.push_back(k);
        }
    }

    static Elem mul(Elem e, const Elem& f) {
        for (int s : f.syl) {
            if (s == -1)
                mul_a(e);
            else
                mul_b(e, s);
        }
        return e;
    }

    static Elem inverse(const Elem& e) {
        Elem r;
        for (auto it = e.syl.rbegin(); it != e.syl.rend(); ++it)
            r.syl.push_back(*it == -1 ? -1 : 3 - *it);
        return r;
    }
};

// ------------------------------------------------------------------ BS(1,2)
// q |-> q * 2^scale + add, add a dyadic rational num / 2^exp.  Words act
// left to right: appending a letter post-composes its map.
struct AffineElem {
    int scale = 0;
    std::int64_t num = 0;
    int exp = 0;

    void normalize() {
        if (num == 0) {
            exp = 0;
            return;
        }
        while (exp > 0 && num % 2 == 0) {
            num /= 2;
            --exp;
        }
    }

    bool operator==(const AffineElem& o) const {
        return scale == o.scale && num == o.num && exp == o.exp;
    }
    std::string key() const {
        return std::to_string(scale) + "|" + std::to_string(num) + "|" + std::to_string(exp);
    }
};

struct AffineOracle {
    using Elem = AffineElem;

    static Elem identity() { return {}; }

    // outer(inner(q)): scales add, adds combine over a common denominator
    static Elem compose(const Elem& outer, const Elem& inner) {
        Elem r;
        r.scale = outer.scale + inner.scale;
        int e_in = inner.exp - outer.scale; // 2^outer.scale * inner.add
        int E = std::max({e_in, outer.exp, 0});
        r.num = inner.num * (std::int64_t{1} << (E - e_in < 63 ? E - e_in : 0)) // guarded below
                + outer.num * (std::int64_t{1} << (E - outer.exp));
        // recompute carefully when e_in is negative
        r.num = 0;
        std::int64_t a = inner.num;
        int ea = e_in;
        if (ea < 0) {
            a <<= -ea;
            ea = 0;
        }
        std::int64_t b = outer.num;
        int eb = outer.exp;
        int common = std::max(ea, eb);
        r.num = (a << (common - ea)) + (b << (common - eb));
        r.exp = common;
        r.normalize();
        return r;
    }

    static Elem mul(const Elem& g, const Elem& h) { return compose(h, g); } // g then h

    static Elem gen_a(int sign) { return {0, sign, 0}; }
    static Elem gen_t(int sign) { return {sign, 0, 0}; }

    static Elem inverse(const Elem& e) {
        // (q*2^s + c)^-1 : q |-> (q - c) * 2^-s
        Elem r;
        r.scale = -e.scale;
        r.num = -e.num;
        r.exp = e.exp + e.scale; // -c * 2^{-s} = -num / 2^{exp + s}
        if (r.exp < 0) {
            r.num <<= -r.exp;
            r.exp = 0;
        }
        r.normalize();
        return r;
    }
};

// ------------------------------------------------------------------- F2 x Z
struct ProductElem {
    std::vector<int> word; // +-1 = x, +-2 = y, reduced
    int z = 0;

    bool operator==(const ProductElem& o) const { return word == o.word && z == o.z; }
    std::string key() const {
        std::string k = std::to_string(z) + "|";
        for (int s : word) k += std::to_string(s + 3) + ".";
        return k;
    }
};

struct ProductOracle {
    using Elem = ProductElem;

    static Elem identity() { return {}; }

    static void mul_letter(Elem& e, int gen) {
        if (!e.word.empty() && e.word.back() == -gen)
            e.word.pop_back();
        else
            e.word.push_back(gen);
    }

    static Elem mul(Elem e, const Elem& f) {
        for (int s : f.word) mul_letter(e, s);
        e.z += f.z;
        return e;
    }

    static Elem inverse(const Elem& e) {
        Elem r;
        r.z = -e.z;
        for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) r.word.push_back(-*it);
        return r;
    }
};

// ------------------------------------------------- letter-value assignment
// Values of the structure alphabet's letters under each oracle, with
// transversal letters resolved by folding their representative words
// through the per-vertex letter values.

template <class O>
std::vector<typename O::Elem> assign_letter_values(
    const gogauto::GogSystem& sys,
    const std::vector<std::vector<typename O::Elem>>& vertex_letter_values,
    const std::vector<typename O::Elem>& edge_values) {
    using Elem = typename O::Elem;
    const auto& a = sys.alphabet;
    const auto& g = sys.gog;
    auto fold_vertex_word = [&](int vertex, const Word& w) {
        Elem e = O::identity();
        for (LetterId l : w)
            e = O::mul(e, vertex_letter_values[static_cast<std::size_t>(vertex)]
                              [static_cast<std::size_t>(l)]);
        return e;
    };
    std::vector<Elem> out(a.size(), O::identity());
    for (std::size_t l = 0; l < a.size(); ++l) {
        const gogauto::StructureLetter& info = a.info(static_cast<LetterId>(l));
        switch (info.kind) {
        case LetterKind::Base:
            out[l] = vertex_letter_values[static_cast<std::size_t>(g.base_vertex())]
                                         [static_cast<std::size_t>(info.base_letter)];
            break;
        case LetterKind::Edge:
            out[l] = edge_values[static_cast<std::size_t>(info.edge)];
            break;
        case LetterKind::Transversal:
        case LetterKind::TransversalInv: {
            int v = g.edge_start(info.edge);
            Elem e = fold_vertex_word(
                v, g.edge_subgroup(info.edge).transversal_words()[static_cast<std::size_t>(info.k)]);
            out[l] = info.kind == LetterKind::Transversal ? e : O::inverse(e);
            break;
        }
        }
    }
    return out;
}

inline std::vector<ModularOracle::Elem> modular_letter_values(const gogauto::GogSystem& sys) {
    using E = ModularOracle::Elem;
    E id{}, ea{{-1}}, eb{{1}}, eb2{{2}};
    // vertex 0 = u (letters 1, a, a'), vertex 1 = v (letters 1, b, b')
    std::vector<std::vector<E>> vertex{{id, ea, ea}, {id, eb, eb2}};
    std::vector<E> edges{id, id}; // spanning-tree edge pair evaluates trivially
    return assign_letter_values<ModularOracle>(sys, vertex, edges);
}

inline std::vector<AffineOracle::Elem> bs12_letter_values(const gogauto::GogSystem& sys) {
    using E = AffineOracle::Elem;
    std::vector<std::vector<E>> vertex{
        {AffineOracle::identity(), AffineOracle::gen_a(+1), AffineOracle::gen_a(-1)}};
    std::vector<E> edges{AffineOracle::gen_t(+1), AffineOracle::gen_t(-1)};
    return assign_letter_values<AffineOracle>(sys, vertex, edges);
}

inline std::vector<ProductOracle::Elem> f2xz_letter_values(const gogauto::GogSystem& sys) {
    using E = ProductOracle::Elem;
    E id{}, x{{1}, 0}, xi{{-1}, 0}, y{{2}, 0}, yi{{-2}, 0}, t{{}, 1}, ti{{}, -1};
    std::vector<std::vector<E>> vertex{{id, x, xi, y, yi}};
    std::vector<E> edges{t, ti};
    return assign_letter_values<ProductOracle>(sys, vertex, edges);
}

} // namespace oracles
