// word.hpp -- letters, words and symmetric generating sets.
//
// A word is a sequence of letter ids into some alphabet.  Generating sets
// are symmetric (closed under the inverse involution) and carry a
// distinguished identity letter, so the induced Cayley metric is genuine.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"

namespace gogauto {

using LetterId = std::int32_t;
using Word = std::vector<LetterId>;

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 0x5bd1e995;
        for (LetterId x : w) h = hash_combine(h, static_cast<std::size_t>(x) + 1);
        return h;
    }
};

// Shortlex with respect to the declaration order of letter ids.
inline bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// A finite symmetric generating set.  Letter ids index `names`; `inverse`
// is an involution on ids and `identity` evaluates to the group identity
// (and is its own inverse).
class GeneratorSet {
public:
    GeneratorSet() = default;

    LetterId add_letter(std::string name) {
        names_.push_back(std::move(name));
        inverse_.push_back(static_cast<LetterId>(names_.size()) - 1);
        return static_cast<LetterId>(names_.size()) - 1;
    }

    // Adds a generator together with its formal inverse letter `<name>'`.
    LetterId add_generator_pair(const std::string& name) {
        LetterId g = add_letter(name);
        LetterId gi = add_letter(name + "'");
        pair_letters(g, gi);
        return g;
    }

    void pair_letters(LetterId a, LetterId b) {
        inverse_[static_cast<std::size_t>(a)] = b;
        inverse_[static_cast<std::size_t>(b)] = a;
    }

    void set_identity(LetterId id) { identity_ = id; }

    LetterId identity() const { return identity_; }
    LetterId inverse(LetterId a) const { return inverse_[static_cast<std::size_t>(a)]; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(LetterId a) const { return names_[static_cast<std::size_t>(a)]; }

    LetterId find(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<LetterId>(i);
        return -1;
    }

    // Parses one token: an exact letter name, else a name with trailing
    // apostrophes each applying the inverse involution.
    LetterId parse_letter(const std::string& token) const {
        LetterId direct = find(token);
        if (direct >= 0) return direct;
        std::string base = token;
        int primes = 0;
        while (!base.empty() && base.back() == '\'') {
            base.pop_back();
            ++primes;
        }
        LetterId l = find(base);
        if (l < 0) throw InputError("unknown letter '" + token + "'");
        for (int i = 0; i < primes; ++i) l = inverse(l);
        return l;
    }

    Word parse_word(const std::string& text) const {
        Word w;
        std::string token;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            char c = i < text.size() ? text[i] : ' ';
            if (c == ' ' || c == '\t') {
                if (!token.empty()) {
                    w.push_back(parse_letter(token));
                    token.clear();
                }
            } else {
                token.push_back(c);
            }
        }
        return w;
    }

    std::string format_word(const Word& w) const {
        if (w.empty()) return "ε";
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back(' ');
            out += name(w[i]);
        }
        return out;
    }

    Word invert_word(const Word& w) const {
        Word out;
        out.reserve(w.size());
        for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
        return out;
    }

    // involution + self-inverse identity; throws InternalError on violation
    void validate() const {
        if (identity_ < 0 || static_cast<std::size_t>(identity_) >= names_.size())
            throw InternalError("generator set has no identity letter");
        if (inverse_[static_cast<std::size_t>(identity_)] != identity_)
            throw InternalError("identity letter is not self-inverse");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            LetterId j = inverse_[i];
            if (j < 0 || static_cast<std::size_t>(j) >= names_.size() ||
                inverse_[static_cast<std::size_t>(j)] != static_cast<LetterId>(i))
                throw InternalError("inverse pairing is not an involution");
        }
    }

private:
    std::vector<std::string> names_;
    std::vector<LetterId> inverse_;
    LetterId identity_ = -1;
};

} // namespace gogauto
