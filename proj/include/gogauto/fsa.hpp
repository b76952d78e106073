// fsa.hpp -- finite state automata over an abstract letter alphabet:
// acceptance, trimming, shortlex enumeration, text and DOT export.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

struct Fsa {
    std::size_t alphabet_size = 0;
    std::vector<std::string> state_names;
    int initial = -1; // -1: empty automaton
    std::vector<char> final_state;
    std::vector<std::vector<std::pair<LetterId, std::int32_t>>> edges; // sorted by letter

    std::size_t num_states() const { return state_names.size(); }

    int add_state(std::string name, bool is_final) {
        state_names.push_back(std::move(name));
        final_state.push_back(is_final ? 1 : 0);
        edges.emplace_back();
        return static_cast<int>(state_names.size()) - 1;
    }

    void add_edge(int from, LetterId label, int to) {
        auto& row = edges[static_cast<std::size_t>(from)];
        row.emplace_back(label, to);
        std::sort(row.begin(), row.end());
    }

    // deterministic step; -1 if no edge (asserts determinism per label)
    std::int32_t next(int state, LetterId label) const {
        std::int32_t found = -1;
        for (const auto& [l, t] : edges[static_cast<std::size_t>(state)]) {
            if (l != label) continue;
            if (found >= 0) throw InternalError("next() on a nondeterministic state");
            found = t;
        }
        return found;
    }

    bool deterministic() const {
        for (const auto& row : edges)
            for (std::size_t i = 1; i < row.size(); ++i)
                if (row[i].first == row[i - 1].first) return false;
        return true;
    }

    std::size_t num_edges() const {
        std::size_t n = 0;
        for (const auto& row : edges) n += row.size();
        return n;
    }
};

// Nondeterministic acceptance by subset walk.
inline bool fsa_accept(const Fsa& m, const Word& w) {
    if (m.initial < 0) return false;
    for (LetterId a : w)
        if (a < 0 || static_cast<std::size_t>(a) >= m.alphabet_size)
            throw InputError("fsa_accept: letter outside the automaton alphabet");
    std::set<std::int32_t> cur{m.initial};
    for (LetterId a : w) {
        std::set<std::int32_t> nxt;
        for (std::int32_t s : cur)
            for (const auto& [l, t] : m.edges[static_cast<std::size_t>(s)])
                if (l == a) nxt.insert(t);
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    for (std::int32_t s : cur)
        if (m.final_state[static_cast<std::size_t>(s)]) return true;
    return false;
}

// Restriction to accessible and live states; the language is unchanged.
inline Fsa fsa_trim(const Fsa& m) {
    std::size_t n = m.num_states();
    std::vector<char> accessible(n, 0), live(n, 0);
    if (m.initial >= 0) {
        std::vector<std::int32_t> stack{m.initial};
        accessible[static_cast<std::size_t>(m.initial)] = 1;
        while (!stack.empty()) {
            std::int32_t s = stack.back();
            stack.pop_back();
            for (const auto& [l, t] : m.edges[static_cast<std::size_t>(s)])
                if (!accessible[static_cast<std::size_t>(t)]) {
                    accessible[static_cast<std::size_t>(t)] = 1;
                    stack.push_back(t);
                }
        }
    }
    std::vector<std::vector<std::int32_t>> rev(n);
    std::vector<std::int32_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& [l, t] : m.edges[s]) rev[static_cast<std::size_t>(t)].push_back(static_cast<std::int32_t>(s));
        if (m.final_state[s]) {
            live[s] = 1;
            stack.push_back(static_cast<std::int32_t>(s));
        }
    }
    while (!stack.empty()) {
        std::int32_t s = stack.back();
        stack.pop_back();
        for (std::int32_t p : rev[static_cast<std::size_t>(s)])
            if (!live[static_cast<std::size_t>(p)]) {
                live[static_cast<std::size_t>(p)] = 1;
                stack.push_back(p);
            }
    }
    Fsa out;
    out.alphabet_size = m.alphabet_size;
    std::vector<std::int32_t> remap(n, -1);
    for (std::size_t s = 0; s < n; ++s)
        if (accessible[s] && live[s])
            remap[s] = out.add_state(m.state_names[s], m.final_state[s] != 0);
    if (m.initial >= 0 && remap[static_cast<std::size_t>(m.initial)] >= 0)
        out.initial = remap[static_cast<std::size_t>(m.initial)];
    for (std::size_t s = 0; s < n; ++s) {
        if (remap[s] < 0) continue;
        for (const auto& [l, t] : m.edges[s])
            if (remap[static_cast<std::size_t>(t)] >= 0)
                out.add_edge(remap[s], l, remap[static_cast<std::size_t>(t)]);
    }
    return out;
}

// Accepted words of length <= max_len in shortlex order.
inline std::vector<Word> fsa_enumerate(const Fsa& m, int max_len, const Caps& caps = {}) {
    std::vector<Word> out;
    if (max_len < 0) throw InputError("fsa_enumerate: negative length bound");
    Fsa t = fsa_trim(m);
    if (t.initial < 0) return out;
    struct Node {
        Word w;
        std::set<std::int32_t> states;
    };
    std::vector<Node> layer{{Word{}, {t.initial}}};
    auto harvest = [&](const Node& n) {
        for (std::int32_t s : n.states)
            if (t.final_state[static_cast<std::size_t>(s)]) {
                if (out.size() >= caps.enum_words)
                    throw CapacityError("fsa_enumerate exceeded output cap");
                out.push_back(n.w);
                return;
            }
    };
    harvest(layer[0]);
    for (int len = 0; len < max_len && !layer.empty(); ++len) {
        std::vector<Node> next_layer;
        for (const Node& node : layer) {
            for (LetterId a = 0; static_cast<std::size_t>(a) < t.alphabet_size; ++a) {
                std::set<std::int32_t> nxt;
                for (std::int32_t s : node.states)
                    for (const auto& [l, to] : t.edges[static_cast<std::size_t>(s)])
                        if (l == a) nxt.insert(to);
                if (nxt.empty()) continue;
                Node child{node.w, std::move(nxt)};
                child.w.push_back(a);
                harvest(child);
                next_layer.push_back(std::move(child));
            }
        }
        layer = std::move(next_layer);
    }
    return out;
}

inline std::string serialize_fsa(const Fsa& m) {
    std::ostringstream os;
    os << "fsa " << m.alphabet_size << "\n";
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        os << "state " << m.state_names[s];
        if (static_cast<int>(s) == m.initial) os << " initial";
        if (m.final_state[s]) os << " final";
        os << "\n";
    }
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (const auto& [l, t] : m.edges[s])
            os << "edge " << m.state_names[s] << " " << l << " " << m.state_names[static_cast<std::size_t>(t)] << "\n";
    return os.str();
}

// Parses the line-based text format back; labels are letter ids.
inline Fsa parse_fsa(const std::string& text) {
    Fsa m;
    std::istringstream is(text);
    std::string line;
    std::unordered_map<std::string, int> by_name;
    std::vector<std::tuple<std::string, LetterId, std::string>> pending;
    bool header = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "fsa") {
            ls >> m.alphabet_size;
            header = true;
        } else if (kw == "state") {
            std::string name, attr;
            ls >> name;
            int id = m.add_state(name, false);
            by_name[name] = id;
            while (ls >> attr) {
                if (attr == "initial") m.initial = id;
                else if (attr == "final") m.final_state[static_cast<std::size_t>(id)] = 1;
                else throw InputError("parse_fsa: unknown state attribute '" + attr + "'");
            }
        } else if (kw == "edge") {
            std::string from, to;
            LetterId label;
            ls >> from >> label >> to;
            pending.emplace_back(from, label, to);
        } else {
            throw InputError("parse_fsa: unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw InputError("parse_fsa: missing 'fsa' header");
    for (const auto& [from, label, to] : pending) {
        auto a = by_name.find(from), b = by_name.find(to);
        if (a == by_name.end() || b == by_name.end())
            throw InputError("parse_fsa: edge references unknown state");
        m.add_edge(a->second, label, b->second);
    }
    return m;
}

inline std::string export_dot(const Fsa& m, const std::vector<std::string>* letter_names = nullptr) {
    std::ostringstream os;
    os << "digraph fsa {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        os << "  n" << s << " [label=\"" << m.state_names[s] << "\""
           << (m.final_state[s] ? " shape=doublecircle" : " shape=circle");
        if (static_cast<int>(s) == m.initial) os << " penwidth=2";
        os << "];\n";
    }
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (const auto& [l, t] : m.edges[s]) {
            os << "  n" << s << " -> n" << t << " [label=\"";
            if (letter_names && static_cast<std::size_t>(l) < letter_names->size())
                os << (*letter_names)[static_cast<std::size_t>(l)];
            else
                os << l;
            os << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace gogauto
