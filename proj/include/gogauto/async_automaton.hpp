// async_automaton.hpp -- deterministic two-tape asynchronous automata.
//
// States fall into five classes: S_L and S_R (reading the left resp.
// right tape), S_L$ and S_R$ (one tape already ended), and the unique
// final state s$.  A-labelled edges from S_L ∪ S_R stay in S_L ∪ S_R and
// from S_X$ stay in S_X$; a $-edge from S_L lands in S_R$, from S_R in
// S_L$, and from S_L$ ∪ S_R$ in s$.  A pair (W_L, W_R) is accepted when
// some shuffle of (W_L$, W_R$) is; determinism plus the class discipline
// make at most one run possible, found here by configuration search.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/word.hpp"

namespace gogauto {

enum class TapeClass : std::uint8_t { L, R, LDollar, RDollar, Done };

inline const char* tape_class_name(TapeClass c) {
    switch (c) {
    case TapeClass::L: return "SL";
    case TapeClass::R: return "SR";
    case TapeClass::LDollar: return "SL$";
    case TapeClass::RDollar: return "SR$";
    case TapeClass::Done: return "S$";
    }
    return "?";
}

struct AsyncAutomaton {
    static constexpr LetterId DOLLAR = -1;

    std::size_t alphabet_size = 0;
    std::vector<std::string> state_names;
    std::vector<TapeClass> state_class;
    int initial = -1;
    std::vector<std::vector<std::pair<LetterId, std::int32_t>>> edges; // sorted, DOLLAR first

    std::size_t num_states() const { return state_names.size(); }

    int add_state(std::string name, TapeClass c) {
        state_names.push_back(std::move(name));
        state_class.push_back(c);
        edges.emplace_back();
        return static_cast<int>(state_names.size()) - 1;
    }

    void add_edge(int from, LetterId label, int to) {
        auto& row = edges[static_cast<std::size_t>(from)];
        for (const auto& [l, t] : row)
            if (l == label) throw InternalError("async automaton: duplicate transition label");
        row.emplace_back(label, to);
        std::sort(row.begin(), row.end());
    }

    std::int32_t next(int state, LetterId label) const {
        for (const auto& [l, t] : edges[static_cast<std::size_t>(state)])
            if (l == label) return t;
        return -1;
    }

    std::size_t num_edges() const {
        std::size_t n = 0;
        for (const auto& row : edges) n += row.size();
        return n;
    }

    // Which tape feeds a state, or neither (Done).
    static bool reads_left(TapeClass c) { return c == TapeClass::L || c == TapeClass::LDollar; }
    static bool reads_right(TapeClass c) { return c == TapeClass::R || c == TapeClass::RDollar; }
};

struct AsyncShapeReport {
    bool ok = true;
    std::vector<std::string> violations;
};

inline AsyncShapeReport async_validate_shape(const AsyncAutomaton& m) {
    AsyncShapeReport rep;
    auto fail = [&](std::size_t s, LetterId l, std::int32_t t, const std::string& why) {
        rep.ok = false;
        rep.violations.push_back("edge " + m.state_names[s] + " --" +
                                 (l == AsyncAutomaton::DOLLAR ? std::string("$") : std::to_string(l)) +
                                 "--> " + m.state_names[static_cast<std::size_t>(t)] + ": " + why);
    };
    int done_states = 0;
    for (TapeClass c : m.state_class)
        if (c == TapeClass::Done) ++done_states;
    if (done_states != 1) {
        rep.ok = false;
        rep.violations.push_back("expected exactly one final state s$, found " +
                                 std::to_string(done_states));
    }
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        TapeClass from = m.state_class[s];
        for (const auto& [l, t] : m.edges[s]) {
            TapeClass to = m.state_class[static_cast<std::size_t>(t)];
            if (l == AsyncAutomaton::DOLLAR) {
                if (from == TapeClass::L && to != TapeClass::RDollar)
                    fail(s, l, t, "$ from S_L must enter S_R$");
                if (from == TapeClass::R && to != TapeClass::LDollar)
                    fail(s, l, t, "$ from S_R must enter S_L$");
                if ((from == TapeClass::LDollar || from == TapeClass::RDollar) && to != TapeClass::Done)
                    fail(s, l, t, "$ from S_L$/S_R$ must enter s$");
                if (from == TapeClass::Done) fail(s, l, t, "no edges may leave s$");
            } else {
                if ((from == TapeClass::L || from == TapeClass::R) &&
                    !(to == TapeClass::L || to == TapeClass::R))
                    fail(s, l, t, "A-edge from S_L/S_R must stay in S_L ∪ S_R");
                if (from == TapeClass::LDollar && to != TapeClass::LDollar)
                    fail(s, l, t, "A-edge from S_L$ must stay in S_L$");
                if (from == TapeClass::RDollar && to != TapeClass::RDollar)
                    fail(s, l, t, "A-edge from S_R$ must stay in S_R$");
                if (from == TapeClass::Done) fail(s, l, t, "no edges may leave s$");
            }
        }
    }
    return rep;
}

// One shuffle of (W_L$, W_R$): the merged symbols with their tape tags.
struct Shuffle {
    Word merged;            // DOLLAR entries for the two terminators
    std::vector<char> tape; // 'L' or 'R' per position
};

namespace detail {

struct AsyncConfig {
    std::int32_t state;
    std::int32_t i, j; // consumed symbols of W_L$ resp. W_R$

    bool operator<(const AsyncConfig& o) const {
        if (state != o.state) return state < o.state;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

} // namespace detail

// Reachability over configurations (state, consumed-L, consumed-R).  The
// class of a state determines which tape feeds it, so the search is exact
// and finite.  If `out` is given, an accepting shuffle is reconstructed.
inline bool async_accept_pair(const AsyncAutomaton& m, const Word& wl, const Word& wr,
                              Shuffle* out = nullptr) {
    if (m.initial < 0) return false;
    std::int32_t nl = static_cast<std::int32_t>(wl.size());
    std::int32_t nr = static_cast<std::int32_t>(wr.size());
    std::set<detail::AsyncConfig> seen;
    std::vector<detail::AsyncConfig> stack;
    std::map<detail::AsyncConfig, std::pair<detail::AsyncConfig, char>> parent;
    detail::AsyncConfig start{m.initial, 0, 0};
    seen.insert(start);
    stack.push_back(start);
    while (!stack.empty()) {
        detail::AsyncConfig c = stack.back();
        stack.pop_back();
        TapeClass cls = m.state_class[static_cast<std::size_t>(c.state)];
        if (cls == TapeClass::Done) {
            if (c.i == nl + 1 && c.j == nr + 1) {
                if (out) {
                    // walk parents back to the start configuration
                    std::vector<std::pair<LetterId, char>> steps;
                    detail::AsyncConfig cur = c;
                    while (!(cur.state == start.state && cur.i == 0 && cur.j == 0)) {
                        auto [prev, tape] = parent.at(cur);
                        LetterId sym = tape == 'L' ? (prev.i < nl ? wl[static_cast<std::size_t>(prev.i)]
                                                                  : AsyncAutomaton::DOLLAR)
                                                   : (prev.j < nr ? wr[static_cast<std::size_t>(prev.j)]
                                                                  : AsyncAutomaton::DOLLAR);
                        steps.emplace_back(sym, tape);
                        cur = prev;
                    }
                    out->merged.clear();
                    out->tape.clear();
                    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                        out->merged.push_back(it->first);
                        out->tape.push_back(it->second);
                    }
                }
                return true;
            }
            continue;
        }
        auto push = [&](LetterId sym, char tape, std::int32_t ni, std::int32_t nj) {
            std::int32_t t = m.next(c.state, sym);
            if (t < 0) return;
            detail::AsyncConfig n{t, ni, nj};
            if (seen.insert(n).second) {
                if (out) parent.emplace(n, std::make_pair(c, tape));
                stack.push_back(n);
            }
        };
        if (AsyncAutomaton::reads_left(cls) && c.i <= nl)
            push(c.i < nl ? wl[static_cast<std::size_t>(c.i)] : AsyncAutomaton::DOLLAR, 'L', c.i + 1, c.j);
        if (AsyncAutomaton::reads_right(cls) && c.j <= nr)
            push(c.j < nr ? wr[static_cast<std::size_t>(c.j)] : AsyncAutomaton::DOLLAR, 'R', c.i, c.j + 1);
    }
    return false;
}

inline std::string serialize_async(const AsyncAutomaton& m) {
    std::ostringstream os;
    os << "async " << m.alphabet_size << "\n";
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        os << "state " << m.state_names[s];
        if (static_cast<int>(s) == m.initial) os << " initial";
        if (m.state_class[s] == TapeClass::Done) os << " final";
        os << " class=" << tape_class_name(m.state_class[s]) << "\n";
    }
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (const auto& [l, t] : m.edges[s])
            os << "edge " << m.state_names[s] << " "
               << (l == AsyncAutomaton::DOLLAR ? std::string("$") : std::to_string(l)) << " "
               << m.state_names[static_cast<std::size_t>(t)] << "\n";
    return os.str();
}

inline std::string export_dot(const AsyncAutomaton& m,
                              const std::vector<std::string>* letter_names = nullptr) {
    std::ostringstream os;
    os << "digraph async {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        os << "  n" << s << " [label=\"" << m.state_names[s] << "\" class=\""
           << tape_class_name(m.state_class[s]) << "\""
           << (m.state_class[s] == TapeClass::Done ? " shape=doublecircle" : " shape=circle");
        if (static_cast<int>(s) == m.initial) os << " penwidth=2";
        os << "];\n";
    }
    for (std::size_t s = 0; s < m.num_states(); ++s)
        for (const auto& [l, t] : m.edges[s]) {
            os << "  n" << s << " -> n" << t << " [label=\"";
            if (l == AsyncAutomaton::DOLLAR)
                os << "$";
            else if (letter_names && static_cast<std::size_t>(l) < letter_names->size())
                os << (*letter_names)[static_cast<std::size_t>(l)];
            else
                os << l;
            os << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

// Drops states that cannot occur on an accepting run.
inline AsyncAutomaton async_trim(const AsyncAutomaton& m) {
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
        if (m.state_class[s] == TapeClass::Done) {
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
    AsyncAutomaton out;
    out.alphabet_size = m.alphabet_size;
    std::vector<std::int32_t> remap(n, -1);
    for (std::size_t s = 0; s < n; ++s)
        if ((accessible[s] && live[s]) || m.state_class[s] == TapeClass::Done)
            remap[s] = out.add_state(m.state_names[s], m.state_class[s]);
    if (m.initial >= 0 && remap[static_cast<std::size_t>(m.initial)] >= 0)
        out.initial = remap[static_cast<std::size_t>(m.initial)];
    for (std::size_t s = 0; s < n; ++s) {
        if (remap[s] < 0 || !(accessible[s] && live[s])) continue;
        for (const auto& [l, t] : m.edges[s])
            if (remap[static_cast<std::size_t>(t)] >= 0 &&
                accessible[static_cast<std::size_t>(t)] && live[static_cast<std::size_t>(t)])
                out.add_edge(remap[s], l, remap[static_cast<std::size_t>(t)]);
    }
    return out;
}

} // namespace gogauto
