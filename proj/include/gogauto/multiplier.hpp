// multiplier.hpp -- two-tape multiplier automata M_x.
//
// A state is (left automaton state or done, right automaton state or
// done, word difference, tree balance, tape class), where the word
// difference delta = WL(i)^-1 * WR(j) is kept inside the d_A-ball of
// radius K and the balance counts left-read minus right-read edge
// letters.  The reading schedule is deterministic: the tape that is
// behind in the tree reads next, with strict alternation on ties, so
// paired words that fellow-travel keep delta small.  The final transition
// exists only when both tapes are accepted and delta equals pi(x).
// Correctness at a given K is established by verify_multiplier, which
// sweeps the enumerated language square both ways; K escalates on false
// rejects.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "gogauto/async_automaton.hpp"
#include "gogauto/caps.hpp"
#include "gogauto/constants.hpp"
#include "gogauto/language.hpp"
#include "gogauto/normal_form.hpp"

namespace gogauto {

namespace detail {

struct MultKey {
    std::int32_t ql, qr; // -1 once that tape's $ was read
    NfId delta;
    std::int32_t elev;
    TapeClass cls;

    bool operator==(const MultKey& o) const {
        return ql == o.ql && qr == o.qr && delta == o.delta && elev == o.elev && cls == o.cls;
    }
};

struct MultKeyHash {
    std::size_t operator()(const MultKey& k) const {
        std::size_t h = hash_combine(0x8d2f1135, static_cast<std::size_t>(k.ql + 2));
        h = hash_combine(h, static_cast<std::size_t>(k.qr + 2));
        h = hash_combine(h, static_cast<std::size_t>(k.delta));
        h = hash_combine(h, static_cast<std::size_t>(k.elev + (1 << 16)));
        return hash_combine(h, static_cast<std::size_t>(k.cls));
    }
};

} // namespace detail

inline AsyncAutomaton build_multiplier(const StructureAlphabet& a, NfContext& nf,
                                       const LanguageFsa& m, LetterId x, int K, int eta,
                                       const Caps& caps = {}) {
    if (K < 0) throw InputError("multiplier: K must be nonnegative");
    NfId x_nf = nf.evaluate_letter(x);
    auto ball = nf.ball(K, caps);
    if (!ball->dist.count(x_nf))
        throw InputError("multiplier: K is smaller than d_A(1, pi(x)) for letter '" +
                         a.name(x) + "'");
    if (m.trimmed.initial < 0) throw InputError("multiplier: language automaton is empty");
    const int elev_cap = 2 * K * std::max(1, eta) + 8;

    std::vector<NfId> inv_letter(a.size());
    std::vector<char> is_edge(a.size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        inv_letter[l] = nf.evaluate_letter(a.inverse(static_cast<LetterId>(l)));
        is_edge[l] = a.info(static_cast<LetterId>(l)).kind == LetterKind::Edge ? 1 : 0;
    }
    std::unordered_map<std::uint64_t, NfId> leftmul_memo;
    auto leftmul = [&](LetterId l, NfId d) {
        std::uint64_t key = (static_cast<std::uint64_t>(l) << 32) | static_cast<std::uint32_t>(d);
        auto it = leftmul_memo.find(key);
        if (it != leftmul_memo.end()) return it->second;
        NfId r = nf.multiply(inv_letter[static_cast<std::size_t>(l)], d);
        leftmul_memo.emplace(key, r);
        return r;
    };

    AsyncAutomaton out;
    out.alphabet_size = a.size();
    std::unordered_map<detail::MultKey, std::int32_t, detail::MultKeyHash> index;
    std::vector<detail::MultKey> keys;
    auto name_of = [&](const detail::MultKey& k) {
        std::string n = k.ql >= 0 ? m.trimmed.state_names[static_cast<std::size_t>(k.ql)] : "$";
        n += "|";
        n += k.qr >= 0 ? m.trimmed.state_names[static_cast<std::size_t>(k.qr)] : "$";
        n += "|d" + std::to_string(k.delta) + "|" + std::to_string(k.elev);
        return n;
    };
    std::deque<std::int32_t> queue;
    auto intern = [&](const detail::MultKey& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (keys.size() >= caps.multiplier_states)
            throw CapacityError("multiplier construction exceeded state cap");
        std::int32_t id = out.add_state(name_of(k), k.cls);
        index.emplace(k, id);
        keys.push_back(k);
        queue.push_back(id);
        return id;
    };

    detail::MultKey start{m.trimmed.initial, m.trimmed.initial, nf.identity_id(), 0, TapeClass::L};
    out.initial = intern(start);
    int done = out.add_state("s$", TapeClass::Done);
    keys.push_back({-1, -1, -1, 0, TapeClass::Done}); // placeholder to keep ids aligned

    auto final_l = [&](std::int32_t q) {
        return q >= 0 && m.trimmed.final_state[static_cast<std::size_t>(q)] != 0;
    };

    while (!queue.empty()) {
        std::int32_t id = queue.front();
        queue.pop_front();
        detail::MultKey k = keys[static_cast<std::size_t>(id)];
        switch (k.cls) {
        case TapeClass::L:
            for (std::size_t l = 0; l < a.size(); ++l) {
                std::int32_t q2 = m.step(k.ql, static_cast<LetterId>(l));
                if (q2 < 0) continue;
                NfId d2 = leftmul(static_cast<LetterId>(l), k.delta);
                if (!ball->dist.count(d2)) continue;
                std::int32_t e2 = k.elev + (is_edge[l] ? 1 : 0);
                if (e2 > elev_cap || e2 < -elev_cap) continue;
                TapeClass c2 = e2 < 0 ? TapeClass::L : e2 > 0 ? TapeClass::R : TapeClass::R;
                out.add_edge(id, static_cast<LetterId>(l), intern({q2, k.qr, d2, e2, c2}));
            }
            if (final_l(k.ql))
                out.add_edge(id, AsyncAutomaton::DOLLAR,
                             intern({-1, k.qr, k.delta, k.elev, TapeClass::RDollar}));
            break;
        case TapeClass::R:
            for (std::size_t l = 0; l < a.size(); ++l) {
                std::int32_t q2 = m.step(k.qr, static_cast<LetterId>(l));
                if (q2 < 0) continue;
                NfId d2 = nf.append(k.delta, static_cast<LetterId>(l));
                if (!ball->dist.count(d2)) continue;
                std::int32_t e2 = k.elev - (is_edge[l] ? 1 : 0);
                if (e2 > elev_cap || e2 < -elev_cap) continue;
                TapeClass c2 = e2 > 0 ? TapeClass::R : e2 < 0 ? TapeClass::L : TapeClass::L;
                out.add_edge(id, static_cast<LetterId>(l), intern({k.ql, q2, d2, e2, c2}));
            }
            if (final_l(k.qr))
                out.add_edge(id, AsyncAutomaton::DOLLAR,
                             intern({k.ql, -1, k.delta, k.elev, TapeClass::LDollar}));
            break;
        case TapeClass::LDollar: // right tape finished; drain the left
            for (std::size_t l = 0; l < a.size(); ++l) {
                std::int32_t q2 = m.step(k.ql, static_cast<LetterId>(l));
                if (q2 < 0) continue;
                NfId d2 = leftmul(static_cast<LetterId>(l), k.delta);
                if (!ball->dist.count(d2)) continue;
                out.add_edge(id, static_cast<LetterId>(l),
                             intern({q2, k.qr, d2, k.elev, TapeClass::LDollar}));
            }
            if (final_l(k.ql) && k.delta == x_nf) out.add_edge(id, AsyncAutomaton::DOLLAR, done);
            break;
        case TapeClass::RDollar: // left tape finished; drain the right
            for (std::size_t l = 0; l < a.size(); ++l) {
                std::int32_t q2 = m.step(k.qr, static_cast<LetterId>(l));
                if (q2 < 0) continue;
                NfId d2 = nf.append(k.delta, static_cast<LetterId>(l));
                if (!ball->dist.count(d2)) continue;
                out.add_edge(id, static_cast<LetterId>(l),
                             intern({k.ql, q2, d2, k.elev, TapeClass::RDollar}));
            }
            if (final_l(k.qr) && k.delta == x_nf) out.add_edge(id, AsyncAutomaton::DOLLAR, done);
            break;
        case TapeClass::Done:
            break;
        }
    }
    return async_trim(out);
}

struct MultiplierReport {
    std::string letter;
    int K = 0;
    int escalations = 0;
    bool shape_ok = false;
    std::uint64_t states = 0;
    std::uint64_t semantic_pairs = 0;
    std::uint64_t accepted_pairs = 0;
    std::vector<std::string> false_accepts;
    std::vector<std::string> false_rejects;

    bool pass() const {
        return shape_ok && false_accepts.empty() && false_rejects.empty() &&
               semantic_pairs == accepted_pairs;
    }
};

// Exhaustive over W_L, W_R in L ∩ A^{<=N}: accepted <=> pi(W_L x) = pi(W_R).
// The "only if" direction enumerates all accepted pairs from the machine's
// run tree (determinism: one run per pair); the "if" direction checks
// acceptance of every semantically valid pair.
inline MultiplierReport verify_multiplier(const StructureAlphabet& a, NfContext& nf,
                                          const LanguageFsa& m, const AsyncAutomaton& mx,
                                          LetterId x, int N, const Caps& caps = {}) {
    MultiplierReport rep;
    rep.letter = a.name(x);
    rep.states = mx.num_states();
    rep.shape_ok = async_validate_shape(mx).ok;
    NfId x_nf = nf.evaluate_letter(x);

    auto record_false_accept = [&](const Word& wl, const Word& wr) {
        if (rep.false_accepts.size() < 8)
            rep.false_accepts.push_back("(" + a.format_word(wl) + " ; " + a.format_word(wr) + ")");
        else
            rep.false_accepts.back() = "...";
    };

    // (1) every accepted pair within the bound is semantically valid
    if (mx.initial >= 0) {
        struct Frame {
            std::int32_t state;
            std::size_t next_edge;
        };
        Word wl, wr;
        std::vector<NfId> vl{nf.identity_id()}, vr{nf.identity_id()};
        std::vector<Frame> stack{{mx.initial, 0}};
        std::uint64_t visited = 0;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& row = mx.edges[static_cast<std::size_t>(fr.state)];
            if (fr.next_edge >= row.size()) {
                // unwind: pop the symbol this frame was entered with
                stack.pop_back();
                if (!stack.empty()) {
                    const auto& prow = mx.edges[static_cast<std::size_t>(stack.back().state)];
                    auto [sym, tgt] = prow[stack.back().next_edge - 1];
                    TapeClass pc = mx.state_class[static_cast<std::size_t>(stack.back().state)];
                    if (sym != AsyncAutomaton::DOLLAR) {
                        if (AsyncAutomaton::reads_left(pc)) {
                            wl.pop_back();
                            vl.pop_back();
                        } else {
                            wr.pop_back();
                            vr.pop_back();
                        }
                    }
                }
                continue;
            }
            auto [sym, tgt] = row[fr.next_edge++];
            if (++visited > caps.enum_words)
                throw CapacityError("multiplier verification run tree exceeded cap");
            TapeClass cls = mx.state_class[static_cast<std::size_t>(fr.state)];
            if (sym == AsyncAutomaton::DOLLAR) {
                if (mx.state_class[static_cast<std::size_t>(tgt)] == TapeClass::Done) {
                    ++rep.accepted_pairs;
                    bool ok = nf.append(vl.back(), x) == vr.back() && m.accepts(wl) && m.accepts(wr);
                    if (!ok) record_false_accept(wl, wr);
                    continue; // done state has no out-edges
                }
                stack.push_back({tgt, 0});
                continue;
            }
            bool left = AsyncAutomaton::reads_left(cls);
            if (left && wl.size() >= static_cast<std::size_t>(N)) continue;
            if (!left && wr.size() >= static_cast<std::size_t>(N)) continue;
            if (left) {
                wl.push_back(sym);
                vl.push_back(nf.append(vl.back(), sym));
            } else {
                wr.push_back(sym);
                vr.push_back(nf.append(vr.back(), sym));
            }
            stack.push_back({tgt, 0});
        }
    }

    // (2) every semantically valid pair is accepted
    auto by_elem = detail::language_by_element(nf, m, N, caps);
    for (const auto& [elem, words] : by_elem) {
        NfId target = nf.append(elem, x);
        auto it = by_elem.find(target);
        if (it == by_elem.end()) continue;
        for (const auto& v : words) {
            for (const auto& w : it->second) {
                ++rep.semantic_pairs;
                if (!async_accept_pair(mx, v.w, w.w)) {
                    if (rep.false_rejects.size() < 8)
                        rep.false_rejects.push_back("(" + a.format_word(v.w) + " ; " +
                                                    a.format_word(w.w) + ")");
                    else
                        rep.false_rejects.back() = "...";
                }
            }
        }
    }
    return rep;
}

struct BuiltMultiplier {
    AsyncAutomaton automaton;
    MultiplierReport report;
};

// Builds M_x and verifies it, escalating K on false rejects.  The default
// starting K is kappa + 2*eta + d_A(1, pi(x)) + 1.
inline BuiltMultiplier build_verified_multiplier(const StructureAlphabet& a, NfContext& nf,
                                                 const LanguageFsa& m,
                                                 const StructureConstants& consts, LetterId x,
                                                 int N, int start_K = -1, int max_escalations = 3,
                                                 const Caps& caps = {}) {
    int dx = nf.evaluate_letter(x) == nf.identity_id() ? 0 : 1;
    int K = start_K >= 0 ? start_K : consts.kappa_empirical + 2 * consts.eta + dx + 1;
    BuiltMultiplier built;
    for (int esc = 0;; ++esc) {
        built.automaton = build_multiplier(a, nf, m, x, K, consts.eta, caps);
        built.report = verify_multiplier(a, nf, m, built.automaton, x, N, caps);
        built.report.K = K;
        built.report.escalations = esc;
        if (built.report.false_rejects.empty() || esc >= max_escalations) break;
        ++K;
    }
    return built;
}

} // namespace gogauto
