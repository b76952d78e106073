// constants.hpp -- the structure constants eta, zeta and the measured
// fellow-traveller constant kappa.
//
// eta bounds how far a single letter moves the base vertex in the tree;
// zeta bounds d_B on base-group elements within d_A-distance 4*eta+1; and
// kappa is the largest Hausdorff distance between accepted paths whose
// endpoints are at most one letter apart, measured exhaustively on the
// enumerated ball.
#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/language.hpp"
#include "gogauto/normal_form.hpp"

namespace gogauto {

struct StructureConstants {
    int eta = 0;
    int zeta = 0;
    int kappa_empirical = 0;
    int check_length = 0;
};

inline int compute_eta(const StructureAlphabet& a, NfContext& nf) {
    int eta = 0;
    for (std::size_t l = 0; l < a.size(); ++l)
        eta = std::max(eta, nf.tree_level(nf.evaluate_letter(static_cast<LetterId>(l))));
    return eta;
}

inline int compute_zeta(const GraphOfGroups& g, NfContext& nf, int eta, const Caps& caps = {}) {
    int radius = 4 * eta + 1;
    auto ball = nf.ball(radius, caps);
    const VertexGroupOracle& base = g.vertex_group(g.base_vertex());
    int zeta = radius;
    for (NfId id : ball->order) {
        if (ball->dist.at(id) > radius) continue;
        NormalForm form = nf.form(id);
        if (!form.syllables.empty()) continue; // only elements of the base group
        zeta = std::max(zeta, base.metric_length(form.tail));
    }
    return zeta;
}

namespace detail {

constexpr int kDistInf = 1 << 20;

// Pairwise d_A between the two prefix chains; entries above the ball
// radius read as kDistInf.
inline std::vector<std::vector<int>> prefix_distance_matrix(
    NfContext& nf, const std::shared_ptr<const NfContext::BallA>& ball,
    const std::vector<NfId>& vp, const std::vector<NfId>& wp, const Word& w) {
    std::vector<std::vector<int>> d(vp.size(), std::vector<int>(wp.size()));
    for (std::size_t i = 0; i < vp.size(); ++i) {
        NfId diff = nf.invert(vp[i]); // v_i^-1 * w_0
        d[i][0] = ball->dist_or(diff, kDistInf);
        for (std::size_t j = 1; j < wp.size(); ++j) {
            diff = nf.append(diff, w[j - 1]);
            d[i][j] = ball->dist_or(diff, kDistInf);
        }
    }
    return d;
}

inline int hausdorff_from_matrix(const std::vector<std::vector<int>>& d) {
    int h = 0;
    std::size_t cols = d.empty() ? 0 : d[0].size();
    for (std::size_t i = 0; i < d.size(); ++i) {
        int best = kDistInf;
        for (std::size_t j = 0; j < cols; ++j) best = std::min(best, d[i][j]);
        h = std::max(h, best);
    }
    for (std::size_t j = 0; j < cols; ++j) {
        int best = kDistInf;
        for (std::size_t i = 0; i < d.size(); ++i) best = std::min(best, d[i][j]);
        h = std::max(h, best);
    }
    return h;
}

struct EnumeratedWord {
    Word w;
    std::vector<NfId> prefixes; // length |w|+1, starting at the identity
};

// Language words grouped by the element they represent.
inline std::unordered_map<NfId, std::vector<EnumeratedWord>> language_by_element(
    NfContext& nf, const LanguageFsa& m, int N, const Caps& caps) {
    std::unordered_map<NfId, std::vector<EnumeratedWord>> by_elem;
    enumerate_language(m, N, [&](const Word& w, std::int32_t) {
        EnumeratedWord e;
        e.w = w;
        e.prefixes.reserve(w.size() + 1);
        NfId cur = nf.identity_id();
        e.prefixes.push_back(cur);
        for (LetterId l : w) {
            cur = nf.append(cur, l);
            e.prefixes.push_back(cur);
        }
        by_elem[cur].push_back(std::move(e));
    }, caps);
    return by_elem;
}

} // namespace detail

// Max Hausdorff distance between accepted paths at endpoint distance <= 1,
// exhaustive over L ∩ A^{<=N}.
inline int compute_kappa(const StructureAlphabet& a, NfContext& nf, const LanguageFsa& m, int N,
                         const Caps& caps = {}) {
    auto by_elem = detail::language_by_element(nf, m, N, caps);
    int kappa = 0;
    int cap = 4;
    auto ball = nf.ball(cap, caps);
    auto pair_hausdorff = [&](const detail::EnumeratedWord& v, const detail::EnumeratedWord& w) {
        for (;;) {
            auto d = detail::prefix_distance_matrix(nf, ball, v.prefixes, w.prefixes, w.w);
            int h = detail::hausdorff_from_matrix(d);
            if (h < detail::kDistInf && h <= cap) return h;
            cap += 2;
            ball = nf.ball(cap, caps);
        }
    };
    for (const auto& [elem, words] : by_elem) {
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = i + 1; j < words.size(); ++j)
                kappa = std::max(kappa, pair_hausdorff(words[i], words[j]));
        for (std::size_t l = 0; l < a.size(); ++l) {
            NfId other = nf.append(elem, static_cast<LetterId>(l));
            if (other <= elem) continue; // each unordered pair once
            auto it = by_elem.find(other);
            if (it == by_elem.end()) continue;
            for (const auto& v : words)
                for (const auto& w : it->second) kappa = std::max(kappa, pair_hausdorff(v, w));
        }
        if (cap < kappa + 2) {
            cap = kappa + 2;
            ball = nf.ball(cap, caps);
        }
    }
    return kappa;
}

inline StructureConstants compute_constants(const GraphOfGroups& g, const StructureAlphabet& a,
                                            NfContext& nf, const LanguageFsa& m, int N,
                                            const Caps& caps = {}) {
    StructureConstants c;
    c.check_length = N;
    c.eta = compute_eta(a, nf);
    c.zeta = compute_zeta(g, nf, c.eta, caps);
    c.kappa_empirical = compute_kappa(a, nf, m, N, caps);
    return c;
}

} // namespace gogauto
