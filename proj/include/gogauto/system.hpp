// system.hpp -- everything derived from one graph of groups, constructed
// in dependency order and pinned in place (the normal-form context keeps
// pointers into the model).
#pragma once

#include <memory>
#include <string>

#include "gogauto/alphabet.hpp"
#include "gogauto/cone_types.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/language.hpp"
#include "gogauto/normal_form.hpp"
#include "gogauto/spec_file.hpp"

namespace gogauto {

class GogSystem {
public:
    GraphOfGroups gog;
    StructureAlphabet alphabet;
    ConeTypeTable cones;
    std::unique_ptr<NfContext> nf;
    LanguageFsa language;

    GogSystem(const GogSystem&) = delete;
    GogSystem& operator=(const GogSystem&) = delete;

    static std::unique_ptr<GogSystem> build(GraphOfGroups&& g, const Caps& caps = {},
                                            int cone_check_len = 6,
                                            const LanguageOptions& opts = {}) {
        auto sys = std::unique_ptr<GogSystem>(new GogSystem(std::move(g)));
        sys->gog.require_valid();
        sys->alphabet = build_alphabet(sys->gog);
        sys->cones = build_geodesic_recognizer(sys->gog.vertex_group(sys->gog.base_vertex()),
                                               cone_check_len, caps);
        sys->nf = std::make_unique<NfContext>(sys->gog, sys->alphabet);
        sys->language = build_language_fsa(sys->gog, sys->alphabet, sys->cones, opts);
        return sys;
    }

    static std::unique_ptr<GogSystem> load(const std::string& path, const Caps& caps = {},
                                           int cone_check_len = 6) {
        return build(load_spec_file(path, caps), caps, cone_check_len);
    }

private:
    explicit GogSystem(GraphOfGroups&& g) : gog(std::move(g)) {}
};

} // namespace gogauto
