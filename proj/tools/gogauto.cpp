// gogauto CLI: inspect graph-of-groups files, compute normal forms, build
// and verify the automatic-structure machinery.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gogauto/departure.hpp"
#include "gogauto/multiplier.hpp"
#include "gogauto/spec_file.hpp"
#include "gogauto/system.hpp"
#include "gogauto/verify.hpp"

namespace {

int env_workers() {
    const char* w = std::getenv("GOGAUTO_WORKERS");
    if (!w) return 1;
    int n = std::atoi(w);
    return n > 0 ? n : 1;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw gogauto::InputError("cannot write '" + path + "'");
    f << text;
}

std::string letter_kind_name(gogauto::LetterKind k) {
    switch (k) {
    case gogauto::LetterKind::Edge: return "edge";
    case gogauto::LetterKind::Base: return "base";
    case gogauto::LetterKind::Transversal: return "transversal";
    case gogauto::LetterKind::TransversalInv: return "transversal-inverse";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    using namespace gogauto;
    CLI::App app{"asynchronous automatic structures on graphs of groups"};
    app.require_subcommand(1);
    Caps caps;

    std::string file, word_text, dot_path, letter_name;
    int max_len = 6, r_max = 4, K = -1, verify_len = -1, cap_opt = 0;
    bool exact = false;

    auto add_file = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "graph-of-groups file")->required();
    };

    CLI::App* c_validate = app.add_subcommand("validate", "check a graph-of-groups file");
    add_file(c_validate);
    c_validate->add_option("--radius", max_len, "embedding kernel check radius")->default_val(4);

    CLI::App* c_letters = app.add_subcommand("letters", "print the structure alphabet");
    add_file(c_letters);

    CLI::App* c_nf = app.add_subcommand("normal-form", "normal form of a word over the alphabet");
    add_file(c_nf);
    c_nf->add_option("word", word_text, "word, letters separated by spaces")->required();

    CLI::App* c_fsa = app.add_subcommand("build-fsa", "build the normal-form language automaton");
    add_file(c_fsa);
    c_fsa->add_option("--dot", dot_path, "write DOT to this path");

    CLI::App* c_enum = app.add_subcommand("enumerate", "accepted words up to a length");
    add_file(c_enum);
    c_enum->add_option("--max-len", max_len, "length bound")->required();
    c_enum->add_option("--cap", cap_opt, "output cap");

    CLI::App* c_const = app.add_subcommand("constants", "eta, zeta and kappa");
    add_file(c_const);
    c_const->add_option("--max-len", max_len, "kappa sweep length")->required();

    CLI::App* c_dep = app.add_subcommand("departure", "departure table");
    add_file(c_dep);
    c_dep->add_option("--rmax", r_max, "largest r")->required();
    c_dep->add_flag("--exact", exact, "exact configuration search");
    c_dep->add_option("--cap", cap_opt, "exact: forward horizon");
    c_dep->add_option("--max-len", max_len, "empirical: scan length");

    CLI::App* c_kappa = app.add_subcommand("kappa", "fellow-traveller constant");
    add_file(c_kappa);
    c_kappa->add_option("--max-len", max_len, "sweep length")->required();

    CLI::App* c_mult = app.add_subcommand("multiplier", "build (and verify) one multiplier");
    add_file(c_mult);
    c_mult->add_option("--letter", letter_name, "letter x")->required();
    c_mult->add_option("--K", K, "word-difference ball radius");
    c_mult->add_option("--verify", verify_len, "verify on the language square up to this length");
    c_mult->add_option("--dot", dot_path, "write DOT to this path");

    CLI::App* c_verify = app.add_subcommand("verify", "run the whole verification suite");
    add_file(c_verify);
    VerifyOptions vopts;
    c_verify->add_option("--max-len", vopts.lang_len, "language sweep length")->required();
    c_verify->add_option("--mult-len", vopts.mult_len, "multiplier sweep length");
    c_verify->add_option("--kappa-len", vopts.kappa_len, "kappa sweep length");
    c_verify->add_option("--rmax", vopts.r_max, "departure r range");
    c_verify->add_option("--dep-len", vopts.dep_len, "empirical departure scan length");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cap_opt > 0) {
            caps.enum_words = static_cast<std::size_t>(cap_opt);
            caps.departure_horizon = cap_opt;
        }
        if (c_validate->parsed()) {
            GraphOfGroups g = load_spec_file(file, caps);
            GogValidationReport rep = g.validate(max_len, caps);
            for (const std::string& s : rep.lines) std::cout << s << "\n";
            std::cout << (rep.ok ? "VALID" : "INVALID") << "\n";
            return rep.ok ? 0 : 1;
        }
        auto sys = GogSystem::load(file, caps);
        StructureAlphabet& a = sys->alphabet;
        NfContext& nf = *sys->nf;

        if (c_letters->parsed()) {
            for (std::size_t l = 0; l < a.size(); ++l) {
                NfId v = nf.evaluate_letter(static_cast<LetterId>(l));
                std::cout << l << "\t" << a.name(static_cast<LetterId>(l)) << "\tkind="
                          << letter_kind_name(a.info(static_cast<LetterId>(l)).kind) << "\tinverse="
                          << a.name(a.inverse(static_cast<LetterId>(l))) << "\tpi="
                          << a.format_word(nf.serialize(v)) << "\tlevel=" << nf.tree_level(v) << "\n";
            }
            return 0;
        }
        if (c_nf->parsed()) {
            Word w = a.parse_word(word_text);
            NfId id = nf.normalize(w);
            NormalForm form = nf.form(id);
            std::string syll;
            for (const auto& [f, k] : form.syllables) {
                if (!syll.empty()) syll += " ";
                syll += a.name(a.transversal_letter(f, k)) + " " + a.name(a.edge_letter(f));
            }
            const VertexGroupOracle& base = sys->gog.vertex_group(sys->gog.base_vertex());
            std::cout << "syllables: " << (syll.empty() ? "(none)" : syll) << "\n";
            std::cout << "tail: " << base.generators().format_word(base.canonical_word(form.tail)) << "\n";
            std::cout << "level: " << nf.tree_level(id) << "\n";
            std::cout << "word: " << a.format_word(nf.serialize(id)) << "\n";
            return 0;
        }
        if (c_fsa->parsed()) {
            const LanguageFsa& m = sys->language;
            std::cout << "states: " << m.fsa.num_states() << " (o: 1, heads: " << m.n_head
                      << ", q: " << m.n_q << ", mid: " << m.n_mid << ", cone: " << m.n_cone << ")\n";
            std::cout << "edges: " << m.fsa.num_edges() << "\n";
            std::cout << "trimmed states: " << m.trimmed.num_states()
                      << ", trimmed edges: " << m.trimmed.num_edges() << "\n";
            if (!dot_path.empty()) {
                std::vector<std::string> names;
                for (std::size_t l = 0; l < a.size(); ++l) names.push_back(a.name(static_cast<LetterId>(l)));
                write_file(dot_path, export_dot(m.trimmed, &names));
                std::cout << "dot written to " << dot_path << "\n";
            }
            return 0;
        }
        if (c_enum->parsed()) {
            enumerate_language(sys->language, max_len, [&](const Word& w, std::int32_t) {
                std::cout << a.format_word(w) << "\n";
            }, caps);
            return 0;
        }
        if (c_const->parsed()) {
            StructureConstants c = compute_constants(sys->gog, a, nf, sys->language, max_len, caps);
            std::cout << "ETA=" << c.eta << "\nZETA=" << c.zeta << "\nKAPPA=" << c.kappa_empirical
                      << "\nCHECKLEN=" << c.check_length << "\n";
            return 0;
        }
        if (c_kappa->parsed()) {
            std::cout << "KAPPA=" << compute_kappa(a, nf, sys->language, max_len, caps) << "\n";
            return 0;
        }
        if (c_dep->parsed()) {
            DepartureTable t = exact ? departure_exact(nf, sys->language, r_max, caps)
                                     : departure_empirical(nf, sys->language, r_max, max_len, caps);
            std::cout << "DEPARTURE.METHOD="
                      << (t.method == DepartureTable::Method::Exact ? "exact" : "empirical") << "\n";
            for (int r = 1; r <= r_max; ++r)
                std::cout << "DEPARTURE." << r << "=" << t.value(r) << "\n";
            if (t.method == DepartureTable::Method::Exact) {
                std::cout << "DEPARTURE.HORIZON=" << t.horizon << "\n";
                std::cout << "DEPARTURE.CONFIGS=" << t.configs << "\n";
                std::cout << "DEPARTURE.PRUNES=" << t.boundary_prunes << "\n";
            }
            return 0;
        }
        if (c_mult->parsed()) {
            LetterId x = a.parse_letter(letter_name);
            int sweep = verify_len > 0 ? verify_len : 6;
            StructureConstants c = compute_constants(sys->gog, a, nf, sys->language, sweep, caps);
            BuiltMultiplier built = build_verified_multiplier(a, nf, sys->language, c, x, sweep, K,
                                                              3, caps);
            const MultiplierReport& r = built.report;
            std::string key = "MULTIPLIER." + a.name(x);
            std::cout << key << ".K=" << r.K << "\n";
            std::cout << key << ".STATES=" << r.states << "\n";
            std::cout << key << ".ESCALATIONS=" << r.escalations << "\n";
            std::cout << key << ".PAIRS=" << r.semantic_pairs << "\n";
            std::cout << key << ".STATUS=" << (r.pass() ? "PASS" : "FAIL") << "\n";
            for (const std::string& s : r.false_accepts) std::cout << "# false-accept " << s << "\n";
            for (const std::string& s : r.false_rejects) std::cout << "# false-reject " << s << "\n";
            if (!dot_path.empty()) {
                std::vector<std::string> names;
                for (std::size_t l = 0; l < a.size(); ++l) names.push_back(a.name(static_cast<LetterId>(l)));
                write_file(dot_path, export_dot(built.automaton, &names));
                std::cout << "dot written to " << dot_path << "\n";
            }
            return r.pass() ? 0 : 1;
        }
        if (c_verify->parsed()) {
            vopts.workers = env_workers();
            StructureReport rep = verify_structure(sys->gog, a, nf, sys->language, vopts, caps);
            std::cout << rep.machine_text();
            std::cerr << rep.human_text();
            return rep.pass ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 2;
    } catch (const DepartureViolation& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
