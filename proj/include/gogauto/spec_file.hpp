// spec_file.hpp -- the .gog input format.
//
//   [graph]            vertex/edge declarations and the base vertex
//   [vertex NAME]      kind = finite | free, generator data
//   [edge NAME]        edge-group generators and the two embedding words
//
// Finite vertex groups take permutation generators in cycle notation
// ("a = (1 2 3)"), or a multiplication table (rows of element indices,
// "table = 0 1; 1 0" inline or "table = file" one row per line) with
// generators given as element indices ("a = 1").  Free groups take
// "rank = k" and optional basis names "letters = x y".  Edge embedding
// words are written over the endpoint group's letters, apostrophe for
// inverse.  '#' starts a comment; errors carry line numbers.
#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gogauto/caps.hpp"
#include "gogauto/graph_of_groups.hpp"
#include "gogauto/group_oracle.hpp"

namespace gogauto {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

inline InputError parse_error(int line, const std::string& msg) {
    return InputError("line " + std::to_string(line) + ": " + msg);
}

inline Permutation parse_cycles(const std::string& text, int line) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    int max_point = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != '(') throw parse_error(line, "expected '(' in cycle notation");
        std::size_t close = text.find(')', i);
        if (close == std::string::npos) throw parse_error(line, "unbalanced cycle");
        std::vector<int> cyc;
        for (const std::string& t : split_ws(text.substr(i + 1, close - i - 1))) {
            int p = 0;
            try {
                p = std::stoi(t);
            } catch (...) {
                throw parse_error(line, "bad point '" + t + "' in cycle");
            }
            if (p < 1) throw parse_error(line, "cycle points are 1-based");
            cyc.push_back(p);
            max_point = std::max(max_point, p);
        }
        cycles.push_back(std::move(cyc));
        i = close + 1;
    }
    Permutation perm(static_cast<std::size_t>(std::max(max_point, 1)));
    for (std::size_t p = 0; p < perm.size(); ++p) perm[p] = static_cast<std::int32_t>(p);
    for (const auto& cyc : cycles)
        for (std::size_t j = 0; j < cyc.size(); ++j)
            perm[static_cast<std::size_t>(cyc[j] - 1)] =
                static_cast<std::int32_t>(cyc[(j + 1) % cyc.size()] - 1);
    return perm;
}

inline void pad_perm(Permutation& p, std::size_t degree) {
    while (p.size() < degree) p.push_back(static_cast<std::int32_t>(p.size()));
}

inline std::vector<std::vector<std::int32_t>> parse_table_rows(const std::string& text, int line) {
    std::vector<std::vector<std::int32_t>> rows;
    std::string row_text;
    std::istringstream is(text);
    while (std::getline(is, row_text, ';')) {
        std::vector<std::int32_t> row;
        for (const std::string& t : split_ws(row_text)) {
            try {
                row.push_back(std::stoi(t));
            } catch (...) {
                throw parse_error(line, "bad table entry '" + t + "'");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

inline GraphOfGroups parse_spec(const std::string& text, const std::string& source_dir = ".",
                                const Caps& caps = {}) {
    struct VertexDecl {
        int line = 0;
        std::string kind;
        std::vector<std::string> generators;
        std::map<std::string, std::pair<std::string, int>> gen_values; // name -> (rhs, line)
        std::string table;
        int table_line = 0;
        int rank = -1;
        std::vector<std::string> letters;
    };
    struct EdgeDecl {
        int line = 0;
        std::string u, v;
        std::vector<std::string> generators;
        std::map<std::string, std::pair<std::string, int>> fwd, bwd;
    };

    std::vector<std::string> vertex_order;
    std::map<std::string, VertexDecl> vertices;
    std::vector<std::string> edge_order;
    std::map<std::string, EdgeDecl> edges;
    std::string base;
    int base_line = 0;
    bool saw_graph = false;

    std::string section; // "", "graph", "vertex NAME", "edge NAME"
    std::string section_name;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw detail::parse_error(lineno, "unterminated section header");
            std::vector<std::string> parts = detail::split_ws(line.substr(1, line.size() - 2));
            if (parts.size() == 1 && parts[0] == "graph") {
                section = "graph";
                saw_graph = true;
            } else if (parts.size() == 2 && parts[0] == "vertex") {
                section = "vertex";
                section_name = parts[1];
                if (!vertices.count(section_name))
                    throw detail::parse_error(lineno, "vertex '" + section_name + "' not declared in [graph]");
                vertices[section_name].line = lineno;
            } else if (parts.size() == 2 && parts[0] == "edge") {
                section = "edge";
                section_name = parts[1];
                if (!edges.count(section_name))
                    throw detail::parse_error(lineno, "edge '" + section_name + "' not declared in [graph]");
            } else {
                throw detail::parse_error(lineno, "unknown section '" + line + "'");
            }
            continue;
        }
        if (section.empty()) throw detail::parse_error(lineno, "content before any section; missing [graph]?");

        if (section == "graph") {
            std::vector<std::string> parts = detail::split_ws(line);
            if (parts[0] == "vertex" && parts.size() == 2) {
                if (vertices.count(parts[1]))
                    throw detail::parse_error(lineno, "duplicate vertex '" + parts[1] + "'");
                vertices[parts[1]] = {};
                vertex_order.push_back(parts[1]);
            } else if (parts[0] == "edge") {
                // edge NAME: U -> V
                std::string rest = detail::trim(line.substr(4));
                std::size_t colon = rest.find(':');
                std::size_t arrow = rest.find("->");
                if (colon == std::string::npos || arrow == std::string::npos)
                    throw detail::parse_error(lineno, "edge syntax: edge NAME: U -> V");
                std::string name = detail::trim(rest.substr(0, colon));
                std::string u = detail::trim(rest.substr(colon + 1, arrow - colon - 1));
                std::string v = detail::trim(rest.substr(arrow + 2));
                if (name.empty() || u.empty() || v.empty())
                    throw detail::parse_error(lineno, "edge syntax: edge NAME: U -> V");
                if (edges.count(name))
                    throw detail::parse_error(lineno, "duplicate edge name '" + name + "' (first at line " +
                                                          std::to_string(edges[name].line) + ")");
                EdgeDecl d;
                d.line = lineno;
                d.u = u;
                d.v = v;
                edges[name] = d;
                edge_order.push_back(name);
            } else if (parts[0] == "base" && parts.size() == 2) {
                base = parts[1];
                base_line = lineno;
            } else {
                throw detail::parse_error(lineno, "unknown [graph] entry '" + parts[0] + "'");
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw detail::parse_error(lineno, "expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw detail::parse_error(lineno, "empty key");

        if (section == "vertex") {
            VertexDecl& d = vertices[section_name];
            if (key == "kind") d.kind = value;
            else if (key == "generators") d.generators = detail::split_ws(value);
            else if (key == "rank") {
                try {
                    d.rank = std::stoi(value);
                } catch (...) {
                    throw detail::parse_error(lineno, "bad rank '" + value + "'");
                }
            } else if (key == "letters") d.letters = detail::split_ws(value);
            else if (key == "table") {
                d.table = value;
                d.table_line = lineno;
            } else d.gen_values[key] = {value, lineno};
        } else { // edge
            EdgeDecl& d = edges[section_name];
            std::vector<std::string> kp = detail::split_ws(key);
            if (key == "generators") d.generators = detail::split_ws(value);
            else if (kp.size() == 2 && kp[0] == "fwd") d.fwd[kp[1]] = {value, lineno};
            else if (kp.size() == 2 && kp[0] == "bwd") d.bwd[kp[1]] = {value, lineno};
            else throw detail::parse_error(lineno, "unknown edge key '" + key + "'");
        }
    }
    if (!saw_graph) throw InputError("missing [graph] section");
    if (vertex_order.empty()) throw InputError("no vertices declared");
    if (base.empty()) throw InputError("missing 'base' in [graph]");
    if (!vertices.count(base)) throw detail::parse_error(base_line, "base vertex '" + base + "' not declared");

    GraphOfGroups g;
    std::map<std::string, int> vertex_id;
    for (const std::string& name : vertex_order) {
        const VertexDecl& d = vertices.at(name);
        int at = d.line ? d.line : 1;
        if (d.kind == "free") {
            std::vector<std::string> letters = d.letters;
            if (letters.empty()) {
                if (d.rank <= 0) throw detail::parse_error(at, "free vertex '" + name + "' needs rank >= 1");
                for (int i = 1; i <= d.rank; ++i) letters.push_back("x" + std::to_string(i));
            }
            if (d.rank > 0 && static_cast<int>(letters.size()) != d.rank)
                throw detail::parse_error(at, "rank and letters disagree for vertex '" + name + "'");
            vertex_id[name] = g.add_vertex(name, VertexGroupOracle::free_group(letters));
        } else if (d.kind == "finite") {
            if (d.generators.empty())
                throw detail::parse_error(at, "finite vertex '" + name + "' needs generators");
            if (!d.table.empty()) {
                std::vector<std::vector<std::int32_t>> rows;
                if (std::isdigit(static_cast<unsigned char>(d.table[0]))) {
                    rows = detail::parse_table_rows(d.table, d.table_line);
                } else {
                    std::ifstream f(source_dir + "/" + d.table);
                    if (!f) throw detail::parse_error(d.table_line, "cannot open table file '" + d.table + "'");
                    std::stringstream buf;
                    buf << f.rdbuf();
                    std::string contents = buf.str();
                    for (char& c : contents)
                        if (c == '\n') c = ';';
                    rows = detail::parse_table_rows(contents, d.table_line);
                }
                std::vector<std::int32_t> gen_elems;
                for (const std::string& gname : d.generators) {
                    auto it = d.gen_values.find(gname);
                    if (it == d.gen_values.end())
                        throw detail::parse_error(at, "generator '" + gname + "' of vertex '" + name +
                                                          "' has no element index");
                    try {
                        gen_elems.push_back(std::stoi(it->second.first));
                    } catch (...) {
                        throw detail::parse_error(it->second.second, "bad element index '" + it->second.first + "'");
                    }
                }
                vertex_id[name] = g.add_vertex(name, VertexGroupOracle::finite_from_table(
                                                         rows, d.generators, gen_elems, caps));
            } else {
                std::vector<Permutation> perms;
                std::size_t degree = 1;
                for (const std::string& gname : d.generators) {
                    auto it = d.gen_values.find(gname);
                    if (it == d.gen_values.end())
                        throw detail::parse_error(at, "generator '" + gname + "' of vertex '" + name +
                                                          "' has no permutation");
                    perms.push_back(detail::parse_cycles(it->second.first, it->second.second));
                    degree = std::max(degree, perms.back().size());
                }
                for (Permutation& p : perms) detail::pad_perm(p, degree);
                vertex_id[name] =
                    g.add_vertex(name, VertexGroupOracle::finite_from_perms(d.generators, perms, caps));
            }
        } else if (d.kind.empty()) {
            throw detail::parse_error(at, "vertex '" + name + "' has no [vertex] section or kind");
        } else {
            throw detail::parse_error(at, "unknown kind '" + d.kind + "' for vertex '" + name + "'");
        }
    }
    g.set_base(vertex_id.at(base));

    for (const std::string& name : edge_order) {
        const EdgeDecl& d = edges.at(name);
        if (!vertex_id.count(d.u))
            throw detail::parse_error(d.line, "edge '" + name + "' references unknown vertex '" + d.u + "'");
        if (!vertex_id.count(d.v))
            throw detail::parse_error(d.line, "edge '" + name + "' references unknown vertex '" + d.v + "'");
        EdgePairData pair;
        pair.name = name;
        pair.u = vertex_id.at(d.u);
        pair.v = vertex_id.at(d.v);
        pair.gen_names = d.generators;
        const GeneratorSet& ugens = g.vertex_group(pair.u).generators();
        const GeneratorSet& vgens = g.vertex_group(pair.v).generators();
        for (const std::string& gname : d.generators) {
            auto fit = d.fwd.find(gname);
            auto bit = d.bwd.find(gname);
            if (fit == d.fwd.end())
                throw detail::parse_error(d.line, "edge '" + name + "': missing 'fwd " + gname + "'");
            if (bit == d.bwd.end())
                throw detail::parse_error(d.line, "edge '" + name + "': missing 'bwd " + gname + "'");
            try {
                pair.fwd_words.push_back(ugens.parse_word(fit->second.first));
            } catch (const InputError& e) {
                throw detail::parse_error(fit->second.second, e.what());
            }
            try {
                pair.bwd_words.push_back(vgens.parse_word(bit->second.first));
            } catch (const InputError& e) {
                throw detail::parse_error(bit->second.second, e.what());
            }
        }
        for (const auto& [gname, val] : d.fwd)
            if (std::find(d.generators.begin(), d.generators.end(), gname) == d.generators.end())
                throw detail::parse_error(val.second, "edge '" + name + "': 'fwd " + gname +
                                                          "' for undeclared generator");
        for (const auto& [gname, val] : d.bwd)
            if (std::find(d.generators.begin(), d.generators.end(), gname) == d.generators.end())
                throw detail::parse_error(val.second, "edge '" + name + "': 'bwd " + gname +
                                                          "' for undeclared generator");
        g.add_edge_pair(std::move(pair));
    }
    g.prepare(caps);
    return g;
}

inline GraphOfGroups load_spec_file(const std::string& path, const Caps& caps = {}) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    std::string dir = ".";
    std::size_t slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return parse_spec(buf.str(), dir, caps);
}

// Canonical text form; parsing it back yields an identical model.  Finite
// groups print as full multiplication tables regardless of how they were
// given.
inline std::string print_spec(const GraphOfGroups& g) {
    std::ostringstream os;
    os << "[graph]\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) os << "vertex " << g.vertex_name(static_cast<int>(v)) << "\n";
    for (std::size_t p = 0; p < g.num_edge_pairs(); ++p) {
        const EdgePairData& e = g.edge_pair(static_cast<int>(p));
        os << "edge " << e.name << ": " << g.vertex_name(e.u) << " -> " << g.vertex_name(e.v) << "\n";
    }
    os << "base " << g.vertex_name(g.base_vertex()) << "\n";
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        const VertexGroupOracle& o = g.vertex_group(static_cast<int>(v));
        os << "\n[vertex " << g.vertex_name(static_cast<int>(v)) << "]\n";
        if (o.kind() == GroupKind::FreeOfRank) {
            os << "kind = free\n";
            os << "rank = " << o.rank() << "\n";
            os << "letters =";
            for (std::size_t l = 1; l < o.generators().size(); l += 2)
                os << " " << o.generators().name(static_cast<LetterId>(l));
            os << "\n";
        } else {
            os << "kind = finite\n";
            os << "generators =";
            for (std::size_t l = 1; l < o.generators().size(); l += 2)
                os << " " << o.generators().name(static_cast<LetterId>(l));
            os << "\n";
            os << "table = ";
            for (std::size_t a = 0; a < o.order(); ++a) {
                if (a) os << "; ";
                for (std::size_t b = 0; b < o.order(); ++b) {
                    if (b) os << " ";
                    os << o.multiply_elem(CanonElem{{static_cast<std::int32_t>(a)}},
                                          CanonElem{{static_cast<std::int32_t>(b)}})
                              .v[0];
                }
            }
            os << "\n";
            for (std::size_t l = 1; l < o.generators().size(); l += 2) {
                CanonElem e = o.multiply_letter(o.identity_elem(), static_cast<LetterId>(l));
                os << o.generators().name(static_cast<LetterId>(l)) << " = " << e.v[0] << "\n";
            }
        }
    }
    auto plain_word = [](const GeneratorSet& gens, const Word& w) {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out.push_back(' ');
            out += gens.name(w[i]);
        }
        return out;
    };
    for (std::size_t p = 0; p < g.num_edge_pairs(); ++p) {
        const EdgePairData& e = g.edge_pair(static_cast<int>(p));
        os << "\n[edge " << e.name << "]\n";
        os << "generators =";
        for (const std::string& n : e.gen_names) os << " " << n;
        os << "\n";
        for (std::size_t i = 0; i < e.gen_names.size(); ++i) {
            os << "fwd " << e.gen_names[i] << " = "
               << plain_word(g.vertex_group(e.u).generators(), e.fwd_words[i]) << "\n";
            os << "bwd " << e.gen_names[i] << " = "
               << plain_word(g.vertex_group(e.v).generators(), e.bwd_words[i]) << "\n";
        }
    }
    return os.str();
}

} // namespace gogauto
