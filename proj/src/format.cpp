#include "eblocks/format.hpp"

#include <algorithm>
#include <initializer_list>

#include <json.hpp>

namespace eblocks {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json parse_root(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw error(errc::malformed_text, "input is not valid JSON");
    if (!j.is_object()) throw error(errc::malformed_text, "top level must be a JSON object");
    return j;
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known)
            throw error(errc::unknown_field, "unknown field '" + item.key() + "' in " + where);
    }
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw error(errc::malformed_text, std::string("missing field '") + key + "' in " + where);
    return *it;
}

int64_t as_int(const json& v, const std::string& what) {
    if (!v.is_number_integer())
        throw error(errc::malformed_text, what + " must be an integer");
    return v.get<int64_t>();
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) throw error(errc::malformed_text, what + " must be a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& what) {
    if (!v.is_boolean()) throw error(errc::malformed_text, what + " must be a boolean");
    return v.get<bool>();
}

mpq_class parse_rational(const std::string& s) {
    // Accept "-123", "4/56" style exact rationals only.
    const auto slash = s.find('/');
    auto digits = [](const std::string& part, bool sign_ok) {
        if (part.empty()) return false;
        size_t i = sign_ok && part[0] == '-' ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw error(errc::bad_value, "'" + s + "' is not an exact rational");
    mpq_class q(s);
    if (q.get_den() == 0) throw error(errc::bad_value, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

struct ParsedVertices {
    std::vector<std::string> ids;
    std::map<std::string, int64_t> mod_values;
    TorusLabeling torus_values;
    // Decorations (used by the decorated format only).
    std::map<std::string, Color> color;
    std::map<std::string, int64_t> k_f, k_inf, k_l;
};

ParsedVertices parse_vertices(const json& root, bool decorated) {
    const json& vs = require_field(root, "vertices", "graph file");
    if (!vs.is_array()) throw error(errc::malformed_text, "'vertices' must be an array");
    ParsedVertices out;
    for (const json& v : vs) {
        if (!v.is_object()) throw error(errc::malformed_text, "vertex entries must be objects");
        if (decorated) {
            require_keys(v, {"id", "color", "k_f", "k_inf", "k_l"}, "vertex");
        } else {
            require_keys(v, {"id", "lambda"}, "vertex");
        }
        const std::string id = as_string(require_field(v, "id", "vertex"), "vertex id");
        out.ids.push_back(id);
        if (v.contains("lambda")) {
            const json& lam = v["lambda"];
            if (lam.is_number_integer()) {
                out.mod_values[id] = lam.get<int64_t>();
            } else if (lam.is_array() && lam.size() == 2) {
                const mpq_class x = parse_rational(as_string(lam[0], "lambda coordinate"));
                const mpq_class y = parse_rational(as_string(lam[1], "lambda coordinate"));
                out.torus_values[id] = TorusPoint(x, y);
            } else {
                throw error(errc::malformed_text,
                            "lambda must be an integer or a pair of rationals");
            }
        }
        if (decorated) {
            const std::string c = as_string(require_field(v, "color", "vertex"), "color");
            if (c == "red") out.color[id] = Color::red;
            else if (c == "green") out.color[id] = Color::green;
            else throw error(errc::malformed_text, "color must be 'red' or 'green'");
            if (v.contains("k_f")) out.k_f[id] = as_int(v["k_f"], "k_f");
            if (v.contains("k_inf")) out.k_inf[id] = as_int(v["k_inf"], "k_inf");
            if (v.contains("k_l")) out.k_l[id] = as_int(v["k_l"], "k_l");
        }
    }
    if (!out.mod_values.empty() && !out.torus_values.empty())
        throw error(errc::malformed_text,
                    "a file cannot mix integer and torus lambda values");
    return out;
}

std::vector<EdgeSpec> parse_edges(const json& root) {
    const json& es = require_field(root, "edges", "graph file");
    if (!es.is_array()) throw error(errc::malformed_text, "'edges' must be an array");
    std::vector<EdgeSpec> out;
    for (const json& e : es) {
        if (!e.is_object()) throw error(errc::malformed_text, "edge entries must be objects");
        require_keys(e, {"u", "v", "mu", "distinguished"}, "edge");
        EdgeSpec spec;
        spec.u = as_string(require_field(e, "u", "edge"), "edge endpoint");
        spec.v = as_string(require_field(e, "v", "edge"), "edge endpoint");
        if (e.contains("mu")) spec.mu = as_int(e["mu"], "mu");
        if (e.contains("distinguished")) spec.distinguished = as_bool(e["distinguished"], "distinguished");
        out.push_back(std::move(spec));
    }
    return out;
}

std::optional<int64_t> parse_prime_field(const json& root) {
    if (!root.contains("prime")) return std::nullopt;
    return as_int(root["prime"], "prime");
}

void check_mod_range(const std::map<std::string, int64_t>& values, int64_t p) {
    for (const auto& [id, value] : values)
        if (value < 0 || value >= p)
            throw error(errc::bad_value, "lambda for '" + id + "' outside [0, prime)");
}

ordered vertex_json(const std::string& id, const GraphFile& f) {
    ordered v;
    v["id"] = id;
    auto mv = f.mod_values.find(id);
    if (mv != f.mod_values.end()) {
        v["lambda"] = mv->second;
    } else {
        auto tv = f.torus_values.find(id);
        if (tv != f.torus_values.end())
            v["lambda"] = {tv->second.x.get_str(), tv->second.y.get_str()};
    }
    return v;
}

ordered edges_json(const WeightedGraph& g) {
    ordered es = ordered::array();
    for (const auto& e : g.edges()) {
        ordered o;
        o["u"] = e.u;
        o["v"] = e.v;
        if (g.mu(e.u, e.v) != 1) o["mu"] = g.mu(e.u, e.v);
        if (g.is_distinguished(e.u, e.v)) o["distinguished"] = true;
        es.push_back(std::move(o));
    }
    return es;
}

} // namespace

GraphFile parse_graph(const std::string& text) {
    const json root = parse_root(text);
    require_keys(root, {"prime", "vertices", "edges"}, "graph file");
    ParsedVertices vs = parse_vertices(root, false);
    std::optional<int64_t> prime = parse_prime_field(root);
    if (prime) check_mod_range(vs.mod_values, *prime);
    WeightedGraph g = WeightedGraph::create(std::move(vs.ids), parse_edges(root));
    return GraphFile{prime, std::move(g), std::move(vs.mod_values), std::move(vs.torus_values)};
}

std::string serialize_graph(const GraphFile& f) {
    ordered root;
    if (f.prime) root["prime"] = *f.prime;
    ordered vs = ordered::array();
    for (const auto& id : f.graph.vertices()) vs.push_back(vertex_json(id, f));
    root["vertices"] = std::move(vs);
    root["edges"] = edges_json(f.graph);
    return root.dump(2) + "\n";
}

DecoratedBipartiteGraph parse_decorated(const std::string& text) {
    const json root = parse_root(text);
    require_keys(root, {"vertices", "edges"}, "decorated file");
    ParsedVertices vs = parse_vertices(root, true);
    WeightedGraph g = WeightedGraph::create(std::move(vs.ids), parse_edges(root));
    return DecoratedBipartiteGraph::create(std::move(g), std::move(vs.color), std::move(vs.k_f),
                                           std::move(vs.k_inf), std::move(vs.k_l));
}

std::string serialize_decorated(const DecoratedBipartiteGraph& d) {
    ordered root;
    ordered vs = ordered::array();
    for (const auto& id : d.graph().vertices()) {
        ordered v;
        v["id"] = id;
        if (d.color(id) == Color::red) {
            v["color"] = "red";
            v["k_f"] = d.k_f(id);
            v["k_inf"] = d.k_inf(id);
        } else {
            v["color"] = "green";
            v["k_l"] = d.k_l(id);
        }
        vs.push_back(std::move(v));
    }
    root["vertices"] = std::move(vs);
    root["edges"] = edges_json(d.graph());
    return root.dump(2) + "\n";
}

namespace {

// Shared by block and open-block parsing: prime + total integer labeling.
struct LabeledParse {
    WeightedGraph graph;
    ModularLabeling labeling;
};

LabeledParse parse_labeled(const json& root) {
    ParsedVertices vs = parse_vertices(root, false);
    if (!vs.torus_values.empty())
        throw error(errc::malformed_text, "this format requires integer lambda values");
    const int64_t p = as_int(require_field(root, "prime", "file"), "prime");
    WeightedGraph g = WeightedGraph::create(std::move(vs.ids), parse_edges(root));
    ModularLabeling lam = ModularLabeling::create(g, p, std::move(vs.mod_values));
    return LabeledParse{std::move(g), std::move(lam)};
}

Edge parse_edge_ref(const json& v, const std::string& where) {
    if (!v.is_object()) throw error(errc::malformed_text, where + " must be an object");
    require_keys(v, {"u", "v"}, where);
    return Edge(as_string(require_field(v, "u", where), "edge endpoint"),
                as_string(require_field(v, "v", where), "edge endpoint"));
}

} // namespace

BlockCandidate parse_block(const std::string& text) {
    const json root = parse_root(text);
    require_keys(root, {"prime", "vertices", "edges", "boundary_edge", "a", "b"}, "block file");
    LabeledParse lp = parse_labeled(root);
    Edge boundary = parse_edge_ref(require_field(root, "boundary_edge", "block file"),
                                   "boundary_edge");
    for (const auto& end : {boundary.u, boundary.v})
        if (!lp.graph.has_vertex(end))
            throw error(errc::unknown_vertex,
                        "boundary_edge names unknown vertex '" + end + "'");
    const int64_t a = as_int(require_field(root, "a", "block file"), "a");
    const int64_t b = as_int(require_field(root, "b", "block file"), "b");
    return BlockCandidate{std::move(lp.graph), std::move(lp.labeling), std::move(boundary), a, b};
}

std::string serialize_block(const BlockCandidate& c) {
    ordered root;
    root["prime"] = c.labeling.p;
    GraphFile f{c.labeling.p, c.graph, c.labeling.values, {}};
    ordered vs = ordered::array();
    for (const auto& id : c.graph.vertices()) vs.push_back(vertex_json(id, f));
    root["vertices"] = std::move(vs);
    root["edges"] = edges_json(c.graph);
    root["boundary_edge"] = {{"u", c.boundary_edge.u}, {"v", c.boundary_edge.v}};
    root["a"] = c.a;
    root["b"] = c.b;
    return root.dump(2) + "\n";
}

std::string serialize_block(const BuildingBlock& blk) {
    return serialize_block(
        BlockCandidate{blk.graph(), blk.labeling(), blk.boundary_edge(), blk.a(), blk.b()});
}

OpenBlock parse_open_block(const std::string& text) {
    const json root = parse_root(text);
    require_keys(root, {"prime", "vertices", "edges", "a_end", "b_end"}, "open-block file");
    LabeledParse lp = parse_labeled(root);
    const std::string a_end = as_string(require_field(root, "a_end", "open-block file"), "a_end");
    const std::string b_end = as_string(require_field(root, "b_end", "open-block file"), "b_end");
    if (a_end == b_end) throw error(errc::bad_boundary, "a_end and b_end must differ");
    for (const auto& end : {a_end, b_end}) {
        if (!lp.graph.has_vertex(end))
            throw error(errc::unknown_vertex, "end vertex '" + end + "' not in the graph");
        if (lp.graph.degree(end) != 1)
            throw error(errc::bad_boundary, "end vertex '" + end + "' must have degree 1");
    }
    const Edge entry(a_end, lp.graph.neighbors(a_end)[0]);
    const Edge exit(b_end, lp.graph.neighbors(b_end)[0]);
    const int64_t a = lp.labeling.at(a_end);
    const int64_t b = lp.labeling.at(b_end);
    // Cutting a block adds one edge and drops betti by one; undo both.
    const int64_t closed_edges = lp.graph.edge_count() - 1;
    const int64_t closed_betti = lp.graph.first_betti() + 1;
    return OpenBlock{std::move(lp.graph), std::move(lp.labeling), a_end, b_end,
                     entry,               exit,                   a,     b,
                     closed_edges,        closed_betti};
}

std::string serialize_open_block(const OpenBlock& h) {
    ordered root;
    root["prime"] = h.labeling.p;
    GraphFile f{h.labeling.p, h.graph, h.labeling.values, {}};
    ordered vs = ordered::array();
    for (const auto& id : h.graph.vertices()) vs.push_back(vertex_json(id, f));
    root["vertices"] = std::move(vs);
    root["edges"] = edges_json(h.graph);
    root["a_end"] = h.a_end;
    root["b_end"] = h.b_end;
    return root.dump(2) + "\n";
}

std::map<std::string, int> parse_branches(const std::string& text) {
    const json root = parse_root(text);
    std::map<std::string, int> out;
    for (const auto& item : root.items()) {
        const json& v = item.value();
        if (v.is_string()) {
            if (v.get<std::string>() != "equation")
                throw error(errc::bad_branch,
                            "branch for '" + item.key() + "' must be 'equation' or an integer");
            out[item.key()] = BranchAssignment::equation;
        } else if (v.is_number_integer()) {
            out[item.key()] = int(v.get<int64_t>());
        } else {
            throw error(errc::bad_branch,
                        "branch for '" + item.key() + "' must be 'equation' or an integer");
        }
    }
    return out;
}

std::string serialize_plan(const ConstructionPlan& p) {
    ordered root;
    root["base"] = p.base;
    root["degree"] = p.degree;
    root["genus"] = p.genus;
    ordered steps = ordered::array();
    for (const auto& s : p.steps)
        steps.push_back(ordered{{"block", s.block}, {"site_index", s.site_index}});
    root["steps"] = std::move(steps);
    root["note"] = p.note;
    return root.dump(2) + "\n";
}

std::string serialize_labeled_graph(const LabeledGraph& lg) {
    return serialize_graph(GraphFile{lg.labeling.p, lg.graph, lg.labeling.values, {}});
}

} // namespace eblocks
