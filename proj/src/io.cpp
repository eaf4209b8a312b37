#include "degedit/io.hpp"

#include "degedit/errors.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace degedit {

namespace {

auto tokens(const std::string& line) -> std::vector<std::string>
{
    std::istringstream in(line.substr(0, line.find('#')));
    std::vector<std::string> out;
    for (std::string t; in >> t;)
        out.push_back(t);
    return out;
}

auto integer(const std::string& t, std::size_t line) -> std::int64_t
{
    try {
        std::size_t used = 0;
        auto value = std::stoll(t, &used);
        if (used == t.size())
            return value;
    } catch (const std::exception&) {
    }
    throw ParseError(line, "expected an integer, got '" + t + "'");
}

} // namespace

auto parse_instance(const std::string& text) -> Instance
{
    Instance inst;
    std::istringstream in(text);
    std::size_t lineno = 0;
    bool header = false;
    std::int64_t n = 0, m = 0, vs = 0, es = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto t = tokens(line);
        if (t.empty())
            continue;
        auto num = [&](std::size_t i) { return integer(t[i], lineno); };
        if (! header) {
            if (t[0] != "p" || t.size() != 8 || t[1] != "degedit")
                throw ParseError(lineno, "expected 'p degedit <n> <m> <k_v> <k_e> <C> <variant>'");
            n = num(2);
            m = num(3);
            inst.k_v = num(4);
            inst.k_e = num(5);
            inst.cost_budget = num(6);
            auto variant = num(7);
            if (n < 0 || m < 0)
                throw ParseError(lineno, "negative vertex or edge count");
            if (inst.k_v < 0 || inst.k_e < 0 || inst.cost_budget < 0)
                throw ParseError(lineno, "negative budget");
            if (variant != 0 && variant != 1)
                throw ParseError(lineno, "variant must be 0 or 1");
            inst.variant = variant == 1 ? Variant::connected : Variant::plain;
            header = true;
            continue;
        }
        if (t[0] == "v") {
            if (t.size() != 5)
                throw ParseError(lineno, "expected 'v <id> <delta> <weight> <cost>'");
            if (es > 0)
                throw ParseError(lineno, "vertex line after edge lines");
            auto id = num(1), delta = num(2), w = num(3), c = num(4);
            if (id != vs + 1)
                throw ParseError(lineno, "vertex ids must be 1..n in order, expected " + std::to_string(vs + 1));
            if (id > n)
                throw ParseError(lineno, "more vertex lines than declared");
            if (delta < 0)
                throw ParseError(lineno, "negative degree target");
            if (w < 1)
                throw ParseError(lineno, "vertex weight below 1");
            if (c < 0)
                throw ParseError(lineno, "negative vertex cost");
            inst.add_vertex(id, delta, w, c);
            ++vs;
        } else if (t[0] == "e") {
            if (t.size() != 5)
                throw ParseError(lineno, "expected 'e <u> <v> <weight> <cost>'");
            auto u = num(1), v = num(2), w = num(3), c = num(4);
            if (! inst.graph.has_vertex(u) || ! inst.graph.has_vertex(v))
                throw ParseError(lineno, "edge names an undeclared vertex");
            if (u >= v)
                throw ParseError(lineno, "edge endpoints must satisfy u < v");
            if (inst.graph.adjacent(u, v))
                throw ParseError(lineno, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
            if (w < 1)
                throw ParseError(lineno, "edge weight below 1");
            if (c < 0)
                throw ParseError(lineno, "negative edge cost");
            if (++es > m)
                throw ParseError(lineno, "more edge lines than declared");
            inst.add_edge(u, v, w, c);
        } else {
            throw ParseError(lineno, "unknown line type '" + t[0] + "'");
        }
    }
    if (! header)
        throw ParseError(lineno, "missing header line");
    if (vs != n)
        throw ParseError(lineno, "declared " + std::to_string(n) + " vertices, found " + std::to_string(vs));
    if (es != m)
        throw ParseError(lineno, "declared " + std::to_string(m) + " edges, found " + std::to_string(es));
    if (! is_planar(inst.graph))
        throw ParseError(0, "graph is not planar");
    return inst;
}

auto write_instance(const Instance& inst) -> std::string
{
    std::map<Vertex, Vertex> id;
    for (auto v : inst.graph.vertices())
        id.emplace(v, static_cast<Vertex>(id.size() + 1));
    std::ostringstream out;
    out << "p degedit " << inst.graph.order() << ' ' << inst.graph.size() << ' ' << inst.k_v << ' ' << inst.k_e
        << ' ' << inst.cost_budget << ' ' << (inst.variant == Variant::connected ? 1 : 0) << '\n';
    for (const auto& [v, i] : id)
        out << "v " << i << ' ' << inst.delta.at(v) << ' ' << inst.weight_v.at(v) << ' ' << inst.cost_v.at(v) << '\n';
    std::vector<std::array<std::int64_t, 4>> lines;
    for (const auto& e : inst.graph.edges()) {
        auto a = id.at(e.u), b = id.at(e.v);
        lines.push_back({std::min(a, b), std::max(a, b), inst.weight_e.at(e), inst.cost_e.at(e)});
    }
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines)
        out << "e " << l[0] << ' ' << l[1] << ' ' << l[2] << ' ' << l[3] << '\n';
    return out.str();
}

auto format_solution(const std::optional<Solution>& sol) -> std::string
{
    if (! sol)
        return "s no\n";
    std::ostringstream out;
    out << "s yes\nc " << sol->cost << "\nd";
    for (auto v : sol->vertices)
        out << ' ' << v;
    out << "\nr";
    for (const auto& e : sol->edges)
        out << ' ' << e.u << '-' << e.v;
    out << '\n';
    return out.str();
}

auto read_file(const std::string& path) -> std::string
{
    std::ifstream in(path);
    if (! in)
        throw ParseError(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

auto write_file(const std::string& path, const std::string& text) -> void
{
    std::ofstream out(path);
    if (! out || ! (out << text))
        throw std::runtime_error("cannot write " + path);
}

auto generate_random_planar_instance(const GeneratorOptions& options) -> Instance
{
    std::mt19937_64 rng(options.seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };

    const auto n = static_cast<Vertex>(options.n);
    EdgeSet edges;
    std::vector<std::array<Vertex, 3>> faces;
    for (Vertex v = 1; v <= n; ++v) {
        if (v == 2) {
            edges.insert(make_edge(1, 2));
        } else if (v == 3) {
            edges.insert({make_edge(1, 3), make_edge(2, 3)});
            faces = {{1, 2, 3}, {1, 2, 3}}; // inner and outer face
        } else if (v > 3) {
            auto f = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(faces.size()) - 1));
            auto [a, b, c] = faces[f];
            edges.insert({make_edge(a, v), make_edge(b, v), make_edge(c, v)});
            faces[f] = {a, b, v};
            faces.push_back({a, c, v});
            faces.push_back({b, c, v});
        }
    }

    Instance inst;
    inst.k_v = options.k_v;
    inst.k_e = options.k_e;
    inst.cost_budget = options.cost_budget;
    inst.variant = options.variant;
    for (Vertex v = 1; v <= n; ++v)
        inst.add_vertex(v, 0, uniform(1, 2), uniform(0, 2));
    auto keep_percent = uniform(40, 90);
    for (const auto& e : edges)
        if (uniform(1, 100) <= keep_percent)
            inst.add_edge(e.u, e.v, uniform(1, 2), uniform(0, 2));
    const auto reach = std::max<std::int64_t>(0, options.k_v + options.k_e);
    if (options.raw) {
        for (Vertex v = 1; v <= n; ++v)
            inst.delta[v] = uniform(0, inst.degree(v) + 1);
        return inst;
    }
    // Mostly plant a random efficient pair (U, D) within the budgets and give kept vertices
    // their degree in G - U - D, so yes-instances are common; otherwise draw from the window.
    VertexSet planted_u;
    EdgeSet planted_d;
    if (uniform(0, 2) != 0) {
        std::int64_t used = 0;
        for (Vertex v = 1; v <= n; ++v)
            if (uniform(0, 5) == 0 && used + inst.weight_v.at(v) <= options.k_v) {
                planted_u.insert(v);
                used += inst.weight_v.at(v);
            }
        used = 0;
        for (const auto& e : inst.graph.edges())
            if (! planted_u.contains(e.u) && ! planted_u.contains(e.v) && uniform(0, 3) == 0
                && used + inst.weight_e.at(e) <= options.k_e) {
                planted_d.insert(e);
                used += inst.weight_e.at(e);
            }
    }
    const bool planted = ! planted_u.empty() || ! planted_d.empty();
    for (Vertex v = 1; v <= n; ++v) {
        auto d = inst.degree(v);
        auto lo = std::max<std::int64_t>(0, d - reach);
        if (planted && ! planted_u.contains(v)) {
            std::int64_t kept = 0;
            for (auto u : inst.graph.neighbors(v))
                kept += planted_u.contains(u) || planted_d.contains(make_edge(u, v)) ? 0 : 1;
            inst.delta[v] = kept;
        } else {
            inst.delta[v] = uniform(0, 1) == 0 ? d : uniform(lo, d);
        }
    }
    return inst;
}

} // namespace degedit
