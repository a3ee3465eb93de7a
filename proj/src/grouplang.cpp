#include "bnsfp/grouplang.hpp"

#include <algorithm>
#include <cctype>

namespace bnsfp::grouplang {

Word free_reduce(Word w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(Word w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front().gen == w.back().gen &&
           w.front().sign == -w.back().sign) {
        w.pop_back();
        w.erase(w.begin());
    }
    return w;
}

Word invert(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(Letter{it->gen, -it->sign});
    return out;
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Cursor {
    const std::string& s;
    std::size_t pos;
    std::size_t base;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, base + pos); }
};

// Longest declared generator name matching at the cursor.
int match_generator(Cursor& c, const std::vector<std::string>& gens) {
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::string& name = gens[g];
        if (name.size() > best_len && c.s.compare(c.pos, name.size(), name) == 0) {
            best = static_cast<int>(g);
            best_len = name.size();
        }
    }
    if (best >= 0) c.pos += best_len;
    return best;
}

long parse_exponent(Cursor& c) {
    c.skip_ws();
    bool negative = false;
    if (c.pos < c.s.size() && (c.s[c.pos] == '-' || c.s[c.pos] == '+')) {
        negative = c.s[c.pos] == '-';
        ++c.pos;
        c.skip_ws();
    }
    if (c.pos >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.pos])))
        c.fail("expected integer exponent after '^'");
    long v = 0;
    while (c.pos < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
        v = v * 10 + (c.s[c.pos] - '0');
        if (v > 1000000) c.fail("exponent too large");
        ++c.pos;
    }
    if (v == 0) c.fail("exponent must be nonzero");
    return negative ? -v : v;
}

Word parse_one_side(Cursor& c, const std::vector<std::string>& gens) {
    Word w;
    while (!c.done()) {
        if (c.s[c.pos] == '=') break;
        if (!ident_start(c.s[c.pos])) c.fail("expected generator name");
        int g = match_generator(c, gens);
        if (g < 0) {
            std::size_t at = c.pos;
            std::string tok;
            while (c.pos < c.s.size() && ident_char(c.s[c.pos])) tok += c.s[c.pos++];
            throw ParseError("unknown generator '" + tok + "'", c.base + at);
        }
        long e = 1;
        c.skip_ws();
        if (c.pos < c.s.size() && c.s[c.pos] == '^') {
            ++c.pos;
            e = parse_exponent(c);
        } else if (c.pos < c.s.size() &&
                   std::isdigit(static_cast<unsigned char>(c.s[c.pos]))) {
            c.fail("exponents require '^'");
        }
        int sign = e > 0 ? 1 : -1;
        for (long k = 0; k < (e > 0 ? e : -e); ++k) w.push_back(Letter{g, sign});
    }
    return w;
}

}  // namespace

Word parse_word(const std::string& text, const std::vector<std::string>& generators,
                std::size_t base_pos) {
    Cursor c{text, 0, base_pos};
    Word u = parse_one_side(c, generators);
    if (!c.done()) {
        // "u = v" becomes u v^-1
        if (c.s[c.pos] != '=') c.fail("unexpected character");
        ++c.pos;
        Word v = parse_one_side(c, generators);
        if (!c.done()) c.fail("unexpected character after relator");
        Word vi = invert(v);
        u.insert(u.end(), vi.begin(), vi.end());
    }
    return free_reduce(std::move(u));
}

namespace {

OneRelatorPresentation build_presentation(const std::vector<std::string>& generators,
                                          const std::string& relator_text,
                                          std::size_t base_pos) {
    if (generators.size() != 2)
        throw ParseError("one-relator front end needs exactly 2 generators, got " +
                             std::to_string(generators.size()),
                         0);
    for (const auto& g : generators) {
        if (g.empty() || !ident_start(g[0]) ||
            !std::all_of(g.begin(), g.end(), ident_char))
            throw ParseError("invalid generator name '" + g + "'", 0);
    }
    if (generators[0] == generators[1])
        throw ParseError("duplicate generator name '" + generators[0] + "'", 0);
    OneRelatorPresentation p;
    p.generators = generators;
    p.relator = cyclic_reduce(parse_word(relator_text, generators, base_pos));
    if (p.relator.empty())
        throw ParseError("relator reduces to the empty word", base_pos);
    return p;
}

}  // namespace

OneRelatorPresentation make_presentation(const std::vector<std::string>& generators,
                                         const std::string& relator_text) {
    return build_presentation(generators, relator_text, 0);
}

OneRelatorPresentation parse_presentation(const std::string& text) {
    std::size_t bar = text.find('|');
    if (bar == std::string::npos) throw ParseError("expected '|'", text.size());
    std::vector<std::string> gens;
    std::string cur;
    for (std::size_t i = 0; i < bar; ++i) {
        char ch = text[i];
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == ',') {
            if (cur.empty()) throw ParseError("empty generator name", i);
            gens.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) gens.push_back(cur);
    return build_presentation(gens, text.substr(bar + 1), bar + 1);
}

PrefixWalk prefix_walk(const OneRelatorPresentation& p) {
    PrefixWalk w;
    w.total = {Int(0), Int(0)};
    std::array<Int, 2> cur = {Int(0), Int(0)};
    for (const auto& l : p.relator) {
        w.points.push_back(cur);
        cur[static_cast<std::size_t>(l.gen)] += l.sign;
    }
    w.total = cur;
    return w;
}

std::size_t SimplicialGraph::vertex_index(const std::string& name) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return i;
    throw GraphError("unknown vertex '" + name + "'");
}

SimplicialGraph make_graph(const std::vector<std::string>& vertices,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
    if (vertices.size() > 32) throw GraphError("graph too large (limit 32 vertices)");
    SimplicialGraph g;
    g.vertices = vertices;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j])
                throw GraphError("duplicate vertex '" + vertices[i] + "'");
    g.adj.assign(vertices.size(), 0);
    for (const auto& [ua, ub] : edges) {
        std::size_t a = g.vertex_index(ua), b = g.vertex_index(ub);
        if (a == b) throw GraphError("loop at vertex '" + ua + "'");
        if (a > b) std::swap(a, b);
        if (g.adjacent(a, b))
            throw GraphError("duplicate edge " + ua + "-" + ub);
        g.adj[a] |= 1u << b;
        g.adj[b] |= 1u << a;
        g.edges.emplace_back(a, b);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace {

// connectivity of the subgraph induced by `mask`
bool mask_connected(const SimplicialGraph& g, std::uint32_t mask) {
    if (mask == 0) return true;
    std::uint32_t start = mask & (~mask + 1);
    std::uint32_t seen = start, frontier = start;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::size_t v = 0; v < g.size(); ++v)
            if ((frontier >> v) & 1u) next |= g.adj[v] & mask;
        frontier = next & ~seen;
        seen |= frontier;
    }
    return seen == mask;
}

}  // namespace

bool is_connected(const SimplicialGraph& g) {
    std::uint32_t all = g.size() == 32 ? 0xffffffffu : ((1u << g.size()) - 1u);
    return mask_connected(g, all);
}

std::vector<std::vector<std::size_t>> minimal_separators(const SimplicialGraph& g) {
    std::size_t n = g.size();
    if (n > 20) throw GraphError("separator enumeration is capped at 20 vertices");
    std::uint32_t all = n == 0 ? 0 : ((1u << n) - 1u);

    std::vector<std::uint32_t> found;
    std::vector<std::vector<std::size_t>> out;
    // subsets by size, then lexicographic: supersets of a separator already
    // found cannot be inclusion-minimal
    for (std::size_t size = 0; size < n; ++size) {
        std::vector<std::size_t> comb(size);
        for (std::size_t i = 0; i < size; ++i) comb[i] = i;
        for (;;) {
            std::uint32_t s = 0;
            for (std::size_t i : comb) s |= 1u << i;
            bool pruned = false;
            for (std::uint32_t f : found)
                if ((s & f) == f) {
                    pruned = true;
                    break;
                }
            std::uint32_t rest = all & ~s;
            // a graph with <= 1 vertex counts as connected
            if (!pruned && __builtin_popcount(rest) >= 2 && !mask_connected(g, rest)) {
                found.push_back(s);
                out.push_back(comb);
            }
            // next combination
            if (size == 0) break;
            std::size_t i = size;
            while (i > 0 && comb[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    return out;
}

bool is_direct_product(const SimplicialGraph& g) {
    std::size_t n = g.size();
    SimplicialGraph comp;
    comp.vertices = g.vertices;
    comp.adj.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !g.adjacent(i, j)) comp.adj[i] |= 1u << j;
    return !is_connected(comp);
}

}  // namespace bnsfp::grouplang
