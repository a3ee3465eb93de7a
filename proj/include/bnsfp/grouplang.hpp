#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnsfp/lattice.hpp"

namespace bnsfp::grouplang {

using lattice::Int;

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

struct GraphError : std::runtime_error {
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// One letter of a word: generator index and exponent sign.
struct Letter {
    int gen;
    int sign;  // +1 or -1
    bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
};

using Word = std::vector<Letter>;

Word free_reduce(Word w);
Word cyclic_reduce(Word w);
Word invert(const Word& w);

// Word in the given generators.  Letters are generator names with an
// optional ^k exponent (k a nonzero integer); whitespace is ignored.
Word parse_word(const std::string& text, const std::vector<std::string>& generators,
                std::size_t base_pos = 0);

struct OneRelatorPresentation {
    std::vector<std::string> generators;  // exactly 2
    Word relator;                         // nonempty, cyclically reduced
};

// "a,b | w" or "a,b | u = v" (the relator becomes u v^-1).
OneRelatorPresentation parse_presentation(const std::string& text);
// Same relator grammar, generators given separately (the JSON file form).
OneRelatorPresentation make_presentation(const std::vector<std::string>& generators,
                                         const std::string& relator_text);

struct PrefixWalk {
    // abelianized images of the proper initial subwords: P_0 = (0,0), ...,
    // P_{l-1}
    std::vector<std::array<Int, 2>> points;
    std::array<Int, 2> total;  // P_l, the exponent-sum vector of the relator
};

PrefixWalk prefix_walk(const OneRelatorPresentation& p);

struct SimplicialGraph {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
    std::vector<std::uint32_t> adj;                          // adjacency bitmasks

    std::size_t size() const { return vertices.size(); }
    bool adjacent(std::size_t i, std::size_t j) const {
        return (adj[i] >> j) & 1u;
    }
    std::size_t vertex_index(const std::string& name) const;
};

// Validates: no loops, no duplicate edges, known vertex names, at most 32
// vertices (separator enumeration is capped at 20).
SimplicialGraph make_graph(const std::vector<std::string>& vertices,
                           const std::vector<std::pair<std::string, std::string>>& edges);

bool is_connected(const SimplicialGraph& g);

// All inclusion-minimal S with g - S disconnected, sorted by size then
// lexicographically.  A graph with at most one vertex counts as connected;
// a disconnected graph yields { {} }.  Brute-force over subsets, pruning
// supersets of separators already found; capped at 20 vertices.
std::vector<std::vector<std::size_t>> minimal_separators(const SimplicialGraph& g);

// True iff the complement graph is disconnected, i.e. the RAAG splits as a
// nontrivial direct product.
bool is_direct_product(const SimplicialGraph& g);

}  // namespace bnsfp::grouplang
