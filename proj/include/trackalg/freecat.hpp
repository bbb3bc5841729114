#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trackalg/trackcat.hpp"

namespace trackalg {

struct GraphEdge {
    std::string id;
    int src = 0;
    int dst = 0;
};

struct Graph {
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;

    int vertex_index(const std::string& name) const;
    void validate() const;
};

// A composable sequence of edges, applied right to left: edges[0] first.
// Empty words are identities and carry their object.
struct Word {
    int src = 0;
    int dst = 0;
    std::vector<int> edges;

    bool is_identity() const { return edges.empty(); }
    size_t length() const { return edges.size(); }
    bool operator==(const Word&) const = default;
};

Word id_word(int object);
Word edge_word(const Graph& g, int edge);
// u after w; requires w.dst == u.src.
Word concat(const Word& u, const Word& w);
// length-lexicographic order on edge sequences (stable canonical forms)
bool word_less(const Word& a, const Word& b);

// Morphism of the R-linear category on a graph: finitely many (coefficient,
// word) terms in canonical form (nonzero reduced coefficients, sorted words).
struct LinComb {
    Ring ring;
    int src = 0;
    int dst = 0;
    std::vector<std::pair<int64_t, Word>> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const LinComb&) const = default;
    std::string to_string(const Graph& g) const;
};

LinComb zero_comb(const Ring& r, int src, int dst);
LinComb word_comb(const Ring& r, const Word& w, int64_t coeff = 1);
LinComb normalize(LinComb c);
LinComb add(const LinComb& a, const LinComb& b);
LinComb negate(const LinComb& a);
LinComb scale_comb(int64_t c, const LinComb& a);
// bilinear extension of concatenation
LinComb mul(const LinComb& a, const LinComb& b);

// All words between two vertices with length <= bound, in length-lex order.
std::vector<Word> words_between(const Graph& g, int src, int dst, size_t max_len);

struct GeneratingVerdict {
    enum class State { Generating, NotGenerating, Indeterminate };
    State state = State::Indeterminate;
    // witness for NotGenerating: the unreached class
    int src = -1, dst = -1;
    Elem unreached;
    // representative word combinations for every reached class
    std::map<std::tuple<int, int, uint64_t>, LinComb> witnesses;
};

// Does the induced linear functor from the graph hit every H0 class of T?
// h_edges[i] is the H0 class (in homotopy-category coordinates) of edge i.
// Saturation: additive closure of reachable classes, iterated until stable
// or the budget is exhausted.
GeneratingVerdict check_generating(const TrackCategory& T, const HomotopyCategory& hc,
                                   const Graph& g, const std::vector<Elem>& h_edges,
                                   const Ring& ring, size_t max_word_len = 8,
                                   uint64_t class_budget = 1 << 16);

// A finitely presented graded algebra stand-in: named generators with degrees.
struct GradedPresentation {
    struct Generator {
        std::string id;
        int degree = 0;
    };
    std::vector<Generator> generators;
};

// One coordinate of a lift template: shift by the source degree, apply a
// generator representative, precompose with a projection.
struct LiftSummand {
    int shift;
    int generator; // index into the presentation, or -1 for a zero entry
    int projection;
};

struct LiftTemplate {
    // per edge, per target coordinate: the summands of the coordinate map
    std::vector<std::vector<std::vector<LiftSummand>>> coords;
};

struct MatrixGraphResult {
    Graph graph;
    LiftTemplate lift;
};

// Vertices are formal finite products (tuples of degrees); edges are matrices
// whose (i,j) entry is a generator of degree n_i - m_j or zero (at least one
// entry nonzero). Edge count is capped by max_edges.
MatrixGraphResult matrix_graph(const GradedPresentation& alg,
                               const std::vector<std::vector<int>>& objects,
                               uint64_t max_edges = 1 << 16);

} // namespace trackalg
