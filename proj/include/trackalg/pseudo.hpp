#pragma once

#include "trackalg/freecat.hpp"
#include "trackalg/linearity.hpp"

namespace trackalg {

// Enumerable (or sampled) space of linear combinations between two vertices
// with a word-length bound. Over Z/p^2 the space is finite and enumerated in
// coefficient-lexicographic order; over Z the coefficients are drawn from a
// symmetric window.
struct BoundedMorphisms {
    Ring ring;
    int src = 0, dst = 0;
    std::vector<Word> words;
    int64_t coeff_window = 3; // used for the integral ring only

    uint64_t coeff_count() const;
    uint64_t total() const; // saturating
    LinComb decode(uint64_t idx) const;
    LinComb sample(Rng& rng) const;
};
BoundedMorphisms bounded_morphisms(const Graph& g, const Ring& ring, int src, int dst,
                                   size_t word_bound, int64_t coeff_window = 3);

struct PseudoOptions {
    // well-definedness probes: evaluate the right factor's terms in reverse,
    // or shift every scalar lift by a fixed amount (a multiple of p^2 must
    // not change anything)
    bool reverse_terms = false;
    int64_t scalar_lift_shift = 0;
};

// The machine-built pseudo-functor from the free linear category on a graph
// into a left linear track category with a verified linearity-track system.
class ConstructedPseudo {
public:
    ConstructedPseudo(const TrackCategory& T, const LinearitySystem& lin, Graph graph,
                      std::vector<Elem> edge_lifts, Ring ring, PseudoOptions opts = {});

    const TrackCategory& target() const { return *t_; }
    const Graph& graph() const { return graph_; }
    const Ring& ring() const { return ring_; }
    const LinearitySystem& linearity() const { return *lin_; }
    const std::vector<Elem>& edge_lifts() const { return lifts_; }

    Elem s_word(const Word& w) const;
    Elem s(const LinComb& x) const;
    // Moore part of Gamma(x,y): (sx)(sy) => s(xy), built by the expansion
    // ledger; cache may be shared across calls of one thread.
    using Cache = std::map<std::string, Elem>;
    Elem gammac(const LinComb& x, const LinComb& y, Cache* cache = nullptr) const;
    Track gammac_track(const LinComb& x, const LinComb& y, Cache* cache = nullptr) const;

    // the scalar expansion step in isolation: Gamma(x_i, d * y_j) for words
    Elem scalar_step(const Word& xi, int64_t d, const Word& yj) const;

    LinComb zero(int src, int dst) const { return zero_comb(ring_, src, dst); }

private:
    Elem gammac_word(const Word& xi, const LinComb& y, Cache* cache) const;

    const TrackCategory* t_;
    const LinearitySystem* lin_;
    Graph graph_;
    std::vector<Elem> lifts_;
    Ring ring_;
    PseudoOptions opts_;
};

// Both constructions; preconditions are enforced and reported via
// RefusalError on failure.
ConstructedPseudo build_pseudo_padic(const TrackCategory& T, const LinearitySystem& lin,
                                     const Graph& graph, const std::vector<Elem>& edge_lifts,
                                     int64_t p, const Budget& budget, PseudoOptions opts = {});
ConstructedPseudo build_pseudo_integral(const TrackCategory& T, const LinearitySystem& lin,
                                        const Graph& graph,
                                        const std::vector<Elem>& edge_lifts,
                                        const Budget& budget, PseudoOptions opts = {});

// Coherence: units, pointedness, boundary validity, and the pasting equation
// over all (or sampled) triples of bounded morphisms. The pasting sweep runs
// on parallel workers when exhaustive; results are deterministic.
Report check_coherence(const ConstructedPseudo& p, size_t word_bound, const Budget& budget,
                       int64_t coeff_window = 2);

struct UniquenessVerdict {
    bool equal = true;
    bool preconditions_ok = true;
    json divergence; // first differing pair, when any
};
// Verifies both candidates satisfy the defining conditions, then compares
// them on a word-length-bounded subcategory.
UniquenessVerdict uniqueness_probe(const ConstructedPseudo& p, const ConstructedPseudo& q,
                                   size_t word_bound, const Budget& budget);

// Pointed pseudo-functor between finite instances (used by transfer checks);
// strict functors arise as the special case gammac == 0.
struct FinitePseudo {
    const TrackCategory* s_cat = nullptr;
    const TrackCategory* t_cat = nullptr;
    std::vector<int> obj;
    std::function<Elem(int, int, const Elem&)> s0;
    std::function<Elem(int, int, const Elem&)> s1; // on Moore parts
    // Moore part of Gamma(x,y) for x in Hom(B,C)_0, y in Hom(A,B)_0
    std::function<Elem(int, int, int, const Elem&, const Elem&)> gammac;

    static FinitePseudo strict(const TrackCategory& S, const TrackCategory& T,
                               const TrackFunctor& F);
};
Report check_coherence_finite(const FinitePseudo& p, const Budget& budget);

} // namespace trackalg
