#pragma once

#include "trackalg/dg.hpp"
#include "trackalg/pseudo.hpp"

namespace trackalg {

// A degree-1 cell of the strictified DG-category: a track to zero in the
// target paired with the combination it covers, subject to d(a) = s(x).
struct BOne {
    Elem a;
    LinComb x;

    bool operator==(const BOne&) const = default;
};

// The 1-truncated DG-category built on the free linear category: degree 0 is
// the linear category itself, degree 1 the pullback along s, with the
// tensor action given by the bullet operations.
class StrictDG {
public:
    explicit StrictDG(const ConstructedPseudo& p) : p_(&p) {}

    const ConstructedPseudo& pseudo() const { return *p_; }
    const TrackCategory& target() const { return p_->target(); }

    bool valid(const BOne& alpha) const;
    // a ∙ y and y ∙ a (Moore level)
    Elem bullet_right(const BOne& alpha, const LinComb& y) const;
    Elem bullet_left(const LinComb& y, const BOne& alpha) const;
    BOne tensor10(const BOne& alpha, const LinComb& y) const; // (a,x) ⊗ y
    BOne tensor01(const LinComb& y, const BOne& alpha) const; // y ⊗ (a,x)
    LinComb d(const BOne& alpha) const { return alpha.x; }
    Elem sigma0(const LinComb& x) const { return p_->s(x); }
    Elem sigma1(const BOne& alpha) const { return alpha.a; }

    // every (a, x) over a fixed x
    std::vector<BOne> fiber(const LinComb& x, uint64_t bound = kDefaultEnumBound) const;

private:
    const ConstructedPseudo* p_;
};

struct BuildBResult {
    StrictDG b;
    Report report;       // assumptions, DG laws including right linearity
    bool sigma_h1_iso = false;
    bool sigma_h0_iso = false;
};
BuildBResult build_B(const ConstructedPseudo& p, size_t word_bound, const Budget& budget);

// Relaxation of a finite bilinear instance: the track category of formal
// linear combinations of words in hom-basis letters, materialized up to the
// word bound, with scalars folded by the letter orders (and by the additive
// order of the identity for empty words). Products beyond the bound collapse
// to their evaluation, which keeps the evaluation functor strict.
struct RelaxResult {
    std::shared_ptr<BilinearTrackCategory> s_tilde;
    TrackFunctor q;                                // evaluation S~ -> S
    std::map<std::pair<int, int>, AbHom> p_inject; // degree-0 injection of P~
    std::map<std::pair<int, int>, std::vector<size_t>> word_lengths; // per C~0 basis
    size_t word_bound = 0;
};
RelaxResult relax(const BilinearTrackCategory& S, size_t word_bound);

// Word-bounded zigzag data for the pipeline: hom complexes of B~ compared
// into the original instance through sigma.
struct ZigzagVerdicts {
    bool materialized = false;
    std::string note;
    bool q_equivalence = false;
    bool g_equivalence = false;
    bool g_after_p_equals_pseudo = false;
    bool g_strict_on_words = false;
    Report report;
};

struct Dossier {
    std::string instance;
    Ring ring;
    size_t word_bound = 0;
    uint64_t seed = 0;
    uint64_t budget = 0;
    Report coherence;
    Report b_laws;
    bool sigma_h0_iso = false;
    bool sigma_h1_iso = false;
    bool gammac_nontrivial = false; // does the pseudo-functor carry a nonzero track
    ZigzagVerdicts zigzag;

    bool ok() const;
    json to_json() const;
    std::string summary() const;
};

Dossier strictify_pipeline(const TrackCategory& T, const LinearitySystem& lin,
                           const Graph& graph, const std::vector<Elem>& edge_lifts,
                           const Ring& ring, int64_t p, size_t word_bound,
                           const Budget& budget, const std::string& instance_name = "");

} // namespace trackalg
