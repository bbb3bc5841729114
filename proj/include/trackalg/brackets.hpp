#pragma once

#include "trackalg/strictify.hpp"

namespace trackalg {

// <y1, y2, y3> with y1: Y1 -> Y0, y2: Y2 -> Y1, y3: Y3 -> Y2 given as H0
// classes; the products y1 y2 and y2 y3 must vanish.
struct BracketProblem {
    int y0 = 0, y1_obj = 0, y2_obj = 0, y3_obj = 0;
    Elem y1, y2, y3;
};

struct BracketWitness {
    Elem x1, x2, x3; // representatives (0-cells, or packed descriptions)
    Elem a, b;       // Moore solutions of the two nullhomotopies
};

struct BracketResult {
    FinAbGroup h1;              // H1 of hom(Y3, Y0)
    std::vector<Elem> classes;  // sorted, deduplicated
    std::vector<std::pair<Elem, BracketWitness>> witnesses; // one per class
    uint64_t tuples = 0;
    bool exhaustive = true;

    bool contains(const Elem& cls) const;
    bool operator==(const BracketResult& o) const { return classes == o.classes; }
};

void validate_problem(const HomotopyCategory& hc, const BracketProblem& p);

// All values (a x3) □ (x1 b)^inv over representative and nullhomotopy
// choices, as classes of pi_1 = H1.
BracketResult toda_bracket(const TrackCategory& T, const HomotopyCategory& hc,
                           const BracketProblem& p, const Budget& budget);

// All cycles a x3 - x1 b in a finite 1-truncated DG-category.
BracketResult massey_product(const DGTable& dg, const BracketProblem& p, const Budget& budget);

// Massey product in the strictified DG-category; classes and results are
// stated in the target instance's coordinates (through sigma), and
// representatives range over combinations of bounded word length.
BracketResult massey_product_strict(const StrictDG& b, const HomotopyCategory& hc_target,
                                    const BracketProblem& p, size_t word_bound,
                                    const Budget& budget);

// The indeterminacy subgroup y1 H1 + H1 y3 inside H1 hom(Y3, Y0).
std::vector<Elem> indeterminacy_subgroup(const TrackCategory& T, const HomotopyCategory& hc,
                                         const BracketProblem& p);
// Is the bracket a coset of its indeterminacy subgroup?
bool is_coset_of_indeterminacy(const BracketResult& r, const std::vector<Elem>& subgroup,
                               const FinAbGroup& h1);

struct TransferReport {
    Report report;
    bool identity_ok = false;   // s(a x3 □ (x1 b)^inv) = a'(s x3) □ ((s x1) b')^inv
    bool iso_hypotheses = false;
    bool inclusion_ok = false;  // sigma<y> ⊆ <sigma y>
    bool set_equal = false;     // under the iso hypotheses
};

// Appendix-style transfer along a pointed pseudo-functor between finite
// instances.
TransferReport transfer_check(const FinitePseudo& p, const BracketProblem& problem,
                              const Budget& budget);

// Transfer along the pipeline pseudo-functor from the strictification into
// its target instance.
TransferReport transfer_check_pipeline(const StrictDG& b, const BracketProblem& problem,
                                       size_t word_bound, const Budget& budget);

} // namespace trackalg
