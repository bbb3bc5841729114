#pragma once

#include <functional>
#include <memory>

#include "trackalg/trackcat.hpp"

namespace trackalg {

// A system of linearity tracks a(x+y) => ax + ay, stored by Moore part.
// The base of the track is always ax + ay.
class LinearitySystem {
public:
    virtual ~LinearitySystem() = default;
    // Moore part of the track for a: A -> B and x, y: X -> A.
    virtual Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a,
                       const Elem& x, const Elem& y) const = 0;
};

class IdentityLinearity : public LinearitySystem {
public:
    Elem gamma(const TrackCategory& T, int X, int, int B, const Elem&, const Elem&,
               const Elem&) const override {
        return T.hom(X, B).c1.zero();
    }
};

// Extensional storage keyed by encoded (a, x, y).
class TableLinearity : public LinearitySystem {
public:
    std::map<std::tuple<int, int, int, uint64_t, uint64_t, uint64_t>, Elem> table;

    Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
               const Elem& y) const override;
    void set(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
             const Elem& y, Elem g);
};

// Decorator overriding single entries, for mutation tests.
class OverrideLinearity : public LinearitySystem {
public:
    using Fn = std::function<std::optional<Elem>(int, int, int, const Elem&, const Elem&,
                                                 const Elem&)>;
    OverrideLinearity(const LinearitySystem& base, Fn fn) : base_(&base), fn_(std::move(fn)) {}
    Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
               const Elem& y) const override {
        if (fn_)
            if (auto v = fn_(X, A, B, a, x, y)) return *v;
        return base_->gamma(T, X, A, B, a, x, y);
    }

private:
    const LinearitySystem* base_;
    Fn fn_;
};

// The full track a(x+y) => ax+ay.
Track gamma_track(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                  const Elem& a, const Elem& x, const Elem& y);

// The seven linearity track equations (plus the boundary condition and the
// derived unit clauses), checked exhaustively or on seeded samples.
Report verify_linearity(const TrackCategory& T, const LinearitySystem& lin,
                        const Budget& budget);

// Iterated track a(x1+...+xn) => ax1+...+axn; n = 0,1 give identity tracks.
Track iterated_gamma(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                     const Elem& a, const std::vector<Elem>& xs);

// Factorization through consecutive blocks of sizes k1,...,km.
Track gamma_blocks(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                   const Elem& a, const std::vector<Elem>& xs,
                   const std::vector<size_t>& block_sizes);

// Value of the track for one of the (n-1)! orders of collapsing the + signs;
// merge_positions[k] names which gap (0-based, relative to the current list)
// is merged at step k.
Track gamma_merge_order(const TrackCategory& T, const LinearitySystem& lin, int X, int A,
                        int B, const Elem& a, const std::vector<Elem>& xs,
                        const std::vector<size_t>& merge_positions);

// Gamma(n)_a for any integer n, in Hom(A,B).
Track gamma_int(const TrackCategory& T, const LinearitySystem& lin, int A, int B,
                const Elem& a, int64_t n);

struct ObjectBiproduct {
    int product; // object index of A x A
    Elem i1, i2; // Hom(A, AxA)_0
    Elem p1, p2; // Hom(AxA, A)_0
    Elem plus;   // Hom(AxA, A)_0
};

struct BiproductData {
    std::map<int, ObjectBiproduct> per_object;
    // diagonal data: the pairing (x,y): X -> AxA of two maps x,y: X -> A
    std::function<Elem(int X, int A, const Elem& x, const Elem& y)> pairing;
};

struct CanonicalGammaResult {
    std::shared_ptr<LinearitySystem> system;
    Report report; // restriction-equivalence precondition, multiplicity notes
    bool ok = false;
};

// Builds the canonical linearity tracks from designated biproducts: for each
// map a, the track restricting to the identity along both inclusions. Among
// multiple Moore solutions the lexicographically least is taken and the
// multiplicity is flagged in the report.
CanonicalGammaResult canonical_gamma(const TrackCategory& T, const BiproductData& bp,
                                     const Budget& budget);

} // namespace trackalg
