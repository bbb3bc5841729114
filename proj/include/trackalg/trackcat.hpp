#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "trackalg/groupoid.hpp"
#include "trackalg/lawcheck.hpp"

namespace trackalg {

// A finite pointed track category whose hom-groupoids are abelian group
// objects, stored in Moore form. Composition data is split into the 0-cell
// composition and the two whiskerings; pointwise composition of tracks is
// always derived from those.
class TrackCategory {
public:
    explicit TrackCategory(std::vector<std::string> objects) : objects_(std::move(objects)) {}
    virtual ~TrackCategory() = default;

    size_t object_count() const { return objects_.size(); }
    const std::string& object_name(int a) const { return objects_.at(static_cast<size_t>(a)); }
    int object_index(const std::string& name) const;
    virtual const TruncComplex1& hom(int a, int b) const = 0;

    // g ∘ f for g in Hom(B,C)_0, f in Hom(A,B)_0.
    virtual Elem mu0(int A, int B, int C, const Elem& g, const Elem& f) const = 0;
    // Moore part of (track with Moore hm in Hom(B,C)_1) ⊗ (x in Hom(A,B)_0).
    virtual Elem rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const = 0;
    // Moore part of (x in Hom(B,C)_0) ⊗ (track t in Hom(A,B)); may use t.base.
    virtual Elem lwhisk(int A, int B, int C, const Elem& x, const Track& t) const = 0;
    virtual Elem unit(int a) const = 0;

    Elem zero0(int a, int b) const { return hom(a, b).c0.zero(); }
    Track zero_track(int a, int b) const { return id_track(hom(a, b), zero0(a, b)); }

private:
    std::vector<std::string> objects_;
};

// track ⊗ map and map ⊗ track, with bases filled in from mu0.
Track otimes10(const TrackCategory& T, int A, int B, int C, const Track& t, const Elem& f);
Track otimes01(const TrackCategory& T, int A, int B, int C, const Elem& g, const Track& t);

// A cell of degree 0 or 1 between two objects, for the generic ⊗ surface.
struct Cell {
    int src = 0, dst = 0;
    int deg = 0;
    Elem e0;  // degree 0 payload
    Track t;  // degree 1 payload

    static Cell map(int src, int dst, Elem x);
    static Cell track(int src, int dst, Track t);
};
Cell otimes(const TrackCategory& T, const Cell& u, const Cell& v);

// Both factorizations of the pointwise composite of two tracks; throws
// ComposabilityError on non-composable input and InputError with witnesses
// when the instance violates the interchange law.
Track pointwise_compose(const TrackCategory& T, int A, int B, int C, const Track& alpha,
                        const Track& beta);

Report axiom_check(const TrackCategory& T, const Budget& budget);

// Homotopy category: H0 of every hom with the induced bilinear composition.
struct HomotopyCategory {
    const TrackCategory* t = nullptr;
    std::map<std::pair<int, int>, Homology> h;
    Report descent; // mu0 descends to classes

    const Homology& at(int a, int b) const { return h.at({a, b}); }
    Elem compose(int A, int B, int C, const Elem& gcls, const Elem& fcls) const;
    Elem unit_class(int a) const;
    Elem class_of(int a, int b, const Elem& x) const { return at(a, b).class0(x); }
};
HomotopyCategory homotopy_category(const TrackCategory& T, const Budget& budget);

// Strict track functor data: object bijection plus a chain map per hom.
struct TrackFunctor {
    std::vector<int> obj;
    std::map<std::pair<int, int>, std::pair<AbHom, AbHom>> maps; // (f1, f0) per source hom

    const AbHom& f1(int a, int b) const { return maps.at({a, b}).first; }
    const AbHom& f0(int a, int b) const { return maps.at({a, b}).second; }
    static TrackFunctor identity(const TrackCategory& S);
};

struct DkVerdict {
    bool equivalence = false;
    Report report;
    std::string failing; // first offending hom pair or law, empty when ok
};
DkVerdict dk_compare(const TrackFunctor& F, const TrackCategory& S, const TrackCategory& T,
                     const Budget& budget);

// Induced maps on homology of a hom chain map.
AbHom induced_h0(const AbHom& f0, const Homology& hs, const Homology& ht);
AbHom induced_h1(const AbHom& f1, const Homology& hs, const Homology& ht);

// Decorator that overrides single entries of the structure maps; used by
// mutation tests.
class OverrideCategory : public TrackCategory {
public:
    using Mu0Fn = std::function<std::optional<Elem>(int, int, int, const Elem&, const Elem&)>;
    using RwFn = std::function<std::optional<Elem>(int, int, int, const Elem&, const Elem&)>;
    using LwFn = std::function<std::optional<Elem>(int, int, int, const Elem&, const Track&)>;

    OverrideCategory(const TrackCategory& base);
    const TruncComplex1& hom(int a, int b) const override { return base_->hom(a, b); }
    Elem mu0(int A, int B, int C, const Elem& g, const Elem& f) const override;
    Elem rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const override;
    Elem lwhisk(int A, int B, int C, const Elem& x, const Track& t) const override;
    Elem unit(int a) const override { return base_->unit(a); }

    Mu0Fn mu0_override;
    RwFn rwhisk_override;
    LwFn lwhisk_override;

private:
    const TrackCategory* base_;
};

} // namespace trackalg
