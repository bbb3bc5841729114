#pragma once

#include "trackalg/algebra.hpp"

namespace trackalg {

// A track stored in Moore coordinates relative to a 1-truncated complex:
// (moore, base) is the morphism  d(moore) + base => base  of the
// denormalized groupoid.
struct Track {
    Elem moore; // element of c1
    Elem base;  // element of c0

    bool operator==(const Track&) const = default;
};

Elem delta0(const TruncComplex1& c, const Track& t); // source
Elem delta1(const TruncComplex1& c, const Track& t); // target
Track id_track(const TruncComplex1& c, const Elem& x0);
bool is_id_track(const TruncComplex1& c, const Track& t);

// a after b; requires delta1(b) == delta0(a).
Track compose_tracks(const TruncComplex1& c, const Track& a, const Track& b);
Track invert_track(const TruncComplex1& c, const Track& a);
Track add_tracks(const TruncComplex1& c, const Track& a, const Track& b);
Track neg_track(const TruncComplex1& c, const Track& a);
Track scale_track(const TruncComplex1& c, int64_t n, const Track& a);

// The groupoid D(F) of a 1-truncated complex: objects are c0 elements,
// tracks are Moore pairs. Mostly a view; the track set is virtual.
struct DenormGroupoid {
    TruncComplex1 complex;

    explicit DenormGroupoid(TruncComplex1 c) : complex(std::move(c)) {}
    uint64_t object_count(uint64_t bound = kDefaultEnumBound) const;
    uint64_t track_count(uint64_t bound = kDefaultEnumBound) const;
};

// Moore complex of the denormalization: ker(delta1) with the induced
// differential. Equals the original complex on the nose.
TruncComplex1 moore_of_denorm(const DenormGroupoid& g);

struct Pi {
    Quotient pi0;
    Subgroup pi1;
};
Pi pi(const DenormGroupoid& g);

} // namespace trackalg
