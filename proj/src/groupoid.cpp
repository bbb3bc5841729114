#include "trackalg/groupoid.hpp"

namespace trackalg {

Elem delta0(const TruncComplex1& c, const Track& t) {
    return c.c0.add(c.d.apply(t.moore), t.base);
}

Elem delta1(const TruncComplex1&, const Track& t) { return t.base; }

Track id_track(const TruncComplex1& c, const Elem& x0) {
    return Track{c.c1.zero(), c.c0.reduce(x0)};
}

bool is_id_track(const TruncComplex1& c, const Track& t) { return c.c1.is_zero(t.moore); }

Track compose_tracks(const TruncComplex1& c, const Track& a, const Track& b) {
    Elem target_b = delta1(c, b);
    Elem source_a = delta0(c, a);
    if (target_b != source_a)
        throw ComposabilityError("track composition mismatch: delta1(b) = " +
                                 elem_to_string(target_b) + " but delta0(a) = " +
                                 elem_to_string(source_a));
    return Track{c.c1.add(a.moore, b.moore), a.base};
}

Track invert_track(const TruncComplex1& c, const Track& a) {
    return Track{c.c1.neg(a.moore), delta0(c, a)};
}

Track add_tracks(const TruncComplex1& c, const Track& a, const Track& b) {
    return Track{c.c1.add(a.moore, b.moore), c.c0.add(a.base, b.base)};
}

Track neg_track(const TruncComplex1& c, const Track& a) {
    return Track{c.c1.neg(a.moore), c.c0.neg(a.base)};
}

Track scale_track(const TruncComplex1& c, int64_t n, const Track& a) {
    return Track{c.c1.scale(n, a.moore), c.c0.scale(n, a.base)};
}

uint64_t DenormGroupoid::object_count(uint64_t bound) const {
    return complex.c0.order_bounded(bound);
}

uint64_t DenormGroupoid::track_count(uint64_t bound) const {
    return complex.c0.order_bounded(bound) * complex.c1.order_bounded(bound);
}

TruncComplex1 moore_of_denorm(const DenormGroupoid& g) {
    // ker(delta1) = { (x1, 0) } identified with c1; the induced boundary is
    // delta0(x1, 0) = d(x1).
    const TruncComplex1& c = g.complex;
    Mat m(c.c0.rank(), std::vector<int64_t>(c.c1.rank(), 0));
    for (size_t j = 0; j < c.c1.rank(); ++j) {
        Track t{c.c1.basis(j), c.c0.zero()};
        Elem img = delta0(c, t);
        for (size_t i = 0; i < c.c0.rank(); ++i) m[i][j] = img[i];
    }
    return TruncComplex1(c.c1, c.c0, AbHom(c.c1, c.c0, std::move(m)));
}

Pi pi(const DenormGroupoid& g) {
    Homology h = homology(g.complex);
    return Pi{h.h0, h.h1};
}

} // namespace trackalg
