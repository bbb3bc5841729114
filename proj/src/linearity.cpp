#include "trackalg/linearity.hpp"

#include <algorithm>

namespace trackalg {

Elem TableLinearity::gamma(const TrackCategory& T, int X, int A, int B, const Elem& a,
                           const Elem& x, const Elem& y) const {
    auto key = std::make_tuple(X, A, B, T.hom(A, B).c0.encode(a), T.hom(X, A).c0.encode(x),
                               T.hom(X, A).c0.encode(y));
    auto it = table.find(key);
    if (it == table.end())
        throw InputError("linearity table has no entry for the requested triple");
    return it->second;
}

void TableLinearity::set(const TrackCategory& T, int X, int A, int B, const Elem& a,
                         const Elem& x, const Elem& y, Elem g) {
    table[std::make_tuple(X, A, B, T.hom(A, B).c0.encode(a), T.hom(X, A).c0.encode(x),
                          T.hom(X, A).c0.encode(y))] = std::move(g);
}

Track gamma_track(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                  const Elem& a, const Elem& x, const Elem& y) {
    Elem g = lin.gamma(T, X, A, B, a, x, y);
    Elem base = T.hom(X, B).c0.add(T.mu0(X, A, B, a, x), T.mu0(X, A, B, a, y));
    return Track{g, base};
}

namespace {

json elem_json(const Elem& e) {
    json j = json::array();
    for (int64_t v : e) j.push_back(v);
    return j;
}

json objs_json(const TrackCategory& T, const std::vector<int>& objs) {
    json j = json::array();
    for (int o : objs) j.push_back(T.object_name(o));
    return j;
}

constexpr uint64_t kDimBound = uint64_t(1) << 40;

uint64_t d0(const TrackCategory& T, int a, int b) {
    return T.hom(a, b).c0.order_bounded(kDimBound);
}
uint64_t d1(const TrackCategory& T, int a, int b) {
    return T.hom(a, b).c1.order_bounded(kDimBound);
}

} // namespace

Report verify_linearity(const TrackCategory& T, const LinearitySystem& lin,
                        const Budget& budget) {
    Report rep;
    rep.subject = "linearity track equations";
    rep.seed = budget.seed;
    rep.budget = budget.max_cases;
    Rng rng(budget.seed);
    int n = static_cast<int>(T.object_count());

    auto spaces3 = [&](const std::function<std::vector<uint64_t>(int, int, int)>& dims) {
        std::vector<SubSpace> out;
        for (int x = 0; x < n; ++x)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) out.push_back(SubSpace{0, {x, a, b}, dims(x, a, b)});
        return out;
    };

    // boundary condition: d(gamma) = a(x+y) - ax - ay
    rep.laws.push_back(run_law(
        "(0) boundary", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d0(T, x, a), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            Elem a = T.hom(A, B).c0.decode(idx[0]);
            Elem x = T.hom(X, A).c0.decode(idx[1]);
            Elem y = T.hom(X, A).c0.decode(idx[2]);
            Elem g = lin.gamma(T, X, A, B, a, x, y);
            const auto& xb = T.hom(X, B);
            Elem lhs = xb.d.apply(g);
            Elem rhs = xb.c0.sub(
                xb.c0.sub(T.mu0(X, A, B, a, T.hom(X, A).c0.add(x, y)), T.mu0(X, A, B, a, x)),
                T.mu0(X, A, B, a, y));
            if (lhs == rhs) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)},
                        {"d(gamma)", elem_json(lhs)},
                        {"a(x+y)-ax-ay", elem_json(rhs)}};
        }));

    // (1) precomposition: gamma_a^{xz,yz} = gamma_a^{x,y} (x) z
    {
        std::vector<SubSpace> spaces;
        for (int w = 0; w < n; ++w)
            for (int x = 0; x < n; ++x)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        spaces.push_back(SubSpace{0,
                                                  {w, x, a, b},
                                                  {d0(T, a, b), d0(T, x, a), d0(T, x, a),
                                                   d0(T, w, x)}});
        rep.laws.push_back(run_law(
            "(1) precomposition", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int W = s.objs[0], X = s.objs[1], A = s.objs[2], B = s.objs[3];
                Elem a = T.hom(A, B).c0.decode(idx[0]);
                Elem x = T.hom(X, A).c0.decode(idx[1]);
                Elem y = T.hom(X, A).c0.decode(idx[2]);
                Elem z = T.hom(W, X).c0.decode(idx[3]);
                Track lhs = gamma_track(T, lin, W, A, B, a, T.mu0(W, X, A, x, z),
                                        T.mu0(W, X, A, y, z));
                Track rhs = otimes10(T, W, X, B, gamma_track(T, lin, X, A, B, a, x, y), z);
                if (lhs == rhs) return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)},
                            {"a", elem_json(a)},
                            {"x", elem_json(x)},
                            {"y", elem_json(y)},
                            {"z", elem_json(z)}};
            }));
    }

    // (2) postcomposition: gamma_{ba}^{x,y} = gamma_b^{ax,ay} □ (b gamma_a^{x,y})
    {
        std::vector<SubSpace> spaces;
        for (int x = 0; x < n; ++x)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        spaces.push_back(SubSpace{0,
                                                  {x, a, b, c},
                                                  {d0(T, b, c), d0(T, a, b), d0(T, x, a),
                                                   d0(T, x, a)}});
        rep.laws.push_back(run_law(
            "(2) postcomposition", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int X = s.objs[0], A = s.objs[1], B = s.objs[2], C = s.objs[3];
                Elem b = T.hom(B, C).c0.decode(idx[0]);
                Elem a = T.hom(A, B).c0.decode(idx[1]);
                Elem x = T.hom(X, A).c0.decode(idx[2]);
                Elem y = T.hom(X, A).c0.decode(idx[3]);
                Elem ba = T.mu0(A, B, C, b, a);
                Track lhs = gamma_track(T, lin, X, A, C, ba, x, y);
                Track upper = gamma_track(T, lin, X, B, C, b, T.mu0(X, A, B, a, x),
                                          T.mu0(X, A, B, a, y));
                Track lower = otimes01(T, X, B, C, b, gamma_track(T, lin, X, A, B, a, x, y));
                Track rhs = compose_tracks(T.hom(X, C), upper, lower);
                if (lhs == rhs) return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)},
                            {"b", elem_json(b)},
                            {"a", elem_json(a)},
                            {"x", elem_json(x)},
                            {"y", elem_json(y)}};
            }));
    }

    // (2b) unit: gamma_1^{x,y} = id
    rep.laws.push_back(run_law(
        "(2b) unit of postcomposition", spaces3([&](int x, int a, int b) {
            return a == b ? std::vector<uint64_t>{d0(T, x, a), d0(T, x, a)}
                          : std::vector<uint64_t>{0};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1];
            Elem x = T.hom(X, A).c0.decode(idx[0]);
            Elem y = T.hom(X, A).c0.decode(idx[1]);
            Elem g = lin.gamma(T, X, A, A, T.unit(A), x, y);
            if (T.hom(X, A).c1.is_zero(g)) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)},
                        {"gamma_1", elem_json(g)}};
        }));

    // (3) symmetry
    rep.laws.push_back(run_law(
        "(3) symmetry", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d0(T, x, a), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            Elem a = T.hom(A, B).c0.decode(idx[0]);
            Elem x = T.hom(X, A).c0.decode(idx[1]);
            Elem y = T.hom(X, A).c0.decode(idx[2]);
            if (lin.gamma(T, X, A, B, a, x, y) == lin.gamma(T, X, A, B, a, y, x))
                return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)}};
        }));

    // (4) left linearity
    rep.laws.push_back(run_law(
        "(4) left linearity", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d0(T, a, b), d0(T, x, a), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            const auto& habc0 = T.hom(A, B).c0;
            Elem a = habc0.decode(idx[0]);
            Elem a2 = habc0.decode(idx[1]);
            Elem x = T.hom(X, A).c0.decode(idx[2]);
            Elem y = T.hom(X, A).c0.decode(idx[3]);
            Elem lhs = lin.gamma(T, X, A, B, habc0.add(a, a2), x, y);
            Elem rhs = T.hom(X, B).c1.add(lin.gamma(T, X, A, B, a, x, y),
                                          lin.gamma(T, X, A, B, a2, x, y));
            if (lhs == rhs) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"a'", elem_json(a2)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)}};
        }));

    // (5) associativity
    rep.laws.push_back(run_law(
        "(5) associativity", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d0(T, x, a), d0(T, x, a), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            Elem a = T.hom(A, B).c0.decode(idx[0]);
            const auto& hxa = T.hom(X, A).c0;
            Elem x = hxa.decode(idx[1]);
            Elem y = hxa.decode(idx[2]);
            Elem z = hxa.decode(idx[3]);
            const TruncComplex1& hxb = T.hom(X, B);
            Track az = id_track(hxb, T.mu0(X, A, B, a, z));
            Track ax = id_track(hxb, T.mu0(X, A, B, a, x));
            Track lhs = compose_tracks(
                hxb, add_tracks(hxb, gamma_track(T, lin, X, A, B, a, x, y), az),
                gamma_track(T, lin, X, A, B, a, hxa.add(x, y), z));
            Track rhs = compose_tracks(
                hxb, add_tracks(hxb, ax, gamma_track(T, lin, X, A, B, a, y, z)),
                gamma_track(T, lin, X, A, B, a, x, hxa.add(y, z)));
            if (lhs == rhs) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)},
                        {"z", elem_json(z)}};
        }));

    // (5b) units: gamma_a^{x,0} = id and gamma_a^{0,y} = id
    rep.laws.push_back(run_law(
        "(5b) unit arguments", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            Elem a = T.hom(A, B).c0.decode(idx[0]);
            Elem x = T.hom(X, A).c0.decode(idx[1]);
            Elem zero = T.hom(X, A).c0.zero();
            if (T.hom(X, B).c1.is_zero(lin.gamma(T, X, A, B, a, x, zero)) &&
                T.hom(X, B).c1.is_zero(lin.gamma(T, X, A, B, a, zero, x)))
                return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"x", elem_json(x)}};
        }));

    // (6) naturality in x and y
    rep.laws.push_back(run_law(
        "(6) naturality in x,y", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d0(T, a, b), d1(T, x, a), d0(T, x, a), d1(T, x, a),
                                         d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            Elem a = T.hom(A, B).c0.decode(idx[0]);
            const TruncComplex1& hxa = T.hom(X, A);
            Track G{hxa.c1.decode(idx[1]), hxa.c0.decode(idx[2])}; // x => x'
            Track H{hxa.c1.decode(idx[3]), hxa.c0.decode(idx[4])}; // y => y'
            Elem x = delta0(hxa, G), y = delta0(hxa, H);
            Elem x2 = delta1(hxa, G), y2 = delta1(hxa, H);
            const TruncComplex1& hxb = T.hom(X, B);
            Track lhs = compose_tracks(
                hxb,
                add_tracks(hxb, otimes01(T, X, A, B, a, G), otimes01(T, X, A, B, a, H)),
                gamma_track(T, lin, X, A, B, a, x, y));
            Track rhs = compose_tracks(
                hxb, gamma_track(T, lin, X, A, B, a, x2, y2),
                otimes01(T, X, A, B, a, add_tracks(hxa, G, H)));
            if (lhs == rhs) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"G.moore", elem_json(G.moore)},
                        {"G.base", elem_json(G.base)},
                        {"H.moore", elem_json(H.moore)},
                        {"H.base", elem_json(H.base)}};
        }));

    // (7) naturality in a
    rep.laws.push_back(run_law(
        "(7) naturality in a", spaces3([&](int x, int a, int b) {
            return std::vector<uint64_t>{d1(T, a, b), d0(T, a, b), d0(T, x, a), d0(T, x, a)};
        }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int X = s.objs[0], A = s.objs[1], B = s.objs[2];
            const TruncComplex1& hab = T.hom(A, B);
            Track alpha{hab.c1.decode(idx[0]), hab.c0.decode(idx[1])}; // a => a'
            Elem a = delta0(hab, alpha), a2 = delta1(hab, alpha);
            Elem x = T.hom(X, A).c0.decode(idx[2]);
            Elem y = T.hom(X, A).c0.decode(idx[3]);
            const TruncComplex1& hxb = T.hom(X, B);
            Track lhs = compose_tracks(
                hxb,
                add_tracks(hxb, otimes10(T, X, A, B, alpha, x), otimes10(T, X, A, B, alpha, y)),
                gamma_track(T, lin, X, A, B, a, x, y));
            Track rhs = compose_tracks(hxb, gamma_track(T, lin, X, A, B, a2, x, y),
                                       otimes10(T, X, A, B, alpha, T.hom(X, A).c0.add(x, y)));
            if (lhs == rhs) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"alpha.moore", elem_json(alpha.moore)},
                        {"alpha.base", elem_json(alpha.base)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)}};
        }));

    return rep;
}

Track iterated_gamma(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                     const Elem& a, const std::vector<Elem>& xs) {
    const TruncComplex1& hxb = T.hom(X, B);
    const FinAbGroup& hxa = T.hom(X, A).c0;
    if (xs.empty()) return id_track(hxb, hxb.c0.zero());
    if (xs.size() == 1) return id_track(hxb, T.mu0(X, A, B, a, xs[0]));
    std::vector<Elem> head(xs.begin(), xs.end() - 1);
    Elem head_sum = hxa.zero();
    for (const Elem& x : head) head_sum = hxa.add(head_sum, x);
    Track prev = iterated_gamma(T, lin, X, A, B, a, head);
    Track axn = id_track(hxb, T.mu0(X, A, B, a, xs.back()));
    return compose_tracks(hxb, add_tracks(hxb, prev, axn),
                          gamma_track(T, lin, X, A, B, a, head_sum, xs.back()));
}

Track gamma_blocks(const TrackCategory& T, const LinearitySystem& lin, int X, int A, int B,
                   const Elem& a, const std::vector<Elem>& xs,
                   const std::vector<size_t>& block_sizes) {
    const TruncComplex1& hxb = T.hom(X, B);
    const FinAbGroup& hxa = T.hom(X, A).c0;
    std::vector<Elem> block_sums;
    Track inner_sum = id_track(hxb, hxb.c0.zero());
    size_t pos = 0;
    for (size_t bs : block_sizes) {
        std::vector<Elem> block(xs.begin() + static_cast<long>(pos),
                                xs.begin() + static_cast<long>(pos + bs));
        pos += bs;
        Elem sum = hxa.zero();
        for (const Elem& x : block) sum = hxa.add(sum, x);
        block_sums.push_back(sum);
        inner_sum = add_tracks(hxb, inner_sum, iterated_gamma(T, lin, X, A, B, a, block));
    }
    if (pos != xs.size()) throw InputError("block sizes do not partition the list");
    Track outer = iterated_gamma(T, lin, X, A, B, a, block_sums);
    return compose_tracks(hxb, inner_sum, outer);
}

Track gamma_merge_order(const TrackCategory& T, const LinearitySystem& lin, int X, int A,
                        int B, const Elem& a, const std::vector<Elem>& xs,
                        const std::vector<size_t>& merge_positions) {
    const TruncComplex1& hxb = T.hom(X, B);
    const FinAbGroup& hxa = T.hom(X, A).c0;
    if (merge_positions.size() + 1 != xs.size())
        throw InputError("need exactly n-1 merges for n summands");
    std::vector<Elem> blocks = xs;
    Track acc = id_track(hxb, [&] {
        Elem total = hxa.zero();
        for (const Elem& x : xs) total = hxa.add(total, x);
        return T.mu0(X, A, B, a, total);
    }());
    for (size_t p : merge_positions) {
        if (p + 1 >= blocks.size()) throw InputError("merge position out of range");
        // whisker the merge of blocks p, p+1 by the identity on the others
        Track step = gamma_track(T, lin, X, A, B, a, blocks[p], blocks[p + 1]);
        Elem others = hxb.c0.zero();
        for (size_t i = 0; i < blocks.size(); ++i)
            if (i != p && i != p + 1)
                others = hxb.c0.add(others, T.mu0(X, A, B, a, blocks[i]));
        Track padded = add_tracks(hxb, step, id_track(hxb, others));
        acc = compose_tracks(hxb, padded, acc);
        blocks[p] = hxa.add(blocks[p], blocks[p + 1]);
        blocks.erase(blocks.begin() + static_cast<long>(p) + 1);
    }
    return acc;
}

Track gamma_int(const TrackCategory& T, const LinearitySystem& lin, int A, int B,
                const Elem& a, int64_t n) {
    const TruncComplex1& hab = T.hom(A, B);
    Elem one = T.unit(A);
    const FinAbGroup& haa = T.hom(A, A).c0;
    if (n == 0) return id_track(hab, hab.c0.zero());
    if (n > 0) {
        std::vector<Elem> xs(static_cast<size_t>(n), one);
        return iterated_gamma(T, lin, A, A, B, a, xs);
    }
    // negative multiples, built from gamma(-1) = (gamma_a^{1,-1} - a)^inv
    Elem minus_one = haa.neg(one);
    Track gm1 = [&] {
        // (gamma_a^{1,-1} - a)^inv
        Track g = gamma_track(T, lin, A, A, B, a, one, minus_one);
        Track diff = add_tracks(hab, g, neg_track(hab, id_track(hab, T.mu0(A, A, B, a, one))));
        return invert_track(hab, diff);
    }();
    if (n == -1) return gm1;
    int64_t m = -n;
    // gamma(-m)_a = (-gamma(m)_a) □ (gamma(-1)_a (x) (m·1_A))
    Track gm = gamma_int(T, lin, A, B, a, m);
    Elem m_one = haa.scale(m, one);
    Track whiskered = otimes10(T, A, A, B, gm1, m_one);
    return compose_tracks(hab, neg_track(hab, gm), whiskered);
}

namespace {

// The restriction chain map Hom(AA,B) -> Hom(A,B) + Hom(A,B) along i1, i2.
struct Restriction {
    AbHom r1; // on degree 1
    AbHom r0; // on degree 0
    FinAbGroupSum tgt1, tgt0;
};

Restriction restriction_map(const TrackCategory& T, const ObjectBiproduct& ob, int A, int B) {
    const TruncComplex1& big = T.hom(ob.product, B);
    const TruncComplex1& small = T.hom(A, B);
    Restriction r;
    r.tgt1 = direct_sum(small.c1, small.c1);
    r.tgt0 = direct_sum(small.c0, small.c0);
    Mat m1(r.tgt1.sum.rank(), std::vector<int64_t>(big.c1.rank(), 0));
    for (size_t j = 0; j < big.c1.rank(); ++j) {
        Elem v1 = T.rwhisk(A, ob.product, B, big.c1.basis(j), ob.i1);
        Elem v2 = T.rwhisk(A, ob.product, B, big.c1.basis(j), ob.i2);
        Elem v = r.tgt1.sum.add(r.tgt1.inject1(v1), r.tgt1.inject2(v2));
        for (size_t i = 0; i < v.size(); ++i) m1[i][j] = v[i];
    }
    Mat m0(r.tgt0.sum.rank(), std::vector<int64_t>(big.c0.rank(), 0));
    for (size_t j = 0; j < big.c0.rank(); ++j) {
        Elem v1 = T.mu0(A, ob.product, B, big.c0.basis(j), ob.i1);
        Elem v2 = T.mu0(A, ob.product, B, big.c0.basis(j), ob.i2);
        Elem v = r.tgt0.sum.add(r.tgt0.inject1(v1), r.tgt0.inject2(v2));
        for (size_t i = 0; i < v.size(); ++i) m0[i][j] = v[i];
    }
    r.r1 = AbHom(big.c1, r.tgt1.sum, std::move(m1));
    r.r0 = AbHom(big.c0, r.tgt0.sum, std::move(m0));
    return r;
}

class CanonicalLinearity : public LinearitySystem {
public:
    CanonicalLinearity(const TrackCategory& T, BiproductData bp)
        : t_(&T), bp_(std::move(bp)) {}

    Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
               const Elem& y) const override {
        const Elem& g = gamma_of(A, B, a);
        const ObjectBiproduct& ob = bp_.per_object.at(A);
        Elem pair = bp_.pairing(X, A, x, y);
        return T.rwhisk(X, ob.product, B, g, pair);
    }

    // Moore part of Gamma_a in Hom(AxA, B); solved on demand and cached.
    const Elem& gamma_of(int A, int B, const Elem& a) const {
        auto key = std::make_tuple(A, B, t_->hom(A, B).c0.encode(a));
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Elem g = solve(A, B, a);
        return cache_.emplace(std::move(key), std::move(g)).first->second;
    }

    bool last_solution_unique() const { return last_unique_; }

private:
    Elem solve(int A, int B, const Elem& a) const {
        auto itb = bp_.per_object.find(A);
        if (itb == bp_.per_object.end())
            throw RefusalError("no designated biproduct for object " + t_->object_name(A));
        const ObjectBiproduct& ob = itb->second;
        const TruncComplex1& big = t_->hom(ob.product, B);
        const TruncComplex1& small = t_->hom(A, B);
        // target of gamma_a: a∘p1 + a∘p2; source: a∘plus
        Elem u = big.c0.add(t_->mu0(ob.product, A, B, a, ob.p1),
                            t_->mu0(ob.product, A, B, a, ob.p2));
        Elem src = t_->mu0(ob.product, A, B, a, ob.plus);
        Elem rhs0 = big.c0.sub(src, u);
        // constraints: d g = rhs0, g|i1 = 0, g|i2 = 0
        FinAbGroupSum s01 = direct_sum(big.c0, small.c1);
        FinAbGroupSum full = direct_sum(s01.sum, small.c1);
        Mat m(full.sum.rank(), std::vector<int64_t>(big.c1.rank(), 0));
        for (size_t j = 0; j < big.c1.rank(); ++j) {
            Elem bnd = big.d.apply(big.c1.basis(j));
            Elem w1 = t_->rwhisk(A, ob.product, B, big.c1.basis(j), ob.i1);
            Elem w2 = t_->rwhisk(A, ob.product, B, big.c1.basis(j), ob.i2);
            Elem v = full.sum.add(full.inject1(s01.sum.add(s01.inject1(bnd), s01.inject2(w1))),
                                  full.inject2(w2));
            for (size_t i = 0; i < v.size(); ++i) m[i][j] = v[i];
        }
        AbHom stacked(big.c1, full.sum, std::move(m));
        Elem target = full.inject1(s01.inject1(rhs0));
        auto sol = solve_preimage(stacked, target);
        if (!sol)
            throw RefusalError("no canonical linearity track exists for the given map");
        // pick the lexicographically least solution in the coset sol + ker
        Subgroup ker = kernel_of(stacked);
        Elem best = *sol;
        uint64_t ker_order = ker.group.order_bounded(uint64_t(1) << 16);
        last_unique_ = ker_order == 1;
        for_each_element(ker.group, [&](const Elem& k) {
            Elem cand = big.c1.add(*sol, ker.emb.apply(k));
            if (cand < best) best = cand;
        }, uint64_t(1) << 16);
        return best;
    }

    const TrackCategory* t_;
    BiproductData bp_;
    mutable std::map<std::tuple<int, int, uint64_t>, Elem> cache_;
    mutable bool last_unique_ = true;
};

} // namespace

CanonicalGammaResult canonical_gamma(const TrackCategory& T, const BiproductData& bp,
                                     const Budget& budget) {
    CanonicalGammaResult res;
    res.report.subject = "canonical linearity tracks";
    res.report.seed = budget.seed;
    res.report.budget = budget.max_cases;

    // precondition: each restriction (i1*, i2*) is an equivalence of
    // groupoids, i.e. a chain map inducing isos on H0 and H1
    LawResult pre;
    pre.name = "restriction equivalences";
    for (const auto& [A, ob] : bp.per_object) {
        for (size_t b = 0; b < T.object_count() && pre.pass; ++b) {
            int B = static_cast<int>(b);
            Restriction r = restriction_map(T, ob, A, B);
            const TruncComplex1& big = T.hom(ob.product, B);
            const TruncComplex1& small = T.hom(A, B);
            FinAbGroupSum ts = direct_sum(small.c0, small.c0);
            Mat dd(ts.sum.rank(), std::vector<int64_t>(r.tgt1.sum.rank(), 0));
            // differential on the product complex
            for (size_t j = 0; j < small.c1.rank(); ++j) {
                Elem b1 = small.d.apply(small.c1.basis(j));
                Elem v = ts.inject1(b1);
                for (size_t i = 0; i < v.size(); ++i) dd[i][j] = v[i];
            }
            for (size_t j = 0; j < small.c1.rank(); ++j) {
                Elem b2 = small.d.apply(small.c1.basis(j));
                Elem v = ts.inject2(b2);
                for (size_t i = 0; i < v.size(); ++i) dd[i][small.c1.rank() + j] = v[i];
            }
            TruncComplex1 product_cx(r.tgt1.sum, ts.sum, AbHom(r.tgt1.sum, ts.sum, dd));
            // chain-map sanity, then homology comparison
            bool chain = r.r0.compose(big.d) == product_cx.d.compose(r.r1);
            Homology hb = homology(big);
            Homology hp = homology(product_cx);
            bool iso = chain && is_isomorphism(induced_h0(r.r0, hb, hp));
            if (iso) {
                try {
                    iso = is_isomorphism(induced_h1(r.r1, hb, hp));
                } catch (const InputError&) {
                    iso = false;
                }
            }
            ++pre.cases;
            if (!iso) {
                pre.pass = false;
                pre.witness = json{{"object", T.object_name(A)},
                                   {"hom to", T.object_name(B)},
                                   {"reason", "restriction is not an equivalence"}};
            }
        }
    }
    res.report.laws.push_back(pre);
    if (!pre.pass) {
        res.ok = false;
        throw RefusalError("canonical linearity tracks unavailable: " + pre.witness.dump());
    }

    auto sys = std::make_shared<CanonicalLinearity>(T, bp);

    // solve for every map of every hom whose source has a biproduct, and
    // record whether any solution was non-unique
    LawResult solved;
    solved.name = "tracks solved (lexicographically least choice)";
    LawResult uniq;
    uniq.name = "probe: solution unique";
    for (const auto& [A, ob] : bp.per_object) {
        (void)ob;
        for (size_t b = 0; b < T.object_count(); ++b) {
            int B = static_cast<int>(b);
            for_each_element(T.hom(A, B).c0, [&](const Elem& a) {
                sys->gamma_of(A, B, a);
                ++solved.cases;
                ++uniq.cases;
                if (!sys->last_solution_unique()) uniq.pass = false;
            });
        }
    }
    if (!uniq.pass)
        uniq.witness = json{{"note", "multiple Moore solutions; least representative chosen"}};
    res.report.laws.push_back(solved);
    res.report.laws.push_back(uniq);

    res.system = sys;
    res.ok = res.report.ok();
    return res;
}

} // namespace trackalg
