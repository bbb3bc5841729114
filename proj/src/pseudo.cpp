#include "trackalg/pseudo.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

namespace trackalg {

uint64_t BoundedMorphisms::coeff_count() const {
    return ring.is_modular() ? static_cast<uint64_t>(ring.modulus)
                             : static_cast<uint64_t>(2 * coeff_window + 1);
}

uint64_t BoundedMorphisms::total() const {
    uint64_t t = 1;
    uint64_t c = coeff_count();
    for (size_t i = 0; i < words.size(); ++i) {
        if (t > UINT64_MAX / c) return UINT64_MAX;
        t *= c;
    }
    return t;
}

LinComb BoundedMorphisms::decode(uint64_t idx) const {
    LinComb out = zero_comb(ring, src, dst);
    uint64_t c = coeff_count();
    for (size_t i = words.size(); i-- > 0;) {
        int64_t coeff = static_cast<int64_t>(idx % c);
        idx /= c;
        if (!ring.is_modular()) coeff -= coeff_window;
        if (coeff != 0) out.terms.push_back({coeff, words[i]});
    }
    return normalize(std::move(out));
}

LinComb BoundedMorphisms::sample(Rng& rng) const {
    uint64_t t = total();
    if (t != UINT64_MAX) return decode(rng.below(t));
    LinComb out = zero_comb(ring, src, dst);
    uint64_t c = coeff_count();
    for (const Word& w : words) {
        int64_t coeff = static_cast<int64_t>(rng.below(c));
        if (!ring.is_modular()) coeff -= coeff_window;
        if (coeff != 0) out.terms.push_back({coeff, w});
    }
    return normalize(std::move(out));
}

BoundedMorphisms bounded_morphisms(const Graph& g, const Ring& ring, int src, int dst,
                                   size_t word_bound, int64_t coeff_window) {
    BoundedMorphisms bm;
    bm.ring = ring;
    bm.src = src;
    bm.dst = dst;
    bm.words = words_between(g, src, dst, word_bound);
    bm.coeff_window = coeff_window;
    return bm;
}

ConstructedPseudo::ConstructedPseudo(const TrackCategory& T, const LinearitySystem& lin,
                                     Graph graph, std::vector<Elem> edge_lifts, Ring ring,
                                     PseudoOptions opts)
    : t_(&T), lin_(&lin), graph_(std::move(graph)), lifts_(std::move(edge_lifts)),
      ring_(ring), opts_(opts) {
    graph_.validate();
    if (graph_.vertices.size() != T.object_count())
        throw InputError("generating graph must have one vertex per object");
    if (lifts_.size() != graph_.edges.size())
        throw InputError("need one lift per edge");
    for (size_t e = 0; e < lifts_.size(); ++e) {
        const GraphEdge& ge = graph_.edges[e];
        if (!T.hom(ge.src, ge.dst).c0.contains(lifts_[e]))
            throw InputError("lift of edge '" + ge.id + "' is not a reduced 0-cell");
    }
    if (!ring_.is_modular() && opts_.scalar_lift_shift != 0)
        throw InputError("scalar lifts only exist over a modular ring");
}

Elem ConstructedPseudo::s_word(const Word& w) const {
    Elem acc = t_->unit(w.src);
    int cur = w.src;
    for (int e : w.edges) {
        const GraphEdge& ge = graph_.edges.at(static_cast<size_t>(e));
        acc = t_->mu0(w.src, cur, ge.dst, lifts_[static_cast<size_t>(e)], acc);
        cur = ge.dst;
    }
    return acc;
}

Elem ConstructedPseudo::s(const LinComb& x) const {
    const FinAbGroup& g = t_->hom(x.src, x.dst).c0;
    Elem acc = g.zero();
    for (const auto& [c, w] : x.terms) acc = g.add(acc, g.scale(c, s_word(w)));
    return acc;
}

namespace {

std::string comb_key(const LinComb& x) {
    std::ostringstream os;
    os << x.src << ":" << x.dst;
    for (const auto& [c, w] : x.terms) {
        os << "|" << c << "w";
        for (int e : w.edges) os << "." << e;
    }
    return os.str();
}

} // namespace

Elem ConstructedPseudo::scalar_step(const Word& xi, int64_t d, const Word& yj) const {
    // Gamma(x_i, d y_j) = (d' Gamma(x_i, y_j)) □ Gamma(d')_{s x_i} (s y_j)
    // with Gamma(x_i, y_j) = id on words, so only the whisker term remains.
    int64_t dlift = d + opts_.scalar_lift_shift;
    const FinAbGroup& out = t_->hom(yj.src, xi.dst).c1;
    Track gn = gamma_int(*t_, *lin_, xi.src, xi.dst, s_word(xi), dlift);
    Elem whisk = t_->rwhisk(yj.src, xi.src, xi.dst, gn.moore, s_word(yj));
    return out.reduce(whisk);
}

Elem ConstructedPseudo::gammac_word(const Word& xi, const LinComb& y, Cache* cache) const {
    // Gamma(x_i, sum_j d_j y_j) =
    //   (sum_j Gamma(x_i, d_j y_j)) □ Gamma_{s x_i}^{d'_1 s y_1, ..., d'_k s y_k}
    const FinAbGroup& out = t_->hom(y.src, xi.dst).c1;
    Elem acc = out.zero();
    std::vector<std::pair<int64_t, Word>> terms = y.terms;
    if (opts_.reverse_terms) std::reverse(terms.begin(), terms.end());
    std::vector<Elem> scaled;
    const FinAbGroup& mid = t_->hom(y.src, y.dst).c0;
    for (const auto& [d, yj] : terms) {
        acc = out.add(acc, scalar_step(xi, d, yj));
        scaled.push_back(mid.scale(d + opts_.scalar_lift_shift, s_word(yj)));
    }
    Track iter = iterated_gamma(*t_, *lin_, y.src, y.dst, xi.dst, s_word(xi), scaled);
    return out.add(acc, iter.moore);
}

Elem ConstructedPseudo::gammac(const LinComb& x, const LinComb& y, Cache* cache) const {
    if (y.dst != x.src)
        throw ComposabilityError("gammac: morphisms not composable");
    std::string key;
    if (cache) {
        key = comb_key(x) + "#" + comb_key(y);
        auto it = cache->find(key);
        if (it != cache->end()) return it->second;
    }
    const FinAbGroup& out = t_->hom(y.src, x.dst).c1;
    Elem acc = out.zero();
    for (const auto& [c, xi] : x.terms)
        acc = out.add(acc, out.scale(c + opts_.scalar_lift_shift, gammac_word(xi, y, cache)));
    if (cache) cache->emplace(std::move(key), acc);
    return acc;
}

Track ConstructedPseudo::gammac_track(const LinComb& x, const LinComb& y, Cache* cache) const {
    return Track{gammac(x, y, cache), s(mul(x, y))};
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw RefusalError(what);
}

void check_common_preconditions(const TrackCategory& T, const LinearitySystem& lin,
                                const Graph& graph, const std::vector<Elem>& lifts,
                                const Ring& ring, const Budget& budget) {
    Report lin_report = verify_linearity(T, lin, budget);
    require(lin_report.ok(), "linearity track equations fail: " + [&] {
        for (const auto& l : lin_report.laws)
            if (!l.pass) return l.name + " " + l.witness.dump();
        return std::string();
    }());
    HomotopyCategory hc = homotopy_category(T, budget);
    std::vector<Elem> classes;
    for (size_t e = 0; e < graph.edges.size(); ++e)
        classes.push_back(hc.class_of(graph.edges[e].src, graph.edges[e].dst, lifts[e]));
    GeneratingVerdict gv = check_generating(T, hc, graph, classes, ring);
    require(gv.state == GeneratingVerdict::State::Generating,
            gv.state == GeneratingVerdict::State::NotGenerating
                ? "graph is not generating: class " + elem_to_string(gv.unreached) +
                      " of hom (" + T.object_name(gv.src) + "," + T.object_name(gv.dst) +
                      ") is unreached"
                : "generating check exhausted its budget (indeterminate)");
}

} // namespace

ConstructedPseudo build_pseudo_padic(const TrackCategory& T, const LinearitySystem& lin,
                                     const Graph& graph, const std::vector<Elem>& edge_lifts,
                                     int64_t p, const Budget& budget, PseudoOptions opts) {
    require(p >= 2, "p must be at least 2");
    for (int64_t d = 2; d * d <= p; ++d) require(p % d != 0, "p must be prime");
    // torsion: every 0-cell group exponent divides p
    for (size_t a = 0; a < T.object_count(); ++a)
        for (size_t b = 0; b < T.object_count(); ++b)
            for (int64_t o : T.hom(static_cast<int>(a), static_cast<int>(b)).c0.orders)
                require(o == 1 || o == p,
                        "0-cells are not p-torsion in hom (" +
                            T.object_name(static_cast<int>(a)) + "," +
                            T.object_name(static_cast<int>(b)) + ")");
    check_common_preconditions(T, lin, graph, edge_lifts, Ring::modular(p * p), budget);
    return ConstructedPseudo(T, lin, graph, edge_lifts, Ring::modular(p * p), opts);
}

ConstructedPseudo build_pseudo_integral(const TrackCategory& T, const LinearitySystem& lin,
                                        const Graph& graph,
                                        const std::vector<Elem>& edge_lifts,
                                        const Budget& budget, PseudoOptions opts) {
    check_common_preconditions(T, lin, graph, edge_lifts, Ring::integers(), budget);
    return ConstructedPseudo(T, lin, graph, edge_lifts, Ring::integers(), opts);
}

namespace {

struct TripleSpace {
    // x: B -> C over graph vertices, etc.
    BoundedMorphisms x, y, z;
};

} // namespace

Report check_coherence(const ConstructedPseudo& p, size_t word_bound, const Budget& budget,
                       int64_t coeff_window) {
    Report rep;
    rep.subject = "pseudo-functor coherence";
    rep.seed = budget.seed;
    rep.budget = budget.max_cases;
    Rng rng(budget.seed);
    const TrackCategory& T = p.target();
    int n = static_cast<int>(T.object_count());

    std::vector<BoundedMorphisms> homs;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            homs.push_back(bounded_morphisms(p.graph(), p.ring(), a, b, word_bound,
                                             coeff_window));
    auto hom_at = [&](int a, int b) -> const BoundedMorphisms& {
        return homs[static_cast<size_t>(a * n + b)];
    };

    // strict units and pointedness
    {
        LawResult r;
        r.name = "units and pointedness";
        ConstructedPseudo::Cache cache;
        for (int a = 0; a < n && r.pass; ++a) {
            ++r.cases;
            if (p.s_word(id_word(a)) != T.unit(a)) {
                r.pass = false;
                r.witness = json{{"clause", "s(1) = 1"}, {"object", T.object_name(a)}};
            }
        }
        for (int a = 0; a < n && r.pass; ++a)
            for (int b = 0; b < n && r.pass; ++b) {
                const BoundedMorphisms& bm = hom_at(a, b);
                uint64_t total = bm.total();
                uint64_t count = std::min<uint64_t>(total, budget.max_cases / 4 + 1);
                for (uint64_t i = 0; i < count && r.pass; ++i) {
                    LinComb x = total == count ? bm.decode(i) : bm.sample(rng);
                    ++r.cases;
                    LinComb unit_src = word_comb(p.ring(), id_word(a));
                    LinComb unit_dst = word_comb(p.ring(), id_word(b));
                    if (!T.hom(a, b).c1.is_zero(p.gammac(unit_dst, x, &cache)) ||
                        !T.hom(a, b).c1.is_zero(p.gammac(x, unit_src, &cache))) {
                        r.pass = false;
                        r.witness = json{{"clause", "Gamma(1,x) = Gamma(x,1) = id"},
                                         {"x", x.to_string(p.graph())}};
                        break;
                    }
                    LinComb zero_in = p.zero(a, a);
                    LinComb zero_out = p.zero(b, b);
                    if (!T.hom(a, b).c1.is_zero(p.gammac(zero_out, x, &cache)) ||
                        !T.hom(a, b).c1.is_zero(p.gammac(x, zero_in, &cache)) ||
                        !T.hom(a, b).c0.is_zero(p.s(p.zero(a, b)))) {
                        r.pass = false;
                        r.witness = json{{"clause", "pointedness"},
                                         {"x", x.to_string(p.graph())}};
                    }
                }
            }
        rep.laws.push_back(r);
    }

    // boundary validity of gammac on pairs
    {
        LawResult r;
        r.name = "gammac boundary";
        ConstructedPseudo::Cache cache;
        for (int a = 0; a < n && r.pass; ++a)
            for (int b = 0; b < n && r.pass; ++b)
                for (int c = 0; c < n && r.pass; ++c) {
                    const BoundedMorphisms& xs = hom_at(b, c);
                    const BoundedMorphisms& ys = hom_at(a, b);
                    unsigned __int128 total =
                        static_cast<unsigned __int128>(xs.total()) * ys.total();
                    bool exhaustive = total <= budget.max_cases;
                    uint64_t count = exhaustive ? static_cast<uint64_t>(total)
                                                : budget.max_cases / 8 + 1;
                    r.exhaustive = r.exhaustive && exhaustive;
                    for (uint64_t i = 0; i < count && r.pass; ++i) {
                        LinComb x = exhaustive ? xs.decode(i / ys.total()) : xs.sample(rng);
                        LinComb y = exhaustive ? ys.decode(i % ys.total()) : ys.sample(rng);
                        ++r.cases;
                        Elem g = p.gammac(x, y, &cache);
                        const TruncComplex1& hac = T.hom(a, c);
                        Elem lhs = hac.d.apply(g);
                        Elem rhs = hac.c0.sub(T.mu0(a, b, c, p.s(x), p.s(y)), p.s(mul(x, y)));
                        if (lhs != rhs) {
                            r.pass = false;
                            r.witness = json{{"x", x.to_string(p.graph())},
                                             {"y", y.to_string(p.graph())},
                                             {"d(gamma)", elem_to_string(lhs)},
                                             {"(sx)(sy)-s(xy)", elem_to_string(rhs)}};
                        }
                    }
                }
        rep.laws.push_back(r);
    }

    // the pasting (associativity) equation over triples
    {
        LawResult r;
        r.name = "pasting";
        struct TripleCtx {
            int a, b, c, d;
        };
        std::vector<TripleCtx> ctxs;
        unsigned __int128 grand = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        ctxs.push_back({a, b, c, d});
                        grand += static_cast<unsigned __int128>(hom_at(c, d).total()) *
                                 hom_at(b, c).total() * hom_at(a, b).total();
                    }
        bool exhaustive = grand <= budget.max_cases;
        r.exhaustive = exhaustive;

        auto check_triple = [&](const TripleCtx& ctx, const LinComb& x, const LinComb& y,
                                const LinComb& z,
                                ConstructedPseudo::Cache& cache) -> std::optional<json> {
            const TruncComplex1& had = T.hom(ctx.a, ctx.d);
            LinComb xy = mul(x, y), yz = mul(y, z);
            Track left = compose_tracks(
                had, p.gammac_track(xy, z, &cache),
                otimes10(T, ctx.a, ctx.b, ctx.d, p.gammac_track(x, y, &cache), p.s(z)));
            Track right = compose_tracks(
                had, p.gammac_track(x, yz, &cache),
                otimes01(T, ctx.a, ctx.c, ctx.d, p.s(x), p.gammac_track(y, z, &cache)));
            if (left == right) return std::nullopt;
            return json{{"x", x.to_string(p.graph())},
                        {"y", y.to_string(p.graph())},
                        {"z", z.to_string(p.graph())}};
        };

        if (exhaustive) {
            unsigned hw = std::max(1u, std::thread::hardware_concurrency());
            for (const TripleCtx& ctx : ctxs) {
                const BoundedMorphisms& xs = hom_at(ctx.c, ctx.d);
                const BoundedMorphisms& ys = hom_at(ctx.b, ctx.c);
                const BoundedMorphisms& zs = hom_at(ctx.a, ctx.b);
                uint64_t nx = xs.total(), ny = ys.total(), nz = zs.total();
                // parallel over x-slices; first failure in index order wins
                uint64_t chunk = (nx + hw - 1) / hw;
                std::vector<std::future<std::pair<uint64_t, std::optional<json>>>> futs;
                for (unsigned w = 0; w < hw; ++w) {
                    uint64_t lo = w * chunk, hi = std::min(nx, lo + chunk);
                    if (lo >= hi) break;
                    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                        ConstructedPseudo::Cache cache;
                        std::optional<json> witness;
                        uint64_t ix = lo;
                        for (; ix < hi && !witness; ++ix) {
                            LinComb x = xs.decode(ix);
                            for (uint64_t iy = 0; iy < ny && !witness; ++iy) {
                                LinComb y = ys.decode(iy);
                                LinComb xy = mul(x, y);
                                for (uint64_t iz = 0; iz < nz && !witness; ++iz)
                                    witness = check_triple(ctx, x, y, zs.decode(iz), cache);
                            }
                        }
                        return std::make_pair(ix, std::move(witness));
                    }));
                }
                std::optional<json> first;
                for (auto& f : futs) {
                    auto [ix, w] = f.get();
                    (void)ix;
                    if (w && !first) first = std::move(w);
                }
                r.cases += nx * ny * nz;
                if (first) {
                    r.pass = false;
                    r.witness = std::move(*first);
                    break;
                }
            }
        } else {
            ConstructedPseudo::Cache cache;
            for (uint64_t i = 0; i < budget.max_cases && r.pass; ++i) {
                const TripleCtx& ctx = ctxs[rng.below(ctxs.size())];
                LinComb x = hom_at(ctx.c, ctx.d).sample(rng);
                LinComb y = hom_at(ctx.b, ctx.c).sample(rng);
                LinComb z = hom_at(ctx.a, ctx.b).sample(rng);
                ++r.cases;
                if (auto w = check_triple(ctx, x, y, z, cache)) {
                    r.pass = false;
                    r.witness = std::move(*w);
                }
            }
        }
        rep.laws.push_back(r);
    }

    return rep;
}

namespace {

bool conditions_hold(const ConstructedPseudo& p, size_t word_bound, const Budget& budget,
                     json* why) {
    Rng rng(budget.seed);
    const TrackCategory& T = p.target();
    int n = static_cast<int>(T.object_count());
    ConstructedPseudo::Cache cache;
    for (uint64_t i = 0; i < budget.max_cases / 16 + 8; ++i) {
        int a = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        int c = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
        BoundedMorphisms xs = bounded_morphisms(p.graph(), p.ring(), b, c, word_bound, 2);
        BoundedMorphisms ys = bounded_morphisms(p.graph(), p.ring(), a, b, word_bound, 2);
        LinComb x = xs.sample(rng), x2 = xs.sample(rng);
        LinComb y = ys.sample(rng), z = ys.sample(rng);
        const FinAbGroup& out = T.hom(a, c).c1;
        // (1) left linearity
        if (p.gammac(add(x, x2), y, &cache) !=
            out.add(p.gammac(x, y, &cache), p.gammac(x2, y, &cache))) {
            if (why) *why = json{{"condition", "left linearity"}};
            return false;
        }
        // (2) identity on words
        if (!xs.words.empty()) {
            Word w = xs.words[rng.below(xs.words.size())];
            LinComb wy = word_comb(p.ring(), w);
            for (const Word& v : ys.words) {
                if (v.dst != w.src) continue;
                if (!T.hom(v.src, w.dst).c1.is_zero(
                        p.gammac(wy, word_comb(p.ring(), v), &cache))) {
                    if (why) *why = json{{"condition", "identity on words"}};
                    return false;
                }
            }
        }
        // (3) the right-linearization square
        Elem lhs = p.gammac(x, add(y, z), &cache);
        Elem rhs = out.add(out.add(p.gammac(x, y, &cache), p.gammac(x, z, &cache)),
                           p.linearity().gamma(T, a, b, c, p.s(x), p.s(y), p.s(z)));
        if (lhs != rhs) {
            if (why) *why = json{{"condition", "right linearization square"}};
            return false;
        }
    }
    return true;
}

} // namespace

UniquenessVerdict uniqueness_probe(const ConstructedPseudo& p, const ConstructedPseudo& q,
                                   size_t word_bound, const Budget& budget) {
    UniquenessVerdict v;
    json why;
    if (!conditions_hold(p, word_bound, budget, &why) ||
        !conditions_hold(q, word_bound, budget, &why)) {
        v.preconditions_ok = false;
        v.equal = false;
        v.divergence = why;
        return v;
    }
    const TrackCategory& T = p.target();
    int n = static_cast<int>(T.object_count());
    ConstructedPseudo::Cache cp, cq;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                BoundedMorphisms xs = bounded_morphisms(p.graph(), p.ring(), b, c, word_bound, 2);
                BoundedMorphisms ys = bounded_morphisms(p.graph(), p.ring(), a, b, word_bound, 2);
                unsigned __int128 total =
                    static_cast<unsigned __int128>(xs.total()) * ys.total();
                Rng rng(budget.seed);
                uint64_t count = total <= budget.max_cases ? static_cast<uint64_t>(total)
                                                           : budget.max_cases;
                bool exhaustive = total <= budget.max_cases;
                for (uint64_t i = 0; i < count; ++i) {
                    LinComb x = exhaustive ? xs.decode(i / ys.total()) : xs.sample(rng);
                    LinComb y = exhaustive ? ys.decode(i % ys.total()) : ys.sample(rng);
                    if (p.s(x) != q.s(x) || p.gammac(x, y, &cp) != q.gammac(x, y, &cq)) {
                        v.equal = false;
                        v.divergence = json{{"x", x.to_string(p.graph())},
                                            {"y", y.to_string(p.graph())}};
                        return v;
                    }
                }
            }
    return v;
}

FinitePseudo FinitePseudo::strict(const TrackCategory& S, const TrackCategory& T,
                                  const TrackFunctor& F) {
    FinitePseudo p;
    p.s_cat = &S;
    p.t_cat = &T;
    p.obj = F.obj;
    p.s0 = [&S, &T, F](int a, int b, const Elem& x) { return F.f0(a, b).apply(x); };
    p.s1 = [&S, &T, F](int a, int b, const Elem& m) { return F.f1(a, b).apply(m); };
    p.gammac = [&S, &T, F](int a, int b, int c, const Elem&, const Elem&) {
        return T.hom(F.obj[a], F.obj[c]).c1.zero();
    };
    return p;
}

Report check_coherence_finite(const FinitePseudo& p, const Budget& budget) {
    Report rep;
    rep.subject = "pseudo-functor coherence (finite source)";
    rep.seed = budget.seed;
    rep.budget = budget.max_cases;
    Rng rng(budget.seed);
    const TrackCategory& S = *p.s_cat;
    const TrackCategory& T = *p.t_cat;
    int n = static_cast<int>(S.object_count());
    constexpr uint64_t kB = uint64_t(1) << 40;

    std::vector<SubSpace> spaces;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    spaces.push_back(SubSpace{0,
                                              {a, b, c, d},
                                              {S.hom(c, d).c0.order_bounded(kB),
                                               S.hom(b, c).c0.order_bounded(kB),
                                               S.hom(a, b).c0.order_bounded(kB)}});
    rep.laws.push_back(run_law(
        "pasting", spaces, budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2], D = s.objs[3];
            int FA = p.obj[A], FB = p.obj[B], FC = p.obj[C], FD = p.obj[D];
            Elem x = S.hom(C, D).c0.decode(idx[0]);
            Elem y = S.hom(B, C).c0.decode(idx[1]);
            Elem z = S.hom(A, B).c0.decode(idx[2]);
            Elem xy = S.mu0(B, C, D, x, y), yz = S.mu0(A, B, C, y, z);
            auto track = [&](int sa, int sb, int sc, const Elem& u, const Elem& v) {
                Elem g = p.gammac(sa, sb, sc, u, v);
                Elem base = p.s0(sa, sc, S.mu0(sa, sb, sc, u, v));
                return Track{g, base};
            };
            const TruncComplex1& had = T.hom(FA, FD);
            Track left = compose_tracks(
                had, track(A, B, D, xy, z),
                otimes10(T, FA, FB, FD, track(B, C, D, x, y), p.s0(A, B, z)));
            Track right = compose_tracks(
                had, track(A, C, D, x, yz),
                otimes01(T, FA, FC, FD, p.s0(C, D, x), track(A, B, C, y, z)));
            if (left == right) return std::nullopt;
            return json{{"objects", json::array({S.object_name(A), S.object_name(B),
                                                 S.object_name(C), S.object_name(D)})},
                        {"x", elem_to_string(x)},
                        {"y", elem_to_string(y)},
                        {"z", elem_to_string(z)}};
        }));
    return rep;
}

} // namespace trackalg
