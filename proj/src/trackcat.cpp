#include "trackalg/trackcat.hpp"

#include <algorithm>
#include <sstream>

namespace trackalg {

LawResult run_law(const std::string& name, const std::vector<SubSpace>& spaces,
                  const Budget& budget, Rng& rng, const CaseFn& fn, bool advisory) {
    LawResult r;
    r.name = advisory ? "probe: " + name : name;
    uint64_t total = 0;
    for (const auto& s : spaces) {
        uint64_t t = s.total();
        total = (total > UINT64_MAX - t) ? UINT64_MAX : total + t;
    }
    r.exhaustive = total <= budget.max_cases;

    auto run_case = [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> bool {
        std::optional<json> w;
        try {
            w = fn(s, idx);
        } catch (const std::exception& e) {
            // a law whose sides fail to even compose is a violation, not a crash
            json j;
            j["error"] = e.what();
            j["case_index"] = json::array();
            for (uint64_t i : idx) j["case_index"].push_back(i);
            w = std::move(j);
        }
        ++r.cases;
        if (w) {
            r.pass = false;
            r.witness = std::move(*w);
            return false;
        }
        return true;
    };

    if (r.exhaustive) {
        for (const auto& s : spaces) {
            std::vector<uint64_t> idx(s.dims.size(), 0);
            uint64_t n = s.total();
            for (uint64_t c = 0; c < n; ++c) {
                uint64_t rem = c;
                for (size_t i = s.dims.size(); i-- > 0;) {
                    idx[i] = rem % s.dims[i];
                    rem /= s.dims[i];
                }
                if (!run_case(s, idx)) return r;
            }
        }
    } else {
        for (uint64_t c = 0; c < budget.max_cases; ++c) {
            const SubSpace& s = spaces[rng.below(spaces.size())];
            std::vector<uint64_t> idx(s.dims.size());
            for (size_t i = 0; i < s.dims.size(); ++i) idx[i] = rng.below(s.dims[i]);
            if (!run_case(s, idx)) return r;
        }
    }
    return r;
}

int TrackCategory::object_index(const std::string& name) const {
    for (size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i] == name) return static_cast<int>(i);
    throw InputError("unknown object '" + name + "'");
}

Track otimes10(const TrackCategory& T, int A, int B, int C, const Track& t, const Elem& f) {
    return Track{T.rwhisk(A, B, C, t.moore, f), T.mu0(A, B, C, t.base, f)};
}

Track otimes01(const TrackCategory& T, int A, int B, int C, const Elem& g, const Track& t) {
    return Track{T.lwhisk(A, B, C, g, t), T.mu0(A, B, C, g, t.base)};
}

Cell Cell::map(int src, int dst, Elem x) {
    Cell c;
    c.src = src;
    c.dst = dst;
    c.deg = 0;
    c.e0 = std::move(x);
    return c;
}

Cell Cell::track(int src, int dst, Track t) {
    Cell c;
    c.src = src;
    c.dst = dst;
    c.deg = 1;
    c.t = std::move(t);
    return c;
}

Cell otimes(const TrackCategory& T, const Cell& u, const Cell& v) {
    if (v.dst != u.src)
        throw ComposabilityError("otimes: cells not composable (object mismatch)");
    if (u.deg + v.deg > 1)
        throw ComposabilityError(
            "otimes of two tracks is undefined; use pointwise_compose for degree 2");
    int A = v.src, B = v.dst, C = u.dst;
    if (u.deg == 0 && v.deg == 0)
        return Cell::map(A, C, T.mu0(A, B, C, u.e0, v.e0));
    if (u.deg == 1) return Cell::track(A, C, otimes10(T, A, B, C, u.t, v.e0));
    return Cell::track(A, C, otimes01(T, A, B, C, u.e0, v.t));
}

Track pointwise_compose(const TrackCategory& T, int A, int B, int C, const Track& alpha,
                        const Track& beta) {
    const TruncComplex1& bc = T.hom(B, C);
    const TruncComplex1& ab = T.hom(A, B);
    const TruncComplex1& ac = T.hom(A, C);
    Elem d0a = delta0(bc, alpha), d1a = delta1(bc, alpha);
    Elem d0b = delta0(ab, beta), d1b = delta1(ab, beta);

    Track first = compose_tracks(ac, otimes10(T, A, B, C, alpha, d1b),
                                 otimes01(T, A, B, C, d0a, beta));
    Track second = compose_tracks(ac, otimes01(T, A, B, C, d1a, beta),
                                  otimes10(T, A, B, C, alpha, d0b));
    if (first != second) {
        std::ostringstream os;
        os << "interchange violation at objects (" << T.object_name(A) << "," << T.object_name(B)
           << "," << T.object_name(C) << "): alpha = (" << elem_to_string(alpha.moore) << ","
           << elem_to_string(alpha.base) << "), beta = (" << elem_to_string(beta.moore) << ","
           << elem_to_string(beta.base) << ")";
        throw InputError(os.str());
    }
    return first;
}

namespace {

json elem_json(const Elem& e) {
    json j = json::array();
    for (int64_t v : e) j.push_back(v);
    return j;
}

json track_json(const Track& t) {
    return json{{"moore", elem_json(t.moore)}, {"base", elem_json(t.base)}};
}

json objs_json(const TrackCategory& T, const std::vector<int>& objs) {
    json j = json::array();
    for (int o : objs) j.push_back(T.object_name(o));
    return j;
}

constexpr uint64_t kDimBound = uint64_t(1) << 40;

uint64_t dim0(const TrackCategory& T, int a, int b) {
    return T.hom(a, b).c0.order_bounded(kDimBound);
}
uint64_t dim1(const TrackCategory& T, int a, int b) {
    return T.hom(a, b).c1.order_bounded(kDimBound);
}

std::vector<SubSpace> triples_with(const TrackCategory& T,
                                   const std::function<std::vector<uint64_t>(int, int, int)>& dims,
                                   int tag = 0) {
    std::vector<SubSpace> out;
    int n = static_cast<int>(T.object_count());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) out.push_back(SubSpace{tag, {a, b, c}, dims(a, b, c)});
    return out;
}

} // namespace

Report axiom_check(const TrackCategory& T, const Budget& budget) {
    Report rep;
    rep.subject = "track category axioms";
    rep.seed = budget.seed;
    rep.budget = budget.max_cases;
    Rng rng(budget.seed);
    int n = static_cast<int>(T.object_count());

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    spaces.push_back(SubSpace{0, {a, b, c}, {dim0(T, b, c)}});
                    spaces.push_back(SubSpace{1, {a, b, c}, {dim0(T, a, b)}});
                    spaces.push_back(SubSpace{2, {a, b, c}, {dim0(T, a, b)}});
                    spaces.push_back(SubSpace{3, {a, b, c}, {dim0(T, b, c)}});
                }
        rep.laws.push_back(run_law(
            "pointedness", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2];
                bool ok = true;
                json w;
                if (s.tag == 0) {
                    Elem g = T.hom(B, C).c0.decode(idx[0]);
                    ok = T.mu0(A, B, C, g, T.zero0(A, B)) == T.zero0(A, C);
                    w["clause"] = "mu0(g,0)=0";
                    w["g"] = elem_json(g);
                } else if (s.tag == 1) {
                    Elem f = T.hom(A, B).c0.decode(idx[0]);
                    ok = T.mu0(A, B, C, T.zero0(B, C), f) == T.zero0(A, C);
                    w["clause"] = "mu0(0,f)=0";
                    w["f"] = elem_json(f);
                } else if (s.tag == 2) {
                    Elem f = T.hom(A, B).c0.decode(idx[0]);
                    ok = T.hom(A, C).c1.is_zero(T.rwhisk(A, B, C, T.hom(B, C).c1.zero(), f));
                    w["clause"] = "rwhisk(0,f)=0";
                    w["f"] = elem_json(f);
                } else {
                    Elem g = T.hom(B, C).c0.decode(idx[0]);
                    ok = T.hom(A, C).c1.is_zero(T.lwhisk(A, B, C, g, T.zero_track(A, B)));
                    w["clause"] = "lwhisk(g,0-track)=0";
                    w["g"] = elem_json(g);
                }
                if (ok) return std::nullopt;
                w["objects"] = objs_json(T, s.objs);
                return w;
            }));
    }

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        spaces.push_back(SubSpace{
                            0, {a, b, c, d}, {dim0(T, c, d), dim0(T, b, c), dim0(T, a, b)}});
        rep.laws.push_back(run_law(
            "mu0 associativity", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2], D = s.objs[3];
                Elem h = T.hom(C, D).c0.decode(idx[0]);
                Elem g = T.hom(B, C).c0.decode(idx[1]);
                Elem f = T.hom(A, B).c0.decode(idx[2]);
                Elem left = T.mu0(A, C, D, h, T.mu0(A, B, C, g, f));
                Elem right = T.mu0(A, B, D, T.mu0(B, C, D, h, g), f);
                if (left == right) return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)},
                            {"h", elem_json(h)},
                            {"g", elem_json(g)},
                            {"f", elem_json(f)},
                            {"h(gf)", elem_json(left)},
                            {"(hg)f", elem_json(right)}};
            }));
    }

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                spaces.push_back(SubSpace{0, {a, b}, {dim0(T, a, b)}});
        rep.laws.push_back(run_law(
            "mu0 units", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1];
                Elem f = T.hom(A, B).c0.decode(idx[0]);
                if (T.mu0(A, A, B, f, T.unit(A)) == f && T.mu0(A, B, B, T.unit(B), f) == f)
                    return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)}, {"f", elem_json(f)}};
            }));
    }

    rep.laws.push_back(run_law(
        "mu0 left linearity",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim0(T, b, c),
                                                      dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            const auto& bc = T.hom(B, C).c0;
            Elem g = bc.decode(idx[0]), g2 = bc.decode(idx[1]);
            Elem f = T.hom(A, B).c0.decode(idx[2]);
            Elem left = T.mu0(A, B, C, bc.add(g, g2), f);
            Elem right = T.hom(A, C).c0.add(T.mu0(A, B, C, g, f), T.mu0(A, B, C, g2, f));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"g", elem_json(g)},
                        {"g'", elem_json(g2)},
                        {"f", elem_json(f)}};
        }));

    rep.laws.push_back(run_law(
        "rwhisk additive in track",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim1(T, b, c), dim1(T, b, c),
                                                      dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            const auto& bc1 = T.hom(B, C).c1;
            Elem h = bc1.decode(idx[0]), h2 = bc1.decode(idx[1]);
            Elem f = T.hom(A, B).c0.decode(idx[2]);
            Elem left = T.rwhisk(A, B, C, bc1.add(h, h2), f);
            Elem right = T.hom(A, C).c1.add(T.rwhisk(A, B, C, h, f), T.rwhisk(A, B, C, h2, f));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"h", elem_json(h)},
                        {"h'", elem_json(h2)},
                        {"f", elem_json(f)}};
        }));

    rep.laws.push_back(run_law(
        "lwhisk additive in 0-cell",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim0(T, b, c),
                                                      dim1(T, a, b), dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            const auto& bc0 = T.hom(B, C).c0;
            Elem x = bc0.decode(idx[0]), x2 = bc0.decode(idx[1]);
            Track t{T.hom(A, B).c1.decode(idx[2]), T.hom(A, B).c0.decode(idx[3])};
            Elem left = T.lwhisk(A, B, C, bc0.add(x, x2), t);
            Elem right = T.hom(A, C).c1.add(T.lwhisk(A, B, C, x, t), T.lwhisk(A, B, C, x2, t));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"x", elem_json(x)},
                        {"x'", elem_json(x2)},
                        {"t", track_json(t)}};
        }));

    rep.laws.push_back(run_law(
        "boundary compatibility (rwhisk)",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim1(T, b, c), dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            Elem h = T.hom(B, C).c1.decode(idx[0]);
            Elem f = T.hom(A, B).c0.decode(idx[1]);
            Elem left = T.hom(A, C).d.apply(T.rwhisk(A, B, C, h, f));
            Elem right = T.mu0(A, B, C, T.hom(B, C).d.apply(h), f);
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"h", elem_json(h)},
                        {"f", elem_json(f)},
                        {"d(h o f)", elem_json(left)},
                        {"d(h) o f", elem_json(right)}};
        }));

    rep.laws.push_back(run_law(
        "boundary compatibility (lwhisk)",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim1(T, a, b),
                                                      dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            Elem x = T.hom(B, C).c0.decode(idx[0]);
            const auto& ab = T.hom(A, B);
            Track t{ab.c1.decode(idx[1]), ab.c0.decode(idx[2])};
            Elem left = T.hom(A, C).d.apply(T.lwhisk(A, B, C, x, t));
            Elem right =
                T.hom(A, C).c0.sub(T.mu0(A, B, C, x, delta0(ab, t)), T.mu0(A, B, C, x, t.base));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"x", elem_json(x)},
                        {"t", track_json(t)},
                        {"d(x o t)", elem_json(left)},
                        {"x d0(t) - x d1(t)", elem_json(right)}};
        }));

    rep.laws.push_back(run_law(
        "lwhisk vertical functoriality",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim1(T, a, b),
                                                      dim1(T, a, b), dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            const auto& ab = T.hom(A, B);
            Elem x = T.hom(B, C).c0.decode(idx[0]);
            Track beta{ab.c1.decode(idx[1]), ab.c0.decode(idx[2])};
            Elem am = ab.c1.decode(idx[3] % ab.c1.order_bounded(kDimBound));
            Track alpha{am, ab.c0.sub(beta.base, ab.d.apply(am))};
            Track comp = compose_tracks(ab, alpha, beta);
            Elem left = T.lwhisk(A, B, C, x, comp);
            Elem right =
                T.hom(A, C).c1.add(T.lwhisk(A, B, C, x, alpha), T.lwhisk(A, B, C, x, beta));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"x", elem_json(x)},
                        {"alpha", track_json(alpha)},
                        {"beta", track_json(beta)}};
        }));

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        spaces.push_back(SubSpace{0,
                                                  {a, b, c, d},
                                                  {dim1(T, c, d), dim0(T, c, d), dim0(T, b, c),
                                                   dim0(T, a, b)}});
                        spaces.push_back(SubSpace{1,
                                                  {a, b, c, d},
                                                  {dim0(T, c, d), dim1(T, b, c), dim0(T, b, c),
                                                   dim0(T, a, b)}});
                        spaces.push_back(SubSpace{2,
                                                  {a, b, c, d},
                                                  {dim0(T, c, d), dim0(T, b, c), dim1(T, a, b),
                                                   dim0(T, a, b)}});
                    }
        rep.laws.push_back(run_law(
            "otimes associativity", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2], D = s.objs[3];
                if (s.tag == 0) {
                    Track h{T.hom(C, D).c1.decode(idx[0]), T.hom(C, D).c0.decode(idx[1])};
                    Elem g = T.hom(B, C).c0.decode(idx[2]);
                    Elem f = T.hom(A, B).c0.decode(idx[3]);
                    Track left = otimes10(T, A, B, D, otimes10(T, B, C, D, h, g), f);
                    Track right = otimes10(T, A, C, D, h, T.mu0(A, B, C, g, f));
                    if (left == right) return std::nullopt;
                    return json{{"objects", objs_json(T, s.objs)},
                                {"case", "(h o g) o f vs h o (gf)"},
                                {"h", track_json(h)},
                                {"g", elem_json(g)},
                                {"f", elem_json(f)}};
                }
                if (s.tag == 1) {
                    Elem x = T.hom(C, D).c0.decode(idx[0]);
                    Track h{T.hom(B, C).c1.decode(idx[1]), T.hom(B, C).c0.decode(idx[2])};
                    Elem f = T.hom(A, B).c0.decode(idx[3]);
                    Track left = otimes10(T, A, B, D, otimes01(T, B, C, D, x, h), f);
                    Track right = otimes01(T, A, C, D, x, otimes10(T, A, B, C, h, f));
                    if (left == right) return std::nullopt;
                    return json{{"objects", objs_json(T, s.objs)},
                                {"case", "(x o h) o f vs x o (h o f)"},
                                {"x", elem_json(x)},
                                {"h", track_json(h)},
                                {"f", elem_json(f)}};
                }
                Elem x = T.hom(C, D).c0.decode(idx[0]);
                Elem y = T.hom(B, C).c0.decode(idx[1]);
                Track h{T.hom(A, B).c1.decode(idx[2]), T.hom(A, B).c0.decode(idx[3])};
                Track left = otimes01(T, A, B, D, T.mu0(B, C, D, x, y), h);
                Track right = otimes01(T, A, C, D, x, otimes01(T, A, B, C, y, h));
                if (left == right) return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)},
                            {"case", "(xy) o h vs x o (y o h)"},
                            {"x", elem_json(x)},
                            {"y", elem_json(y)},
                            {"h", track_json(h)}};
            }));
    }

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                spaces.push_back(SubSpace{0, {a, b}, {dim1(T, a, b), dim0(T, a, b)}});
        rep.laws.push_back(run_law(
            "otimes units", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1];
                Track h{T.hom(A, B).c1.decode(idx[0]), T.hom(A, B).c0.decode(idx[1])};
                Track left = otimes10(T, A, A, B, h, T.unit(A));
                Track right = otimes01(T, A, B, B, T.unit(B), h);
                if (left == h && right == h) return std::nullopt;
                return json{{"objects", objs_json(T, s.objs)},
                            {"h", track_json(h)},
                            {"h o 1", track_json(left)},
                            {"1 o h", track_json(right)}};
            }));
    }

    rep.laws.push_back(run_law(
        "interchange (pointwise factorizations)",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim1(T, b, c), dim0(T, b, c),
                                                      dim1(T, a, b), dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            Track alpha{T.hom(B, C).c1.decode(idx[0]), T.hom(B, C).c0.decode(idx[1])};
            Track beta{T.hom(A, B).c1.decode(idx[2]), T.hom(A, B).c0.decode(idx[3])};
            try {
                pointwise_compose(T, A, B, C, alpha, beta);
            } catch (const std::exception& e) {
                return json{{"objects", objs_json(T, s.objs)},
                            {"alpha", track_json(alpha)},
                            {"beta", track_json(beta)},
                            {"error", e.what()}};
            }
            return std::nullopt;
        }));

    rep.laws.push_back(run_law(
        "right linearity",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim0(T, a, b),
                                                      dim0(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            Elem a = T.hom(B, C).c0.decode(idx[0]);
            const auto& ab = T.hom(A, B).c0;
            Elem x = ab.decode(idx[1]), y = ab.decode(idx[2]);
            Elem left = T.mu0(A, B, C, a, ab.add(x, y));
            Elem right = T.hom(A, C).c0.add(T.mu0(A, B, C, a, x), T.mu0(A, B, C, a, y));
            if (left == right) return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"a", elem_json(a)},
                        {"x", elem_json(x)},
                        {"y", elem_json(y)},
                        {"a(x+y)", elem_json(left)},
                        {"ax+ay", elem_json(right)}};
        },
        /*advisory=*/true));

    return rep;
}

Elem HomotopyCategory::compose(int A, int B, int C, const Elem& gcls, const Elem& fcls) const {
    Elem g = at(B, C).rep0(gcls);
    Elem f = at(A, B).rep0(fcls);
    return at(A, C).class0(t->mu0(A, B, C, g, f));
}

Elem HomotopyCategory::unit_class(int a) const { return at(a, a).class0(t->unit(a)); }

HomotopyCategory homotopy_category(const TrackCategory& T, const Budget& budget) {
    HomotopyCategory hc;
    hc.t = &T;
    int n = static_cast<int>(T.object_count());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) hc.h.emplace(std::make_pair(a, b), homology(T.hom(a, b)));

    hc.descent.subject = "homotopy category descent";
    hc.descent.seed = budget.seed;
    hc.descent.budget = budget.max_cases;
    Rng rng(budget.seed);
    hc.descent.laws.push_back(run_law(
        "mu0 descends to H0",
        triples_with(T,
                     [&](int a, int b, int c) {
                         return std::vector<uint64_t>{dim0(T, b, c), dim0(T, a, b),
                                                      dim1(T, b, c), dim1(T, a, b)};
                     }),
        budget, rng,
        [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
            int A = s.objs[0], B = s.objs[1], C = s.objs[2];
            Elem g = T.hom(B, C).c0.decode(idx[0]);
            Elem f = T.hom(A, B).c0.decode(idx[1]);
            Elem g2 = T.hom(B, C).c0.add(g, T.hom(B, C).d.apply(T.hom(B, C).c1.decode(idx[2])));
            Elem f2 = T.hom(A, B).c0.add(f, T.hom(A, B).d.apply(T.hom(A, B).c1.decode(idx[3])));
            const Homology& hac = hc.at(A, C);
            if (hac.class0(T.mu0(A, B, C, g, f)) == hac.class0(T.mu0(A, B, C, g2, f2)))
                return std::nullopt;
            return json{{"objects", objs_json(T, s.objs)},
                        {"g", elem_json(g)},
                        {"f", elem_json(f)},
                        {"g'", elem_json(g2)},
                        {"f'", elem_json(f2)}};
        }));
    return hc;
}

TrackFunctor TrackFunctor::identity(const TrackCategory& S) {
    TrackFunctor f;
    int n = static_cast<int>(S.object_count());
    for (int a = 0; a < n; ++a) f.obj.push_back(a);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            f.maps.emplace(std::make_pair(a, b),
                           std::make_pair(AbHom::identity(S.hom(a, b).c1),
                                          AbHom::identity(S.hom(a, b).c0)));
    return f;
}

AbHom induced_h0(const AbHom& f0, const Homology& hs, const Homology& ht) {
    Mat m(ht.h0.group.rank(), std::vector<int64_t>(hs.h0.group.rank(), 0));
    for (size_t c = 0; c < hs.h0.group.rank(); ++c) {
        Elem img = ht.h0.proj.apply(f0.apply(hs.h0.lift[c]));
        for (size_t i = 0; i < img.size(); ++i) m[i][c] = img[i];
    }
    return AbHom(hs.h0.group, ht.h0.group, std::move(m));
}

AbHom induced_h1(const AbHom& f1, const Homology& hs, const Homology& ht) {
    Mat m(ht.h1.group.rank(), std::vector<int64_t>(hs.h1.group.rank(), 0));
    for (size_t c = 0; c < hs.h1.group.rank(); ++c) {
        Elem cyc = hs.h1.emb.apply(hs.h1.group.basis(c));
        Elem img = f1.apply(cyc);
        auto cls = solve_preimage(ht.h1.emb, img);
        if (!cls) throw InputError("chain map does not send cycles to cycles");
        for (size_t i = 0; i < cls->size(); ++i) m[i][c] = (*cls)[i];
    }
    return AbHom(hs.h1.group, ht.h1.group, std::move(m));
}

DkVerdict dk_compare(const TrackFunctor& F, const TrackCategory& S, const TrackCategory& T,
                     const Budget& budget) {
    DkVerdict v;
    v.report.subject = "DK comparison";
    v.report.seed = budget.seed;
    v.report.budget = budget.max_cases;
    Rng rng(budget.seed);
    int n = static_cast<int>(S.object_count());

    {
        LawResult r;
        r.name = "object bijection";
        r.cases = 1;
        std::vector<bool> hit(T.object_count(), false);
        if (F.obj.size() != S.object_count() || S.object_count() != T.object_count())
            r.pass = false;
        else
            for (int o : F.obj) {
                if (o < 0 || o >= static_cast<int>(T.object_count()) || hit[static_cast<size_t>(o)]) {
                    r.pass = false;
                    break;
                }
                hit[static_cast<size_t>(o)] = true;
            }
        if (!r.pass) r.witness = json{{"reason", "object map is not a bijection"}};
        v.report.laws.push_back(r);
        if (!r.pass) {
            v.failing = "objects";
            return v;
        }
    }

    {
        LawResult r;
        r.name = "hom maps are chain maps";
        for (int a = 0; a < n && r.pass; ++a)
            for (int b = 0; b < n && r.pass; ++b) {
                const auto& [f1, f0] = F.maps.at({a, b});
                const TruncComplex1& hs = S.hom(a, b);
                const TruncComplex1& ht = T.hom(F.obj[a], F.obj[b]);
                if (f1.source.orders != hs.c1.orders || f0.source.orders != hs.c0.orders ||
                    f1.target.orders != ht.c1.orders || f0.target.orders != ht.c0.orders) {
                    r.pass = false;
                    r.witness = json{{"hom", {S.object_name(a), S.object_name(b)}},
                                     {"reason", "hom map has wrong source or target"}};
                    break;
                }
                if (!(f0.compose(hs.d) == ht.d.compose(f1))) {
                    r.pass = false;
                    r.witness = json{{"hom", {S.object_name(a), S.object_name(b)}},
                                     {"reason", "does not commute with the differential"}};
                }
                ++r.cases;
            }
        v.report.laws.push_back(r);
        if (!r.pass) {
            v.failing = "chain maps";
            throw InputError("dk_compare: input is not a chain map: " + r.witness.dump());
        }
    }

    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    auto d0 = [&](int x, int y) {
                        return S.hom(x, y).c0.order_bounded(kDimBound);
                    };
                    auto d1 = [&](int x, int y) {
                        return S.hom(x, y).c1.order_bounded(kDimBound);
                    };
                    spaces.push_back(SubSpace{0, {a, b, c}, {d0(b, c), d0(a, b)}});
                    spaces.push_back(SubSpace{1, {a, b, c}, {d1(b, c), d0(a, b)}});
                    spaces.push_back(SubSpace{2, {a, b, c}, {d0(b, c), d1(a, b), d0(a, b)}});
                }
        v.report.laws.push_back(run_law(
            "strict functoriality", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2];
                int FA = F.obj[A], FB = F.obj[B], FC = F.obj[C];
                if (s.tag == 0) {
                    Elem g = S.hom(B, C).c0.decode(idx[0]);
                    Elem f = S.hom(A, B).c0.decode(idx[1]);
                    Elem lhs = F.f0(A, C).apply(S.mu0(A, B, C, g, f));
                    Elem rhs = T.mu0(FA, FB, FC, F.f0(B, C).apply(g), F.f0(A, B).apply(f));
                    if (lhs == rhs) return std::nullopt;
                    return json{{"clause", "mu0"},
                                {"objects", objs_json(S, s.objs)},
                                {"g", elem_json(g)},
                                {"f", elem_json(f)}};
                }
                if (s.tag == 1) {
                    Elem h = S.hom(B, C).c1.decode(idx[0]);
                    Elem f = S.hom(A, B).c0.decode(idx[1]);
                    Elem lhs = F.f1(A, C).apply(S.rwhisk(A, B, C, h, f));
                    Elem rhs = T.rwhisk(FA, FB, FC, F.f1(B, C).apply(h), F.f0(A, B).apply(f));
                    if (lhs == rhs) return std::nullopt;
                    return json{{"clause", "rwhisk"},
                                {"objects", objs_json(S, s.objs)},
                                {"h", elem_json(h)},
                                {"f", elem_json(f)}};
                }
                Elem x = S.hom(B, C).c0.decode(idx[0]);
                Track t{S.hom(A, B).c1.decode(idx[1]), S.hom(A, B).c0.decode(idx[2])};
                Elem lhs = F.f1(A, C).apply(S.lwhisk(A, B, C, x, t));
                Track ft{F.f1(A, B).apply(t.moore), F.f0(A, B).apply(t.base)};
                Elem rhs = T.lwhisk(FA, FB, FC, F.f0(B, C).apply(x), ft);
                if (lhs == rhs) return std::nullopt;
                return json{{"clause", "lwhisk"},
                            {"objects", objs_json(S, s.objs)},
                            {"x", elem_json(x)},
                            {"t", track_json(t)}};
            }));
    }

    {
        LawResult r;
        r.name = "units preserved";
        for (int a = 0; a < n; ++a) {
            ++r.cases;
            if (F.f0(a, a).apply(S.unit(a)) != T.unit(F.obj[a])) {
                r.pass = false;
                r.witness = json{{"object", S.object_name(a)}};
                break;
            }
        }
        v.report.laws.push_back(r);
    }

    {
        LawResult r;
        r.name = "hom H0/H1 isomorphisms";
        for (int a = 0; a < n && r.pass; ++a)
            for (int b = 0; b < n && r.pass; ++b) {
                Homology hs = homology(S.hom(a, b));
                Homology ht = homology(T.hom(F.obj[a], F.obj[b]));
                AbHom h0 = induced_h0(F.f0(a, b), hs, ht);
                bool ok0 = is_isomorphism(h0);
                bool ok1 = true;
                try {
                    AbHom h1 = induced_h1(F.f1(a, b), hs, ht);
                    ok1 = is_isomorphism(h1);
                } catch (const InputError&) {
                    ok1 = false;
                }
                ++r.cases;
                if (!ok0 || !ok1) {
                    r.pass = false;
                    r.witness = json{{"hom", {S.object_name(a), S.object_name(b)}},
                                     {"H0 iso", ok0},
                                     {"H1 iso", ok1}};
                    v.failing = S.object_name(a) + "->" + S.object_name(b);
                }
            }
        v.report.laws.push_back(r);
    }

    // with a bijection on objects and H0-isos on homs, pi0 is essentially
    // surjective, full and faithful; record the combined verdict.
    {
        LawResult r;
        r.name = "pi0 equivalence";
        r.cases = 1;
        r.pass = v.report.laws.back().pass;
        if (!r.pass) r.witness = json{{"reason", "hom H0 comparison failed"}};
        v.report.laws.push_back(r);
    }

    v.equivalence = v.report.ok();
    if (!v.equivalence && v.failing.empty()) v.failing = "see report";
    return v;
}

OverrideCategory::OverrideCategory(const TrackCategory& base)
    : TrackCategory([&] {
          std::vector<std::string> names;
          for (size_t i = 0; i < base.object_count(); ++i)
              names.push_back(base.object_name(static_cast<int>(i)));
          return names;
      }()),
      base_(&base) {}

Elem OverrideCategory::mu0(int A, int B, int C, const Elem& g, const Elem& f) const {
    if (mu0_override)
        if (auto v = mu0_override(A, B, C, g, f)) return *v;
    return base_->mu0(A, B, C, g, f);
}

Elem OverrideCategory::rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const {
    if (rwhisk_override)
        if (auto v = rwhisk_override(A, B, C, hm, x)) return *v;
    return base_->rwhisk(A, B, C, hm, x);
}

Elem OverrideCategory::lwhisk(int A, int B, int C, const Elem& x, const Track& t) const {
    if (lwhisk_override)
        if (auto v = lwhisk_override(A, B, C, x, t)) return *v;
    return base_->lwhisk(A, B, C, x, t);
}

} // namespace trackalg
