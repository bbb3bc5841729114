#include "trackalg/dg.hpp"

namespace trackalg {

const TruncComplex1& DGTable::hom(int a, int b) const {
    auto it = homs.find({a, b});
    if (it == homs.end())
        throw InputError("missing hom complex for pair (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
    return it->second;
}

int DGTable::object_index(const std::string& name) const {
    for (size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == name) return static_cast<int>(i);
    throw InputError("unknown object '" + name + "'");
}

namespace {

Elem bilinear(const FinAbGroup& out, const std::vector<std::vector<Elem>>& table, const Elem& g,
              const Elem& f) {
    Elem acc = out.zero();
    for (size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0) continue;
        for (size_t j = 0; j < f.size(); ++j) {
            if (f[j] == 0) continue;
            acc = out.add(acc, out.scale(checked_mul(g[i], f[j]), table[i][j]));
        }
    }
    return acc;
}

} // namespace

Elem DGTable::mul00(int A, int B, int C, const Elem& g, const Elem& f) const {
    return bilinear(hom(A, C).c0, mu0t.at({A, B, C}), g, f);
}

Elem DGTable::mul10(int A, int B, int C, const Elem& h, const Elem& f) const {
    return bilinear(hom(A, C).c1, t10.at({A, B, C}), h, f);
}

Elem DGTable::mul01(int A, int B, int C, const Elem& g, const Elem& h) const {
    return bilinear(hom(A, C).c1, t01.at({A, B, C}), g, h);
}

void DGTable::validate() const {
    int n = static_cast<int>(objects.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) hom(a, b); // presence
    for (int a = 0; a < n; ++a) {
        auto it = units.find(a);
        if (it == units.end() || it->second.size() != hom(a, a).c0.rank())
            throw InputError("missing or malformed unit for object " + objects[static_cast<size_t>(a)]);
    }
    auto check_table = [&](const char* which, const std::vector<std::vector<Elem>>& t, int A,
                           int B, int C, const FinAbGroup& left, const FinAbGroup& right,
                           const FinAbGroup& out) {
        std::string where = std::string(which) + " table at (" + objects[static_cast<size_t>(A)] + "," +
                            objects[static_cast<size_t>(B)] + "," + objects[static_cast<size_t>(C)] + ")";
        if (t.size() != left.rank()) throw InputError(where + ": wrong row count");
        for (size_t i = 0; i < t.size(); ++i) {
            if (t[i].size() != right.rank()) throw InputError(where + ": wrong column count");
            for (size_t j = 0; j < t[i].size(); ++j) {
                if (t[i][j].size() != out.rank() || !out.contains(t[i][j]))
                    throw InputError(where + ": entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") is not a reduced element");
                // bilinear well-definedness: the entry is killed by both
                // generator orders
                if (!out.is_zero(out.scale(left.orders[i], t[i][j])) ||
                    !out.is_zero(out.scale(right.orders[j], t[i][j])))
                    throw InputError(where + ": entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ") violates order compatibility");
            }
        }
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                check_table("mu0", mu0t.at({a, b, c}), a, b, c, hom(b, c).c0, hom(a, b).c0,
                            hom(a, c).c0);
                check_table("t10", t10.at({a, b, c}), a, b, c, hom(b, c).c1, hom(a, b).c0,
                            hom(a, c).c1);
                check_table("t01", t01.at({a, b, c}), a, b, c, hom(b, c).c0, hom(a, b).c1,
                            hom(a, c).c1);
            }
}

Report DGTable::check_axioms(const Budget& budget) const {
    validate();
    Report rep;
    rep.subject = "1-truncated DG-category laws";
    rep.seed = budget.seed;
    rep.budget = budget.max_cases;
    Rng rng(budget.seed);
    int n = static_cast<int>(objects.size());
    constexpr uint64_t kB = uint64_t(1) << 40;

    auto ej = [](const Elem& e) {
        json j = json::array();
        for (int64_t v : e) j.push_back(v);
        return j;
    };

    // associativity in all degree patterns of total degree <= 1
    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        uint64_t cd0 = hom(c, d).c0.order_bounded(kB);
                        uint64_t cd1 = hom(c, d).c1.order_bounded(kB);
                        uint64_t bc0 = hom(b, c).c0.order_bounded(kB);
                        uint64_t bc1 = hom(b, c).c1.order_bounded(kB);
                        uint64_t ab0 = hom(a, b).c0.order_bounded(kB);
                        uint64_t ab1 = hom(a, b).c1.order_bounded(kB);
                        spaces.push_back(SubSpace{0, {a, b, c, d}, {cd0, bc0, ab0}});
                        spaces.push_back(SubSpace{1, {a, b, c, d}, {cd1, bc0, ab0}});
                        spaces.push_back(SubSpace{2, {a, b, c, d}, {cd0, bc1, ab0}});
                        spaces.push_back(SubSpace{3, {a, b, c, d}, {cd0, bc0, ab1}});
                    }
        rep.laws.push_back(run_law(
            "otimes associativity", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2], D = s.objs[3];
                Elem left, right;
                if (s.tag == 0) {
                    Elem x = hom(C, D).c0.decode(idx[0]);
                    Elem y = hom(B, C).c0.decode(idx[1]);
                    Elem z = hom(A, B).c0.decode(idx[2]);
                    left = mul00(A, C, D, x, mul00(A, B, C, y, z));
                    right = mul00(A, B, D, mul00(B, C, D, x, y), z);
                } else if (s.tag == 1) {
                    Elem x = hom(C, D).c1.decode(idx[0]);
                    Elem y = hom(B, C).c0.decode(idx[1]);
                    Elem z = hom(A, B).c0.decode(idx[2]);
                    left = mul10(A, C, D, x, mul00(A, B, C, y, z));
                    right = mul10(A, B, D, mul10(B, C, D, x, y), z);
                } else if (s.tag == 2) {
                    Elem x = hom(C, D).c0.decode(idx[0]);
                    Elem y = hom(B, C).c1.decode(idx[1]);
                    Elem z = hom(A, B).c0.decode(idx[2]);
                    left = mul01(A, C, D, x, mul10(A, B, C, y, z));
                    right = mul10(A, B, D, mul01(B, C, D, x, y), z);
                } else {
                    Elem x = hom(C, D).c0.decode(idx[0]);
                    Elem y = hom(B, C).c0.decode(idx[1]);
                    Elem z = hom(A, B).c1.decode(idx[2]);
                    left = mul01(A, C, D, x, mul01(A, B, C, y, z));
                    right = mul01(A, B, D, mul00(B, C, D, x, y), z);
                }
                if (left == right) return std::nullopt;
                return json{{"tag", s.tag}, {"left", ej(left)}, {"right", ej(right)}};
            }));
    }

    // units in both degrees
    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                spaces.push_back(SubSpace{0, {a, b}, {hom(a, b).c0.order_bounded(kB)}});
                spaces.push_back(SubSpace{1, {a, b}, {hom(a, b).c1.order_bounded(kB)}});
            }
        rep.laws.push_back(run_law(
            "otimes units", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1];
                if (s.tag == 0) {
                    Elem x = hom(A, B).c0.decode(idx[0]);
                    if (mul00(A, A, B, x, units.at(A)) == x &&
                        mul00(A, B, B, units.at(B), x) == x)
                        return std::nullopt;
                    return json{{"x", ej(x)}};
                }
                Elem h = hom(A, B).c1.decode(idx[0]);
                if (mul10(A, A, B, h, units.at(A)) == h && mul01(A, B, B, units.at(B), h) == h)
                    return std::nullopt;
                return json{{"h", ej(h)}};
            }));
    }

    // bilinearity in both arguments and both degrees
    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    uint64_t bc0 = hom(b, c).c0.order_bounded(kB);
                    uint64_t bc1 = hom(b, c).c1.order_bounded(kB);
                    uint64_t ab0 = hom(a, b).c0.order_bounded(kB);
                    uint64_t ab1 = hom(a, b).c1.order_bounded(kB);
                    spaces.push_back(SubSpace{0, {a, b, c}, {bc0, bc0, ab0}});
                    spaces.push_back(SubSpace{1, {a, b, c}, {bc0, ab0, ab0}});
                    spaces.push_back(SubSpace{2, {a, b, c}, {bc1, bc1, ab0}});
                    spaces.push_back(SubSpace{3, {a, b, c}, {bc0, ab1, ab1}});
                }
        rep.laws.push_back(run_law(
            "bilinearity", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2];
                if (s.tag == 0) {
                    Elem g = hom(B, C).c0.decode(idx[0]), g2 = hom(B, C).c0.decode(idx[1]);
                    Elem f = hom(A, B).c0.decode(idx[2]);
                    if (mul00(A, B, C, hom(B, C).c0.add(g, g2), f) ==
                        hom(A, C).c0.add(mul00(A, B, C, g, f), mul00(A, B, C, g2, f)))
                        return std::nullopt;
                    return json{{"clause", "left deg0"}};
                }
                if (s.tag == 1) {
                    Elem g = hom(B, C).c0.decode(idx[0]);
                    Elem f = hom(A, B).c0.decode(idx[1]), f2 = hom(A, B).c0.decode(idx[2]);
                    if (mul00(A, B, C, g, hom(A, B).c0.add(f, f2)) ==
                        hom(A, C).c0.add(mul00(A, B, C, g, f), mul00(A, B, C, g, f2)))
                        return std::nullopt;
                    return json{{"clause", "right deg0"}};
                }
                if (s.tag == 2) {
                    Elem h = hom(B, C).c1.decode(idx[0]), h2 = hom(B, C).c1.decode(idx[1]);
                    Elem f = hom(A, B).c0.decode(idx[2]);
                    if (mul10(A, B, C, hom(B, C).c1.add(h, h2), f) ==
                        hom(A, C).c1.add(mul10(A, B, C, h, f), mul10(A, B, C, h2, f)))
                        return std::nullopt;
                    return json{{"clause", "left deg1"}};
                }
                Elem g = hom(B, C).c0.decode(idx[0]);
                Elem h = hom(A, B).c1.decode(idx[1]), h2 = hom(A, B).c1.decode(idx[2]);
                if (mul01(A, B, C, g, hom(A, B).c1.add(h, h2)) ==
                    hom(A, C).c1.add(mul01(A, B, C, g, h), mul01(A, B, C, g, h2)))
                    return std::nullopt;
                return json{{"clause", "right deg1"}};
            }));
    }

    // Leibniz: (da)(x)b = a(x)(db), d(x(x)b) = x(x)db, d(a(x)y) = (da)(x)y
    {
        std::vector<SubSpace> spaces;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    uint64_t bc0 = hom(b, c).c0.order_bounded(kB);
                    uint64_t bc1 = hom(b, c).c1.order_bounded(kB);
                    uint64_t ab0 = hom(a, b).c0.order_bounded(kB);
                    uint64_t ab1 = hom(a, b).c1.order_bounded(kB);
                    spaces.push_back(SubSpace{0, {a, b, c}, {bc1, ab1}});
                    spaces.push_back(SubSpace{1, {a, b, c}, {bc0, ab1}});
                    spaces.push_back(SubSpace{2, {a, b, c}, {bc1, ab0}});
                }
        rep.laws.push_back(run_law(
            "Leibniz", spaces, budget, rng,
            [&](const SubSpace& s, const std::vector<uint64_t>& idx) -> std::optional<json> {
                int A = s.objs[0], B = s.objs[1], C = s.objs[2];
                if (s.tag == 0) {
                    Elem a1 = hom(B, C).c1.decode(idx[0]);
                    Elem b1 = hom(A, B).c1.decode(idx[1]);
                    Elem left = mul01(A, B, C, hom(B, C).d.apply(a1), b1);
                    Elem right = mul10(A, B, C, a1, hom(A, B).d.apply(b1));
                    if (left == right) return std::nullopt;
                    return json{{"clause", "(da)(x)b = a(x)(db)"},
                                {"a", ej(a1)},
                                {"b", ej(b1)},
                                {"left", ej(left)},
                                {"right", ej(right)}};
                }
                if (s.tag == 1) {
                    Elem x = hom(B, C).c0.decode(idx[0]);
                    Elem b1 = hom(A, B).c1.decode(idx[1]);
                    Elem left = hom(A, C).d.apply(mul01(A, B, C, x, b1));
                    Elem right = mul00(A, B, C, x, hom(A, B).d.apply(b1));
                    if (left == right) return std::nullopt;
                    return json{{"clause", "d(x(x)b) = x(x)db"}, {"x", ej(x)}, {"b", ej(b1)}};
                }
                Elem a1 = hom(B, C).c1.decode(idx[0]);
                Elem y = hom(A, B).c0.decode(idx[1]);
                Elem left = hom(A, C).d.apply(mul10(A, B, C, a1, y));
                Elem right = mul00(A, B, C, hom(B, C).d.apply(a1), y);
                if (left == right) return std::nullopt;
                return json{{"clause", "d(a(x)y) = (da)(x)y"}, {"a", ej(a1)}, {"y", ej(y)}};
            }));
    }

    return rep;
}

BilinearTrackCategory::BilinearTrackCategory(DGTable table)
    : TrackCategory(table.objects), table_(std::move(table)) {
    table_.validate();
}

DGTable one_object_dg(const std::string& obj, TruncComplex1 hom,
                      std::vector<std::vector<Elem>> mu0t, std::vector<std::vector<Elem>> t10,
                      std::vector<std::vector<Elem>> t01, Elem unit) {
    DGTable t;
    t.objects = {obj};
    t.homs.emplace(std::make_pair(0, 0), std::move(hom));
    t.mu0t.emplace(std::make_tuple(0, 0, 0), std::move(mu0t));
    t.t10.emplace(std::make_tuple(0, 0, 0), std::move(t10));
    t.t01.emplace(std::make_tuple(0, 0, 0), std::move(t01));
    t.units.emplace(0, std::move(unit));
    return t;
}

} // namespace trackalg
