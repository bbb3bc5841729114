#include "trackalg/fixtures.hpp"

#include <algorithm>

namespace trackalg {

namespace {

bool is_prime(int64_t p) {
    if (p < 2) return false;
    for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r = checked_mul(r, b);
    return r;
}

} // namespace

QuadraticPairCategory::QuadraticPairCategory(int64_t modulus, int max_rank)
    : TrackCategory([&] {
          std::vector<std::string> names;
          for (int r = 0; r <= max_rank; ++r) names.push_back("rk" + std::to_string(r));
          return names;
      }()),
      mod_(modulus), max_rank_(max_rank) {
    if (modulus < 2) throw InputError("quadratic pair model needs modulus >= 2");
    if (max_rank < 0) throw InputError("max_rank must be nonnegative");
    for (int m = 0; m <= max_rank; ++m)
        for (int n = 0; n <= max_rank; ++n) {
            size_t nq = nonzero_inputs(m) * static_cast<size_t>(n);
            std::vector<int64_t> c1o(nq, mod_);
            std::vector<int64_t> c0o(static_cast<size_t>(n) * static_cast<size_t>(m) + nq, mod_);
            FinAbGroup c1(c1o), c0(c0o);
            // d h = (0, h): identity into the function block
            Mat d(c0.rank(), std::vector<int64_t>(c1.rank(), 0));
            size_t off = static_cast<size_t>(n) * static_cast<size_t>(m);
            for (size_t k = 0; k < nq; ++k) d[off + k][k] = 1;
            homs_.emplace(std::make_pair(m, n), TruncComplex1(c1, c0, AbHom(c1, c0, d)));
        }
}

size_t QuadraticPairCategory::nonzero_inputs(int m) const {
    return static_cast<size_t>(ipow(mod_, m)) - 1;
}

size_t QuadraticPairCategory::input_index(int m, const Elem& v) const {
    uint64_t idx = 0;
    for (int i = 0; i < m; ++i)
        idx = idx * static_cast<uint64_t>(mod_) + static_cast<uint64_t>(v[static_cast<size_t>(i)]);
    return static_cast<size_t>(idx) - 1;
}

const TruncComplex1& QuadraticPairCategory::hom(int a, int b) const {
    return homs_.at({a, b});
}

Mat QuadraticPairCategory::matrix_part(int m, int n, const Elem& e) const {
    Mat a(static_cast<size_t>(n), std::vector<int64_t>(static_cast<size_t>(m), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a[i][j] = e[static_cast<size_t>(i * m + j)];
    return a;
}

Elem QuadraticPairCategory::function_value(int m, int n, const Elem& e, const Elem& v,
                                           bool degree1) const {
    Elem out(static_cast<size_t>(n), 0);
    bool zero = true;
    for (int i = 0; i < m; ++i)
        if (v[static_cast<size_t>(i)] != 0) zero = false;
    if (zero) return out; // basepoint preserving
    size_t off = degree1 ? 0 : static_cast<size_t>(n) * static_cast<size_t>(m);
    size_t iv = input_index(m, v);
    size_t nq = nonzero_inputs(m);
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = e[off + static_cast<size_t>(i) * nq + iv];
    return out;
}

Elem QuadraticPairCategory::pack0(int m, int n, const Mat& a, const std::vector<Elem>& q) const {
    size_t nq = nonzero_inputs(m);
    Elem e(static_cast<size_t>(n * m) + static_cast<size_t>(n) * nq, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            e[static_cast<size_t>(i * m + j)] = mod_reduce(a[static_cast<size_t>(i)][static_cast<size_t>(j)], mod_);
    size_t off = static_cast<size_t>(n) * static_cast<size_t>(m);
    for (size_t k = 0; k < nq; ++k)
        for (int i = 0; i < n; ++i)
            e[off + static_cast<size_t>(i) * nq + k] = mod_reduce(q[k][static_cast<size_t>(i)], mod_);
    return e;
}

Elem QuadraticPairCategory::mu0(int A, int B, int C, const Elem& g, const Elem& f) const {
    // g = (B,r): B -> C, f = (A,q): A -> B, ranks A=m, B=k, C=n
    int m = A, k = B, n = C;
    Mat bmat = matrix_part(k, n, g);
    Mat amat = matrix_part(m, k, f);
    size_t nq = nonzero_inputs(m);
    Elem out(static_cast<size_t>(n * m) + static_cast<size_t>(n) * nq, 0);
    // matrix part: B*A
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            int64_t acc = 0;
            for (int l = 0; l < k; ++l)
                acc = mod_reduce(acc + checked_mul(bmat[static_cast<size_t>(i)][static_cast<size_t>(l)],
                                                   amat[static_cast<size_t>(l)][static_cast<size_t>(j)]),
                                 mod_);
            out[static_cast<size_t>(i * m + j)] = acc;
        }
    // function part: v |-> B q(v) + r(A v)
    size_t off = static_cast<size_t>(n) * static_cast<size_t>(m);
    Elem v(static_cast<size_t>(m), 0);
    for (size_t iv = 0; iv < nq; ++iv) {
        uint64_t code = iv + 1;
        for (int i = m; i-- > 0;) {
            v[static_cast<size_t>(i)] = static_cast<int64_t>(code % static_cast<uint64_t>(mod_));
            code /= static_cast<uint64_t>(mod_);
        }
        Elem qv = function_value(m, k, f, v, false);
        Elem av(static_cast<size_t>(k), 0);
        for (int l = 0; l < k; ++l) {
            int64_t acc = 0;
            for (int j = 0; j < m; ++j)
                acc = mod_reduce(acc + checked_mul(amat[static_cast<size_t>(l)][static_cast<size_t>(j)],
                                                   v[static_cast<size_t>(j)]),
                                 mod_);
            av[static_cast<size_t>(l)] = acc;
        }
        Elem bqv(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            int64_t acc = 0;
            for (int l = 0; l < k; ++l)
                acc = mod_reduce(acc + checked_mul(bmat[static_cast<size_t>(i)][static_cast<size_t>(l)],
                                                   qv[static_cast<size_t>(l)]),
                                 mod_);
            bqv[static_cast<size_t>(i)] = acc;
        }
        Elem rav = function_value(k, n, g, av, false);
        for (int i = 0; i < n; ++i)
            out[off + static_cast<size_t>(i) * nq + iv] =
                mod_reduce(bqv[static_cast<size_t>(i)] + rav[static_cast<size_t>(i)], mod_);
    }
    return out;
}

Elem QuadraticPairCategory::rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const {
    // h ∘ A for h: B -> C degree 1, x = (A,q): A -> B
    int m = A, k = B, n = C;
    Mat amat = matrix_part(m, k, x);
    size_t nq = nonzero_inputs(m);
    Elem out(static_cast<size_t>(n) * nq, 0);
    Elem v(static_cast<size_t>(m), 0);
    for (size_t iv = 0; iv < nq; ++iv) {
        uint64_t code = iv + 1;
        for (int i = m; i-- > 0;) {
            v[static_cast<size_t>(i)] = static_cast<int64_t>(code % static_cast<uint64_t>(mod_));
            code /= static_cast<uint64_t>(mod_);
        }
        Elem av(static_cast<size_t>(k), 0);
        for (int l = 0; l < k; ++l) {
            int64_t acc = 0;
            for (int j = 0; j < m; ++j)
                acc = mod_reduce(acc + checked_mul(amat[static_cast<size_t>(l)][static_cast<size_t>(j)],
                                                   v[static_cast<size_t>(j)]),
                                 mod_);
            av[static_cast<size_t>(l)] = acc;
        }
        Elem hv = function_value(k, n, hm, av, true);
        for (int i = 0; i < n; ++i) out[static_cast<size_t>(i) * nq + iv] = hv[static_cast<size_t>(i)];
    }
    return out;
}

Elem QuadraticPairCategory::lwhisk(int A, int B, int C, const Elem& x, const Track& t) const {
    // B ∘ h for x = (B,r): B -> C, track Moore h: A -> B
    int m = A, k = B, n = C;
    Mat bmat = matrix_part(k, n, x);
    size_t nq = nonzero_inputs(m);
    Elem out(static_cast<size_t>(n) * nq, 0);
    Elem v(static_cast<size_t>(m), 0);
    for (size_t iv = 0; iv < nq; ++iv) {
        uint64_t code = iv + 1;
        for (int i = m; i-- > 0;) {
            v[static_cast<size_t>(i)] = static_cast<int64_t>(code % static_cast<uint64_t>(mod_));
            code /= static_cast<uint64_t>(mod_);
        }
        Elem hv = function_value(m, k, t.moore, v, true);
        for (int i = 0; i < n; ++i) {
            int64_t acc = 0;
            for (int l = 0; l < k; ++l)
                acc = mod_reduce(acc + checked_mul(bmat[static_cast<size_t>(i)][static_cast<size_t>(l)],
                                                   hv[static_cast<size_t>(l)]),
                                 mod_);
            out[static_cast<size_t>(i) * nq + iv] = acc;
        }
    }
    return out;
}

Elem QuadraticPairCategory::unit(int a) const {
    int m = a;
    Mat id(static_cast<size_t>(m), std::vector<int64_t>(static_cast<size_t>(m), 0));
    for (int i = 0; i < m; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    std::vector<Elem> q(nonzero_inputs(m), Elem(static_cast<size_t>(m), 0));
    return pack0(m, m, id, q);
}

Elem QuadraticLinearity::gamma(const TrackCategory&, int X, int A, int B, const Elem& a,
                               const Elem& x, const Elem& y) const {
    int m = X, k = A, n = B;
    int64_t mod = q_->modulus();
    Mat a1 = q_->matrix_part(m, k, x);
    Mat a2 = q_->matrix_part(m, k, y);
    size_t nq = static_cast<size_t>(ipow(mod, m)) - 1;
    Elem out(static_cast<size_t>(n) * nq, 0);
    Elem v(static_cast<size_t>(m), 0);
    auto apply = [&](const Mat& mat, const Elem& vec) {
        Elem w(static_cast<size_t>(k), 0);
        for (int l = 0; l < k; ++l) {
            int64_t acc = 0;
            for (int j = 0; j < m; ++j)
                acc = mod_reduce(acc + checked_mul(mat[static_cast<size_t>(l)][static_cast<size_t>(j)],
                                                   vec[static_cast<size_t>(j)]),
                                 mod);
            w[static_cast<size_t>(l)] = acc;
        }
        return w;
    };
    for (size_t iv = 0; iv < nq; ++iv) {
        uint64_t code = iv + 1;
        for (int i = m; i-- > 0;) {
            v[static_cast<size_t>(i)] = static_cast<int64_t>(code % static_cast<uint64_t>(mod));
            code /= static_cast<uint64_t>(mod);
        }
        Elem s = apply(a1, v);
        Elem t = apply(a2, v);
        Elem st(static_cast<size_t>(k), 0);
        for (int l = 0; l < k; ++l)
            st[static_cast<size_t>(l)] = mod_reduce(s[static_cast<size_t>(l)] + t[static_cast<size_t>(l)], mod);
        Elem r_st = q_->function_value(k, n, a, st, false);
        Elem r_s = q_->function_value(k, n, a, s, false);
        Elem r_t = q_->function_value(k, n, a, t, false);
        for (int i = 0; i < n; ++i)
            out[static_cast<size_t>(i) * nq + iv] =
                mod_reduce(r_st[static_cast<size_t>(i)] - r_s[static_cast<size_t>(i)] -
                               r_t[static_cast<size_t>(i)],
                           mod);
    }
    return out;
}

QuadraticFixture fixture_quadratic(int64_t p, int max_rank) {
    if (!is_prime(p)) throw InputError("quadratic fixture requires a prime modulus");
    if (max_rank > 2) throw InputError("quadratic fixture rank is capped at 2");
    QuadraticFixture f;
    f.cat = std::make_shared<QuadraticPairCategory>(p, max_rank);
    f.lin = std::make_shared<QuadraticLinearity>(*f.cat);
    return f;
}

BiproductData quadratic_biproducts(const QuadraticPairCategory& q) {
    BiproductData bp;
    int64_t mod = q.modulus();
    for (int m = 0; 2 * m <= q.max_rank(); ++m) {
        ObjectBiproduct ob;
        ob.product = 2 * m;
        size_t nq = static_cast<size_t>(ipow(mod, m)) - 1;
        size_t nq2 = static_cast<size_t>(ipow(mod, 2 * m)) - 1;
        auto zeros = [&](size_t count, int dim) {
            return std::vector<Elem>(count, Elem(static_cast<size_t>(dim), 0));
        };
        Mat i1(static_cast<size_t>(2 * m), std::vector<int64_t>(static_cast<size_t>(m), 0));
        Mat i2 = i1;
        for (int i = 0; i < m; ++i) {
            i1[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            i2[static_cast<size_t>(m + i)][static_cast<size_t>(i)] = 1;
        }
        Mat p1(static_cast<size_t>(m), std::vector<int64_t>(static_cast<size_t>(2 * m), 0));
        Mat p2 = p1, plus = p1;
        for (int i = 0; i < m; ++i) {
            p1[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            p2[static_cast<size_t>(i)][static_cast<size_t>(m + i)] = 1;
            plus[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
            plus[static_cast<size_t>(i)][static_cast<size_t>(m + i)] = 1;
        }
        ob.i1 = q.pack0(m, 2 * m, i1, zeros(nq, 2 * m));
        ob.i2 = q.pack0(m, 2 * m, i2, zeros(nq, 2 * m));
        ob.p1 = q.pack0(2 * m, m, p1, zeros(nq2, m));
        ob.p2 = q.pack0(2 * m, m, p2, zeros(nq2, m));
        ob.plus = q.pack0(2 * m, m, plus, zeros(nq2, m));
        bp.per_object.emplace(m, std::move(ob));
    }
    bp.pairing = [&q](int X, int A, const Elem& x, const Elem& y) {
        int m = X, k = A;
        int64_t mod = q.modulus();
        Mat ax = q.matrix_part(m, k, x);
        Mat ay = q.matrix_part(m, k, y);
        Mat stacked(static_cast<size_t>(2 * k), std::vector<int64_t>(static_cast<size_t>(m), 0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < m; ++j) {
                stacked[static_cast<size_t>(i)][static_cast<size_t>(j)] = ax[static_cast<size_t>(i)][static_cast<size_t>(j)];
                stacked[static_cast<size_t>(k + i)][static_cast<size_t>(j)] = ay[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
        size_t nq = static_cast<size_t>(ipow(mod, m)) - 1;
        std::vector<Elem> qv(nq, Elem(static_cast<size_t>(2 * k), 0));
        Elem v(static_cast<size_t>(m), 0);
        for (size_t iv = 0; iv < nq; ++iv) {
            uint64_t code = iv + 1;
            for (int i = m; i-- > 0;) {
                v[static_cast<size_t>(i)] = static_cast<int64_t>(code % static_cast<uint64_t>(mod));
                code /= static_cast<uint64_t>(mod);
            }
            Elem qx = q.function_value(m, k, x, v, false);
            Elem qy = q.function_value(m, k, y, v, false);
            for (int i = 0; i < k; ++i) {
                qv[iv][static_cast<size_t>(i)] = qx[static_cast<size_t>(i)];
                qv[iv][static_cast<size_t>(k + i)] = qy[static_cast<size_t>(i)];
            }
        }
        return q.pack0(m, 2 * k, stacked, qv);
    };
    return bp;
}

Elem TwistedLinearity::gamma(const TrackCategory& T, int X, int A, int B, const Elem& a,
                             const Elem& x, const Elem& y) const {
    auto dot = [](const std::vector<int64_t>& row, const Elem& e) {
        int64_t acc = 0;
        for (size_t i = 0; i < row.size(); ++i) acc = checked_add(acc, checked_mul(row[i], e[i]));
        return acc;
    };
    int64_t c = checked_mul(dot(datum_.eps.at({A, B}), a),
                            checked_mul(dot(datum_.kappa.at({X, A}), x),
                                        dot(datum_.kappa.at({X, A}), y)));
    return T.hom(X, B).c1.scale(c, datum_.t.at({X, B}));
}

TwistedFixture fixture_twisted(const TwistDatum& datum, const Budget& budget) {
    TwistedFixture f;
    f.cat = std::make_shared<BilinearTrackCategory>(datum.base);
    // structural checks: t must be a cycle, eps and kappa must factor
    // through H0 (vanish on boundaries, modulo the order of t)
    int n = static_cast<int>(datum.base.objects.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const TruncComplex1& h = f.cat->hom(a, b);
            const Elem& t = datum.t.at({a, b});
            if (!h.c0.is_zero(h.d.apply(t)))
                throw RefusalError("twist datum: t is not a cycle in hom (" +
                                   datum.base.objects[static_cast<size_t>(a)] + "," +
                                   datum.base.objects[static_cast<size_t>(b)] + ")");
            auto factors_through_h0 = [&](const std::vector<int64_t>& row, const Elem& tv) {
                for (size_t j = 0; j < h.c1.rank(); ++j) {
                    Elem bnd = h.d.apply(h.c1.basis(j));
                    int64_t acc = 0;
                    for (size_t i = 0; i < row.size(); ++i)
                        acc = checked_add(acc, checked_mul(row[i], bnd[i]));
                    if (!h.c1.is_zero(h.c1.scale(acc, tv))) return false;
                }
                return true;
            };
            if (!factors_through_h0(datum.eps.at({a, b}), t))
                throw RefusalError("twist datum: eps does not factor through H0");
            if (!factors_through_h0(datum.kappa.at({a, b}), t))
                throw RefusalError("twist datum: kappa does not factor through H0");
        }
    f.lin = std::make_shared<TwistedLinearity>(datum);
    f.validity = verify_linearity(*f.cat, *f.lin, budget);
    if (!f.validity.ok()) {
        for (const auto& law : f.validity.laws)
            if (!law.pass)
                throw RefusalError("twist datum invalid: equation '" + law.name +
                                   "' fails with witness " + law.witness.dump());
    }
    return f;
}

DenormFixture fixture_denorm(const DGTable& dg) {
    DenormFixture f;
    f.cat = std::make_shared<BilinearTrackCategory>(dg);
    f.lin = std::make_shared<IdentityLinearity>();
    return f;
}

TwistDatum tc_datum() {
    FinAbGroup c0({2, 2}); // basis 1, x
    FinAbGroup c1({2});    // basis t
    TruncComplex1 hom = TruncComplex1::with_zero_d(c1, c0);
    // products: 1 is the unit, x*x = 0
    std::vector<std::vector<Elem>> mu0t = {{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    std::vector<std::vector<Elem>> t10 = {{{1}, {0}}};       // t(x)1 = t, t(x)x = 0
    std::vector<std::vector<Elem>> t01 = {{{1}}, {{0}}};     // 1(x)t = t, x(x)t = 0
    TwistDatum d;
    d.base = one_object_dg("*", hom, mu0t, t10, t01, Elem{1, 0});
    d.base.names0[{0, 0}] = {"1", "x"};
    d.base.names1[{0, 0}] = {"t"};
    d.t[{0, 0}] = Elem{1};
    d.eps[{0, 0}] = {0, 1};   // eps(1) = 0, eps(x) = 1
    d.kappa[{0, 0}] = {1, 0}; // kappa(1) = 1, kappa(x) = 0
    return d;
}

TwistedFixture fixture_tc(const Budget& budget) { return fixture_twisted(tc_datum(), budget); }

DGTable m2_table() {
    FinAbGroup c0({2, 2, 2}); // basis 1, x, u
    FinAbGroup c1({2, 2});    // basis a, t
    Mat d = {{0, 0}, {0, 0}, {1, 0}}; // da = u, dt = 0
    TruncComplex1 hom(c1, c0, AbHom(c1, c0, d));
    std::vector<std::vector<Elem>> mu0t = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, // 1*{1,x,u}
        {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, // x*{1,x,u} = {x, u, 0}
        {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}}, // u*{1,x,u} = {u, 0, 0}
    };
    std::vector<std::vector<Elem>> t10 = {
        {{1, 0}, {0, 1}, {0, 0}}, // a(x){1,x,u} = {a, t, 0}
        {{0, 1}, {0, 0}, {0, 0}}, // t(x){1,x,u} = {t, 0, 0}
    };
    std::vector<std::vector<Elem>> t01 = {
        {{1, 0}, {0, 1}}, // 1(x){a,t} = {a, t}
        {{0, 0}, {0, 0}}, // x(x){a,t} = {0, 0}
        {{0, 0}, {0, 0}}, // u(x){a,t} = {0, 0}
    };
    DGTable t = one_object_dg("*", hom, mu0t, t10, t01, Elem{1, 0, 0});
    t.names0[{0, 0}] = {"1", "x", "u"};
    t.names1[{0, 0}] = {"a", "t"};
    return t;
}

DGTable two_object_dg() {
    // objects P, Q; Hom(P,P) = Hom(Q,Q) = unit component Z/2{1} with a
    // 1-cell Z/2{s}, ds = 0; Hom(P,Q) = Z/2{f} with Z/2{h}, dh = 0;
    // Hom(Q,P) = 0. All products bilinear and unital.
    DGTable t;
    t.objects = {"P", "Q"};
    FinAbGroup z2({2}), triv(std::vector<int64_t>{});
    TruncComplex1 ring = TruncComplex1::with_zero_d(z2, z2);
    TruncComplex1 zero = TruncComplex1::with_zero_d(triv, triv);
    t.homs.emplace(std::make_pair(0, 0), ring);
    t.homs.emplace(std::make_pair(1, 1), ring);
    t.homs.emplace(std::make_pair(0, 1), ring); // f, h
    t.homs.emplace(std::make_pair(1, 0), zero);
    t.units[0] = Elem{1};
    t.units[1] = Elem{1};
    t.names0[{0, 1}] = {"f"};

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                const TruncComplex1& bc = t.hom(b, c);
                const TruncComplex1& ab = t.hom(a, b);
                const TruncComplex1& ac = t.hom(a, c);
                std::vector<std::vector<Elem>> m(bc.c0.rank(),
                                                 std::vector<Elem>(ab.c0.rank(), ac.c0.zero()));
                std::vector<std::vector<Elem>> w10(bc.c1.rank(),
                                                   std::vector<Elem>(ab.c0.rank(), ac.c1.zero()));
                std::vector<std::vector<Elem>> w01(bc.c0.rank(),
                                                   std::vector<Elem>(ab.c1.rank(), ac.c1.zero()));
                if (bc.c0.rank() == 1 && ab.c0.rank() == 1 && ac.c0.rank() == 1) {
                    m[0][0] = Elem{1};
                    w10[0][0] = Elem{1};
                    w01[0][0] = Elem{1};
                }
                t.mu0t.emplace(std::make_tuple(a, b, c), std::move(m));
                t.t10.emplace(std::make_tuple(a, b, c), std::move(w10));
                t.t01.emplace(std::make_tuple(a, b, c), std::move(w01));
            }
    return t;
}

} // namespace trackalg
