#include "trackalg/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace trackalg {

std::string elem_to_string(const Elem& e) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.size(); ++i) {
        if (i) os << ",";
        os << e[i];
    }
    os << ")";
    return os.str();
}

Ring Ring::modular(int64_t m) {
    if (m < 2) throw InputError("modular ring needs modulus >= 2, got " + std::to_string(m));
    return Ring{Kind::Modular, m};
}

int64_t Ring::reduce(int64_t c) const {
    return kind == Kind::Modular ? mod_reduce(c, modulus) : c;
}

std::string Ring::to_string() const {
    return kind == Kind::Modular ? "Z/" + std::to_string(modulus) : "Z";
}

FinAbGroup::FinAbGroup(std::vector<int64_t> ds) : orders(std::move(ds)) {
    for (size_t i = 0; i < orders.size(); ++i)
        if (orders[i] < 1)
            throw InputError("cyclic order must be >= 1 at index " + std::to_string(i));
}

Elem FinAbGroup::reduce(Elem e) const {
    if (e.size() != orders.size())
        throw InputError("element rank mismatch: got " + std::to_string(e.size()) +
                         ", group rank " + std::to_string(orders.size()));
    for (size_t i = 0; i < e.size(); ++i) e[i] = mod_reduce(e[i], orders[i]);
    return e;
}

Elem FinAbGroup::add(const Elem& a, const Elem& b) const {
    Elem r(orders.size());
    if (a.size() != orders.size() || b.size() != orders.size())
        throw InputError("element rank mismatch in add");
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(a[i] + b[i], orders[i]);
    return r;
}

Elem FinAbGroup::sub(const Elem& a, const Elem& b) const {
    Elem r(orders.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(a[i] - b[i], orders[i]);
    return r;
}

Elem FinAbGroup::neg(const Elem& a) const {
    Elem r(orders.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(-a[i], orders[i]);
    return r;
}

Elem FinAbGroup::scale(int64_t c, const Elem& a) const {
    Elem r(orders.size());
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = mod_reduce(checked_mul(mod_reduce(c, orders[i]), a[i]), orders[i]);
    return r;
}

bool FinAbGroup::is_zero(const Elem& a) const {
    for (int64_t v : a)
        if (v != 0) return false;
    return true;
}

bool FinAbGroup::contains(const Elem& a) const {
    if (a.size() != orders.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0 || a[i] >= orders[i]) return false;
    return true;
}

unsigned __int128 FinAbGroup::order() const {
    unsigned __int128 n = 1;
    for (int64_t d : orders) n *= static_cast<unsigned __int128>(d);
    return n;
}

uint64_t FinAbGroup::order_bounded(uint64_t bound) const {
    unsigned __int128 n = order();
    if (n > bound)
        throw EnumerationLimitError("group order exceeds enumeration bound " + std::to_string(bound));
    return static_cast<uint64_t>(n);
}

Elem FinAbGroup::basis(size_t i) const {
    Elem e = zero();
    if (orders[i] > 1) e[i] = 1;
    return e;
}

uint64_t FinAbGroup::encode(const Elem& e) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < orders.size(); ++i)
        idx = idx * static_cast<uint64_t>(orders[i]) + static_cast<uint64_t>(e[i]);
    return idx;
}

Elem FinAbGroup::decode(uint64_t idx) const {
    Elem e(orders.size(), 0);
    for (size_t i = orders.size(); i-- > 0;) {
        e[i] = static_cast<int64_t>(idx % static_cast<uint64_t>(orders[i]));
        idx /= static_cast<uint64_t>(orders[i]);
    }
    return e;
}

int64_t FinAbGroup::exponent() const {
    int64_t e = 1;
    for (int64_t d : orders) e = std::lcm(e, d);
    return e;
}

std::string FinAbGroup::to_string() const {
    if (orders.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int64_t d : orders) {
        if (d == 1) continue;
        if (!first) os << "+";
        os << "Z/" << d;
        first = false;
    }
    return first ? "0" : os.str();
}

void for_each_element(const FinAbGroup& g, const std::function<void(const Elem&)>& fn,
                      uint64_t bound) {
    uint64_t n = g.order_bounded(bound);
    for (uint64_t i = 0; i < n; ++i) fn(g.decode(i));
}

std::vector<Elem> all_elements(const FinAbGroup& g, uint64_t bound) {
    std::vector<Elem> out;
    out.reserve(static_cast<size_t>(g.order_bounded(bound)));
    for_each_element(g, [&](const Elem& e) { out.push_back(e); }, bound);
    return out;
}

FinAbGroupSum direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<int64_t> orders = a.orders;
    orders.insert(orders.end(), b.orders.begin(), b.orders.end());
    return FinAbGroupSum{FinAbGroup(std::move(orders)), a.rank()};
}

Elem FinAbGroupSum::inject1(const Elem& a) const {
    Elem e = sum.zero();
    std::copy(a.begin(), a.end(), e.begin());
    return e;
}

Elem FinAbGroupSum::inject2(const Elem& b) const {
    Elem e = sum.zero();
    std::copy(b.begin(), b.end(), e.begin() + static_cast<long>(split));
    return e;
}

Elem FinAbGroupSum::project1(const Elem& e) const {
    return Elem(e.begin(), e.begin() + static_cast<long>(split));
}

Elem FinAbGroupSum::project2(const Elem& e) const {
    return Elem(e.begin() + static_cast<long>(split), e.end());
}

AbHom::AbHom(FinAbGroup src, FinAbGroup dst, Mat m)
    : source(std::move(src)), target(std::move(dst)), matrix(std::move(m)) {
    if (matrix.size() != target.rank())
        throw InputError("hom matrix has " + std::to_string(matrix.size()) + " rows, expected " +
                         std::to_string(target.rank()));
    for (size_t i = 0; i < matrix.size(); ++i) {
        if (matrix[i].size() != source.rank())
            throw InputError("hom matrix row " + std::to_string(i) + " has wrong length");
        for (size_t j = 0; j < matrix[i].size(); ++j) {
            // compatibility: A[i][j] * d_j == 0 mod e_i
            int64_t v = checked_mul(mod_reduce(matrix[i][j], target.orders[i]), source.orders[j]);
            if (mod_reduce(v, target.orders[i]) != 0)
                throw InputError("incompatible hom entry at (" + std::to_string(i) + "," +
                                 std::to_string(j) + "): " + std::to_string(matrix[i][j]) +
                                 " * " + std::to_string(source.orders[j]) + " != 0 mod " +
                                 std::to_string(target.orders[i]));
            matrix[i][j] = mod_reduce(matrix[i][j], target.orders[i]);
        }
    }
}

Elem AbHom::apply(const Elem& x) const {
    if (x.size() != source.rank()) throw InputError("hom applied to element of wrong rank");
    Elem y(target.rank(), 0);
    for (size_t i = 0; i < target.rank(); ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < source.rank(); ++j)
            acc = mod_reduce(acc + checked_mul(matrix[i][j], mod_reduce(x[j], target.orders[i])),
                             target.orders[i]);
        y[i] = acc;
    }
    return y;
}

AbHom AbHom::identity(const FinAbGroup& g) {
    Mat m(g.rank(), std::vector<int64_t>(g.rank(), 0));
    for (size_t i = 0; i < g.rank(); ++i) m[i][i] = 1;
    return AbHom(g, g, std::move(m));
}

AbHom AbHom::zero(const FinAbGroup& src, const FinAbGroup& dst) {
    return AbHom(src, dst, Mat(dst.rank(), std::vector<int64_t>(src.rank(), 0)));
}

AbHom AbHom::compose(const AbHom& inner) const {
    if (inner.target.orders != source.orders)
        throw InputError("hom composition mismatch");
    Mat m(target.rank(), std::vector<int64_t>(inner.source.rank(), 0));
    for (size_t i = 0; i < target.rank(); ++i)
        for (size_t j = 0; j < inner.source.rank(); ++j) {
            int64_t acc = 0;
            for (size_t k = 0; k < source.rank(); ++k)
                acc = checked_add(acc, checked_mul(matrix[i][k], inner.matrix[k][j]));
            m[i][j] = mod_reduce(acc, target.orders[i]);
        }
    return AbHom(inner.source, target, std::move(m));
}

bool AbHom::is_zero_map() const {
    for (const auto& row : matrix)
        for (int64_t v : row)
            if (v != 0) return false;
    return true;
}

namespace {

size_t mat_rows(const Mat& m) { return m.size(); }
size_t mat_cols(const Mat& m) { return m.empty() ? 0 : m[0].size(); }

Mat mat_identity(size_t n) {
    Mat m(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

} // namespace

Smith smith_normal_form(Mat a) {
    const size_t n = mat_rows(a), m = mat_cols(a);
    Smith s;
    s.u = mat_identity(n);
    s.uinv = mat_identity(n);
    s.v = mat_identity(m);

    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(s.u[i], s.u[j]);
        for (size_t r = 0; r < n; ++r) std::swap(s.uinv[r][i], s.uinv[r][j]);
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
        for (size_t r = 0; r < m; ++r) std::swap(s.v[r][i], s.v[r][j]);
    };
    // row_i -= q * row_j
    auto row_sub = [&](size_t i, size_t j, int64_t q) {
        if (q == 0) return;
        for (size_t c = 0; c < m; ++c) a[i][c] = checked_add(a[i][c], -checked_mul(q, a[j][c]));
        for (size_t c = 0; c < n; ++c) s.u[i][c] = checked_add(s.u[i][c], -checked_mul(q, s.u[j][c]));
        for (size_t r = 0; r < n; ++r)
            s.uinv[r][j] = checked_add(s.uinv[r][j], checked_mul(q, s.uinv[r][i]));
    };
    // col_i -= q * col_j
    auto col_sub = [&](size_t i, size_t j, int64_t q) {
        if (q == 0) return;
        for (size_t r = 0; r < n; ++r) a[r][i] = checked_add(a[r][i], -checked_mul(q, a[r][j]));
        for (size_t r = 0; r < m; ++r) s.v[r][i] = checked_add(s.v[r][i], -checked_mul(q, s.v[r][j]));
    };
    auto row_neg = [&](size_t i) {
        for (size_t c = 0; c < m; ++c) a[i][c] = -a[i][c];
        for (size_t c = 0; c < n; ++c) s.u[i][c] = -s.u[i][c];
        for (size_t r = 0; r < n; ++r) s.uinv[r][i] = -s.uinv[r][i];
    };

    size_t t = 0;
    while (t < n && t < m) {
        // locate a pivot of minimal absolute value in the trailing block
        size_t pi = t, pj = t;
        int64_t best = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < m; ++j)
                if (a[i][j] != 0 && (best == 0 || std::abs(a[i][j]) < best)) {
                    best = std::abs(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (a[i][t] == 0) continue;
                int64_t q = a[i][t] / a[t][t];
                row_sub(i, t, q);
                if (a[i][t] != 0) {
                    row_swap(t, i); // smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < m; ++j) {
                if (a[t][j] == 0) continue;
                int64_t q = a[t][j] / a[t][t];
                col_sub(j, t, q);
                if (a[t][j] != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        if (a[t][t] < 0) row_neg(t);

        // enforce the divisibility chain: pivot must divide the remaining block
        bool redo = false;
        for (size_t i = t + 1; i < n && !redo; ++i)
            for (size_t j = t + 1; j < m && !redo; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_sub(t, i, -1); // add row i to row t, then restart the pivot step
                    redo = true;
                }
        if (!redo) ++t;
    }

    s.diag.assign(std::min(n, m), 0);
    for (size_t i = 0; i < s.diag.size(); ++i) s.diag[i] = a[i][i];
    s.rank = static_cast<int>(t);
    return s;
}

namespace {

Mat hcat(const Mat& a, const Mat& b, size_t rows) {
    Mat r(rows);
    for (size_t i = 0; i < rows; ++i) {
        if (!a.empty()) r[i] = a[i];
        if (!b.empty()) r[i].insert(r[i].end(), b[i].begin(), b[i].end());
    }
    return r;
}

Mat diag_of(const std::vector<int64_t>& ds) {
    Mat m(ds.size(), std::vector<int64_t>(ds.size(), 0));
    for (size_t i = 0; i < ds.size(); ++i) m[i][i] = ds[i];
    return m;
}

// Columns spanning { x in Z^m : A x == 0 mod moduli }.
Mat mod_kernel_columns(const Mat& a, size_t m, const std::vector<int64_t>& moduli) {
    const size_t n = moduli.size();
    if (n == 0) {
        // no constraints: the whole lattice
        Mat cols;
        for (size_t j = 0; j < m; ++j) {
            std::vector<int64_t> g(m, 0);
            g[j] = 1;
            cols.push_back(std::move(g));
        }
        return cols;
    }
    Mat big = hcat(a, diag_of(moduli), n);
    Smith sm = smith_normal_form(big);
    Mat cols; // each entry: one generator, length m
    for (size_t j = static_cast<size_t>(sm.rank); j < m + n; ++j) {
        std::vector<int64_t> g(m);
        for (size_t i = 0; i < m; ++i) g[i] = sm.v[i][j];
        cols.push_back(std::move(g));
    }
    return cols; // stored column-per-entry
}

Mat cols_to_matrix(const Mat& cols, size_t rows) {
    Mat m(rows, std::vector<int64_t>(cols.size(), 0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m[i][j] = cols[j][i];
    return m;
}

} // namespace

Quotient quotient_by_columns(const FinAbGroup& ambient, const Mat& relation_cols) {
    const size_t n = ambient.rank();
    Mat rel(n);
    for (size_t i = 0; i < n; ++i) {
        rel[i].reserve(relation_cols.size());
        for (const auto& col : relation_cols) {
            if (col.size() != n) throw InputError("relation column rank mismatch");
            rel[i].push_back(col[i]);
        }
    }
    Mat full = hcat(rel, diag_of(ambient.orders), n);
    Smith sm = smith_normal_form(full);

    std::vector<size_t> kept;
    std::vector<int64_t> orders;
    for (size_t i = 0; i < n; ++i) {
        int64_t d = i < sm.diag.size() ? sm.diag[i] : 0;
        if (d == 0)
            throw InputError("quotient of a finite group must be finite");
        if (d > 1) {
            kept.push_back(i);
            orders.push_back(d);
        }
    }
    Quotient q;
    q.group = FinAbGroup(orders);
    Mat proj(kept.size(), std::vector<int64_t>(n, 0));
    for (size_t k = 0; k < kept.size(); ++k)
        for (size_t j = 0; j < n; ++j) proj[k][j] = mod_reduce(sm.u[kept[k]][j], orders[k]);
    q.proj = AbHom(ambient, q.group, std::move(proj));
    for (size_t k = 0; k < kept.size(); ++k) {
        Elem l(n);
        for (size_t j = 0; j < n; ++j) l[j] = mod_reduce(sm.uinv[j][kept[k]], ambient.orders[j]);
        q.lift.push_back(std::move(l));
    }
    return q;
}

Elem Quotient::lift_of(const Elem& cls) const {
    Elem x = proj.source.zero();
    for (size_t k = 0; k < group.rank(); ++k)
        x = proj.source.add(x, proj.source.scale(cls[k], lift[k]));
    return x;
}

Subgroup subgroup_generated(const FinAbGroup& ambient, const Mat& generator_cols) {
    const size_t n = ambient.rank();
    const size_t k = generator_cols.size();
    Subgroup out;
    if (k == 0) {
        out.group = FinAbGroup(std::vector<int64_t>{});
        out.emb = AbHom(out.group, ambient, Mat(n, std::vector<int64_t>()));
        return out;
    }
    // N = { z in Z^k : L z == 0 mod ambient orders }
    Mat lmat(n, std::vector<int64_t>(k, 0));
    for (size_t j = 0; j < k; ++j) {
        if (generator_cols[j].size() != n) throw InputError("subgroup generator rank mismatch");
        for (size_t i = 0; i < n; ++i) lmat[i][j] = generator_cols[j][i];
    }
    Mat ncols = mod_kernel_columns(lmat, k, ambient.orders);
    Mat nmat(k, std::vector<int64_t>(ncols.size(), 0));
    for (size_t j = 0; j < ncols.size(); ++j)
        for (size_t i = 0; i < k; ++i) nmat[i][j] = ncols[j][i];
    Smith sm = smith_normal_form(nmat);

    std::vector<size_t> kept;
    std::vector<int64_t> orders;
    for (size_t i = 0; i < k; ++i) {
        int64_t d = i < sm.diag.size() ? sm.diag[i] : 0;
        if (d == 0) throw InputError("subgroup of a finite group must be finite");
        if (d > 1) {
            kept.push_back(i);
            orders.push_back(d);
        }
    }
    out.group = FinAbGroup(orders);
    Mat emb(n, std::vector<int64_t>(kept.size(), 0));
    for (size_t c = 0; c < kept.size(); ++c) {
        // generator c of the subgroup = L * (Uinv e_{kept[c]}) in the ambient group
        for (size_t i = 0; i < n; ++i) {
            int64_t acc = 0;
            for (size_t j = 0; j < k; ++j)
                acc = checked_add(acc, checked_mul(lmat[i][j], sm.uinv[j][kept[c]]));
            emb[i][c] = mod_reduce(acc, ambient.orders[i]);
        }
    }
    out.emb = AbHom(out.group, ambient, std::move(emb));
    return out;
}

Subgroup kernel_of(const AbHom& h) {
    Mat cols = mod_kernel_columns(h.matrix, h.source.rank(), h.target.orders);
    return subgroup_generated(h.source, cols);
}

unsigned __int128 image_order(const AbHom& h) {
    return h.source.order() / kernel_of(h).group.order();
}

bool is_injective(const AbHom& h) { return kernel_of(h).group.order() == 1; }

bool is_surjective(const AbHom& h) { return image_order(h) == h.target.order(); }

bool is_isomorphism(const AbHom& h) { return is_injective(h) && is_surjective(h); }

std::optional<Elem> solve_preimage(const AbHom& h, const Elem& y) {
    const size_t n = h.target.rank(), m = h.source.rank();
    if (y.size() != n) throw InputError("solve_preimage: wrong target rank");
    Mat big = hcat(h.matrix, diag_of(h.target.orders), n);
    Smith sm = smith_normal_form(big);
    std::vector<int64_t> uy(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < n; ++j) acc = checked_add(acc, checked_mul(sm.u[i][j], y[j]));
        uy[i] = acc;
    }
    std::vector<int64_t> w(m + n, 0);
    for (size_t i = 0; i < n; ++i) {
        int64_t d = i < sm.diag.size() ? sm.diag[i] : 0;
        if (d == 0) {
            if (uy[i] != 0) return std::nullopt;
        } else {
            if (uy[i] % d != 0) return std::nullopt;
            w[i] = uy[i] / d;
        }
    }
    Elem x(m, 0);
    for (size_t i = 0; i < m; ++i) {
        int64_t acc = 0;
        for (size_t j = 0; j < m + n; ++j) acc = checked_add(acc, checked_mul(sm.v[i][j], w[j]));
        x[i] = mod_reduce(acc, h.source.orders[i]);
    }
    if (h.apply(x) != h.target.reduce(y))
        throw std::logic_error("solve_preimage produced a non-solution");
    return x;
}

TruncComplex1::TruncComplex1(FinAbGroup one, FinAbGroup zero, AbHom diff)
    : c1(std::move(one)), c0(std::move(zero)), d(std::move(diff)) {
    if (d.source.orders != c1.orders || d.target.orders != c0.orders)
        throw InputError("differential does not match complex groups");
}

TruncComplex1 TruncComplex1::with_zero_d(FinAbGroup one, FinAbGroup zero) {
    AbHom d = AbHom::zero(one, zero);
    return TruncComplex1(std::move(one), std::move(zero), std::move(d));
}

Elem Homology::class1(const Elem& z) const {
    auto c = solve_preimage(h1.emb, z);
    if (!c) throw InputError("class1 called on a non-cycle");
    return *c;
}

Homology homology(const TruncComplex1& c) {
    Homology h;
    Mat cols;
    for (size_t j = 0; j < c.c1.rank(); ++j) {
        std::vector<int64_t> col(c.c0.rank());
        for (size_t i = 0; i < c.c0.rank(); ++i) col[i] = c.d.matrix[i][j];
        cols.push_back(std::move(col));
    }
    h.h0 = quotient_by_columns(c.c0, cols);
    h.h1 = kernel_of(c.d);
    return h;
}

FinAbGroup tensor_group(const FinAbGroup& a, const FinAbGroup& b) {
    std::vector<int64_t> orders;
    orders.reserve(a.rank() * b.rank());
    for (int64_t da : a.orders)
        for (int64_t db : b.orders) orders.push_back(std::gcd(da, db));
    return FinAbGroup(orders);
}

AbHom tensor_hom(const AbHom& f, const AbHom& g) {
    FinAbGroup src = tensor_group(f.source, g.source);
    FinAbGroup dst = tensor_group(f.target, g.target);
    Mat m(dst.rank(), std::vector<int64_t>(src.rank(), 0));
    size_t gs = g.source.rank(), gt = g.target.rank();
    for (size_t i = 0; i < f.target.rank(); ++i)
        for (size_t j = 0; j < g.target.rank(); ++j)
            for (size_t k = 0; k < f.source.rank(); ++k)
                for (size_t l = 0; l < g.source.rank(); ++l)
                    m[i * gt + j][k * gs + l] =
                        mod_reduce(checked_mul(f.matrix[i][k], g.matrix[j][l]), dst.orders[i * gt + j]);
    return AbHom(std::move(src), std::move(dst), std::move(m));
}

TensorTrunc truncated_tensor(const Ring& ring, const TruncComplex1& m, const TruncComplex1& n) {
    if (!ring.is_modular())
        throw RingMismatchError("truncated tensor requires a shared modular ground ring");
    auto check = [&](const FinAbGroup& g, const char* which) {
        for (int64_t d : g.orders)
            if (ring.modulus % d != 0)
                throw RingMismatchError(std::string("group ") + which + " is not a " +
                                        ring.to_string() + "-module");
    };
    check(m.c0, "M0"); check(m.c1, "M1"); check(n.c0, "N0"); check(n.c1, "N1");

    FinAbGroup m1n0 = tensor_group(m.c1, n.c0);
    FinAbGroup m0n1 = tensor_group(m.c0, n.c1);
    FinAbGroup m0n0 = tensor_group(m.c0, n.c0);
    FinAbGroup m1n1 = tensor_group(m.c1, n.c1);
    FinAbGroupSum t1 = direct_sum(m1n0, m0n1);

    size_t n0r = n.c0.rank(), n1r = n.c1.rank();

    // d2(e_i (x) f_j) = dM e_i (x) f_j  -  e_i (x) dN f_j
    Mat d2cols;
    for (size_t i = 0; i < m.c1.rank(); ++i)
        for (size_t j = 0; j < n.c1.rank(); ++j) {
            Elem col = t1.sum.zero();
            for (size_t k = 0; k < m.c0.rank(); ++k)
                col[t1.split + k * n1r + j] = m.d.matrix[k][i];
            for (size_t l = 0; l < n.c0.rank(); ++l)
                col[i * n0r + l] = checked_add(col[i * n0r + l], -n.d.matrix[l][j]);
            d2cols.push_back(t1.sum.reduce(std::move(col)));
        }

    Quotient q = quotient_by_columns(t1.sum, d2cols);

    // induced differential on degree 1: (m1 (x) n0, m0 (x) n1) -> m0 (x) n0
    auto d1_apply = [&](const Elem& v) {
        Elem out = m0n0.zero();
        for (size_t i = 0; i < m.c1.rank(); ++i)
            for (size_t l = 0; l < n0r; ++l) {
                int64_t c = v[i * n0r + l];
                if (c == 0) continue;
                for (size_t k = 0; k < m.c0.rank(); ++k) {
                    size_t idx = k * n0r + l;
                    out[idx] = mod_reduce(out[idx] + checked_mul(c, m.d.matrix[k][i]), m0n0.orders[idx]);
                }
            }
        for (size_t k = 0; k < m.c0.rank(); ++k)
            for (size_t j = 0; j < n1r; ++j) {
                int64_t c = v[t1.split + k * n1r + j];
                if (c == 0) continue;
                for (size_t l = 0; l < n0r; ++l) {
                    size_t idx = k * n0r + l;
                    out[idx] = mod_reduce(out[idx] + checked_mul(c, n.d.matrix[l][j]), m0n0.orders[idx]);
                }
            }
        return out;
    };

    Mat dbar(m0n0.rank(), std::vector<int64_t>(q.group.rank(), 0));
    for (size_t c = 0; c < q.group.rank(); ++c) {
        Elem img = d1_apply(q.lift[c]);
        for (size_t i = 0; i < m0n0.rank(); ++i) dbar[i][c] = img[i];
    }

    TensorTrunc out;
    out.complex = TruncComplex1(q.group, m0n0, AbHom(q.group, m0n0, std::move(dbar)));
    out.deg1 = q;
    out.deg1_sum = t1;
    return out;
}

} // namespace trackalg
