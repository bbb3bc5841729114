#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trackalg/common.hpp"

namespace trackalg {

struct Ring {
    enum class Kind { Integers, Modular };
    Kind kind = Kind::Integers;
    int64_t modulus = 0; // >= 2 when Modular

    static Ring integers() { return Ring{Kind::Integers, 0}; }
    static Ring modular(int64_t m);

    bool is_modular() const { return kind == Kind::Modular; }
    int64_t reduce(int64_t c) const;
    bool operator==(const Ring&) const = default;
    std::string to_string() const;
};

// Finite abelian group presented as a fixed direct sum of cyclic groups.
// The presentation is never re-based after construction; maps carry the
// comparison burden.
struct FinAbGroup {
    std::vector<int64_t> orders; // each d_i >= 1

    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<int64_t> ds);

    size_t rank() const { return orders.size(); }
    Elem zero() const { return Elem(orders.size(), 0); }
    Elem reduce(Elem e) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scale(int64_t c, const Elem& a) const;
    bool is_zero(const Elem& a) const;
    bool contains(const Elem& a) const; // already reduced?

    unsigned __int128 order() const;
    // Order as u64; throws EnumerationLimitError when above the bound.
    uint64_t order_bounded(uint64_t bound) const;

    Elem basis(size_t i) const;
    // Mixed-radix encode/decode; leftmost coordinate most significant, so
    // decode(0..order-1) walks elements in lexicographic residue order.
    uint64_t encode(const Elem& e) const;
    Elem decode(uint64_t idx) const;

    // Exponent: the lcm of the cyclic orders.
    int64_t exponent() const;

    bool operator==(const FinAbGroup&) const = default;
    std::string to_string() const;
};

inline constexpr uint64_t kDefaultEnumBound = uint64_t(1) << 20;

// Visits each element exactly once in lexicographic residue order.
void for_each_element(const FinAbGroup& g, const std::function<void(const Elem&)>& fn,
                      uint64_t bound = kDefaultEnumBound);
std::vector<Elem> all_elements(const FinAbGroup& g, uint64_t bound = kDefaultEnumBound);

struct FinAbGroupSum {
    FinAbGroup sum;
    size_t split; // rank of the first summand
    Elem inject1(const Elem& a) const;
    Elem inject2(const Elem& b) const;
    Elem project1(const Elem& e) const;
    Elem project2(const Elem& e) const;
};
FinAbGroupSum direct_sum(const FinAbGroup& a, const FinAbGroup& b);

// Homomorphism of finite abelian groups given by an integer matrix acting on
// residue vectors: (Ax)_i = sum_j A[i][j] x_j mod e_i.
struct AbHom {
    FinAbGroup source;
    FinAbGroup target;
    Mat matrix; // target.rank rows, source.rank columns

    AbHom() = default;
    AbHom(FinAbGroup src, FinAbGroup dst, Mat m);

    Elem apply(const Elem& x) const;
    bool operator==(const AbHom&) const = default;
    static AbHom identity(const FinAbGroup& g);
    static AbHom zero(const FinAbGroup& src, const FinAbGroup& dst);
    AbHom compose(const AbHom& inner) const; // this ∘ inner
    bool is_zero_map() const;
};

// Smith normal form U*A*V = diag(d) with unimodular U, V (and U^{-1} kept for
// lifts). Diagonal entries are nonnegative with d_i | d_{i+1}.
struct Smith {
    Mat u, uinv, v;
    std::vector<int64_t> diag;
    int rank = 0;
};
Smith smith_normal_form(Mat a);

// Quotient of a finite group by the subgroup generated by given columns,
// with a projection hom and integer lifts of the generators.
struct Quotient {
    FinAbGroup group;
    AbHom proj;              // ambient -> group
    std::vector<Elem> lift;  // group generator -> ambient representative
    Elem lift_of(const Elem& cls) const;
};
Quotient quotient_by_columns(const FinAbGroup& ambient, const Mat& relation_cols);

// Subgroup generated by given columns, presented canonically with an
// embedding back into the ambient group.
struct Subgroup {
    FinAbGroup group;
    AbHom emb; // group -> ambient
};
Subgroup subgroup_generated(const FinAbGroup& ambient, const Mat& generator_cols);

Subgroup kernel_of(const AbHom& h);
unsigned __int128 image_order(const AbHom& h);
bool is_injective(const AbHom& h);
bool is_surjective(const AbHom& h);
bool is_isomorphism(const AbHom& h);

std::optional<Elem> solve_preimage(const AbHom& h, const Elem& y);

// 1-truncated chain complex c1 --d--> c0 of finite abelian groups.
struct TruncComplex1 {
    FinAbGroup c1;
    FinAbGroup c0;
    AbHom d;

    TruncComplex1() = default;
    TruncComplex1(FinAbGroup one, FinAbGroup zero, AbHom diff);
    static TruncComplex1 with_zero_d(FinAbGroup one, FinAbGroup zero);
    bool operator==(const TruncComplex1&) const = default;
};

struct Homology {
    Quotient h0; // coker d, with projection from c0
    Subgroup h1; // ker d, with embedding into c1
    Elem class0(const Elem& x) const { return h0.proj.apply(x); }
    Elem rep0(const Elem& cls) const { return h0.lift_of(cls); }
    // H1 coordinates of a cycle; throws if z is not a cycle.
    Elem class1(const Elem& z) const;
};
Homology homology(const TruncComplex1& c);

// tr_1(M (x) N) over the shared ground ring Modular(m).
struct TensorTrunc {
    TruncComplex1 complex;
    Quotient deg1; // presentation of degree 1 as a quotient of M1(x)N0 + M0(x)N1
    FinAbGroupSum deg1_sum;
};
TensorTrunc truncated_tensor(const Ring& ring, const TruncComplex1& m, const TruncComplex1& n);

FinAbGroup tensor_group(const FinAbGroup& a, const FinAbGroup& b);
AbHom tensor_hom(const AbHom& f, const AbHom& g);

} // namespace trackalg
