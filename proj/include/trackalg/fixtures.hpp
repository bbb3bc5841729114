#pragma once

#include "trackalg/dg.hpp"
#include "trackalg/linearity.hpp"

namespace trackalg {

// Pairs (matrix, basepoint-preserving function) over Z/m with composition
// (B,r)(A,q) = (BA, B∘q + r∘A). Left linear, pointed, and genuinely not
// right linear once r can be nonlinear. Objects are the ranks 0..max_rank.
class QuadraticPairCategory : public TrackCategory {
public:
    QuadraticPairCategory(int64_t modulus, int max_rank);

    int64_t modulus() const { return mod_; }
    int max_rank() const { return max_rank_; }

    const TruncComplex1& hom(int a, int b) const override;
    Elem mu0(int A, int B, int C, const Elem& g, const Elem& f) const override;
    Elem rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const override;
    Elem lwhisk(int A, int B, int C, const Elem& x, const Track& t) const override;
    Elem unit(int a) const override;

    // coordinate helpers (ranks m -> n)
    Elem pack0(int m, int n, const Mat& a, const std::vector<Elem>& q) const;
    Mat matrix_part(int m, int n, const Elem& e) const;
    // value of the function part on input vector v (length m)
    Elem function_value(int m, int n, const Elem& e, const Elem& v, bool degree1) const;

private:
    int64_t mod_;
    int max_rank_;
    std::map<std::pair<int, int>, TruncComplex1> homs_;
    size_t nonzero_inputs(int m) const;
    size_t input_index(int m, const Elem& v) const; // v nonzero
};

// The canonical linearity tracks of the quadratic-pair model in closed form:
// Moore part v |-> r((A+A')v) - r(Av) - r(A'v).
class QuadraticLinearity : public LinearitySystem {
public:
    explicit QuadraticLinearity(const QuadraticPairCategory& q) : q_(&q) {}
    Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
               const Elem& y) const override;

private:
    const QuadraticPairCategory* q_;
};

struct QuadraticFixture {
    std::shared_ptr<QuadraticPairCategory> cat;
    std::shared_ptr<QuadraticLinearity> lin;
};
// p must be prime and max_rank <= 2.
QuadraticFixture fixture_quadratic(int64_t p, int max_rank);

BiproductData quadratic_biproducts(const QuadraticPairCategory& q);

// Twist datum: a bilinear base plus a cocycle rule
//   gamma(a; y, z) = eps(a) kappa(y) kappa(z) t
// with t a cycle in each hom and eps, kappa additive functionals on 0-cells
// vanishing on boundaries (so they factor through H0).
struct TwistDatum {
    DGTable base;
    std::map<std::pair<int, int>, Elem> t;                      // cycle in C1 per hom
    std::map<std::pair<int, int>, std::vector<int64_t>> eps;    // row vector on C0 basis
    std::map<std::pair<int, int>, std::vector<int64_t>> kappa;  // row vector on C0 basis
};

class TwistedLinearity : public LinearitySystem {
public:
    explicit TwistedLinearity(TwistDatum datum) : datum_(std::move(datum)) {}
    const TwistDatum& datum() const { return datum_; }
    Elem gamma(const TrackCategory& T, int X, int A, int B, const Elem& a, const Elem& x,
               const Elem& y) const override;

private:
    TwistDatum datum_;
};

struct TwistedFixture {
    std::shared_ptr<BilinearTrackCategory> cat;
    std::shared_ptr<TwistedLinearity> lin;
    Report validity; // the full linearity suite on the assembled instance
};
// Throws RefusalError naming the violated equation when the datum is invalid.
TwistedFixture fixture_twisted(const TwistDatum& datum, const Budget& budget);

struct DenormFixture {
    std::shared_ptr<BilinearTrackCategory> cat;
    std::shared_ptr<IdentityLinearity> lin;
};
DenormFixture fixture_denorm(const DGTable& dg);

// Reference twist datum: one object, H0 basis {1,x} over F2 with x^2 = 0,
// H1 = F2{t}, zero differential; eps(x) = 1, kappa(1) = 1.
TwistDatum tc_datum();
TwistedFixture fixture_tc(const Budget& budget);

// One object; 0-cells spanned by {1, x, u} over Z/2 with x·x = u = da;
// 1-cells spanned by {a, t}, dt = 0. Carries a nontrivial 3-fold bracket.
DGTable m2_table();

// Two-object bilinear instance used by the relaxation round trip.
DGTable two_object_dg();

} // namespace trackalg
