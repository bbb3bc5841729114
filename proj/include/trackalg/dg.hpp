#pragma once

#include <map>
#include <tuple>

#include "trackalg/trackcat.hpp"

namespace trackalg {

// A finite 1-truncated DG-category given by hom complexes and tensor tables
// on basis generators, extended bilinearly. The tables are:
//   mu0t[(A,B,C)][i][j] : basis_i(Hom(B,C)_0) (x) basis_j(Hom(A,B)_0) in Hom(A,C)_0
//   t10 [(A,B,C)][i][j] : basis_i(Hom(B,C)_1) (x) basis_j(Hom(A,B)_0) in Hom(A,C)_1
//   t01 [(A,B,C)][i][j] : basis_i(Hom(B,C)_0) (x) basis_j(Hom(A,B)_1) in Hom(A,C)_1
struct DGTable {
    std::vector<std::string> objects;
    std::map<std::pair<int, int>, TruncComplex1> homs;
    std::map<std::tuple<int, int, int>, std::vector<std::vector<Elem>>> mu0t, t10, t01;
    std::map<int, Elem> units;
    // optional display names for basis generators, used by class selectors
    std::map<std::pair<int, int>, std::vector<std::string>> names0, names1;

    const TruncComplex1& hom(int a, int b) const;
    int object_index(const std::string& name) const;

    Elem mul00(int A, int B, int C, const Elem& g, const Elem& f) const;
    Elem mul10(int A, int B, int C, const Elem& h, const Elem& f) const; // deg1 (x) deg0
    Elem mul01(int A, int B, int C, const Elem& g, const Elem& h) const; // deg0 (x) deg1

    // structural validation: shapes, order compatibility of every table entry
    void validate() const;

    // the DG laws: associativity, units, bilinearity, Leibniz
    Report check_axioms(const Budget& budget) const;
};

// A DG-category viewed as a (bilinear) track category.
class BilinearTrackCategory : public TrackCategory {
public:
    explicit BilinearTrackCategory(DGTable table);

    const DGTable& table() const { return table_; }
    const TruncComplex1& hom(int a, int b) const override { return table_.hom(a, b); }
    Elem mu0(int A, int B, int C, const Elem& g, const Elem& f) const override {
        return table_.mul00(A, B, C, g, f);
    }
    Elem rwhisk(int A, int B, int C, const Elem& hm, const Elem& x) const override {
        return table_.mul10(A, B, C, hm, x);
    }
    Elem lwhisk(int A, int B, int C, const Elem& x, const Track& t) const override {
        return table_.mul01(A, B, C, x, t.moore);
    }
    Elem unit(int a) const override { return table_.units.at(a); }

private:
    DGTable table_;
};

// Convenience builder for one-object tables.
DGTable one_object_dg(const std::string& obj, TruncComplex1 hom,
                      std::vector<std::vector<Elem>> mu0t, std::vector<std::vector<Elem>> t10,
                      std::vector<std::vector<Elem>> t01, Elem unit);

} // namespace trackalg
