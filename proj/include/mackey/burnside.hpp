#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mackey/gset.hpp"

namespace mackey {

// Basis element of a hom group of the Burnside category B_G: the iso class
// of a span G/H <- G/L -> G/K with transitive middle. Stored in canonical
// form: mid is the sorted element list of L, lrep/rrep are the least
// elements of the leg cosets of the class representative subgroups.
struct SpanBasisElt {
    int h_cls = -1, k_cls = -1;
    std::vector<int> mid;
    int lrep = 0, rrep = 0;

    friend bool operator<(const SpanBasisElt& a, const SpanBasisElt& b) {
        if (a.h_cls != b.h_cls) return a.h_cls < b.h_cls;
        if (a.k_cls != b.k_cls) return a.k_cls < b.k_cls;
        if (a.mid != b.mid) return a.mid < b.mid;
        if (a.lrep != b.lrep) return a.lrep < b.lrep;
        return a.rrep < b.rrep;
    }
    friend bool operator==(const SpanBasisElt& a, const SpanBasisElt& b) {
        return a.h_cls == b.h_cls && a.k_cls == b.k_cls && a.mid == b.mid && a.lrep == b.lrep && a.rrep == b.rrep;
    }
};

// Element of the free abelian hom group on span basis classes.
struct BurnsideHom {
    int src_cls = -1, dst_cls = -1;
    std::map<SpanBasisElt, long long> c;

    void add(const SpanBasisElt& s, long long n);
    BurnsideHom& operator+=(const BurnsideHom& o);
    BurnsideHom scaled(long long n) const;
    bool is_zero() const;
    bool operator==(const BurnsideHom& o) const;
};

struct ObjSum {
    std::vector<int> comps; // class ids, order matters

    int size() const { return (int)comps.size(); }
    bool operator==(const ObjSum& o) const { return comps == o.comps; }
    static ObjSum single(int cls) { return ObjSum{{cls}}; }
};

// Hom between formal sums of orbits: a component matrix of BurnsideHoms.
struct SumHom {
    ObjSum src, dst;
    std::vector<BurnsideHom> e; // e[i * dst.size() + j] : src[i] -> dst[j]

    BurnsideHom& at(int i, int j) { return e[(std::size_t)i * dst.size() + j]; }
    const BurnsideHom& at(int i, int j) const { return e[(std::size_t)i * dst.size() + j]; }
    bool operator==(const SumHom& o) const;
};

struct SumPoint {
    int comp = -1, pt = -1;
};

class BurnsideCat;
using Cat = std::shared_ptr<const BurnsideCat>;

// The Z-linear Burnside category of one group: subgroup classes, canonical
// orbit realizations, span bases and composition by explicit pullback.
// Hom bases and basis composites are cached; population is idempotent and
// guarded for concurrent readers.
class BurnsideCat : public std::enable_shared_from_this<BurnsideCat> {
public:
    static Cat make(Group g);

    const Group& group() const { return g_; }
    int n_classes() const { return (int)classes_.size(); }
    const Subgroup& cls_rep(int c) const { return classes_[c].rep; }
    const std::vector<SubgroupClass>& classes() const { return classes_; }
    const std::vector<Subgroup>& subgroups() const { return subgroups_; }
    const CosetSpace& realization(int c) const { return real_[c]; }
    std::string class_label(int c) const { return classes_[c].rep.canonical_label(); }
    int class_of(const std::vector<int>& subgroup_elems) const;
    // c and u with S = u * rep_c * u^-1.
    std::pair<int, int> mediating(const Subgroup& s) const;

    SpanBasisElt canonical(int h_cls, int k_cls, const std::vector<int>& mid, int lelem, int relem) const;
    SpanBasisElt identity_span(int c) const;
    const std::vector<SpanBasisElt>& hom_basis(int h_cls, int k_cls) const;
    int basis_index(const SpanBasisElt& s) const;

    SpanBasisElt transpose(const SpanBasisElt& s) const;
    BurnsideHom transpose(const BurnsideHom& h) const;
    SumHom transpose(const SumHom& h) const;

    // outer after inner; composition is by pullback of the middle orbits.
    const BurnsideHom& compose_basis(const SpanBasisElt& outer, const SpanBasisElt& inner) const;
    BurnsideHom compose(const BurnsideHom& outer, const BurnsideHom& inner) const;
    SumHom compose(const SumHom& outer, const SumHom& inner) const;

    BurnsideHom zero_hom(int h_cls, int k_cls) const;
    BurnsideHom basis_hom(const SpanBasisElt& s) const;
    SumHom identity_sum_hom(const ObjSum& o) const;
    SumHom zero_sum_hom(const ObjSum& src, const ObjSum& dst) const;

    // Spans attached to a G-map R(a) -> R(b) sending the base coset to
    // target point pt. transfer goes with the map, restriction against it.
    SpanBasisElt transfer_span(int a_cls, int b_cls, int pt) const;
    SpanBasisElt restriction_span(int a_cls, int b_cls, int pt) const;

    // Express a span of explicit G-maps in the canonical bases.
    // lleg/rleg give, per point of w, a point of the realized sum.
    SumHom expand_span(const GSet& w, const std::vector<SumPoint>& lleg, const ObjSum& a,
                       const std::vector<SumPoint>& rleg, const ObjSum& b) const;

    void precompute_all() const; // fill every basis and basis composite

private:
    explicit BurnsideCat(Group g);
    Group g_;
    std::vector<SubgroupClass> classes_;
    std::vector<Subgroup> subgroups_;
    std::map<std::vector<int>, int> cls_of_;
    std::vector<CosetSpace> real_;

    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::vector<SpanBasisElt>> bases_;
    mutable std::map<std::pair<SpanBasisElt, SpanBasisElt>, BurnsideHom> comp_;
};

// Set-level composition oracle: composes spans through an explicit pullback
// of realizations and compares G-sets over the product directly, without
// canonical forms. Used by tests and the acceptance suite.
struct VirtualOrbit {
    std::vector<int> stab; // stabilizer elements of the base point
    int lpt = -1, rpt = -1; // legs of the base point in R(h), R(j)
};
std::vector<VirtualOrbit> oracle_realize(const BurnsideCat& cat, const SpanBasisElt& s);
std::vector<VirtualOrbit> oracle_compose(const BurnsideCat& cat, const SpanBasisElt& outer,
                                         const SpanBasisElt& inner);
bool oracle_same(const BurnsideCat& cat, int h_cls, int j_cls, std::vector<VirtualOrbit> a,
                 std::vector<VirtualOrbit> b);

} // namespace mackey
