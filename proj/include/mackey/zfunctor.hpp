#pragma once

#include "mackey/burnside.hpp"

namespace mackey {

// Image of one orbit under a functor: the formal sum it decomposes into,
// plus the identification of the functor's natural realization of the image
// with the canonical realizations (point_map[p] = component and point).
struct ObjImage {
    ObjSum sum;
    int nat_points = 0;
    std::vector<SumPoint> point_map;
};

// Decompose a set into canonical orbits. Components are ordered by least
// base point, so the result is deterministic.
ObjImage ident_gset(const Cat& cat, const GSet& x);

// Z-linear functor between Burnside categories, tabulated on objects and on
// every basis span. Composition preservation is checked exhaustively by
// verify_functor; consumers that require it test the `checked` flag.
struct ZLinFunctor {
    Cat src, dst;
    GrpHom hom; // underlying group homomorphism (source of the construction)
    std::string tag;
    std::vector<ObjImage> obj;
    std::map<SpanBasisElt, SumHom> span_img;
    bool checked = false;

    ObjSum on_obj(int cls) const { return obj[cls].sum; }
    ObjSum on_obj(const ObjSum& o) const;
    const SumHom& on_basis(const SpanBasisElt& s) const;
    SumHom on_hom(const BurnsideHom& h) const;
    SumHom on_sumhom(const SumHom& h) const;
    // True when the natural realization at every class is the canonical one
    // (restriction, inflation, identity); induction changes the point set.
    bool point_preserving() const;
};

using Fun = std::shared_ptr<const ZLinFunctor>;

Fun functor_identity(const Cat& cat);
Fun functor_ind(const Cat& src, const Cat& dst, const GrpHom& i);  // i injective
Fun functor_res(const Cat& src, const Cat& dst, const GrpHom& i);  // i injective, src over the big group
Fun functor_infl(const Cat& src, const Cat& dst, const GrpHom& q); // q surjective, src over the quotient

// F2 after F1. Point maps are composed when F2 is point preserving;
// otherwise the composite carries no identification data.
Fun compose_functors(const Fun& f2, const Fun& f1);

bool functor_equal(const ZLinFunctor& a, const ZLinFunctor& b);

// F(id) = id and F(s2 * s1) = F(s2) * F(s1) on all composable basis pairs.
bool verify_functor(const ZLinFunctor& f, std::string* why = nullptr);
Fun verified(Fun f);

// Two-sided span-level adjunction for an injection i : H -> G, between
// ind : B_H -> B_G and res : B_G -> B_H. unit1/counit1 belong to ind -| res,
// unit2/counit2 to res -| ind; the second pair is the transpose of the first.
struct IndResPair {
    Fun ind, res;
    std::vector<SumHom> unit1;   // S -> res(ind S), per source class
    std::vector<SumHom> counit1; // ind(res T) -> T, per target class
    std::vector<SumHom> unit2;   // T -> ind(res T)
    std::vector<SumHom> counit2; // res(ind S) -> S
};

IndResPair ind_res_pair(const Cat& chome, const Cat& cbig, const GrpHom& i);
IndResPair ind_res_identity(const Cat& cat);

// Both triangle identities for both adjunctions, checked exhaustively.
bool verify_ind_res(const IndResPair& p, std::string* why = nullptr);

} // namespace mackey
