#pragma once

#include "mackey/abelian.hpp"
#include "mackey/par.hpp"
#include "mackey/zfunctor.hpp"

namespace mackey {

// Mackey functor: an additive functor B_G -> Ab, tabulated on every basis
// span. Levels are indexed by subgroup classes; evaluation extends to formal
// sums by direct sum.
struct MackeyFunctor {
    Cat cat;
    std::vector<AbGrp> level;
    std::map<SpanBasisElt, AbHom> act;
    std::string name;

    const AbGrp& at(int cls) const { return level[cls]; }
    DirectSum value(const ObjSum& o) const;
    const AbHom& act_basis(const SpanBasisElt& s) const;
    AbHom act_on(const BurnsideHom& h) const;
    AbHom act_on(const SumHom& h) const; // value(src) -> value(dst)
};

using MF = std::shared_ptr<const MackeyFunctor>;

struct MackeyMorphism {
    MF src, dst;
    std::vector<AbHom> comp; // per class

    AbHom at_sum(const ObjSum& o) const; // block diagonal extension
};

struct AxiomViolation {
    SpanBasisElt inner, outer;
};
struct AxiomReport {
    std::vector<AxiomViolation> violations;
    bool clean() const { return violations.empty(); }
};

// Functoriality on all composable basis pairs, exhaustively.
AxiomReport check_axioms(const MackeyFunctor& m, const exec& ex = {});

bool is_natural(const MackeyMorphism& f, const exec& ex = {});
bool mackey_morphism_equal(const MackeyMorphism& a, const MackeyMorphism& b);
// Throws not_natural when the naturality squares fail.
bool mackey_iso_test(const MackeyMorphism& f, const exec& ex = {});

MackeyMorphism mackey_identity(const MF& m);
MackeyMorphism mackey_compose(const MackeyMorphism& outer, const MackeyMorphism& inner);
MackeyMorphism mackey_invert(const MackeyMorphism& iso);
MackeyMorphism mackey_zero_morphism(const MF& src, const MF& dst);

MF zero_mackey(const Cat& cat);
// Representable functor: level K is free on hom_basis(h0, K), spans act by
// composition.
MF free_mackey(const Cat& cat, int h0);

// Morphism free_mackey(cat,h0) -> m picked out by an element of m(G/h0)
// (Yoneda), and the element a morphism corresponds to.
MackeyMorphism yoneda_morphism(const MF& fr, const MF& m, const ZMat& elem);
ZMat yoneda_element(const MackeyMorphism& f);

struct MackeyDiagram {
    std::vector<MF> obj;
    struct Edge {
        int src, dst;
        MackeyMorphism h;
    };
    std::vector<Edge> edges;
};

struct MackeyColimit {
    MF value;
    std::vector<MackeyMorphism> cocone;
    // internals for induced maps
    std::vector<ColimitData> per_class;
    std::vector<SmithDecomp> squeeze;
};
MackeyColimit mackey_colimit(const MackeyDiagram& d);
MackeyMorphism mackey_colimit_induced(const MackeyDiagram& d, const MackeyColimit& c, const MF& target,
                                      const std::vector<MackeyMorphism>& competing);

struct MackeyLimit {
    MF value;
    std::vector<MackeyMorphism> cone;
    std::vector<LimitData> per_class;
    std::vector<SmithDecomp> squeeze;
};
MackeyLimit mackey_limit(const MackeyDiagram& d);
MackeyMorphism mackey_limit_induced(const MackeyDiagram& d, const MackeyLimit& l, const MF& source,
                                    const std::vector<MackeyMorphism>& competing);

struct MackeySum {
    MF value;
    std::vector<MackeyMorphism> incl, proj;
};
MackeySum mackey_direct_sum(const std::vector<MF>& parts);

// Levelwise Smith form with the comparison isos.
struct CompressedMackey {
    MF value;
    MackeyMorphism to, from; // to: original -> value, from: value -> original
};
CompressedMackey compress(const MF& m);

// G-object in abelian groups: carrier with an action of every group element.
struct GModule {
    Group g;
    AbGrp carrier;
    std::vector<AbHom> act; // per element
    bool valid() const;
};

struct GModuleHom {
    const GModule *src, *dst;
    AbHom h;
    bool equivariant() const;
};

// Fixed points M(G/J) = maps_G(G/J, V); spans act by sum over fibers.
MF fixed_point_mackey(const Cat& cat, const GModule& v);

struct GModuleFixed {
    GModule value;    // over the quotient group
    AbHom incl;       // carrier of value -> carrier of v
};
GModuleFixed gmodule_fixed_points(const GrpHom& q, const GModule& v);
// Functorial action on module maps.
AbHom gmodule_fixed_points_map(const GModuleFixed& a, const GModuleFixed& b, const AbHom& f);

} // namespace mackey
